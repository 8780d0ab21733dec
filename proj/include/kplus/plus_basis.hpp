#pragma once

#include "kplus/qseries.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kplus {

/// Weight k = s + 1/2 with s = 12a + b (b in S) and s = 6*ell + kprime/2.
struct HalfIntWeight {
  long s = 0;
  long a = 0;
  long b = 0;
  long ell = 0;
  long kprime = 0;

  static HalfIntWeight from_s(long s);
  /// Accepts only "<odd>/2", e.g. "13/2" or "-9/2".
  static HalfIntWeight parse(std::string_view text);

  mpq_class k() const { return mpq_class(2 * s + 1, 2); }
  double k_double() const { return static_cast<double>(s) + 0.5; }
  /// (-1)^s
  int sign() const { return (s % 2 == 0) ? 1 : -1; }
  HalfIntWeight dual() const { return from_s(1 - s); }
  std::string to_string() const;

  friend bool operator==(const HalfIntWeight& x, const HalfIntWeight& y) { return x.s == y.s; }
};

HalfIntWeight decompose_weight(const mpq_class& k);

long N_of(const HalfIntWeight& w);
bool is_admissible(const HalfIntWeight& w, long m);
/// True when (-1)^s n = 0,1 mod 4.
bool in_plus_support(const HalfIntWeight& w, long n);
std::vector<long> admissible_m(const HalfIntWeight& w, size_t count);

struct Monomial {
  long r = 0;
  long t = 0;
  long a = 0;
};

struct MonomialTerm {
  Monomial mono;
  QSeries series;
};

/// theta^r F^t Delta(4z)^a' of weight k for `levels` consecutive a' starting at -ceil(max_pole/4)-1.
std::vector<MonomialTerm> monomial_span(const HalfIntWeight& w, long max_pole, int prec, int levels = 2);

struct BasisOptions {
  int levels = 1;
  int solve_margin = 20;
  int verify_margin = 50;
};

struct BasisElement {
  HalfIntWeight weight;
  long m = 0;
  QSeries series;
  std::optional<long> eps;
  std::optional<long> zero_count;
};

std::vector<BasisElement> canonical_basis(const HalfIntWeight& w, std::span<const long> m_list, int prec,
                                          const BasisOptions& opt = {});

/// Memoized access to canonical basis elements; safe for concurrent callers.
BasisElement basis_element(const HalfIntWeight& w, long m, int prec);
std::vector<BasisElement> basis_elements(const HalfIntWeight& w, std::span<const long> m_list, int prec);

/// f_k and f_k^*: the first two canonical basis elements.
std::pair<BasisElement, BasisElement> first_pair(const HalfIntWeight& w, int prec);

mpz_class coefficient(const HalfIntWeight& w, long m, long n, int prec = 0);

long epsilon_of(const BasisElement& e);
mpq_class c_constant(const HalfIntWeight& w, int m_parity);
long zero_count(const HalfIntWeight& w, long m, long eps);

struct CuspOrders {
  mpq_class ord_inf;
  mpq_class ord_zero;
  mpq_class ord_half;
};

CuspOrders cusp_orders(const BasisElement& e);
bool valence_check(const BasisElement& e);

struct DualityReport {
  bool ok = true;
  long pairs_checked = 0;
  std::optional<std::pair<long, long>> first_failure;
};

DualityReport duality_check(const HalfIntWeight& k, long m_max, long n_max);

/// Column test on the first M weight 2-k basis elements of the residue class i != m mod 4.
bool lehmer_column_check(const HalfIntWeight& k, long m, long M);

nlohmann::json to_json(const BasisElement& e);

}  // namespace kplus
