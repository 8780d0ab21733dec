#include "kplus/plus_basis.hpp"

#include "kplus/classical_forms.hpp"
#include "kplus/errors.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <stdexcept>

namespace kplus {

namespace {

constexpr long kS[] = {6, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 19};

long mod(long x, long n) {
  long r = x % n;
  return r < 0 ? r + n : r;
}

long floor_div(long x, long n) { return (x - mod(x, n)) / n; }
long ceil_div(long x, long n) { return -floor_div(-x, n); }

mpq_class frac(long num, long den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

std::vector<MonomialTerm> level_rows(const HalfIntWeight& w, long ap, int prec) {
  long R0 = 2 * w.s + 1 - 24 * ap;
  if (R0 < 0) return {};
  long T = R0 / 4;
  int A = static_cast<int>(std::abs(ap));
  int work = prec + 4 * A + 8;
  QSeries theta = theta_series(work);
  QSeries d = pow(delta4_series(work + 4 * A + 8), ap);
  QSeries row = (pow(theta, R0) * d).truncated(work);
  QSeries ratio = eis_F_series(work) * invert(pow(theta, 4));
  std::vector<MonomialTerm> out;
  out.reserve(static_cast<size_t>(T + 1));
  for (long t = 0; t <= T; ++t) {
    if (t > 0) row = row * ratio;
    out.push_back({{R0 - 4 * t, t, ap}, row.truncated(prec)});
  }
  return out;
}

using Row = std::vector<mpq_class>;

/// Reduced row echelon form over Q; pivots are lowest exponents with coefficient one.
struct Echelon {
  int origin = 0;
  int prec = 0;
  std::map<int, Row> rows;  // pivot exponent -> row

  void insert(const QSeries& s) {
    Row r(static_cast<size_t>(prec - origin));
    for (int n = std::max(origin, s.valuation()); n < prec; ++n) r[n - origin] = s.coeff(n).re();
    for (size_t i = 0; i < r.size(); ++i) {
      if (sgn(r[i]) == 0) continue;
      int p = origin + static_cast<int>(i);
      auto it = rows.find(p);
      if (it == rows.end()) {
        if (r[i] != 1) {
          mpq_class inv = 1 / r[i];
          for (size_t j = i; j < r.size(); ++j) r[j] *= inv;
        }
        rows.emplace(p, std::move(r));
        return;
      }
      mpq_class c = r[i];
      const Row& pr = it->second;
      for (size_t j = i; j < r.size(); ++j) {
        if (sgn(pr[j]) != 0) r[j] -= c * pr[j];
      }
    }
  }

  void reduce() {
    std::vector<int> piv;
    for (auto& [p, _] : rows) piv.push_back(p);
    for (size_t jj = piv.size(); jj-- > 0;) {
      const Row& rj = rows[piv[jj]];
      size_t col = static_cast<size_t>(piv[jj] - origin);
      for (size_t ii = 0; ii < jj; ++ii) {
        Row& ri = rows[piv[ii]];
        if (sgn(ri[col]) == 0) continue;
        mpq_class c = ri[col];
        for (size_t x = col; x < ri.size(); ++x) {
          if (sgn(rj[x]) != 0) ri[x] -= c * rj[x];
        }
      }
    }
  }
};

/// Solves G x = rhs (columns of rhs are right-hand sides) for a full-column-rank G.
std::vector<std::vector<mpq_class>> solve_full_rank(std::vector<std::vector<mpq_class>> g,
                                                    std::vector<std::vector<mpq_class>> rhs, size_t unknowns) {
  size_t rows = g.size();
  size_t nr = rhs.empty() ? 0 : rhs[0].size();
  size_t r = 0;
  std::vector<size_t> pivcol;
  for (size_t c = 0; c < unknowns && r < rows; ++c) {
    size_t p = r;
    while (p < rows && sgn(g[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(g[p], g[r]);
    std::swap(rhs[p], rhs[r]);
    mpq_class inv = 1 / g[r][c];
    for (size_t x = c; x < unknowns; ++x) g[r][x] *= inv;
    for (size_t x = 0; x < nr; ++x) rhs[r][x] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(g[i][c]) == 0) continue;
      mpq_class f = g[i][c];
      for (size_t x = c; x < unknowns; ++x) g[i][x] -= f * g[r][x];
      for (size_t x = 0; x < nr; ++x) rhs[i][x] -= f * rhs[r][x];
    }
    pivcol.push_back(c);
    ++r;
  }
  if (r != unknowns) throw ConstructionError("basis construction failed: rank-deficient system");
  for (size_t i = r; i < rows; ++i) {
    for (size_t x = 0; x < nr; ++x) {
      if (sgn(rhs[i][x]) != 0) throw ConstructionError("basis construction failed: inconsistent system");
    }
  }
  std::vector<std::vector<mpq_class>> sol(nr, std::vector<mpq_class>(unknowns));
  for (size_t i = 0; i < r; ++i) {
    for (size_t x = 0; x < nr; ++x) sol[x][pivcol[i]] = rhs[i][x];
  }
  return sol;
}

}  // namespace

HalfIntWeight HalfIntWeight::from_s(long s) {
  HalfIntWeight w;
  w.s = s;
  for (long b : kS) {
    if (mod(s - b, 12) == 0) {
      w.b = b;
      w.a = (s - b) / 12;
    }
  }
  for (long kp : {0L, 4L, 6L, 8L, 10L, 14L}) {
    if (mod(s - kp / 2, 6) == 0) {
      w.kprime = kp;
      w.ell = (s - kp / 2) / 6;
    }
  }
  return w;
}

HalfIntWeight HalfIntWeight::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos || text.substr(slash + 1) != "2") {
    throw std::invalid_argument("weight must be written as <odd>/2, got '" + std::string(text) + "'");
  }
  auto num = text.substr(0, slash);
  long v = 0;
  auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
  if (ec != std::errc() || ptr != num.data() + num.size() || mod(v, 2) != 1) {
    throw std::invalid_argument("weight must be written as <odd>/2, got '" + std::string(text) + "'");
  }
  return from_s((v - 1) / 2);
}

std::string HalfIntWeight::to_string() const { return std::to_string(2 * s + 1) + "/2"; }

HalfIntWeight decompose_weight(const mpq_class& k) {
  mpq_class s = k - mpq_class(1, 2);
  if (s.get_den() != 1) throw std::domain_error("weight is not half-integral");
  return HalfIntWeight::from_s(s.get_num().get_si());
}

long N_of(const HalfIntWeight& w) {
  if (mod(w.ell, 2) == 0) return 2 * w.ell;
  return 2 * w.ell - w.sign();
}

bool in_plus_support(const HalfIntWeight& w, long n) { return mod(w.sign() * n, 4) <= 1; }

bool is_admissible(const HalfIntWeight& w, long m) { return m >= -N_of(w) && mod(-w.sign() * m, 4) <= 1; }

std::vector<long> admissible_m(const HalfIntWeight& w, size_t count) {
  std::vector<long> out;
  for (long m = -N_of(w); out.size() < count; ++m) {
    if (is_admissible(w, m)) out.push_back(m);
  }
  return out;
}

std::vector<MonomialTerm> monomial_span(const HalfIntWeight& w, long max_pole, int prec, int levels) {
  if (max_pole < 0) throw std::invalid_argument("max_pole must be nonnegative");
  long ap_min = -ceil_div(max_pole, 4) - 1;
  std::vector<MonomialTerm> out;
  for (int l = 0; l < levels; ++l) {
    auto rows = level_rows(w, ap_min + l, prec);
    out.insert(out.end(), std::make_move_iterator(rows.begin()), std::make_move_iterator(rows.end()));
  }
  if (out.empty()) throw ConstructionError("no monomials at this weight");
  return out;
}

std::vector<BasisElement> canonical_basis(const HalfIntWeight& w, std::span<const long> m_list, int prec,
                                          const BasisOptions& opt) {
  if (m_list.empty()) return {};
  for (long m : m_list) {
    if (!is_admissible(w, m)) throw std::invalid_argument("m=" + std::to_string(m) + " is not admissible for k=" + w.to_string());
  }
  const long N = N_of(w);
  const long max_m = *std::max_element(m_list.begin(), m_list.end());
  const long max_pole = std::max(0L, max_m + 4);
  const long ap_min = -ceil_div(max_pole, 4) - 1;
  const long R0 = 2 * w.s + 1 - 24 * ap_min;
  if (R0 < 0) throw ConstructionError("no monomials at this weight");
  const long origin = 4 * ap_min;
  const long p_max = origin + R0 / 4;
  long unknown_est = 0;
  for (long p = N + 1; p <= p_max; ++p) unknown_est += in_plus_support(w, p) ? 1 : 0;
  const long solve_end = std::max(p_max, N) + 2 * (unknown_est + opt.solve_margin) + 8;
  const int work = std::max<int>(prec, static_cast<int>(solve_end + opt.verify_margin + 4));

  Echelon ech;
  ech.origin = static_cast<int>(origin);
  ech.prec = work;
  for (auto& term : monomial_span(w, max_pole, work, opt.levels)) ech.insert(term.series);
  ech.reduce();

  std::vector<int> free;
  for (auto& [p, _] : ech.rows) {
    if (p > N && in_plus_support(w, p)) free.push_back(p);
  }
  std::vector<int> constraints;
  for (int n = ech.origin; n < work; ++n) {
    if (ech.rows.count(n)) continue;
    if (!in_plus_support(w, n) || n <= N) constraints.push_back(n);
  }
  const size_t U = free.size();
  const size_t solve_rows = U + static_cast<size_t>(opt.solve_margin);
  if (constraints.size() < solve_rows) throw ConstructionError("basis construction failed: window too small");
  if (constraints[solve_rows - 1] + opt.verify_margin >= work) {
    throw ConstructionError("basis construction failed: verification margin not available");
  }

  for (long m : m_list) {
    if (!ech.rows.count(static_cast<int>(-m))) {
      throw ConstructionError("basis construction failed: no form with leading exponent " + std::to_string(-m));
    }
  }

  std::vector<std::vector<mpq_class>> g(solve_rows, std::vector<mpq_class>(U));
  std::vector<std::vector<mpq_class>> rhs(solve_rows, std::vector<mpq_class>(m_list.size()));
  for (size_t c = 0; c < solve_rows; ++c) {
    size_t col = static_cast<size_t>(constraints[c] - ech.origin);
    for (size_t j = 0; j < U; ++j) g[c][j] = ech.rows[free[j]][col];
    for (size_t x = 0; x < m_list.size(); ++x) rhs[c][x] = -ech.rows[static_cast<int>(-m_list[x])][col];
  }
  auto sol = solve_full_rank(std::move(g), std::move(rhs), U);

  std::vector<BasisElement> out;
  for (size_t x = 0; x < m_list.size(); ++x) {
    long m = m_list[x];
    Row h = ech.rows[static_cast<int>(-m)];
    for (size_t j = 0; j < U; ++j) {
      if (sgn(sol[x][j]) == 0) continue;
      const Row& rj = ech.rows[free[j]];
      for (size_t i = 0; i < h.size(); ++i) {
        if (sgn(rj[i]) != 0) h[i] += sol[x][j] * rj[i];
      }
    }
    for (int n : constraints) {
      if (sgn(h[static_cast<size_t>(n - ech.origin)]) != 0) {
        throw ConstructionError("basis construction failed: coefficient at q^" + std::to_string(n) + " does not vanish");
      }
    }
    std::vector<mpz_class> ints(h.size());
    for (size_t i = 0; i < h.size(); ++i) {
      if (h[i].get_den() != 1) throw ConstructionError("basis construction failed: non-integral coefficient");
      ints[i] = h[i].get_num();
    }
    BasisElement e;
    e.weight = w;
    e.m = m;
    e.series = QSeries::from_integers(ech.origin, ints).truncated(prec);
    try {
      e.eps = epsilon_of(e);
      e.zero_count = zero_count(w, m, *e.eps);
    } catch (const PrecisionError&) {
    }
    out.push_back(std::move(e));
  }
  return out;
}

namespace {

class BasisCache {
 public:
  std::vector<BasisElement> get(const HalfIntWeight& w, std::span<const long> m_list, int prec) {
    std::vector<long> missing;
    {
      std::shared_lock lock(mu_);
      for (long m : m_list) {
        auto it = store_.find({w.s, m});
        if (it == store_.end() || it->second.series.prec() < prec) missing.push_back(m);
      }
    }
    if (!missing.empty()) {
      std::sort(missing.begin(), missing.end());
      missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
      auto fresh = canonical_basis(w, missing, prec);
      std::unique_lock lock(mu_);
      for (auto& e : fresh) {
        auto it = store_.find({w.s, e.m});
        if (it == store_.end() || it->second.series.prec() < e.series.prec()) store_[{w.s, e.m}] = std::move(e);
      }
    }
    std::shared_lock lock(mu_);
    std::vector<BasisElement> out;
    for (long m : m_list) {
      BasisElement e = store_.at({w.s, m});
      e.series = e.series.truncated(prec);
      out.push_back(std::move(e));
    }
    return out;
  }

 private:
  std::shared_mutex mu_;
  std::map<std::pair<long, long>, BasisElement> store_;
};

BasisCache& cache() {
  static BasisCache c;
  return c;
}

}  // namespace

std::vector<BasisElement> basis_elements(const HalfIntWeight& w, std::span<const long> m_list, int prec) {
  return cache().get(w, m_list, prec);
}

BasisElement basis_element(const HalfIntWeight& w, long m, int prec) {
  long ms[] = {m};
  return basis_elements(w, ms, prec).front();
}

std::pair<BasisElement, BasisElement> first_pair(const HalfIntWeight& w, int prec) {
  auto ms = admissible_m(w, 2);
  auto v = basis_elements(w, ms, prec);
  return {v[0], v[1]};
}

mpz_class coefficient(const HalfIntWeight& w, long m, long n, int prec) {
  if (prec <= 0) prec = static_cast<int>(std::max(n + 1, 1L));
  BasisElement e = basis_element(w, m, prec);
  const GaussianRational& c = e.series.coeff(static_cast<int>(n));
  return c.re().get_num();
}

long epsilon_of(const BasisElement& e) {
  const HalfIntWeight& w = e.weight;
  long N = N_of(w);
  long cls = (mod(e.m, 2) == 0) ? mod(w.sign(), 4) : 0;
  long n = N + 1;
  while (mod(n, 4) != cls) ++n;
  long count = 0;
  for (; n < e.series.prec(); n += 4, ++count) {
    if (!e.series.coeff(static_cast<int>(n)).is_zero()) return count;
  }
  throw PrecisionError("epsilon undetermined at this precision");
}

mpq_class c_constant(const HalfIntWeight& w, int m_parity) {
  bool b_even = w.b % 2 == 0;
  if (mod(m_parity, 2) == 0) return b_even ? mpq_class(1) : mpq_class(3, 2);
  static const std::set<long> low = {6, 8, 9, 10, 11, 13};
  return low.count(w.b) ? mpq_class(3, 4) : mpq_class(7, 4);
}

long zero_count(const HalfIntWeight& w, long m, long eps) {
  mpq_class v = mpq_class(5 * w.a) + frac(5 * m, 4) + frac(w.b, 2) - c_constant(w, static_cast<int>(mod(m, 2))) - eps;
  if (v.get_den() != 1) throw std::domain_error("zero count " + v.get_str() + " is not an integer");
  if (sgn(v) < 0) throw std::domain_error("zero count " + v.get_str() + " is negative");
  return v.get_num().get_si();
}

CuspOrders cusp_orders(const BasisElement& e) {
  std::optional<long> n0, n1;
  for (int n = e.series.valuation(); n < e.series.prec() && !(n0 && n1); ++n) {
    if (e.series.coeff(n).is_zero()) continue;
    if (mod(n, 4) == 0) {
      if (!n0) n0 = n;
    } else if (!n1) {
      n1 = n;
    }
  }
  if (!n0 || !n1) throw PrecisionError("cusp orders undetermined at this precision");
  return {mpq_class(std::min(*n0, *n1)), frac(*n0, 4), frac(*n1, 4)};
}

bool valence_check(const BasisElement& e) {
  long eps = e.eps ? *e.eps : epsilon_of(e);
  long zc = e.zero_count ? *e.zero_count : zero_count(e.weight, e.m, eps);
  CuspOrders o = cusp_orders(e);
  return mpq_class(zc) + o.ord_inf + o.ord_zero + o.ord_half == e.weight.k() / 2;
}

DualityReport duality_check(const HalfIntWeight& k, long m_max, long n_max) {
  HalfIntWeight kd = k.dual();
  std::vector<long> ms, ns;
  for (long m = -N_of(k); m <= m_max; ++m) {
    if (is_admissible(k, m)) ms.push_back(m);
  }
  for (long n = -N_of(kd); n <= n_max; ++n) {
    if (is_admissible(kd, n)) ns.push_back(n);
  }
  DualityReport rep;
  if (ms.empty() || ns.empty()) return rep;
  auto fk = basis_elements(k, ms, static_cast<int>(n_max + 1));
  auto fd = basis_elements(kd, ns, static_cast<int>(m_max + 1));
  const long Nk = N_of(k);
  const long Nd = N_of(kd);
  for (size_t i = 0; i < ms.size(); ++i) {
    for (size_t j = 0; j < ns.size(); ++j) {
      long m = ms[i], n = ns[j];
      if (n <= Nk || m <= Nd) continue;
      ++rep.pairs_checked;
      const auto& lhs = fk[i].series.coeff(static_cast<int>(n));
      const auto& rhs = fd[j].series.coeff(static_cast<int>(m));
      if (lhs != -rhs && rep.ok) {
        rep.ok = false;
        rep.first_failure = std::make_pair(m, n);
      }
    }
  }
  return rep;
}

bool lehmer_column_check(const HalfIntWeight& k, long m, long M) {
  long allowed = mod(-k.sign(), 4);
  if (mod(m, 4) != 0 && mod(m, 4) != allowed) throw std::invalid_argument("m is not in an admissible residue class");
  mpq_class bound = mpq_class(3 * k.a) + frac(3 * m, 4) + frac(k.b, 2) - c_constant(k, static_cast<int>(mod(m, 2)));
  if (!(mpq_class(M) > bound)) throw std::invalid_argument("M must exceed 3a + 3m/4 + b/2 - C = " + bound.get_str());
  HalfIntWeight kd = k.dual();
  std::vector<long> idx;
  for (long i = -N_of(kd); static_cast<long>(idx.size()) < M; ++i) {
    if (is_admissible(kd, i) && mod(i, 4) != mod(m, 4)) idx.push_back(i);
  }
  auto col = basis_elements(kd, idx, static_cast<int>(std::max(m + 1, 1L)));
  for (const auto& e : col) {
    if (!e.series.coeff(static_cast<int>(m)).is_zero()) return true;
  }
  return false;
}

nlohmann::json to_json(const BasisElement& e) {
  nlohmann::json j = {{"weight", e.weight.to_string()}, {"s", e.weight.s}, {"a", e.weight.a}, {"b", e.weight.b},
                      {"N", N_of(e.weight)},        {"m", e.m},         {"series", to_json(e.series)}};
  j["eps"] = e.eps ? nlohmann::json(*e.eps) : nlohmann::json(nullptr);
  j["zero_count"] = e.zero_count ? nlohmann::json(*e.zero_count) : nlohmann::json(nullptr);
  return j;
}

}  // namespace kplus
