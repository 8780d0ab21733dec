#pragma once

#include "kplus/plus_basis.hpp"
#include "kplus/qseries.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <limits>
#include <memory>
#include <mutex>
#include <vector>

namespace kplus {

namespace bmp = boost::multiprecision;

template <unsigned Bits>
using RealN = bmp::number<bmp::cpp_bin_float<Bits, bmp::digit_base_2>, bmp::et_off>;
template <unsigned Bits>
using ComplexN = bmp::number<bmp::complex_adaptor<bmp::cpp_bin_float<Bits, bmp::digit_base_2>>, bmp::et_off>;

using Real = RealN<128>;
using Complex = ComplexN<128>;
using Real256 = RealN<256>;
using Complex256 = ComplexN<256>;

template <unsigned Bits>
RealN<Bits> pi_n() {
  static const RealN<Bits> p = boost::math::constants::pi<RealN<Bits>>();
  return p;
}

inline Real pi_r() { return pi_n<128>(); }

template <unsigned Bits>
struct EvalResultN {
  ComplexN<Bits> value;
  RealN<Bits> tail_bound;
  /// sum of |c_n q^n| over the computed terms; the scale against which cancellation is judged
  RealN<Bits> abs_sum;
};

using EvalResult = EvalResultN<128>;

/// Floating-point copy of an exact q-series.
template <unsigned Bits>
class NumericSeries {
 public:
  using R = RealN<Bits>;
  using C = ComplexN<Bits>;

  NumericSeries() = default;
  explicit NumericSeries(const QSeries& s);

  EvalResultN<Bits> eval(const C& tau) const;
  int valuation() const { return valuation_; }
  int prec() const { return prec_; }

 private:
  int valuation_ = 0;
  int prec_ = 0;
  bool real_ = true;
  std::vector<R> re_;
  std::vector<R> im_;
};

extern template class NumericSeries<128>;
extern template class NumericSeries<256>;

/// Evaluates at q = exp(2 pi i tau); throws "insufficient series precision" when the tail exceeds
/// tolerance * max(1, |value|).
EvalResult eval_qseries(const QSeries& series, const Complex& tau, double tolerance = 1e-25);
EvalResultN<256> eval_qseries_256(const QSeries& series, const Complex256& tau, double tolerance = 1e-50);

struct ArcPoint {
  double theta = 0;
  Complex z;
  static ArcPoint at(double theta);
};

template <unsigned Bits>
ComplexN<Bits> arc_z(double theta);

struct ArcValue {
  Real value;
  Real imag_part;
  Real tail_bound;
  Real scale;
};

/// A basis element prepared for repeated evaluation of e^{ik theta/2} e^{-(pi m/2) sin theta} f(z) on the arc.
class ArcForm {
 public:
  explicit ArcForm(BasisElement e);

  const BasisElement& element() const { return e_; }
  ArcValue weighted(double theta) const;
  /// Same quantity with 256-bit arithmetic.
  ArcValue weighted_high(double theta) const;
  /// e^{ik theta/2} f(z) without the exponential damping, unreduced.
  Complex rotated(double theta) const;

 private:
  BasisElement e_;
  NumericSeries<128> n128_;
  mutable std::once_flag hi_once_;
  mutable std::unique_ptr<NumericSeries<256>> n256_;
};

Real weighted_arc_eval(const BasisElement& e, const ArcPoint& p);

/// Series precision that keeps the arc evaluation of f_{k,m} comfortably converged for theta in [pi/3, 2pi/3].
int arc_precision(long m);

/// f_k, f_k^*, f_{2-k}, f_{2-k}^* and j(4 tau) prepared for kernel evaluation.
class Kernel {
 public:
  explicit Kernel(const HalfIntWeight& k, int prec = 420);

  struct ZValues {
    Complex fk, fks, j4;
  };

  const HalfIntWeight& weight() const { return k_; }
  ZValues at_z(const Complex& z) const;
  Complex F(const ZValues& zv, const Complex& tau) const;
  Complex B(const ZValues& zv, const Complex& tau) const;
  Complex F(const Complex& z, const Complex& tau) const;
  Complex B(const Complex& z, const Complex& tau) const;
  Complex j4(const Complex& tau) const;
  /// d/dtau j(4 tau), including the 2 pi i factor.
  Complex dj4(const Complex& tau) const;
  /// F_k(z; tau) / (d/dtau j(4 tau)).
  Complex A(const Complex& z, const Complex& tau) const;

  const BasisElement& fk() const { return fk_; }
  const BasisElement& fk_star() const { return fks_; }
  const BasisElement& fd() const { return fd_; }
  const BasisElement& fd_star() const { return fds_; }

 private:
  Complex value(const NumericSeries<128>& s, const Complex& tau) const;

  HalfIntWeight k_;
  BasisElement fk_, fks_, fd_, fds_;
  NumericSeries<128> nfk_, nfks_, nfd_, nfds_, nj4_, ndj4_;
};

Complex eval_Fk(const HalfIntWeight& kw, const Complex& z, const Complex& tau);
Complex eval_Bk(const HalfIntWeight& kw, const Complex& z, const Complex& tau);

/// Shared kernel per weight, built on first use.
const Kernel& kernel_for(const HalfIntWeight& kw);

double to_double(const Real& x);

}  // namespace kplus
