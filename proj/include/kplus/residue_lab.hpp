#pragma once

#include "kplus/eval_engine.hpp"
#include "kplus/gaussian_rational.hpp"
#include "kplus/plus_basis.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kplus {

struct MoebiusMatrix {
  long a = 1, b = 0, c = 0, d = 1;
  int family = 1;
  long r = 0;

  static MoebiusMatrix make(int family, long r);
  long det() const { return a * d - b * c; }
  Complex apply(const Complex& w) const;
  /// M(4z)/4
  Complex pole(const Complex& z) const;
  std::string to_string() const;
};

struct PoleSet {
  int d = 1;
  std::vector<MoebiusMatrix> matrices;
  double v = 0.2125;
};

PoleSet pole_set(int d);
/// Which of R1..R4 contains theta; theta = pi/2 counts as R1.
int sub_arc_of(double theta);
inline constexpr double kEpsilonHeight = 1.0;

/// Exact part g with kappa = g * (-1/(8 pi i)).
GaussianRational kappa_factor(long r, const HalfIntWeight& kw);
Complex kappa(long r, const HalfIntWeight& kw);

bool T_membership(long m, const HalfIntWeight& kw);

struct KappaSum {
  /// The bracket multiplying -1/(8 pi i); the identity asks for 4.
  GaussianRational bracket;
  bool holds = false;
  Complex value() const;
};

KappaSum kappa_sum_identity(long m, const HalfIntWeight& kw);

GaussianRational c_mk(long m, const HalfIntWeight& kw);
GaussianRational d_mk(long m, const HalfIntWeight& kw);
Complex C_func(long m, const HalfIntWeight& kw, double theta);
Complex D_func(long m, const HalfIntWeight& kw, double theta);

std::vector<Complex> pole_points(int d, const Complex& z);
/// Independent count of SL2(Z)-translates of 4z landing in the strip, divided by 4.
long count_strip_poles(const Complex& z, double v, double eps = kEpsilonHeight);

struct ExactCheck {
  bool ok = true;
  long terms_checked = 0;
  std::optional<long> first_bad_exponent;
};

/// F_k(z; z + r/4) against -(1/4)(1 + i^r sigma) q d/dq j(4z), coefficient by coefficient.
ExactCheck verify_Ak_exact(long r, const HalfIntWeight& kw, int terms = 200);

struct NumericCheck {
  bool ok = false;
  double residual = 0;
  Complex value;
  Complex expected;
};

Complex expected_Ak(const MoebiusMatrix& M, const HalfIntWeight& kw, const Complex& z);
NumericCheck verify_Ak_numeric(const MoebiusMatrix& M, const HalfIntWeight& kw, const Complex& z, double tol = 1e-6);

struct IntegralReport {
  HalfIntWeight weight;
  long m = 0;
  double theta = 0;
  int sub_arc = 1;
  double v = 0;
  Complex lhs;
  Complex rhs;
  double residual = 0;
  long panels = 0;
  double quadrature_delta = 0;
  bool pole_near_contour = false;
  bool ok = false;
};

IntegralReport verify_integral_identity(const HalfIntWeight& kw, long m, double theta, double tol = 1e-6);

}  // namespace kplus
