#include "kplus/residue_lab.hpp"

#include "kplus/classical_forms.hpp"
#include "kplus/errors.hpp"
#include "kplus/zero_locator.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace kplus {

namespace {

long mod4(long x) { return ((x % 4) + 4) % 4; }

/// -1/(8 pi i) = i/(8 pi)
Complex kappa_unit() { return Complex(Real(0), Real(1) / (8 * pi_r())); }

Real to_real(const mpq_class& q) { return Real(q.get_num().get_str()) / Real(q.get_den().get_str()); }

Complex to_complex(const GaussianRational& g) { return Complex(to_real(g.re()), to_real(g.im())); }

Complex principal_pow(const Complex& base, const Real& expo) { return exp(Complex(expo) * log(base)); }

}  // namespace

MoebiusMatrix MoebiusMatrix::make(int family, long r) {
  MoebiusMatrix M;
  M.family = family;
  M.r = r;
  switch (family) {
    case 1: M.a = 1, M.b = r, M.c = 0, M.d = 1; break;
    case 2: M.a = r, M.b = -1, M.c = 1, M.d = 0; break;
    case 3: M.a = r, M.b = r - 1, M.c = 1, M.d = 1; break;
    case 4: M.a = r, M.b = 2 * r - 1, M.c = 1, M.d = 2; break;
    default: throw std::invalid_argument("family must be 1..4");
  }
  return M;
}

Complex MoebiusMatrix::apply(const Complex& w) const {
  Complex den = Complex(Real(c)) * w + Complex(Real(d));
  return (Complex(Real(a)) * w + Complex(Real(b))) / den;
}

Complex MoebiusMatrix::pole(const Complex& z) const { return apply(Complex(Real(4)) * z) / Complex(Real(4)); }

std::string MoebiusMatrix::to_string() const {
  return "M" + std::to_string(family) + "(r=" + std::to_string(r) + ")=[[" + std::to_string(a) + "," +
         std::to_string(b) + "],[" + std::to_string(c) + "," + std::to_string(d) + "]]";
}

PoleSet pole_set(int d) {
  PoleSet ps;
  ps.d = d;
  auto add = [&](int fam, long lo, long hi) {
    for (long r = lo; r <= hi; ++r) ps.matrices.push_back(MoebiusMatrix::make(fam, r));
  };
  switch (d) {
    case 1: add(1, -1, 2); add(3, -1, 2); break;
    case 2: add(1, 0, 3); add(3, -2, 1); break;
    case 3: add(1, -1, 2); add(3, -1, 2); add(2, -2, 1); break;
    case 4: add(1, 0, 3); add(3, -2, 1); add(4, -1, 2); break;
    default: throw std::invalid_argument("sub-arc index must be 1..4");
  }
  ps.v = d <= 2 ? 0.2125 : 0.1375;
  return ps;
}

int sub_arc_of(double theta) {
  const double pi = std::numbers::pi;
  if (!(theta > pi / 3 && theta < 2 * pi / 3)) throw std::domain_error("theta must lie in (pi/3, 2pi/3)");
  if (theta < 5 * pi / 12) return 3;
  if (theta > 7 * pi / 12) return 4;
  return theta <= pi / 2 ? 1 : 2;
}

GaussianRational kappa_factor(long r, const HalfIntWeight& kw) {
  long sigma = (r % 2 == 0) ? 1 : ((kw.s + 1) % 2 == 0 ? 1 : -1);
  return GaussianRational(1) + GaussianRational::i_power(mod4(r)) * GaussianRational(sigma);
}

Complex kappa(long r, const HalfIntWeight& kw) { return to_complex(kappa_factor(r, kw)) * kappa_unit(); }

bool T_membership(long m, const HalfIntWeight& kw) {
  bool kh_even = (kw.s + 1) % 2 == 0;
  switch (mod4(m)) {
    case 0: return true;
    case 1: return kh_even;
    case 3: return !kh_even;
    default: return false;
  }
}

Complex KappaSum::value() const { return to_complex(bracket) * kappa_unit(); }

KappaSum kappa_sum_identity(long m, const HalfIntWeight& kw) {
  if (!T_membership(m, kw)) throw std::invalid_argument("(m, k) is outside the set T");
  KappaSum out;
  out.bracket = GaussianRational::i_power(mod4(m)) * kappa_factor(-1, kw) + kappa_factor(0, kw) +
                GaussianRational::i_power(mod4(-m)) * kappa_factor(1, kw);
  out.holds = out.bracket == GaussianRational(4);
  return out;
}

GaussianRational c_mk(long m, const HalfIntWeight& kw) {
  if (!T_membership(m, kw)) throw std::invalid_argument("(m, k) is outside the set T");
  if (mod4(m) != 0) return GaussianRational(0);
  bool kh_odd = (kw.s + 1) % 2 != 0;
  return kh_odd ? GaussianRational(1, 1) : GaussianRational(1, -1);
}

GaussianRational d_mk(long m, const HalfIntWeight& kw) {
  if (!T_membership(m, kw)) throw std::invalid_argument("(m, k) is outside the set T");
  switch (mod4(m)) {
    case 1: return GaussianRational(1, -1);
    case 3: return GaussianRational(1, 1);
    default: return GaussianRational(0);
  }
}

Complex C_func(long m, const HalfIntWeight& kw, double theta) {
  GaussianRational c = c_mk(m, kw);
  if (c.is_zero()) return Complex(0);
  Real th(theta), k = Real(2 * kw.s + 1) / 2, pm = pi_r() * Real(m);
  Complex two_i(Real(0), Real(2));
  Complex out = -to_complex(c) * principal_pow(two_i, -k) * principal_pow(Complex(sin(th / 2)), -k);
  out *= exp(Complex(pm / 2 * (1 / (2 * tan(th / 2)) - sin(th)), -pm / 4));
  return out;
}

Complex D_func(long m, const HalfIntWeight& kw, double theta) {
  GaussianRational d = d_mk(m, kw);
  if (d.is_zero()) return Complex(0);
  Real th(theta), k = Real(2 * kw.s + 1) / 2, pm = pi_r() * Real(m);
  Complex out = -to_complex(d) * principal_pow(Complex(Real(2)), -k) * principal_pow(Complex(cos(th / 2)), -k);
  out *= exp(Complex(pm / 2 * (tan(th / 2) / 2 - sin(th)), pm / 4));
  return out;
}

long count_strip_poles(const Complex& z, double v, double eps) {
  Complex w = Complex(Real(4)) * z;
  Real y = imag(w);
  long pairs = 0;
  for (long c = 0; c <= 6; ++c) {
    for (long d = -12; d <= 12; ++d) {
      if (c == 0 && d != 1) continue;
      if (std::gcd(c, d) != 1) continue;
      Real den = norm(Complex(Real(c)) * w + Complex(Real(d)));
      Real im = y / den / 4;
      if (im > Real(v) && im < Real(eps)) ++pairs;
    }
  }
  return 4 * pairs;
}

std::vector<Complex> pole_points(int d, const Complex& z) {
  PoleSet ps = pole_set(d);
  static const NumericSeries<128> j4n(j4_series(420));
  auto j4 = [](const Complex& t) {
    auto r = j4n.eval(t);
    if (!(r.tail_bound <= Real(1e-25) * r.abs_sum)) throw EvaluationError("insufficient series precision");
    return r.value;
  };
  Complex jz = j4(z);
  Real jscale = std::max(Real(1), abs(jz));
  std::vector<Complex> out;
  for (const auto& M : ps.matrices) {
    Complex w = M.pole(z);
    Real u = real(w), y = imag(w);
    bool in_strip = y > Real(ps.v) && y < Real(kEpsilonHeight) && u >= Real(-0.5) - Real(1e-12) &&
                    u <= Real(0.5) + Real(1e-12);
    if (!in_strip || abs(j4(w) - jz) >= Real(1e-6) * jscale)
      throw ConstructionError("pole bookkeeping mismatch: " + M.to_string());
    out.push_back(w);
  }
  if (count_strip_poles(z, ps.v) != static_cast<long>(out.size())) throw ConstructionError("pole bookkeeping mismatch");
  return out;
}

ExactCheck verify_Ak_exact(long r, const HalfIntWeight& kw, int terms) {
  HalfIntWeight dw = kw.dual();
  long spread = std::abs(N_of(kw)) + std::abs(N_of(dw)) + 8;
  int P = terms + static_cast<int>(2 * spread);
  auto [fk, fks] = first_pair(kw, P);
  auto [fd, fds] = first_pair(dw, P);
  int rr = static_cast<int>(mod4(r));
  QSeries lhs = fk.series * shift_argument(fds.series, rr) + fks.series * shift_argument(fd.series, rr);
  GaussianRational g = kappa_factor(r, kw) * GaussianRational(mpq_class(-1, 4));
  QSeries rhs = g * q_derivative(j4_series(terms));
  ExactCheck out;
  int lo = -4, hi = -4 + terms;
  if (lhs.prec() < hi || rhs.prec() < hi) throw PrecisionError("insufficient precision");
  for (int n = std::min(lo, lhs.valuation()); n < hi; ++n) {
    GaussianRational a = n < lhs.valuation() ? GaussianRational(0) : lhs.coeff(n);
    GaussianRational b = n < rhs.valuation() ? GaussianRational(0) : rhs.coeff(n);
    ++out.terms_checked;
    if (a != b) {
      out.ok = false;
      out.first_bad_exponent = n;
      return out;
    }
  }
  return out;
}

Complex expected_Ak(const MoebiusMatrix& M, const HalfIntWeight& kw, const Complex& z) {
  Real k = Real(2 * kw.s + 1) / 2;
  Complex i2k = exp(Complex(Real(0), pi_r() * k));
  auto pref = [&](long shift) {
    Complex base = Complex(Real(4)) * z + Complex(Real(shift));
    if (abs(base) < Real(1e-30)) throw EvaluationError("evaluation at a pole of the prefactor");
    return principal_pow(base, -k);
  };
  auto bad = [&]() -> Complex { throw std::invalid_argument("no tabulated constant for " + M.to_string()); };
  switch (M.family) {
    case 1: return kappa(M.r, kw);
    case 2:
      if (M.r == 0 || M.r == 1) return pref(0) * kappa(-1, kw);
      if (M.r == -1 || M.r == -2) return pref(0) * i2k * kappa(1, kw);
      return bad();
    case 3:
      if (M.r == 1) return pref(1) * kappa(0, kw);
      if (M.r == -1) return Complex(0);
      if (M.r == 2 || M.r == -2) return pref(1) * kappa(1, kw);
      if (M.r == 0) return pref(1) * kappa(-1, kw);
      return bad();
    case 4:
      if (M.r == 1) return pref(2) * kappa(1, kw);
      if (M.r == 0) return pref(2) * kappa(-1, kw);
      if (M.r == -1) return pref(2) * i2k * kappa(-1, kw);
      if (M.r == 2) return pref(2) * exp(Complex(Real(0), -pi_r() * k)) * kappa(1, kw);
      return bad();
    default: return bad();
  }
}

NumericCheck verify_Ak_numeric(const MoebiusMatrix& M, const HalfIntWeight& kw, const Complex& z, double tol) {
  NumericCheck out;
  out.expected = expected_Ak(M, kw, z);
  out.value = kernel_for(kw).A(z, M.pole(z));
  out.residual = to_double(abs(out.value - out.expected));
  out.ok = out.residual < tol;
  return out;
}

IntegralReport verify_integral_identity(const HalfIntWeight& kw, long m, double theta, double tol) {
  if (!is_admissible(kw, m)) throw std::invalid_argument("m is not admissible for this weight");
  IntegralReport rep;
  rep.weight = kw;
  rep.m = m;
  rep.theta = theta;
  rep.sub_arc = sub_arc_of(theta);
  PoleSet ps = pole_set(rep.sub_arc);
  rep.v = ps.v;

  const Kernel& K = kernel_for(kw);
  Complex z = arc_z<128>(theta);
  Kernel::ZValues zv = K.at_z(z);
  for (const auto& M : ps.matrices)
    if (abs(imag(M.pole(z)) - Real(rep.v)) < Real(1e-3)) rep.pole_near_contour = true;

  Real v(rep.v), two_pi = 2 * pi_r();
  Real k = Real(2 * kw.s + 1) / 2, th(theta);
  Complex pre = exp(Complex(-pi_r() * Real(m) / 2 * sin(th), k * th / 2));
  auto integrand = [&](const Real& u) {
    Complex tau(u, v);
    Complex em = exp(Complex(Real(0), -two_pi * Real(m)) * tau);
    return K.B(zv, tau) * em;
  };

  using GL = boost::math::quadrature::gauss<double, 20>;
  const auto& nodes = GL::abscissa();
  const auto& weights = GL::weights();
  auto composite = [&](long panels) {
    Complex sum(0);
    Real h = Real(1) / Real(panels);
    for (long p = 0; p < panels; ++p) {
      Real mid = Real(-0.5) + h * (Real(p) + Real(0.5));
      for (size_t j = 0; j < nodes.size(); ++j) {
        Real x(nodes[j]), wgt(weights[j]);
        sum += Complex(wgt) * integrand(mid + h / 2 * x);
        if (nodes[j] != 0) sum += Complex(wgt) * integrand(mid - h / 2 * x);
      }
    }
    return sum * Complex(h / 2);
  };

  long panels = 4;
  Complex prev = pre * composite(panels);
  Complex cur = prev;
  double delta = 0;
  const long max_panels = 1024;
  for (;;) {
    panels *= 2;
    cur = pre * composite(panels);
    delta = to_double(abs(cur - prev));
    double scale = std::max(1.0, to_double(abs(cur)));
    if (delta <= std::min(1e-8 * scale, 1e-2 * tol)) break;
    if (panels >= max_panels)
      throw EvaluationError("quadrature did not converge; estimate " + std::to_string(to_double(real(cur))) +
                            " with panel change " + std::to_string(delta));
    prev = cur;
  }
  rep.panels = panels;
  rep.quadrature_delta = delta;
  rep.lhs = cur;

  BasisElement f = basis_element(kw, m, arc_precision(m));
  Complex rhs = ArcForm(f).rotated(theta) * Complex(exp(-pi_r() * Real(m) / 2 * sin(th))) -
                Complex(Real(trig_target(kw, m, theta)));
  if (rep.sub_arc == 3) rhs += C_func(m, kw, theta);
  if (rep.sub_arc == 4) rhs += D_func(m, kw, theta);
  rep.rhs = rhs;
  rep.residual = to_double(abs(rep.lhs - rep.rhs));
  rep.ok = rep.residual < tol;
  return rep;
}

}  // namespace kplus
