#include "kplus/eval_engine.hpp"

#include "kplus/classical_forms.hpp"
#include "kplus/errors.hpp"

#include <algorithm>
#include <map>

namespace kplus {

namespace {

template <class R>
R to_real(const mpq_class& q) {
  if (sgn(q) == 0) return R(0);
  R num(q.get_num().get_str());
  if (q.get_den() == 1) return num;
  return num / R(q.get_den().get_str());
}

}  // namespace

template <unsigned Bits>
NumericSeries<Bits>::NumericSeries(const QSeries& s) : valuation_(s.valuation()), prec_(s.prec()) {
  auto c = s.coefficients();
  re_.reserve(c.size());
  for (const auto& x : c) {
    re_.push_back(to_real<R>(x.re()));
    if (!x.is_real()) real_ = false;
  }
  if (!real_) {
    im_.reserve(c.size());
    for (const auto& x : c) im_.push_back(to_real<R>(x.im()));
  }
}

template <unsigned Bits>
EvalResultN<Bits> NumericSeries<Bits>::eval(const C& tau) const {
  EvalResultN<Bits> out{C(0), R(0), R(0)};
  if (re_.empty()) return out;
  const R two_pi = 2 * pi_n<Bits>();
  const C two_pi_i(R(0), two_pi);
  C q = exp(two_pi_i * tau);
  R aq = abs(q);
  C s(0);
  for (size_t i = re_.size(); i-- > 0;) {
    s = s * q;
    s += real_ ? C(re_[i]) : C(re_[i], im_[i]);
  }
  C lead = exp(two_pi_i * tau * R(valuation_));
  out.value = s * lead;

  const size_t len = re_.size();
  const size_t window = std::max<size_t>(1, std::min<size_t>(50, len / 2));
  R pw = abs(lead);
  R m_last(0), m_prev(0);
  for (size_t i = 0; i < len; ++i) {
    R mag = real_ ? abs(re_[i]) : sqrt(re_[i] * re_[i] + im_[i] * im_[i]);
    R t = mag * pw;
    out.abs_sum += t;
    if (i + window >= len) m_last = std::max(m_last, t);
    else if (i + 2 * window >= len) m_prev = std::max(m_prev, t);
    pw *= aq;
  }
  if (m_last == 0) {
    out.tail_bound = m_prev == 0 ? R(0) : std::numeric_limits<R>::infinity();
    // no information beyond an all-zero window: fall back to the geometric factor of q itself
    if (m_prev != 0) out.tail_bound = 2 * m_prev * pow(aq, R(window)) / (1 - aq);
    return out;
  }
  if (m_prev == 0) {
    out.tail_bound = std::numeric_limits<R>::infinity();
    return out;
  }
  R rho = pow(m_last / m_prev, R(1) / R(window));
  if (rho >= 1) {
    out.tail_bound = std::numeric_limits<R>::infinity();
    return out;
  }
  out.tail_bound = 2 * m_last * rho / (1 - rho);
  return out;
}

template class NumericSeries<128>;
template class NumericSeries<256>;

EvalResult eval_qseries(const QSeries& series, const Complex& tau, double tolerance) {
  if (imag(tau) <= 0) throw std::domain_error("tau must lie in the upper half-plane");
  EvalResult r = NumericSeries<128>(series).eval(tau);
  if (r.tail_bound > Real(tolerance) * std::max(Real(1), Real(abs(r.value)))) {
    throw EvaluationError("insufficient series precision");
  }
  return r;
}

EvalResultN<256> eval_qseries_256(const QSeries& series, const Complex256& tau, double tolerance) {
  if (imag(tau) <= 0) throw std::domain_error("tau must lie in the upper half-plane");
  auto r = NumericSeries<256>(series).eval(tau);
  if (r.tail_bound > Real256(tolerance) * std::max(Real256(1), Real256(abs(r.value)))) {
    throw EvaluationError("insufficient series precision");
  }
  return r;
}

template <unsigned Bits>
ComplexN<Bits> arc_z(double theta) {
  using R = RealN<Bits>;
  R th(theta);
  return ComplexN<Bits>(R(-1) / 4 + cos(th) / 4, sin(th) / 4);
}

template ComplexN<128> arc_z<128>(double);
template ComplexN<256> arc_z<256>(double);

ArcPoint ArcPoint::at(double theta) {
  if (!(theta > 0 && theta < 3.14159265358979323846)) throw std::domain_error("theta must lie in (0, pi)");
  return {theta, arc_z<128>(theta)};
}

namespace {

template <unsigned Bits>
ArcValue weighted_impl(const BasisElement& e, const NumericSeries<Bits>& ns, double theta) {
  using R = RealN<Bits>;
  using C = ComplexN<Bits>;
  R th(theta);
  C z = arc_z<Bits>(theta);
  auto r = ns.eval(z);
  R k = R(2 * e.weight.s + 1) / 2;
  R damp = -pi_n<Bits>() * R(e.m) / 2 * sin(th);
  C w = exp(C(damp, k * th / 2));
  C val = w * r.value;
  R mag = exp(damp);
  ArcValue out{Real(real(val)), Real(imag(val)), Real(r.tail_bound * mag), Real(r.abs_sum * mag)};
  if (!(out.tail_bound <= Real(1e-20) * out.scale)) throw EvaluationError("insufficient series precision");
  Real absval = sqrt(out.value * out.value + out.imag_part * out.imag_part);
  if (abs(out.imag_part) > Real(1e-6) * std::max(absval, Real(1e-25) * out.scale)) {
    throw EvaluationError("real-valuedness violated");
  }
  return out;
}

}  // namespace

ArcForm::ArcForm(BasisElement e) : e_(std::move(e)), n128_(e_.series) {}

ArcValue ArcForm::weighted(double theta) const { return weighted_impl<128>(e_, n128_, theta); }

ArcValue ArcForm::weighted_high(double theta) const {
  std::call_once(hi_once_, [this] { n256_ = std::make_unique<NumericSeries<256>>(e_.series); });
  return weighted_impl<256>(e_, *n256_, theta);
}

Complex ArcForm::rotated(double theta) const {
  Real th(theta);
  auto r = n128_.eval(arc_z<128>(theta));
  Real k = Real(2 * e_.weight.s + 1) / 2;
  return exp(Complex(Real(0), k * th / 2)) * r.value;
}

Real weighted_arc_eval(const BasisElement& e, const ArcPoint& p) { return ArcForm(e).weighted(p.theta).value; }

int arc_precision(long m) { return static_cast<int>(160 + 14 * std::max(m, 0L)); }

Kernel::Kernel(const HalfIntWeight& k, int prec) : k_(k) {
  auto [a, b] = first_pair(k, prec);
  auto [c, d] = first_pair(k.dual(), prec);
  fk_ = a;
  fks_ = b;
  fd_ = c;
  fds_ = d;
  nfk_ = NumericSeries<128>(fk_.series);
  nfks_ = NumericSeries<128>(fks_.series);
  nfd_ = NumericSeries<128>(fd_.series);
  nfds_ = NumericSeries<128>(fds_.series);
  QSeries j = j4_series(prec);
  nj4_ = NumericSeries<128>(j);
  ndj4_ = NumericSeries<128>(q_derivative(j));
}

Complex Kernel::value(const NumericSeries<128>& s, const Complex& tau) const {
  if (imag(tau) <= 0) throw std::domain_error("tau must lie in the upper half-plane");
  auto r = s.eval(tau);
  if (!(r.tail_bound <= Real(1e-25) * r.abs_sum + Real(1e-40))) throw EvaluationError("insufficient series precision");
  return r.value;
}

Kernel::ZValues Kernel::at_z(const Complex& z) const { return {value(nfk_, z), value(nfks_, z), value(nj4_, z)}; }

Complex Kernel::F(const ZValues& zv, const Complex& tau) const {
  return zv.fk * value(nfds_, tau) + zv.fks * value(nfd_, tau);
}

Complex Kernel::B(const ZValues& zv, const Complex& tau) const {
  Complex den = j4(tau) - zv.j4;
  if (abs(den) < Real(1e-9)) throw EvaluationError("evaluation at pole");
  return F(zv, tau) / den;
}

Complex Kernel::F(const Complex& z, const Complex& tau) const {
  return value(nfk_, z) * value(nfds_, tau) + value(nfks_, z) * value(nfd_, tau);
}

Complex Kernel::j4(const Complex& tau) const { return value(nj4_, tau); }

Complex Kernel::dj4(const Complex& tau) const { return Complex(Real(0), 2 * pi_r()) * value(ndj4_, tau); }

Complex Kernel::B(const Complex& z, const Complex& tau) const {
  Complex den = j4(tau) - j4(z);
  if (abs(den) < Real(1e-9)) throw EvaluationError("evaluation at pole");
  return F(z, tau) / den;
}

Complex Kernel::A(const Complex& z, const Complex& tau) const {
  Complex den = dj4(tau);
  if (abs(den) < Real(1e-30)) throw EvaluationError("evaluation at a zero of dj4");
  return F(z, tau) / den;
}

const Kernel& kernel_for(const HalfIntWeight& kw) {
  static std::mutex mu;
  static std::map<long, std::unique_ptr<Kernel>> store;
  std::lock_guard lock(mu);
  auto& slot = store[kw.s];
  if (!slot) slot = std::make_unique<Kernel>(kw);
  return *slot;
}

Complex eval_Fk(const HalfIntWeight& kw, const Complex& z, const Complex& tau) { return kernel_for(kw).F(z, tau); }

Complex eval_Bk(const HalfIntWeight& kw, const Complex& z, const Complex& tau) { return kernel_for(kw).B(z, tau); }

double to_double(const Real& x) { return x.convert_to<double>(); }

}  // namespace kplus
