#include "kplus/qseries.hpp"

#include "kplus/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace kplus {

namespace {

const GaussianRational& zero_coeff() {
  static const GaussianRational z;
  return z;
}

std::vector<mpz_class> integer_view(std::span<const GaussianRational> c, size_t n) {
  std::vector<mpz_class> out(std::min(n, c.size()));
  for (size_t i = 0; i < out.size(); ++i) out[i] = c[i].re().get_num();
  return out;
}

}  // namespace

QSeries::QSeries(int valuation, std::vector<GaussianRational> coeffs, int prec)
    : valuation_(valuation), prec_(prec), coeffs_(std::move(coeffs)) {
  if (valuation_ + static_cast<int>(coeffs_.size()) > prec_) coeffs_.resize(std::max(0, prec_ - valuation_));
  if (valuation_ + static_cast<int>(coeffs_.size()) < prec_) coeffs_.resize(std::max(0, prec_ - valuation_));
  normalize();
}

void QSeries::normalize() {
  size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
  if (lead == coeffs_.size()) {
    coeffs_.clear();
    valuation_ = prec_;
    integral_ = true;
    return;
  }
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
    valuation_ += static_cast<int>(lead);
  }
  integral_ = std::all_of(coeffs_.begin(), coeffs_.end(), [](const GaussianRational& c) { return c.is_integer(); });
}

QSeries QSeries::zero(int prec) { return QSeries(prec, {}, prec); }

QSeries QSeries::one(int prec) { return monomial(0, 1, prec); }

QSeries QSeries::monomial(int exponent, GaussianRational c, int prec) {
  if (exponent >= prec) return zero(prec);
  std::vector<GaussianRational> v(static_cast<size_t>(prec - exponent));
  v[0] = std::move(c);
  return QSeries(exponent, std::move(v), prec);
}

QSeries QSeries::from_integers(int valuation, const std::vector<mpz_class>& c) {
  std::vector<GaussianRational> v;
  v.reserve(c.size());
  for (const auto& x : c) v.emplace_back(x);
  return QSeries(valuation, std::move(v), valuation + static_cast<int>(c.size()));
}

const GaussianRational& QSeries::coeff(int n) const {
  if (n >= prec_) throw PrecisionError("insufficient precision: coefficient " + std::to_string(n) + " requested, prec " + std::to_string(prec_));
  if (n < valuation_) return zero_coeff();
  return coeffs_[static_cast<size_t>(n - valuation_)];
}

QSeries QSeries::truncated(int prec) const {
  if (prec >= prec_) return *this;
  if (prec <= valuation_) return zero(prec);
  std::vector<GaussianRational> v(coeffs_.begin(), coeffs_.begin() + (prec - valuation_));
  return QSeries(valuation_, std::move(v), prec);
}

QSeries operator+(const QSeries& a, const QSeries& b) {
  int prec = std::min(a.prec(), b.prec());
  int val = std::min(a.valuation(), b.valuation());
  if (val >= prec) return QSeries::zero(prec);
  std::vector<GaussianRational> v(static_cast<size_t>(prec - val));
  for (int n = std::max(val, a.valuation()); n < prec && n < a.prec(); ++n) v[n - val] += a.coeff(n);
  for (int n = std::max(val, b.valuation()); n < prec && n < b.prec(); ++n) v[n - val] += b.coeff(n);
  return QSeries(val, std::move(v), prec);
}

QSeries operator-(const QSeries& a) {
  std::vector<GaussianRational> v(a.coefficients().begin(), a.coefficients().end());
  for (auto& c : v) c = -c;
  return QSeries(a.valuation(), std::move(v), a.prec());
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

QSeries operator*(const GaussianRational& c, const QSeries& a) {
  std::vector<GaussianRational> v(a.coefficients().begin(), a.coefficients().end());
  for (auto& x : v) x *= c;
  return QSeries(a.valuation(), std::move(v), a.prec());
}

QSeries operator*(const QSeries& a, const QSeries& b) {
  int prec = std::min(a.prec() + b.valuation(), b.prec() + a.valuation());
  if (a.is_zero() || b.is_zero()) return QSeries::zero(prec);
  int val = a.valuation() + b.valuation();
  if (val >= prec) return QSeries::zero(prec);
  size_t len = static_cast<size_t>(prec - val);
  auto ca = a.coefficients();
  auto cb = b.coefficients();
  std::vector<GaussianRational> out(len);
  if (a.is_integral() && b.is_integral()) {
    auto za = integer_view(ca, len);
    auto zb = integer_view(cb, len);
    std::vector<mpz_class> acc(len);
    for (size_t i = 0; i < za.size(); ++i) {
      if (sgn(za[i]) == 0) continue;
      size_t jmax = std::min(zb.size(), len - i);
      for (size_t j = 0; j < jmax; ++j) mpz_addmul(acc[i + j].get_mpz_t(), za[i].get_mpz_t(), zb[j].get_mpz_t());
    }
    for (size_t n = 0; n < len; ++n) out[n] = GaussianRational(acc[n]);
  } else {
    for (size_t i = 0; i < std::min(ca.size(), len); ++i) {
      if (ca[i].is_zero()) continue;
      size_t jmax = std::min(cb.size(), len - i);
      for (size_t j = 0; j < jmax; ++j) out[i + j] += ca[i] * cb[j];
    }
  }
  return QSeries(val, std::move(out), prec);
}

QSeries add(const QSeries& a, const QSeries& b) { return a + b; }
QSeries mul(const QSeries& a, const QSeries& b) { return a * b; }

QSeries invert(const QSeries& a) {
  if (a.is_zero()) throw std::domain_error("non-invertible");
  auto c = a.coefficients();
  size_t len = c.size();
  int val = -a.valuation();
  int prec = val + static_cast<int>(len);
  std::vector<GaussianRational> d(len);
  if (a.is_integral() && (c[0].re() == 1 || c[0].re() == -1)) {
    auto z = integer_view(c, len);
    std::vector<mpz_class> e(len);
    const mpz_class& lead = z[0];
    e[0] = lead;
    mpz_class acc;
    for (size_t n = 1; n < len; ++n) {
      acc = 0;
      for (size_t j = 1; j <= n; ++j) mpz_addmul(acc.get_mpz_t(), z[j].get_mpz_t(), e[n - j].get_mpz_t());
      e[n] = -acc * lead;
    }
    for (size_t n = 0; n < len; ++n) d[n] = GaussianRational(e[n]);
  } else {
    GaussianRational inv0 = c[0].inverse();
    d[0] = inv0;
    for (size_t n = 1; n < len; ++n) {
      GaussianRational acc;
      for (size_t j = 1; j <= n; ++j) acc += c[j] * d[n - j];
      d[n] = -(acc * inv0);
    }
  }
  return QSeries(val, std::move(d), prec);
}

QSeries pow(const QSeries& a, long e) {
  if (e == 0) {
    int rel = a.is_zero() ? 1 : a.prec() - a.valuation();
    return QSeries::one(std::max(rel, 1));
  }
  QSeries base = e < 0 ? invert(a) : a;
  unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
  QSeries result;
  bool have = false;
  while (n) {
    if (n & 1UL) {
      result = have ? result * base : base;
      have = true;
    }
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

QSeries substitute_power(const QSeries& a, int c) {
  if (c < 1) throw std::invalid_argument("substitute_power requires c >= 1");
  if (a.is_zero()) return QSeries::zero(a.prec() * c);
  auto src = a.coefficients();
  std::vector<GaussianRational> v(static_cast<size_t>((a.prec() - a.valuation()) * c));
  for (size_t i = 0; i < src.size(); ++i) v[i * static_cast<size_t>(c)] = src[i];
  return QSeries(a.valuation() * c, std::move(v), a.prec() * c);
}

QSeries q_derivative(const QSeries& a) {
  std::vector<GaussianRational> v(a.coefficients().begin(), a.coefficients().end());
  for (size_t i = 0; i < v.size(); ++i) v[i] *= GaussianRational(static_cast<long>(a.valuation() + static_cast<int>(i)));
  return QSeries(a.valuation(), std::move(v), a.prec());
}

QSeries shift_argument(const QSeries& a, int r) {
  std::vector<GaussianRational> v(a.coefficients().begin(), a.coefficients().end());
  for (size_t i = 0; i < v.size(); ++i) {
    long n = a.valuation() + static_cast<long>(i);
    v[i] *= GaussianRational::i_power(n * r);
  }
  return QSeries(a.valuation(), std::move(v), a.prec());
}

nlohmann::json to_json(const QSeries& a) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : a.coefficients()) {
    coeffs.push_back({c.re().get_num().get_str(), c.re().get_den().get_str(), c.im().get_num().get_str(),
                      c.im().get_den().get_str()});
  }
  return {{"valuation", a.valuation()}, {"prec", a.prec()}, {"coeffs", coeffs}};
}

QSeries series_from_json(const nlohmann::json& j) {
  std::vector<GaussianRational> v;
  for (const auto& c : j.at("coeffs")) {
    mpq_class re(mpz_class(c.at(0).get<std::string>()), mpz_class(c.at(1).get<std::string>()));
    mpq_class im(mpz_class(c.at(2).get<std::string>()), mpz_class(c.at(3).get<std::string>()));
    v.emplace_back(re, im);
  }
  return QSeries(j.at("valuation").get<int>(), std::move(v), j.at("prec").get<int>());
}

}  // namespace kplus
