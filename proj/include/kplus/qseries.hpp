#pragma once

#include "kplus/gaussian_rational.hpp"

#include <json.hpp>

#include <span>
#include <vector>

namespace kplus {

/// Truncated Laurent series sum_{valuation <= n < prec} c_n q^n.
/// A zero series is stored with valuation == prec (only O(q^prec) is known).
class QSeries {
 public:
  QSeries() = default;
  QSeries(int valuation, std::vector<GaussianRational> coeffs, int prec);

  static QSeries zero(int prec);
  static QSeries one(int prec);
  static QSeries monomial(int exponent, GaussianRational c, int prec);
  /// Builds from integer coefficients c[0] at exponent `valuation`; prec = valuation + c.size().
  static QSeries from_integers(int valuation, const std::vector<mpz_class>& c);

  int valuation() const { return valuation_; }
  int prec() const { return prec_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_integral() const { return integral_; }

  /// Coefficient of q^n; zero below the valuation, error at or above prec.
  const GaussianRational& coeff(int n) const;
  std::span<const GaussianRational> coefficients() const { return coeffs_; }

  QSeries truncated(int prec) const;

  friend bool operator==(const QSeries& a, const QSeries& b) {
    return a.valuation_ == b.valuation_ && a.prec_ == b.prec_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void normalize();

  int valuation_ = 0;
  int prec_ = 0;
  bool integral_ = true;
  std::vector<GaussianRational> coeffs_;
};

QSeries operator+(const QSeries& a, const QSeries& b);
QSeries operator-(const QSeries& a, const QSeries& b);
QSeries operator-(const QSeries& a);
QSeries operator*(const QSeries& a, const QSeries& b);
QSeries operator*(const GaussianRational& c, const QSeries& a);

QSeries add(const QSeries& a, const QSeries& b);
QSeries mul(const QSeries& a, const QSeries& b);
QSeries invert(const QSeries& a);
QSeries pow(const QSeries& a, long e);
QSeries substitute_power(const QSeries& a, int c);
/// q d/dq, without any 2*pi*i factor.
QSeries q_derivative(const QSeries& a);
/// a(tau + r/4): the coefficient of q^n picks up i^(n r).
QSeries shift_argument(const QSeries& a, int r);

nlohmann::json to_json(const QSeries& a);
QSeries series_from_json(const nlohmann::json& j);

}  // namespace kplus
