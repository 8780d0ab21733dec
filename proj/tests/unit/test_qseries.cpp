#include "kplus/classical_forms.hpp"
#include "kplus/errors.hpp"
#include "kplus/qseries.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace kplus;
using testing_support::Rng;

namespace {

QSeries poly(int val, std::initializer_list<long> c, int prec) {
  std::vector<GaussianRational> v;
  for (long x : c) v.emplace_back(x);
  return QSeries(val, v, prec);
}

}  // namespace

TEST_CASE("addition renormalizes after cancellation") {
  QSeries a = poly(-1, {1, 2}, 5);
  QSeries b = poly(-1, {-1}, 5);
  QSeries s = a + b;
  CHECK(s.valuation() == 0);
  CHECK(s.coeff(0) == GaussianRational(2));
  CHECK(s.prec() == 5);

  QSeries th = theta_series(30);
  CHECK((th + (-th)).is_zero());
  QSeries two = th + th;
  CHECK(two.coeff(0) == GaussianRational(2));
  CHECK(two.coeff(1) == GaussianRational(4));
  CHECK(two.coeff(4) == GaussianRational(4));
  CHECK(two.coeff(2).is_zero());
}

TEST_CASE("theta cubed begins 1, 6, 12, 8, 6, 24, 24, 0, 12") {
  QSeries c = pow(theta_series(9), 3);
  const long want[] = {1, 6, 12, 8, 6, 24, 24, 0, 12};
  for (int n = 0; n < 9; ++n) CHECK(c.coeff(n) == GaussianRational(want[n]));
  CHECK(c == theta_series(9) * theta_series(9) * theta_series(9));
}

TEST_CASE("products track valuation and precision") {
  QSeries a = QSeries::monomial(-4, 1, 10);
  QSeries b = QSeries::monomial(4, 1, 20);
  QSeries p = a * b;
  CHECK(p.valuation() == 0);
  CHECK(p.coeff(0) == GaussianRational(1));
  CHECK(p.prec() == std::min(10 + 4, 20 - 4));

  QSeries d = delta4_series(80);
  QSeries one = d * invert(d);
  CHECK(one.valuation() == 0);
  for (int n = 1; n < one.prec(); ++n) CHECK(one.coeff(n).is_zero());
}

TEST_CASE("inversion") {
  QSeries g = invert(poly(0, {1, -1}, 12));
  for (int n = 0; n < 12; ++n) CHECK(g.coeff(n) == GaussianRational(1));
  CHECK(invert(delta_series(20)).valuation() == -1);
  QSeries di = invert(delta4_series(40));
  CHECK(di.valuation() == -4);
  CHECK(di.coeff(-4) == GaussianRational(1));
  CHECK(di.coeff(0) == GaussianRational(24));
  CHECK_THROWS(invert(QSeries::zero(10)));
}

TEST_CASE("powers") {
  QSeries th = theta_series(20);
  CHECK(pow(th, 0) == QSeries::one(pow(th, 0).prec()));
  CHECK(pow(delta4_series(60), -2).valuation() == -8);
}

TEST_CASE("substitute_power scales exponents") {
  QSeries s = substitute_power(poly(1, {1, -24}, 3), 4);
  CHECK(s.valuation() == 4);
  CHECK(s.coeff(8) == GaussianRational(-24));
  CHECK(s.prec() == 12);
  CHECK(substitute_power(QSeries::one(5), 4) == QSeries::one(20));
  CHECK(substitute_power(j_series(10), 4).valuation() == -4);
}

TEST_CASE("q_derivative") {
  CHECK(q_derivative(QSeries::one(10)).is_zero());
  QSeries d = q_derivative(QSeries::monomial(-4, 1, 10));
  CHECK(d.coeff(-4) == GaussianRational(-4));
  QSeries dj = q_derivative(j4_series(40));
  CHECK(dj.coeff(-4) == GaussianRational(-4));
  CHECK(dj.coeff(0).is_zero());
}

TEST_CASE("shift_argument multiplies by powers of i") {
  QSeries th = theta_series(30);
  CHECK(shift_argument(th, 0) == th);
  CHECK(shift_argument(QSeries::monomial(1, 1, 5), 2).coeff(1) == GaussianRational(-1));
  QSeries s = shift_argument(th, 1);
  CHECK(s.coeff(1) == GaussianRational(0, 2));
  CHECK(s.coeff(4) == GaussianRational(2));
  CHECK(s.coeff(9) == GaussianRational(0, 2));
}

TEST_CASE("precision window is enforced") {
  QSeries th = theta_series(10);
  CHECK_THROWS_AS(th.coeff(10), PrecisionError);
}

TEST_CASE("property: ring axioms on random series") {
  Rng rng(testing_support::g_seed);
  for (int trial = 0; trial < 40; ++trial) {
    QSeries a = random_series(rng, 12), b = random_series(rng, 12), c = random_series(rng, 12);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
  }
}

TEST_CASE("property: inverse, substitution and shift morphisms") {
  Rng rng(testing_support::g_seed ^ 0x5151);
  for (int trial = 0; trial < 30; ++trial) {
    QSeries a = random_series(rng, 14), b = random_series(rng, 14);
    QSeries one = a * invert(a);
    CHECK(one == QSeries::one(one.prec()).truncated(one.prec()));
    int c = static_cast<int>(rng.range(2, 4));
    CHECK(substitute_power(a * b, c) == substitute_power(a, c) * substitute_power(b, c));
    int r = static_cast<int>(rng.range(0, 3));
    CHECK(shift_argument(a * b, r) == shift_argument(a, r) * shift_argument(b, r));
    CHECK(shift_argument(shift_argument(shift_argument(shift_argument(a, 1), 1), 1), 1) == a);
    CHECK(q_derivative(a * b) == q_derivative(a) * b + a * q_derivative(b));
  }
}

TEST_CASE("json round trip") {
  QSeries j = j4_series(20);
  CHECK(series_from_json(to_json(j)) == j);
}
