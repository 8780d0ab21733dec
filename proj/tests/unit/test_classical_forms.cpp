#include "kplus/classical_forms.hpp"
#include "kplus/eval_engine.hpp"

#include <doctest.h>

#include <cmath>

using namespace kplus;

TEST_CASE("Hurwitz class numbers from reduced forms") {
  // 12 H(n) for small n, with H(3) = 1/3 and H(4) = 1/2 from the ambiguous forms.
  const std::pair<long, long> known[] = {{3, 4}, {4, 6}, {7, 12}, {8, 12}, {11, 12}, {12, 16}, {15, 24}, {16, 18},
                                         {19, 12}, {20, 24}, {23, 36}, {24, 24}};
  for (auto [n, v] : known) CHECK(hurwitz_brute(n).twelveH == v);
  for (long n : {1L, 2L, 5L, 6L}) CHECK(hurwitz_brute(n).twelveH == 0);
}

TEST_CASE("Gauss's rule on the four residue cases") {
  CHECK(gauss_h(0) == 1);
  CHECK(gauss_h(1) == 6);
  CHECK(gauss_h(2) == 12);
  CHECK(gauss_h(3) == 8);
  CHECK(gauss_h(7) == 0);
  CHECK(gauss_h(4) == gauss_h(1));
  CHECK(gauss_h(5) == 24);
}

TEST_CASE("theta cubed equals Gauss's count up to 600") {
  QSeries c = pow(theta_series(601), 3);
  for (long n = 0; n <= 600; ++n) CHECK(c.coeff(static_cast<int>(n)) == GaussianRational(gauss_h(n)));
}

TEST_CASE("Delta agrees with the Eisenstein identity") {
  const int P = 60;
  QSeries e4 = e4_series(P), e6 = detail::e6_series(P);
  QSeries lhs = pow(e4, 3) - pow(e6, 2);
  QSeries rhs = GaussianRational(1728) * delta_series(P);
  for (int n = 0; n < P; ++n) CHECK(lhs.coeff(n) == rhs.coeff(n));
  CHECK(delta_series(5).coeff(2) == GaussianRational(-24));
  CHECK(delta_series(5).coeff(3) == GaussianRational(252));
}

TEST_CASE("j and j(4z)") {
  QSeries j = j_series(10);
  CHECK(j.valuation() == -1);
  CHECK(j.coeff(0) == GaussianRational(744));
  CHECK(j.coeff(1) == GaussianRational(196884));
  QSeries j4 = j4_series(120);
  QSeries tail = j4 - QSeries::monomial(-4, 1, 120) - QSeries::monomial(0, 744, 120);
  CHECK(tail.valuation() >= 4);
  CHECK(tail.is_integral());
}

TEST_CASE("F is the odd divisor sum series") {
  QSeries F = eis_F_series(40);
  for (int n = 0; n < 40; ++n) {
    long want = 0;
    if (n % 2 == 1)
      for (int d = 1; d <= n; ++d)
        if (n % d == 0) want += d;
    CHECK(F.coeff(n) == GaussianRational(want));
  }
}

TEST_CASE("form names round trip") {
  for (FormName f : {FormName::Theta, FormName::EisF, FormName::Delta4, FormName::E4at4, FormName::J4, FormName::DJ4}) {
    auto parsed = parse_form_name(form_name(f));
    REQUIRE(parsed);
    CHECK(*parsed == f);
  }
  CHECK_FALSE(parse_form_name("nope"));
}

TEST_CASE("evaluation against independent values") {
  // mpmath jtheta(3, 0, e^{-2 pi}) and 1728 kleinj(i).
  EvalResult t = eval_qseries(theta_series(40), Complex(Real(0), Real(1)));
  CHECK(std::abs(to_double(real(t.value)) - 1.003734885487739091) < 1e-15);
  EvalResult j = eval_qseries(j4_series(200), Complex(Real(0), Real(0.25)), 1e-20);
  CHECK(std::abs(to_double(real(j.value)) - 1728.0) < 1e-12);
  CHECK(std::abs(to_double(imag(j.value))) < 1e-12);

  Complex tau(Real(0.1), Real(0.3));
  EvalResult th = eval_qseries(theta_series(200), tau);
  CHECK(std::abs(to_double(real(th.value)) - 1.2448155855549086842) < 1e-15);
  CHECK(std::abs(to_double(imag(th.value)) - 0.1791184462725391368) < 1e-15);
  EvalResult F = eval_qseries(eis_F_series(200), tau);
  CHECK(std::abs(to_double(real(F.value)) - 0.11802262729089207047) < 1e-15);
  CHECK(std::abs(to_double(imag(F.value)) - 0.10254883231676692154) < 1e-15);
}
