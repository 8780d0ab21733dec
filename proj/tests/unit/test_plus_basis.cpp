#include "kplus/classical_forms.hpp"
#include "kplus/plus_basis.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace kplus;

TEST_CASE("weight parsing accepts only <odd>/2") {
  CHECK(HalfIntWeight::parse("13/2").s == 6);
  CHECK(HalfIntWeight::parse("-9/2").s == -5);
  for (const char* bad : {"6.5", "13", "12/2", "13/4", "x/2", "13/2 "}) CHECK_THROWS(HalfIntWeight::parse(bad));
}

TEST_CASE("weight decompositions") {
  HalfIntWeight w = HalfIntWeight::from_s(31);
  CHECK(w.a == 1);
  CHECK(w.b == 19);
  CHECK(12 * w.a + w.b == w.s);
  CHECK(6 * w.ell + w.kprime / 2 == w.s);
  HalfIntWeight n = HalfIntWeight::from_s(-6);
  CHECK(n.a == -1);
  CHECK(n.b == 6);
  CHECK(N_of(HalfIntWeight::from_s(6)) == 1);
  CHECK(N_of(HalfIntWeight::from_s(19)) == 4);
  CHECK(decompose_weight(mpq_class(13, 2)).s == 6);
}

TEST_CASE("plus support and admissibility") {
  HalfIntWeight half = HalfIntWeight::parse("1/2");
  CHECK(in_plus_support(half, 0));
  CHECK(in_plus_support(half, 1));
  CHECK_FALSE(in_plus_support(half, 2));
  HalfIntWeight tq = HalfIntWeight::parse("3/2");
  CHECK(in_plus_support(tq, 3));
  CHECK_FALSE(in_plus_support(tq, 1));
  CHECK(is_admissible(tq, 1));
  CHECK_FALSE(is_admissible(tq, 2));
  auto ms = admissible_m(HalfIntWeight::parse("13/2"), 4);
  CHECK(ms.front() == -1);
  CHECK(ms.size() == 4);
}

TEST_CASE("known basis elements") {
  BasisElement th = basis_element(HalfIntWeight::parse("1/2"), 0, 60);
  CHECK(th.series == theta_series(60));

  BasisElement f = basis_element(HalfIntWeight::parse("13/2"), -1, 30);
  CHECK(f.series.coeff(1) == GaussianRational(1));
  CHECK(f.series.coeff(4) == GaussianRational(-56));
  CHECK(f.series.coeff(5) == GaussianRational(120));
  CHECK(f.series.coeff(8) == GaussianRational(-240));

  BasisElement g = basis_element(HalfIntWeight::parse("39/2"), -4, 30);
  CHECK(g.series.coeff(4) == GaussianRational(1));
  CHECK(g.series.coeff(7) == GaussianRational(56));
  CHECK(g.series.coeff(8) == GaussianRational(342));
}

TEST_CASE("weights 1/2 and 3/2 reproduce the classical traces") {
  HalfIntWeight half = HalfIntWeight::parse("1/2"), tq = HalfIntWeight::parse("3/2");
  CHECK(coefficient(half, 3, 1) == -248);
  CHECK(coefficient(half, 3, 4) == 26752);
  CHECK(coefficient(tq, 1, 0) == -2);
  CHECK(coefficient(tq, 1, 3) == 248);
  CHECK(coefficient(tq, 1, 4) == -492);
}

TEST_CASE("duality on small ranges") {
  for (const char* k : {"1/2", "5/2", "-3/2"}) {
    DualityReport d = duality_check(HalfIntWeight::parse(k), 20, 20);
    CHECK(d.ok);
    CHECK(d.pairs_checked > 0);
  }
}

TEST_CASE("C table cases") {
  CHECK(c_constant(HalfIntWeight::from_s(6), 0) == 1);
  CHECK(c_constant(HalfIntWeight::from_s(13), 1) == mpq_class(3, 4));
  CHECK(c_constant(HalfIntWeight::from_s(12), 1) == mpq_class(7, 4));
  CHECK(c_constant(HalfIntWeight::from_s(9), 0) == mpq_class(3, 2));
}

TEST_CASE("valence holds on a sweep") {
  for (long s = -4; s <= 14; s += 3) {
    HalfIntWeight w = HalfIntWeight::from_s(s);
    for (const auto& e : basis_elements(w, admissible_m(w, 5), 150)) {
      REQUIRE(e.zero_count);
      CHECK(*e.zero_count >= 0);
      CHECK(valence_check(e));
    }
  }
}

TEST_CASE("column test preconditions and outcome") {
  HalfIntWeight k = HalfIntWeight::parse("13/2");
  CHECK_THROWS_AS(lehmer_column_check(k, 4, 1), std::invalid_argument);
  CHECK(lehmer_column_check(k, 4, 12));
}

TEST_CASE("property: random basis elements are integral and gapped") {
  testing_support::Rng rng(testing_support::g_seed ^ 0xbeef);
  for (int trial = 0; trial < 12; ++trial) {
    HalfIntWeight w = HalfIntWeight::from_s(rng.range(-6, 17));
    auto ms = admissible_m(w, 10);
    long m = ms[static_cast<size_t>(rng.range(0, 9))];
    BasisElement e = basis_element(w, m, 120);
    CHECK(e.series.valuation() == -m);
    CHECK(e.series.is_integral());
    for (long n = -m + 1; n <= N_of(w); ++n) CHECK(e.series.coeff(static_cast<int>(n)).is_zero());
    for (int n = e.series.valuation(); n < e.series.prec(); ++n)
      if (!e.series.coeff(n).is_zero()) CHECK(in_plus_support(w, n));
  }
}

TEST_CASE("json export") {
  auto j = to_json(basis_element(HalfIntWeight::parse("13/2"), -1, 20));
  CHECK(j["weight"] == "13/2");
  CHECK(j["N"] == 1);
  CHECK(j["m"] == -1);
}
