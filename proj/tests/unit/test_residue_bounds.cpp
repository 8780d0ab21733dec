#include "kplus/bounds_audit.hpp"
#include "kplus/classical_forms.hpp"
#include "kplus/residue_lab.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace kplus;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("matrix families") {
  for (int fam = 1; fam <= 4; ++fam)
    for (long r = -2; r <= 3; ++r) CHECK(MoebiusMatrix::make(fam, r).det() == 1);
  CHECK(pole_set(1).matrices.size() == 8);
  CHECK(pole_set(2).matrices.size() == 8);
  CHECK(pole_set(3).matrices.size() == 12);
  CHECK(pole_set(4).matrices.size() == 12);
  CHECK(sub_arc_of(kPi / 2) == 1);
  CHECK(sub_arc_of(0.55 * kPi) == 2);
  CHECK(sub_arc_of(0.35 * kPi) == 3);
  CHECK(sub_arc_of(0.65 * kPi) == 4);
}

TEST_CASE("pole sets agree with an independent strip count") {
  for (int d = 1; d <= 4; ++d) {
    double th = d == 1 ? 0.45 * kPi : d == 2 ? 0.55 * kPi : d == 3 ? 0.38 * kPi : 0.62 * kPi;
    Complex z = arc_z<128>(th);
    auto pts = pole_points(d, z);
    CHECK(static_cast<long>(pts.size()) == count_strip_poles(z, pole_set(d).v));
  }
}

TEST_CASE("kappa sums") {
  for (long s : {6L, 7L, 1L, 0L}) {
    HalfIntWeight w = HalfIntWeight::from_s(s);
    for (long m = 0; m < 12; ++m) {
      if (!T_membership(m, w)) continue;
      KappaSum ks = kappa_sum_identity(m, w);
      CHECK(ks.holds);
      CHECK(ks.bracket == GaussianRational(4));
    }
  }
  CHECK_THROWS(c_mk(1, HalfIntWeight::from_s(6)));
}

TEST_CASE("exact residue identity is independent of a") {
  for (long b : {6L, 11L, 19L})
    for (long a : {-1L, 0L, 1L})
      for (long r = 0; r < 4; ++r) {
        ExactCheck c = verify_Ak_exact(r, HalfIntWeight::from_s(12 * a + b), 60);
        CHECK(c.ok);
        CHECK(c.terms_checked >= 60);
      }
}

TEST_CASE("numeric residues at one point per sub-arc") {
  HalfIntWeight w = HalfIntWeight::parse("5/2");
  for (double f : {0.47, 0.53, 0.37, 0.63}) {
    double th = f * kPi;
    int d = sub_arc_of(th);
    Complex z = arc_z<128>(th);
    for (const auto& M : pole_set(d).matrices) CHECK(verify_Ak_numeric(M, w, z, 1e-6).ok);
  }
}

TEST_CASE("integral identity converges") {
  IntegralReport r = verify_integral_identity(HalfIntWeight::parse("5/2"), 4, 0.43 * kPi, 1e-6);
  CHECK(r.ok);
  CHECK(r.residual < 1e-10);
  IntegralReport s = verify_integral_identity(HalfIntWeight::parse("13/2"), 8, 0.37 * kPi, 1e-6);
  CHECK(s.ok);
  CHECK(s.sub_arc == 3);
}

TEST_CASE("threshold solver") {
  CHECK(threshold_solve(0.83353, 706609609, 2) == 109);
  CHECK(threshold_solve(0.83353, 3.6734, 1) == 8);
  CHECK(threshold_solve(0.60872, 127222365876, 2 - std::sqrt(2.0)) == 53);
  CHECK(threshold_solve(0.60872, 73.6934, 1) == 9);
  CHECK(threshold_solve(0.5, 1, 2) == 0);
  CHECK_THROWS(threshold_solve(1.5, 10, 1));
}

TEST_CASE("theta/F decomposition of the weight 13/2 pair") {
  auto [f, fs] = first_pair(HalfIntWeight::parse("13/2"), 80);
  auto c = theta_F_coefficients(f);
  REQUIRE(c.size() == 4);
  CHECK(c[0] == 0);
  CHECK(c[1] == 1);
  CHECK(c[2] == -18);
  CHECK(c[3] == 32);
  auto d = theta_F_coefficients(fs);
  CHECK(d[0] == 1);
  CHECK(d[1] == -26);
  CHECK(d[2] == 156);
  CHECK(d[3] == 0);
}

TEST_CASE("majorants at the lowest arc height") {
  BoundDomain z1 = BoundDomain::z1();
  CHECK(std::abs(min_height(z1) - std::sin(5 * kPi / 12) / 4) < 1e-12);
  CHECK(std::abs(majorant(theta_series(200), min_height(z1)) - 1.443247) < 5e-7);
  CHECK(std::abs(majorant(eis_F_series(200), min_height(z1)) - 0.264756) < 5e-7);
}

TEST_CASE("bracket inequalities") {
  BracketReport r = bracket_check({-1, 0, 1}, 12, 40);
  CHECK(r.ok);
  CHECK(r.worst_ratio < 1);
}
