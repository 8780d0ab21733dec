#include "kplus/classical_forms.hpp"
#include "kplus/eval_engine.hpp"
#include "kplus/zero_locator.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace kplus;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("f_{13/2} on the arc matches an independent theta/F evaluation") {
  // mpmath: e^{13 i theta/4} (theta^9 F - 18 theta^5 F^2 + 32 theta F^3) at theta = 0.45 pi.
  ArcForm f(basis_element(HalfIntWeight::parse("13/2"), -1, arc_precision(-1)));
  Complex v = f.rotated(0.45 * kPi);
  CHECK(std::abs(to_double(real(v)) + 0.31992268997529939277) < 1e-14);
  CHECK(std::abs(to_double(imag(v))) < 1e-14);
}

TEST_CASE("j(4z) is real on the arc with the stated ranges") {
  QSeries j4 = j4_series(300);
  for (int i = 1; i < 40; ++i) {
    double th = kPi / 3 + (kPi / 3) * i / 40.0;
    EvalResult r = eval_qseries(j4, arc_z<128>(th), 1e-20);
    double re = to_double(real(r.value));
    CHECK(std::abs(to_double(imag(r.value))) < 1e-8);
    if (th >= 5 * kPi / 12 && th <= 7 * kPi / 12) {
      CHECK(re >= 582.84 - 1e-6);
      CHECK(re <= 1728 + 1e-6);
    } else {
      CHECK(re >= -1e-6);
      CHECK(re <= 582.9);
    }
  }
  EvalResult mid = eval_qseries(j4, arc_z<128>(0.45 * kPi), 1e-20);
  CHECK(std::abs(to_double(real(mid.value)) - 1198.3188466243943845) < 1e-10);
}

TEST_CASE("doubling precision moves values by less than the tail bound") {
  HalfIntWeight w = HalfIntWeight::parse("3/2");
  BasisElement lo = basis_element(w, 8, 120), hi = basis_element(w, 8, 240);
  for (double f : {0.36, 0.5, 0.61}) {
    Complex z = arc_z<128>(f * kPi);
    EvalResult a = eval_qseries(lo.series, z, 1e-12), b = eval_qseries(hi.series, z, 1e-25);
    CHECK(to_double(abs(a.value - b.value)) <= to_double(a.tail_bound) + 1e-30);
  }
}

TEST_CASE("weighted values are real for random elements") {
  testing_support::Rng rng(testing_support::g_seed ^ 0x77);
  for (int trial = 0; trial < 6; ++trial) {
    HalfIntWeight w = HalfIntWeight::from_s(rng.range(-5, 12));
    auto ms = admissible_m(w, 8);
    long m = ms[static_cast<size_t>(rng.range(0, 7))];
    ArcForm f(basis_element(w, m, arc_precision(m)));
    double th = kPi / 3 + (kPi / 3) * static_cast<double>(rng.range(1, 99)) / 100.0;
    Complex v = f.rotated(th);
    CHECK(to_double(abs(imag(v)) / abs(v)) < 1e-20);
  }
}

TEST_CASE("trigonometric cases") {
  HalfIntWeight k13 = HalfIntWeight::parse("13/2"), k3 = HalfIntWeight::parse("3/2");
  CHECK(trig_case(k13, 8) == TrigCase::Cos);
  CHECK(trig_case(k13, 3) == TrigCase::SinPos);
  CHECK(trig_case(k3, 1) == TrigCase::SinNeg);
  CHECK_THROWS(trig_case(k13, 1));
  for (auto [w, m] : {std::pair{k13, 8L}, {k13, 3L}, {k3, 1L}, {k3, 16L}})
    for (double f : {0.35, 0.5, 0.64})
      CHECK(std::abs(trig_target(w, m, f * kPi) - trig_target_reduced(w, m, f * kPi)) < 1e-12);
}

TEST_CASE("oscillation counts by brute force") {
  for (long s : {6L, 8L, 13L, 19L, 30L}) {
    HalfIntWeight w = HalfIntWeight::from_s(s);
    for (long m = 0; m < 20; ++m) {
      bool inT = m % 4 == 0 || (m % 4 == 1 && (s + 1) % 2 == 0) || (m % 4 == 3 && (s + 1) % 2 == 1);
      if (!inT) continue;
      double k = w.k_double();
      long count = 0;
      for (long n = -200; n <= 200; ++n) {
        double x = static_cast<double>(n) - m / 2.0;
        if (x > (k / 6 - m / 4.0) && x < (k / 3 + m / 4.0)) ++count;
      }
      CHECK(oscillation_count(w, m).predicted_points == count);
    }
  }
}

TEST_CASE("zero scan is stable under grid refinement") {
  ArcForm f(basis_element(HalfIntWeight::parse("1/2"), 12, arc_precision(12)));
  ZeroList a = scan_zeros(f), b = scan_zeros(f, 2 * a.grid_size);
  CHECK(b.thetas.size() >= a.thetas.size());
  CHECK(a.thetas.size() >= 6);
  for (double th : a.thetas) CHECK(std::abs(to_double(f.weighted_high(th).value)) < 1e-6);
}
