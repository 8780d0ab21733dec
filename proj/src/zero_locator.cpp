#include "kplus/zero_locator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kplus {

namespace {

long mod4(long x) { return ((x % 4) + 4) % 4; }

mpz_class ceil_q(const mpq_class& x) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

mpz_class floor_q(const mpq_class& x) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

int sign_of(const Real& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

}  // namespace

std::string_view trig_case_name(TrigCase c) {
  switch (c) {
    case TrigCase::SinNeg: return "SinNeg";
    case TrigCase::SinPos: return "SinPos";
    case TrigCase::Cos: return "Cos";
  }
  return "";
}

TrigCase trig_case(const HalfIntWeight& kw, long m) {
  bool kh_even = (kw.s + 1) % 2 == 0;
  switch (mod4(m)) {
    case 0: return TrigCase::Cos;
    case 1:
      if (kh_even) return TrigCase::SinNeg;
      break;
    case 3:
      if (!kh_even) return TrigCase::SinPos;
      break;
    default: break;
  }
  throw std::invalid_argument("(m, k) is outside the set T");
}

double h_func(const HalfIntWeight& kw, long m, double theta) {
  return kw.k_double() * theta / 2 - std::numbers::pi * static_cast<double>(m) * std::cos(theta) / 2;
}

double trig_target(const HalfIntWeight& kw, long m, double theta) {
  double md = static_cast<double>(m);
  return 2 * std::cos(kw.k_double() * theta / 2 + std::numbers::pi * md / 2 - std::numbers::pi * md * std::cos(theta) / 2);
}

double trig_target_reduced(const HalfIntWeight& kw, long m, double theta) {
  double h = h_func(kw, m, theta);
  switch (trig_case(kw, m)) {
    case TrigCase::SinNeg: return -2 * std::sin(h);
    case TrigCase::SinPos: return 2 * std::sin(h);
    case TrigCase::Cos: return 2 * std::cos(h);
  }
  return 0;
}

OscillationReport oscillation_count(const HalfIntWeight& kw, long m) {
  OscillationReport rep;
  rep.weight = kw;
  rep.m = m;
  rep.case_tag = trig_case(kw, m);
  mpq_class k = kw.k();
  mpz_class count;
  if (rep.case_tag == TrigCase::Cos) {
    mpq_class lo = k / 6 - mpq_class(m) / 4;
    mpq_class hi = k / 3 + mpq_class(m) / 4;
    count = floor_q(hi) - ceil_q(lo) + 1;
  } else {
    // odd j in [lo, hi]  <=>  (j+1)/2 in [(lo+1)/2, (hi+1)/2]
    mpq_class lo = k / 3 - mpq_class(m) / 2;
    mpq_class hi = 2 * k / 3 + mpq_class(m) / 2;
    count = floor_q((hi + 1) / 2) - ceil_q((lo + 1) / 2) + 1;
  }
  if (count < 0) count = 0;
  rep.predicted_points = count.get_si();
  long fl = m >= 0 ? m / 2 : -((-m + 1) / 2);
  rep.c_value = rep.predicted_points - (2 * kw.a + fl);
  return rep;
}

ZeroList scan_zeros(const ArcForm& f, long grid_size, double refine_tol) {
  const BasisElement& e = f.element();
  if (grid_size <= 0) grid_size = std::max(64L, 8 * oscillation_count(e.weight, e.m).predicted_points);
  const double delta = 1e-3;
  const double lo = std::numbers::pi / 3 + delta;
  const double hi = 2 * std::numbers::pi / 3 - delta;
  ZeroList out;
  out.refinement_tol = refine_tol;
  out.grid_size = grid_size;

  auto sign_at = [&](double th) {
    ArcValue v = f.weighted(th);
    if (abs(v.value) > 10 * v.tail_bound + Real(1e-30) * v.scale) return sign_of(v.value);
    ++out.escalations;
    return sign_of(Real(f.weighted_high(th).value));
  };

  double prev_t = lo;
  int prev_s = sign_at(lo);
  for (long i = 1; i <= grid_size; ++i) {
    double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid_size);
    int s = sign_at(t);
    if (s == 0) {
      out.thetas.push_back(t);
    } else if (prev_s != 0 && s != prev_s) {
      double a = prev_t, b = t;
      int sa = prev_s;
      while (b - a > refine_tol) {
        double mid = 0.5 * (a + b);
        int sm = sign_at(mid);
        if (sm == 0) {
          a = b = mid;
          break;
        }
        if (sm == sa) a = mid;
        else b = mid;
      }
      out.thetas.push_back(0.5 * (a + b));
    }
    prev_t = t;
    prev_s = s;
  }
  return out;
}

ZeroList scan_zeros(const BasisElement& e, long grid_size, double refine_tol) {
  return scan_zeros(ArcForm(e), grid_size, refine_tol);
}

GapReport approximation_gap(const ArcForm& f, const std::vector<double>& theta_grid) {
  GapReport g;
  for (double th : theta_grid) {
    double v = to_double(f.weighted(th).value);
    double gap = std::abs(v - trig_target(f.element().weight, f.element().m, th));
    if (gap > g.max_gap) {
      g.max_gap = gap;
      g.at_theta = th;
    }
  }
  return g;
}

}  // namespace kplus
