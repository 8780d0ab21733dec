#include "kplus/bounds_audit.hpp"

#include "kplus/classical_forms.hpp"
#include "kplus/errors.hpp"
#include "kplus/residue_lab.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace kplus {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kSeriesPrec = 400;

struct Piece {
  double lo, hi;
};

std::vector<Piece> pieces_of(const BoundDomain& dom) {
  if (dom.kind == BoundDomain::Kind::TauSegment) return {{-0.5, 0.5}};
  std::vector<Piece> out;
  for (auto [lo, hi] : dom.arcs) out.push_back({lo, hi});
  return out;
}

}  // namespace

BoundDomain BoundDomain::tau1() { return {"tau1", Kind::TauSegment, 0.2125, {}, 4096}; }
BoundDomain BoundDomain::tau2() { return {"tau2", Kind::TauSegment, 0.1375, {}, 4096}; }
BoundDomain BoundDomain::z1() { return {"z1", Kind::ArcRange, 0, {{5 * kPi / 12, 7 * kPi / 12}}, 4096}; }
BoundDomain BoundDomain::z2() {
  return {"z2", Kind::ArcRange, 0, {{kPi / 3, 5 * kPi / 12}, {7 * kPi / 12, 2 * kPi / 3}}, 4096};
}

Complex BoundDomain::point(double x) const {
  if (kind == Kind::TauSegment) return Complex(Real(x), Real(v));
  return arc_z<128>(x);
}

Extremum grid_extremum(const std::function<Real(const Complex&)>& expr, const BoundDomain& dom, Direction dir,
                       long grid) {
  if (grid <= 0) grid = dom.grid_points;
  if (grid < 64) throw std::invalid_argument("grid must have at least 64 nodes");
  const double sgn = dir == Direction::UpperBound ? 1.0 : -1.0;
  auto g = [&](double x) { return sgn * to_double(expr(dom.point(x))); };

  Extremum ex;
  double best = -std::numeric_limits<double>::infinity();
  double best_x = 0, best_lo = 0, best_hi = 0;
  double slack = 0;
  for (const auto& p : pieces_of(dom)) {
    const double h = (p.hi - p.lo) / static_cast<double>(grid);
    std::vector<double> vals(static_cast<size_t>(grid) + 1);
    for (long i = 0; i <= grid; ++i) vals[i] = g(p.lo + h * static_cast<double>(i));
    for (long i = 1; i < grid; ++i) slack = std::max(slack, std::abs(vals[i + 1] - 2 * vals[i] + vals[i - 1]) / 8);
    for (long i = 0; i <= grid; ++i) {
      if (vals[i] > best) {
        best = vals[i];
        best_x = p.lo + h * static_cast<double>(i);
        best_lo = std::max(p.lo, best_x - h);
        best_hi = std::min(p.hi, best_x + h);
      }
    }
  }
  auto neg = [&](double x) { return -g(x); };
  auto [xr, fr] = boost::math::tools::brent_find_minima(neg, best_lo, best_hi, 52);
  double refined = std::max(best, -fr);
  ex.grid_value = sgn * best;
  ex.slack = slack;
  ex.bound = sgn * (best + slack);
  ex.refined = sgn * refined;
  ex.argument = -fr > best ? xr : best_x;
  return ex;
}

std::function<Real(const Complex&)> abs_of(const QSeries& series, double tail_margin) {
  auto ns = std::make_shared<NumericSeries<128>>(series);
  return [ns, tail_margin](const Complex& tau) {
    auto r = ns->eval(tau);
    if (!(r.tail_bound <= Real(tail_margin) * r.abs_sum)) throw EvaluationError("tail exceeds margin");
    return abs(r.value);
  };
}

std::vector<BoundRecord> audit_records(long grid) {
  using D = Direction;
  std::vector<BoundRecord> out;
  const BoundDomain doms[4] = {BoundDomain::tau1(), BoundDomain::tau2(), BoundDomain::z1(), BoundDomain::z2()};

  auto push = [&](std::string q, const BoundDomain& dom, const std::function<Real(const Complex&)>& f, D dir,
                  double claimed) {
    Extremum e = grid_extremum(f, dom, dir, grid);
    BoundRecord r{std::move(q), dom.name, e.bound, e.refined, claimed, dir, false};
    if (dir == D::UpperBound) r.ok = r.computed <= claimed * (1 + 1e-3);
    else r.ok = claimed == 0 ? r.computed >= -1e-3 : r.computed >= claimed * (1 - 1e-3);
    out.push_back(std::move(r));
  };

  auto theta = abs_of(theta_series(kSeriesPrec));
  auto delta = abs_of(delta4_series(kSeriesPrec));
  auto eisF = abs_of(eis_F_series(kSeriesPrec));
  const double theta_ub[4] = {1.53583, 1.90697, 1.44325, 1.52182};
  const double delta_lo[4] = {0.00407, 0.01, 0.0015, 0.0015};
  const double delta_hi[4] = {0.00551, 0.11054, 0.00246, 0.00491};
  const double F_ub[4] = {0.34440, 0.82688, 0.26477, 0.33151};
  for (int i = 0; i < 4; ++i) {
    push("|theta|", doms[i], theta, D::UpperBound, theta_ub[i]);
    push("|Delta(4.)|", doms[i], delta, D::LowerBound, delta_lo[i]);
    push("|Delta(4.)|", doms[i], delta, D::UpperBound, delta_hi[i]);
    push("|F|", doms[i], eisF, D::UpperBound, F_ub[i]);
  }

  auto jn = std::make_shared<NumericSeries<128>>(j4_series(kSeriesPrec));
  auto jre = [jn](const Complex& z) { return real(jn->eval(z).value); };
  Extremum jz1lo = grid_extremum(jre, doms[2], D::LowerBound, grid);
  Extremum jz1hi = grid_extremum(jre, doms[2], D::UpperBound, grid);
  Extremum jz2lo = grid_extremum(jre, doms[3], D::LowerBound, grid);
  Extremum jz2hi = grid_extremum(jre, doms[3], D::UpperBound, grid);
  push("j(4z)", doms[2], jre, D::LowerBound, 582.84);
  push("j(4z)", doms[2], jre, D::UpperBound, 1728);
  push("j(4z)", doms[3], jre, D::LowerBound, 0);
  push("j(4z)", doms[3], jre, D::UpperBound, 582.9);

  auto jdist = [jn](double lo, double hi) {
    return [jn, lo, hi](const Complex& tau) {
      Complex j = jn->eval(tau).value;
      Real x = real(j);
      Real clamped = x < Real(lo) ? Real(lo) : (x > Real(hi) ? Real(hi) : x);
      return abs(j - Complex(clamped));
    };
  };
  push("|j(4tau)-j(4z)|", doms[0], jdist(jz1lo.refined, jz1hi.refined), D::LowerBound, 132);
  out.back().domain = "tau1 x z1";
  push("|j(4tau)-j(4z)|", doms[1], jdist(jz2lo.refined, jz2hi.refined), D::LowerBound, 1200);
  out.back().domain = "tau2 x z2";

  auto [f13, f13s] = first_pair(HalfIntWeight::from_s(6), kSeriesPrec);
  auto [f39, f39s] = first_pair(HalfIntWeight::from_s(19), kSeriesPrec);
  push("|f_{13/2}|", doms[2], abs_of(f13.series), D::UpperBound, 15.95180790);
  push("|f*_{13/2}|", doms[2], abs_of(f13s.series), D::UpperBound, 373.3811270);
  push("|f_{39/2}|", doms[0], abs_of(f39.series), D::UpperBound, 2070.877536);
  push("|f*_{39/2}|", doms[0], abs_of(f39s.series), D::UpperBound, 48384.64244);
  push("|f_{13/2}|", doms[3], abs_of(f13.series), D::UpperBound, 32.43415);
  push("|f*_{13/2}|", doms[3], abs_of(f13s.series), D::UpperBound, 752.09673);
  push("|f_{39/2}|", doms[1], abs_of(f39.series), D::UpperBound, 10147561.12);
  push("|f*_{39/2}|", doms[1], abs_of(f39s.series), D::UpperBound, 235391937.7);

  auto push_majorant = [&](std::string q, const BasisElement& e, const BoundDomain& dom, double claimed) {
    double v = polynomial_majorant(e, dom);
    out.push_back({std::move(q), dom.name + " (theta/F majorant)", v, v, claimed, D::UpperBound, v <= claimed * (1 + 1e-3)});
  };
  push_majorant("|f_{13/2}|", f13, doms[2], 15.95180790);
  push_majorant("|f*_{13/2}|", f13s, doms[2], 373.3811270);
  push_majorant("|f_{39/2}|", f39, doms[0], 2070.877536);
  push_majorant("|f*_{39/2}|", f39s, doms[0], 48384.64244);
  push_majorant("|f_{13/2}|", f13, doms[3], 32.43415);
  push_majorant("|f*_{13/2}|", f13s, doms[3], 752.09673);
  push_majorant("|f_{39/2}|", f39, doms[1], 10147561.12);
  push_majorant("|f*_{39/2}|", f39s, doms[1], 235391937.7);
  return out;
}

BracketReport bracket_check(const std::vector<long>& a_values, long m_extra, long theta_samples) {
  BracketReport rep;
  const double lo1 = kPi / 3, hi1 = 5 * kPi / 12;
  rep.sin_bracket_max = -1;
  rep.cot_bracket_min = 1;
  for (long i = 1; i <= theta_samples; ++i) {
    double th = lo1 + (hi1 - lo1) * static_cast<double>(i) / static_cast<double>(theta_samples);
    double s = 2 * std::sin(th / 2);
    double c = 1 / (2 * std::tan(th / 2)) - std::sin(th);
    rep.sin_bracket_max = std::max(rep.sin_bracket_max, s);
    rep.cot_bracket_min = std::min(rep.cot_bracket_min, c);
    // the quoted brackets are rounded to six places
    if (s < 1 || s > 1.21752 + 5e-6 || c > 0 || c < -0.314313 - 5e-7) rep.ok = false;
  }
  static const long S[] = {6, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 19};
  const double root2 = std::sqrt(2.0);
  for (long a : a_values) {
    for (long b : S) {
      HalfIntWeight kw = HalfIntWeight::from_s(12 * a + b);
      long m0 = static_cast<long>(std::ceil(4.8 * static_cast<double>(std::abs(a))));
      for (long m = m0; m <= m0 + m_extra; ++m) {
        if (!T_membership(m, kw)) continue;
        for (long i = 1; i <= theta_samples; ++i) {
          double t = static_cast<double>(i) / static_cast<double>(theta_samples);
          double th1 = lo1 + (hi1 - lo1) * t;
          double th4 = kPi - th1;
          double r1 = to_double(abs(C_func(m, kw, th1))) / root2;
          double r4 = to_double(abs(D_func(m, kw, th4))) / root2;
          rep.worst_ratio = std::max({rep.worst_ratio, r1, r4});
          ++rep.samples;
          if (r1 >= 1 || r4 >= 1) rep.ok = false;
        }
      }
    }
  }
  return rep;
}

const std::vector<std::pair<long, std::pair<long, long>>>& bound_table_entries() {
  static const std::vector<std::pair<long, std::pair<long, long>>> t = {
      {6, {706609608, 127222365875}}, {8, {554055912, 51930014336}},  {9, {478100088, 32392878212}},
      {10, {427574714, 20854624833}}, {11, {408921890, 14417163525}}, {12, {325238946, 8284899739}},
      {13, {288599577, 5296681421}},  {14, {273853210, 3640432156}},  {15, {220558615, 2114574952}},
      {16, {196218970, 1353920641}},  {17, {172470466, 860720673}},   {19, {132750791, 344722508}},
  };
  return t;
}

double majorant(const QSeries& series, double y) {
  NumericSeries<128> ns(series);
  auto r = ns.eval(Complex(Real(0), Real(y)));
  if (!(r.tail_bound <= Real(1e-20) * r.abs_sum)) throw EvaluationError("tail exceeds margin");
  return to_double(r.abs_sum);
}

double min_height(const BoundDomain& dom) {
  if (dom.kind == BoundDomain::Kind::TauSegment) return dom.v;
  double y = std::numeric_limits<double>::infinity();
  for (auto [lo, hi] : dom.arcs) y = std::min({y, std::sin(lo) / 4, std::sin(hi) / 4});
  return y;
}

std::vector<mpq_class> theta_F_coefficients(const BasisElement& e) {
  const long s = e.weight.s;
  if (s < 0 || e.series.valuation() < 0) throw ConstructionError("not a holomorphic form");
  const long T = (2 * s + 1) / 4;
  const int P = static_cast<int>(T) + 30;
  if (e.series.prec() < P) throw PrecisionError("insufficient precision");
  QSeries th = theta_series(P + 2), F = eis_F_series(P + 2);
  std::vector<QSeries> mons;
  for (long t = 0; t <= T; ++t) mons.push_back(pow(th, static_cast<int>(2 * s + 1 - 4 * t)) * pow(F, static_cast<int>(t)));
  const size_t n = mons.size();
  auto at = [](const QSeries& q, int i) { return i < q.valuation() ? mpq_class(0) : q.coeff(i).re(); };
  // F^t = q^t + ..., so the monomial matrix is triangular in the first n exponents.
  std::vector<mpq_class> c(n);
  for (size_t i = 0; i < n; ++i) {
    mpq_class rhs = at(e.series, static_cast<int>(i));
    for (size_t j = 0; j < i; ++j) rhs -= c[j] * at(mons[j], static_cast<int>(i));
    c[i] = rhs / at(mons[i], static_cast<int>(i));
  }
  for (int i = static_cast<int>(n); i < P; ++i) {
    mpq_class sum = 0;
    for (size_t j = 0; j < n; ++j) sum += c[j] * at(mons[j], i);
    if (sum != at(e.series, i)) throw ConstructionError("form is not a polynomial in theta and F");
  }
  return c;
}

double polynomial_majorant(const BasisElement& e, const BoundDomain& dom) {
  const double y = min_height(dom);
  const int P = 400;
  const double th = majorant(theta_series(P), y), F = majorant(eis_F_series(P), y);
  auto c = theta_F_coefficients(e);
  double out = 0;
  for (size_t t = 0; t < c.size(); ++t)
    out += std::abs(c[t].get_d()) * std::pow(th, static_cast<double>(2 * e.weight.s + 1 - 4 * static_cast<long>(t))) *
           std::pow(F, static_cast<double>(t));
  return out;
}

FinalBoundRow final_bound_table(long b, long direct_grid) {
  const auto& tab = bound_table_entries();
  auto it = std::find_if(tab.begin(), tab.end(), [b](const auto& e) { return e.first == b; });
  if (it == tab.end()) throw std::invalid_argument("b must lie in S");
  const int P = std::max(kSeriesPrec, 80);
  auto [fb, fbs] = first_pair(HalfIntWeight::from_s(b), P);
  auto [fp, fps] = first_pair(HalfIntWeight::from_s(25 - b), P);
  const BoundDomain z1 = BoundDomain::z1(), z2 = BoundDomain::z2(), t1 = BoundDomain::tau1(), t2 = BoundDomain::tau2();
  const double den1 = 0.00407 * 0.00407 * 132, den2 = 0.01 * 0.01 * 1200;

  FinalBoundRow row;
  row.b = b;
  row.table_z1 = it->second.first;
  row.table_z2 = it->second.second;
  auto pm = [](const BasisElement& e, const BoundDomain& d) { return polynomial_majorant(e, d); };
  row.z1_value = (pm(fb, z1) * pm(fps, t1) + pm(fbs, z1) * pm(fp, t1)) / den1;
  row.z2_value = (pm(fb, z2) * pm(fps, t2) + pm(fbs, z2) * pm(fp, t2)) / den2;
  row.diff_z1 = row.z1_value - static_cast<double>(row.table_z1);
  row.diff_z2 = row.z2_value - static_cast<double>(row.table_z2);
  if (direct_grid > 0) {
    auto mx = [&](const BasisElement& e, const BoundDomain& d) {
      return grid_extremum(abs_of(e.series), d, Direction::UpperBound, direct_grid).refined;
    };
    row.z1_direct = (mx(fb, z1) * mx(fps, t1) + mx(fbs, z1) * mx(fp, t1)) / den1;
    row.z2_direct = (mx(fb, z2) * mx(fps, t2) + mx(fbs, z2) * mx(fp, t2)) / den2;
  }
  return row;
}

long threshold_solve(double base, double factor, double target) {
  if (!(base > 0 && base < 1)) throw std::invalid_argument("base must lie in (0, 1)");
  if (factor <= target) return 0;
  long m = static_cast<long>(std::ceil(std::log(target / factor) / std::log(base)));
  m = std::max(m, 0L);
  while (m > 0 && std::pow(base, m - 1) * factor <= target) --m;
  while (std::pow(base, m) * factor > target) ++m;
  return m;
}

ThresholdReport weight_threshold(const HalfIntWeight& kw) {
  const auto& tab = bound_table_entries();
  auto it = std::find_if(tab.begin(), tab.end(), [&](const auto& e) { return e.first == kw.b; });
  double c1 = static_cast<double>(it->second.first), c2 = static_cast<double>(it->second.second);
  double a = static_cast<double>(kw.a);
  if (kw.a >= 0) {
    c1 *= std::pow(0.60443, a);
    c2 *= std::pow(0.491, a);
  } else {
    c1 *= std::pow(3.6734, -a);
    c2 *= std::pow(73.6934, -a);
  }
  ThresholdReport r;
  r.case1 = threshold_solve(0.83353, c1, 2);
  r.case2 = threshold_solve(0.60872, c2, 2 - std::sqrt(2.0));
  r.combined = std::max(r.case1, r.case2);
  return r;
}

}  // namespace kplus
