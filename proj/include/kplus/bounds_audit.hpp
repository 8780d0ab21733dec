#pragma once

#include "kplus/eval_engine.hpp"
#include "kplus/plus_basis.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace kplus {

struct BoundDomain {
  enum class Kind { TauSegment, ArcRange };
  std::string name;
  Kind kind = Kind::TauSegment;
  double v = 0.2125;
  /// theta intervals for ArcRange; ignored for TauSegment
  std::vector<std::pair<double, double>> arcs;
  long grid_points = 4096;

  static BoundDomain tau1();
  static BoundDomain tau2();
  static BoundDomain z1();
  static BoundDomain z2();
  Complex point(double x) const;
};

enum class Direction { UpperBound, LowerBound };

struct Extremum {
  double grid_value = 0;
  double slack = 0;
  /// grid value moved outward by the slack
  double bound = 0;
  double refined = 0;
  double argument = 0;
};

/// Extremum of a real expression over the domain; max for UpperBound, min for LowerBound.
Extremum grid_extremum(const std::function<Real(const Complex&)>& expr, const BoundDomain& dom, Direction dir,
                       long grid = 0);

/// |series(tau)| with a tail check against tail_margin relative to the absolute sum.
std::function<Real(const Complex&)> abs_of(const QSeries& series, double tail_margin = 1e-20);

struct BoundRecord {
  std::string quantity;
  std::string domain;
  double computed = 0;
  double refined = 0;
  double claimed = 0;
  Direction direction = Direction::UpperBound;
  bool ok = false;
};

std::vector<BoundRecord> audit_records(long grid = 4096);

struct BracketReport {
  bool ok = true;
  double sin_bracket_max = 0;
  double cot_bracket_min = 0;
  double worst_ratio = 0;
  long samples = 0;
};

BracketReport bracket_check(const std::vector<long>& a_values, long m_extra = 40, long theta_samples = 200);

/// Sum of |c_n| e^{-2 pi n y}: bounds |series| on the line Im = y and above.
double majorant(const QSeries& series, double y);
/// Lowest Im over the domain: v for segments, the smallest arc height otherwise.
double min_height(const BoundDomain& dom);

/// Coefficients c_t with f = sum_t c_t theta^{2s+1-4t} F^t for a holomorphic basis element.
std::vector<mpq_class> theta_F_coefficients(const BasisElement& e);
/// sum_t |c_t| thetahat^{2s+1-4t} Fhat^t with both majorants taken at the domain's lowest height.
double polynomial_majorant(const BasisElement& e, const BoundDomain& dom);

struct FinalBoundRow {
  long b = 0;
  /// Table recipe: polynomial majorants in the numerator, the quoted Delta and j constants below.
  double z1_value = 0;
  double z2_value = 0;
  /// Same quotient with grid maxima of |f| over the actual domains; 0 when skipped.
  double z1_direct = 0;
  double z2_direct = 0;
  long table_z1 = 0;
  long table_z2 = 0;
  double diff_z1 = 0;
  double diff_z2 = 0;
};

FinalBoundRow final_bound_table(long b, long direct_grid = 0);
const std::vector<std::pair<long, std::pair<long, long>>>& bound_table_entries();

long threshold_solve(double base, double factor, double target);

struct ThresholdReport {
  long case1 = 0;
  long case2 = 0;
  long combined = 0;
};

/// Smallest m from the two sub-arc cases using the tabulated constant for b.
ThresholdReport weight_threshold(const HalfIntWeight& kw);

}  // namespace kplus
