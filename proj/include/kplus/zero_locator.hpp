#pragma once

#include "kplus/eval_engine.hpp"
#include "kplus/plus_basis.hpp"

#include <string_view>
#include <vector>

namespace kplus {

enum class TrigCase { SinNeg, SinPos, Cos };

std::string_view trig_case_name(TrigCase c);
TrigCase trig_case(const HalfIntWeight& kw, long m);

struct OscillationReport {
  HalfIntWeight weight;
  long m = 0;
  TrigCase case_tag = TrigCase::Cos;
  long predicted_points = 0;
  long c_value = 0;
};

double h_func(const HalfIntWeight& kw, long m, double theta);
/// 2 cos(k theta/2 + pi m/2 - pi m cos(theta)/2)
double trig_target(const HalfIntWeight& kw, long m, double theta);
/// The same quantity written as -2 sin h, 2 sin h or 2 cos h.
double trig_target_reduced(const HalfIntWeight& kw, long m, double theta);

OscillationReport oscillation_count(const HalfIntWeight& kw, long m);

struct ZeroList {
  std::vector<double> thetas;
  double refinement_tol = 1e-9;
  long grid_size = 0;
  long escalations = 0;
};

ZeroList scan_zeros(const ArcForm& f, long grid_size = 0, double refine_tol = 1e-9);
ZeroList scan_zeros(const BasisElement& e, long grid_size = 0, double refine_tol = 1e-9);

struct GapReport {
  double max_gap = 0;
  double at_theta = 0;
};

GapReport approximation_gap(const ArcForm& f, const std::vector<double>& theta_grid);

}  // namespace kplus
