#include "kplus/acceptance.hpp"
#include "kplus/bounds_audit.hpp"
#include "kplus/classical_forms.hpp"
#include "kplus/errors.hpp"
#include "kplus/eval_engine.hpp"
#include "kplus/plus_basis.hpp"
#include "kplus/residue_lab.hpp"
#include "kplus/zero_locator.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

using nlohmann::json;
using namespace kplus;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown after a report has been written, to select exit code 1.
struct VerificationFailed {};

constexpr int kDefaultPrec = 200;

int default_prec() {
  const char* env = std::getenv("KPLUS_PREC");
  if (!env) return kDefaultPrec;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 8 || v > 100000) throw UsageError("KPLUS_PREC must be an integer in [8, 100000]");
  return static_cast<int>(v);
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string num(const Real& x) { return num(to_double(x)); }

/// Accepts plain radians or a multiple of pi such as "0.45pi".
double parse_theta(const std::string& s) {
  std::string body = s;
  double scale = 1;
  if (body.size() > 2 && body.compare(body.size() - 2, 2, "pi") == 0) {
    body.resize(body.size() - 2);
    scale = std::numbers::pi;
  }
  size_t used = 0;
  double v = 0;
  try {
    v = std::stod(body, &used);
  } catch (const std::exception&) {
    throw UsageError("cannot parse angle '" + s + "'");
  }
  if (used != body.size()) throw UsageError("cannot parse angle '" + s + "'");
  return v * scale;
}

Complex parse_tau(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError("tau must be written as <re>,<im>");
  double re = 0, im = 0;
  try {
    re = std::stod(s.substr(0, comma));
    im = std::stod(s.substr(comma + 1));
  } catch (const std::exception&) {
    throw UsageError("cannot parse tau '" + s + "'");
  }
  if (!(im > 0)) throw UsageError("tau must lie in the upper half-plane");
  return Complex(Real(re), Real(im));
}

HalfIntWeight weight_arg(const std::string& s) {
  try {
    return HalfIntWeight::parse(s);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

json complex_json(const Complex& z) { return json::array({to_double(real(z)), to_double(imag(z))}); }

json envelope(const std::string& command, json config, json result) {
  return json{{"schema", 1}, {"command", command}, {"config", std::move(config)}, {"result", std::move(result)}};
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

BasisElement checked_element(const HalfIntWeight& w, long m, int prec) {
  if (!is_admissible(w, m))
    throw UsageError("m=" + std::to_string(m) + " is not admissible for k=" + w.to_string() + " (N=" +
                     std::to_string(N_of(w)) + ")");
  return basis_element(w, m, prec);
}

// ---- basis

struct BasisArgs {
  std::string k;
  long m = 0;
  int prec = 0;
  bool as_json = false;
};

void run_basis(const BasisArgs& a) {
  HalfIntWeight w = weight_arg(a.k);
  int prec = a.prec > 0 ? a.prec : default_prec();
  BasisElement e = checked_element(w, a.m, prec);
  if (e.series.prec() > prec) e.series = e.series.truncated(prec);
  if (a.as_json) {
    json cfg{{"k", w.to_string()}, {"m", a.m}, {"prec", prec}};
    std::cout << envelope("basis", cfg, to_json(e)).dump(2) << "\n";
    return;
  }
  std::cout << "k " << w.to_string() << "\nm " << e.m << "\nN " << N_of(w) << "\nprec " << e.series.prec() << "\n";
  std::cout << "eps " << (e.eps ? std::to_string(*e.eps) : "?") << "\nzero_count "
            << (e.zero_count ? std::to_string(*e.zero_count) : "?") << "\n";
  for (int n = e.series.valuation(); n < e.series.prec(); ++n) {
    const auto& c = e.series.coeff(n);
    if (!c.is_zero()) std::cout << n << " " << c.to_string() << "\n";
  }
}

// ---- eval

struct EvalArgs {
  std::string form;
  std::vector<std::string> thetas;
  std::vector<std::string> taus;
  int prec = 0;
  std::string out;
};

struct FormSpec {
  std::optional<FormName> named;
  HalfIntWeight weight;
  long m = 0;
};

/// "theta", "F", "delta4", "e4at4", "j4", "dj4", or "basis:<k>:<m>".
FormSpec parse_form(const std::string& s) {
  FormSpec f;
  if (s.rfind("basis:", 0) == 0) {
    auto rest = s.substr(6);
    auto colon = rest.find(':');
    if (colon == std::string::npos) throw UsageError("basis form must be written basis:<k>:<m>");
    f.weight = weight_arg(rest.substr(0, colon));
    try {
      size_t used = 0;
      f.m = std::stol(rest.substr(colon + 1), &used);
      if (used != rest.size() - colon - 1) throw std::invalid_argument("m");
    } catch (const std::exception&) {
      throw UsageError("cannot parse m in '" + s + "'");
    }
    return f;
  }
  f.named = parse_form_name(s);
  if (!f.named) throw UsageError("unknown form '" + s + "'");
  return f;
}

void run_eval(const EvalArgs& a) {
  FormSpec f = parse_form(a.form);
  int prec = a.prec > 0 ? a.prec : default_prec();
  std::ostringstream csv;
  if (!f.named) {
    BasisElement e = checked_element(f.weight, f.m, std::max(prec, arc_precision(f.m)));
    if (!a.thetas.empty()) {
      ArcForm af(e);
      csv << "theta,value,tail_bound\n";
      for (const auto& t : a.thetas) {
        double th = parse_theta(t);
        if (!(th > 0 && th < std::numbers::pi)) throw UsageError("theta must lie in (0, pi)");
        ArcValue v = af.weighted(th);
        csv << num(th) << "," << num(v.value) << "," << num(v.tail_bound) << "\n";
      }
    } else {
      csv << "tau_re,tau_im,value_re,value_im,tail_bound\n";
      for (const auto& t : a.taus) {
        Complex tau = parse_tau(t);
        EvalResult r = eval_qseries(e.series, tau, 1e-12);
        csv << num(real(tau)) << "," << num(imag(tau)) << "," << num(real(r.value)) << "," << num(imag(r.value)) << ","
            << num(r.tail_bound) << "\n";
      }
    }
  } else {
    QSeries s = form_series(*f.named, prec);
    auto row = [&](const Complex& tau) {
      EvalResult r = eval_qseries(s, tau, 1e-12);
      return num(real(r.value)) + "," + num(imag(r.value)) + "," + num(r.tail_bound);
    };
    if (!a.thetas.empty()) {
      csv << "theta,value_re,value_im,tail_bound\n";
      for (const auto& t : a.thetas) {
        double th = parse_theta(t);
        if (!(th > 0 && th < std::numbers::pi)) throw UsageError("theta must lie in (0, pi)");
        csv << num(th) << "," << row(arc_z<128>(th)) << "\n";
      }
    } else {
      csv << "tau_re,tau_im,value_re,value_im,tail_bound\n";
      for (const auto& t : a.taus) {
        Complex tau = parse_tau(t);
        csv << num(real(tau)) << "," << num(imag(tau)) << "," << row(tau) << "\n";
      }
    }
  }
  emit(csv.str(), a.out);
}

// ---- zeros

struct ZerosArgs {
  std::string k;
  long m = 0;
  long grid = 0;
  std::string csv;
};

void run_zeros(const ZerosArgs& a) {
  HalfIntWeight w = weight_arg(a.k);
  if (a.grid < 0) throw UsageError("--grid must be positive");
  ArcForm af(checked_element(w, a.m, arc_precision(a.m)));
  ZeroList z = scan_zeros(af, a.grid);
  std::ostringstream out;
  out << "theta,z_re,z_im,residual\n";
  for (double th : z.thetas) {
    Complex p = arc_z<128>(th);
    out << num(th) << "," << num(real(p)) << "," << num(imag(p)) << "," << num(abs(af.weighted_high(th).value)) << "\n";
  }
  emit(out.str(), a.csv);
  if (!a.csv.empty()) {
    long need = 2 * w.a + (a.m >= 0 ? a.m / 2 : -((1 - a.m) / 2));
    std::cout << z.thetas.size() << " sign changes on the arc (grid " << z.grid_size << ", guaranteed count " << need
              << ")\n";
  }
}

// ---- verify

struct VerifyArgs {
  std::string what;
  std::string k;
  std::optional<long> m;
  std::vector<std::string> thetas;
  double tol = 1e-6;
  bool as_json = false;
};

void run_verify(const VerifyArgs& a) {
  HalfIntWeight w = weight_arg(a.k);
  if (!(a.tol > 0)) throw UsageError("--tol must be positive");
  std::vector<double> thetas;
  for (const auto& t : a.thetas) {
    double th = parse_theta(t);
    if (!(th > std::numbers::pi / 3 && th < 2 * std::numbers::pi / 3))
      throw UsageError("theta must lie strictly between pi/3 and 2pi/3");
    thetas.push_back(th);
  }
  json cfg{{"k", w.to_string()}, {"tol", a.tol}, {"kind", a.what}};
  if (a.m) cfg["m"] = *a.m;
  json result;
  bool ok = true;
  std::ostringstream text;

  if (a.what == "residues") {
    if (thetas.empty())
      for (double f : {11.0 / 24, 13.0 / 24, 9.0 / 24, 15.0 / 24}) thetas.push_back(f * std::numbers::pi);
    json exact = json::array();
    for (long r = 0; r < 4; ++r) {
      ExactCheck c = verify_Ak_exact(r, w, 200);
      ok = ok && c.ok;
      exact.push_back({{"r", r}, {"ok", c.ok}, {"terms", c.terms_checked}});
      text << "exact r=" << r << " " << (c.ok ? "ok" : "FAIL") << "\n";
    }
    json numeric = json::array();
    for (double th : thetas) {
      int d = sub_arc_of(th);
      Complex z = arc_z<128>(th);
      pole_points(d, z);
      for (const auto& M : pole_set(d).matrices) {
        NumericCheck c = verify_Ak_numeric(M, w, z, a.tol);
        ok = ok && c.ok;
        numeric.push_back({{"theta", th}, {"sub_arc", d}, {"matrix", M.to_string()}, {"residual", c.residual},
                           {"ok", c.ok}, {"value", complex_json(c.value)}, {"expected", complex_json(c.expected)}});
        text << "theta=" << num(th) << " R" << d << " " << M.to_string() << " residual " << num(c.residual) << "\n";
      }
    }
    cfg["theta"] = thetas;
    result = {{"exact", exact}, {"numeric", numeric}, {"ok", ok}};
  } else {
    if (!a.m) throw UsageError("verify integral needs --m");
    if (thetas.empty())
      for (double f : {0.40, 0.45, 0.50, 0.55, 0.60}) thetas.push_back(f * std::numbers::pi);
    json reps = json::array();
    for (double th : thetas) {
      IntegralReport r = verify_integral_identity(w, *a.m, th, a.tol);
      ok = ok && r.ok;
      reps.push_back({{"theta", th},       {"sub_arc", r.sub_arc}, {"v", r.v},         {"lhs", complex_json(r.lhs)},
                      {"rhs", complex_json(r.rhs)}, {"residual", r.residual}, {"panels", r.panels},
                      {"quadrature_delta", r.quadrature_delta}, {"ok", r.ok}});
      text << "theta=" << num(th) << " R" << r.sub_arc << " residual " << num(r.residual) << " panels " << r.panels
           << "\n";
    }
    cfg["theta"] = thetas;
    result = {{"reports", reps}, {"ok", ok}};
  }
  if (a.as_json) std::cout << envelope("verify-" + a.what, cfg, result).dump(2) << "\n";
  else std::cout << text.str() << (ok ? "verified\n" : "verification FAILED\n");
  if (!ok) throw VerificationFailed{};
}

// ---- bounds

struct BoundsArgs {
  long b = 0;
  std::string report;
  long grid = 4096;
};

void run_bounds(const BoundsArgs& a) {
  const auto& tab = bound_table_entries();
  if (std::none_of(tab.begin(), tab.end(), [&](const auto& e) { return e.first == a.b; }))
    throw UsageError("b must be one of 6, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 19");
  if (a.grid < 64) throw UsageError("--grid must be at least 64");
  bool ok = true;
  json recs = json::array();
  for (const auto& r : audit_records(a.grid)) {
    ok = ok && r.ok;
    recs.push_back({{"quantity", r.quantity},
                    {"domain", r.domain},
                    {"computed", r.computed},
                    {"refined", r.refined},
                    {"claimed", r.claimed},
                    {"direction", r.direction == Direction::UpperBound ? "upper" : "lower"},
                    {"ok", r.ok}});
  }
  FinalBoundRow row = final_bound_table(a.b);
  ThresholdReport th = weight_threshold(HalfIntWeight::from_s(a.b));
  json result{{"records", recs},
              {"table_row",
               {{"b", row.b},
                {"z1", row.z1_value},
                {"z2", row.z2_value},
                {"listed_z1", row.table_z1},
                {"listed_z2", row.table_z2},
                {"diff_z1", row.diff_z1},
                {"diff_z2", row.diff_z2}}},
              {"threshold", {{"case1", th.case1}, {"case2", th.case2}, {"combined", th.combined}}},
              {"ok", ok}};
  emit(envelope("bounds", {{"b", a.b}, {"grid", a.grid}}, result).dump(2) + "\n", a.report);
  long failed = std::count_if(recs.begin(), recs.end(), [](const json& r) { return !r["ok"].get<bool>(); });
  std::cout << recs.size() << " bound records, " << failed << " failing; b=" << a.b << " row " << num(row.z1_value)
            << " / " << num(row.z2_value) << "\n";
  if (!ok) throw VerificationFailed{};
}

// ---- hurwitz

void run_hurwitz(long max, const std::string& path) {
  if (max < 0) throw UsageError("--max must be nonnegative");
  QSeries cube = pow(theta_series(static_cast<int>(max) + 1), 3);
  std::ostringstream csv;
  csv << "n,theta3,gauss_h,twelve_H\n";
  bool ok = true;
  for (long n = 0; n <= max; ++n) {
    const auto& c = cube.coeff(static_cast<int>(n));
    long h = gauss_h(n);
    long twelve = n == 0 ? -1 : hurwitz_brute(n).twelveH;
    ok = ok && c.is_integer() && c.re() == h;
    csv << n << "," << c.to_string() << "," << h << "," << twelve << "\n";
  }
  emit(csv.str(), path);
  if (!ok) {
    std::cerr << "theta^3 coefficients disagree with the class-number rule\n";
    throw VerificationFailed{};
  }
}

// ---- dual and column checks

void run_dual(const std::string& k, long max) {
  HalfIntWeight w = weight_arg(k);
  if (max < 0) throw UsageError("--max must be nonnegative");
  DualityReport d = duality_check(w, max, max);
  json result{{"ok", d.ok}, {"pairs_checked", d.pairs_checked}};
  if (d.first_failure) result["first_failure"] = {d.first_failure->first, d.first_failure->second};
  std::cout << envelope("dual-check", {{"k", w.to_string()}, {"max", max}}, result).dump(2) << "\n";
  if (!d.ok) throw VerificationFailed{};
}

void run_lehmer(const std::string& k, long m, long M) {
  HalfIntWeight w = weight_arg(k);
  bool nonzero = false;
  try {
    nonzero = lehmer_column_check(w, m, M);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::cout << envelope("lehmer-check", {{"k", w.to_string()}, {"m", m}, {"M", M}}, {{"nonzero_column", nonzero}})
                   .dump(2)
            << "\n";
  if (!nonzero) throw VerificationFailed{};
}

// ---- suite

void run_suite(const std::string& profile, bool as_json) {
  Profile p = profile == "full" ? Profile::Full : Profile::Quick;
  auto results = run_acceptance(p);
  bool ok = true;
  json rows = json::array(), timing = json::object();
  for (const auto& r : results) {
    ok = ok && r.passed;
    rows.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}, {"findings", r.findings}});
    timing[std::to_string(r.id)] = r.seconds;
  }
  if (as_json) {
    json out = envelope("suite", {{"profile", profile}}, {{"criteria", rows}, {"ok", ok}});
    std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    out["metadata"] = {{"finished_at", stamp}, {"seconds", timing}};
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& r : results) {
      std::cout << "criterion " << r.id << ": " << (r.passed ? "PASS" : "FAIL") << "  " << r.title << "  [" << r.detail
                << "]\n";
      for (const auto& f : r.findings) std::cout << "  finding: " << f << "\n";
    }
    long passed = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.passed; });
    std::cout << passed << "/" << results.size() << " criteria passed (" << profile << ")\n";
  }
  if (!ok) throw VerificationFailed{};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Canonical plus-space bases of half-integral weight: construction and verification"};
  app.require_subcommand(1);

  BasisArgs basis;
  auto* c_basis = app.add_subcommand("basis", "Construct f_{k,m}");
  c_basis->add_option("--k", basis.k, "weight as <odd>/2")->required();
  c_basis->add_option("--m", basis.m, "index m")->required();
  c_basis->add_option("--prec", basis.prec, "series precision (default KPLUS_PREC or 200)");
  c_basis->add_flag("--json", basis.as_json, "JSON output");

  EvalArgs ev;
  auto* c_eval = app.add_subcommand("eval", "Evaluate a form on the arc or at tau");
  c_eval->add_option("--form", ev.form, "theta|F|delta4|e4at4|j4|dj4|basis:<k>:<m>")->required();
  auto* o_theta = c_eval->add_option("--theta", ev.thetas, "arc angles, radians or <x>pi");
  auto* o_tau = c_eval->add_option("--tau", ev.taus, "points <re>,<im>");
  o_theta->excludes(o_tau);
  c_eval->add_option("--prec", ev.prec, "series precision");
  c_eval->add_option("--csv", ev.out, "write CSV here instead of stdout");

  ZerosArgs zs;
  auto* c_zeros = app.add_subcommand("zeros", "Locate sign changes of f_{k,m} on the arc");
  c_zeros->add_option("--k", zs.k)->required();
  c_zeros->add_option("--m", zs.m)->required();
  c_zeros->add_option("--grid", zs.grid, "scan grid size (default 8 x predicted)");
  c_zeros->add_option("--csv", zs.csv, "write CSV here instead of stdout");

  VerifyArgs vf;
  auto* c_verify = app.add_subcommand("verify", "Residue or contour-integral identities");
  c_verify->add_option("what", vf.what)->required()->check(CLI::IsMember({"residues", "integral"}));
  c_verify->add_option("--k", vf.k)->required();
  c_verify->add_option("--m", vf.m);
  c_verify->add_option("--theta", vf.thetas, "angles, radians or <x>pi");
  c_verify->add_option("--tol", vf.tol, "residual tolerance");
  c_verify->add_flag("--json", vf.as_json);

  BoundsArgs bd;
  auto* c_bounds = app.add_subcommand("bounds", "Audit the numerical bound constants");
  c_bounds->add_option("--b", bd.b)->required();
  c_bounds->add_option("--report", bd.report, "JSON report path")->required();
  c_bounds->add_option("--grid", bd.grid, "grid points per domain");

  long hmax = 2000;
  std::string hcsv;
  auto* c_hur = app.add_subcommand("hurwitz", "theta^3 coefficients against class numbers");
  c_hur->add_option("--max", hmax);
  c_hur->add_option("--csv", hcsv);

  std::string dk;
  long dmax = 60;
  auto* c_dual = app.add_subcommand("dual-check", "Coefficient duality between k and 2-k");
  c_dual->add_option("--k", dk)->required();
  c_dual->add_option("--max", dmax);

  std::string lk;
  long lm = 0, lM = 0;
  auto* c_leh = app.add_subcommand("lehmer-check", "Column test on the dual basis");
  c_leh->add_option("--k", lk)->required();
  c_leh->add_option("--m", lm)->required();
  c_leh->add_option("--M", lM)->required();

  std::string profile = "quick";
  bool suite_json = false;
  auto* c_suite = app.add_subcommand("suite", "Acceptance suite");
  c_suite->add_option("profile", profile)->check(CLI::IsMember({"quick", "full"}));
  c_suite->add_flag("--json", suite_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*c_basis) run_basis(basis);
    else if (*c_eval) {
      if (ev.thetas.empty() && ev.taus.empty()) throw UsageError("eval needs --theta or --tau");
      run_eval(ev);
    } else if (*c_zeros) run_zeros(zs);
    else if (*c_verify) run_verify(vf);
    else if (*c_bounds) run_bounds(bd);
    else if (*c_hur) run_hurwitz(hmax, hcsv);
    else if (*c_dual) run_dual(dk, dmax);
    else if (*c_leh) run_lehmer(lk, lm, lM);
    else if (*c_suite) run_suite(profile, suite_json);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const VerificationFailed&) {
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
