// pmw: evaluation and verification front end for the directional Poisson wavelet library.
//
//   pmw eval      --n 3 --order 1 --rho 0.5 --grid 15       wavelet values (CSV)
//   pmw coeffs    --n 3 --order 2 --rho 0.5                 sector coefficients a_l^k (CSV)
//   pmw gamma     --n 4 --order 3                           mixing coefficients (JSON)
//   pmw verify    --n 2 --order 1 --band 20                 admissibility condition 1 (JSON)
//   pmw transform --order 1 --band 8                        S^2 analysis + inversion (JSON)
//   pmw limit     --n 3 --order 2                           small-scale limit probe (JSON)
//
// Exit codes: 0 ok, 2 usage error, 3 failed check or unreachable tolerance.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pmw/pmw.hpp"

using nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitCheck = 3;

struct RunConfig {
  std::string subcommand;
  int n = 2;
  int order = 1;
  double rho = 0.5;
  double rho_min = pmw::RhoDefaults::rho_min;
  double rho_max = pmw::RhoDefaults::rho_max;
  int rho_steps = pmw::RhoDefaults::steps;
  int grid = 15;
  int band = -1;  // per-subcommand default
  double tol = -1.0;
  std::string out;
  std::string format;
  bool report_only = false;

  ordered_json to_json() const {
    return ordered_json{{"subcommand", subcommand}, {"n", n},           {"order", order},         {"rho", rho},
                        {"rho_min", rho_min},       {"rho_max", rho_max}, {"rho_steps", rho_steps}, {"grid", grid},
                        {"band", band},             {"tol", tol},       {"format", format},       {"report_only", report_only}};
  }
};

struct Check {
  std::string check;
  std::string ref;
  std::string source;
  double value = 0.0;
  double expected = 0.0;
  double tol = 0.0;
  bool pass = false;
};

ordered_json to_json(const Check& c) {
  return ordered_json{{"check", c.check},       {"ref", c.ref}, {"source", c.source}, {"value", c.value},
                      {"expected", c.expected}, {"tol", c.tol}, {"pass", c.pass}};
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string fmt17(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

int finish(const std::vector<Check>& checks, const RunConfig& cfg) {
  bool ok = true;
  for (const auto& c : checks) ok = ok && c.pass;
  if (!ok && !cfg.report_only) {
    for (const auto& c : checks)
      if (!c.pass) std::cerr << "check failed: " << c.check << " value " << fmt17(c.value) << " tol " << c.tol << "\n";
    return kExitCheck;
  }
  return 0;
}

ordered_json report(const RunConfig& cfg, const std::vector<Check>& checks) {
  ordered_json j;
  j["config"] = cfg.to_json();
  j["checks"] = ordered_json::array();
  for (const auto& c : checks) j["checks"].push_back(to_json(c));
  return j;
}

int cmd_eval(RunConfig cfg) {
  if (cfg.tol < 0) cfg.tol = 1e-8;
  if (cfg.format.empty()) cfg.format = "csv";
  const pmw::LambdaParam lp(cfg.n);
  const pmw::WaveletSpec spec(lp, pmw::KernelKind::Poisson, cfg.order, cfg.rho);
  const int L = cfg.band >= 0 ? cfg.band : pmw::truncation_degree(spec, 1e-14);
  const pmw::FieldSynthesizer synth(pmw::directional_wavelet_field(spec, L));
  const bool closed = cfg.order <= 2;

  struct Row {
    double t1, t2, series, closed;
  };
  std::vector<Row> rows;
  double max_abs = 0.0, max_diff = 0.0;
  for (int i = 0; i < cfg.grid; ++i)
    for (int j = 0; j < cfg.grid; ++j) {
      const double t1 = std::numbers::pi * (i + 0.5) / cfg.grid;
      const double t2 = std::numbers::pi * (j + 0.5) / cfg.grid;
      Row r{t1, t2, synth(pmw::SphericalPoint::sector(cfg.n, t1, t2)), 0.0};
      if (closed) {
        r.closed = cfg.order == 0   ? pmw::poisson_closed(lp, cfg.rho, t1)
                   : cfg.order == 1 ? pmw::g1_closed(spec, t1, t2)
                                    : pmw::g2_closed(spec, t1, t2);
        max_abs = std::max(max_abs, std::abs(r.closed));
        max_diff = std::max(max_diff, std::abs(r.closed - r.series));
      }
      rows.push_back(r);
    }

  std::vector<Check> checks;
  if (closed) {
    const double rel = max_abs > 0 ? max_diff / max_abs : max_diff;
    checks.push_back({"series_vs_closed_form", "closed form of the order-" + std::to_string(cfg.order) + " wavelet",
                      "wavelets.directional_wavelet_field/synthesize", rel, 0.0, cfg.tol, rel < cfg.tol});
  }

  Output out(cfg.out);
  if (cfg.format == "json") {
    ordered_json j = report(cfg, checks);
    j["truncation_degree"] = L;
    j["rows"] = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json row{{"theta1", r.t1}, {"theta2", r.t2}, {"value_series", r.series}};
      if (closed) row["value_closed"] = r.closed;
      j["rows"].push_back(row);
    }
    out.stream() << j.dump(2) << "\n";
  } else {
    auto& os = out.stream();
    os << "theta1,theta2,value_series" << (closed ? ",value_closed" : "") << "\n";
    for (const auto& r : rows) {
      os << fmt17(r.t1) << ',' << fmt17(r.t2) << ',' << fmt17(r.series);
      if (closed) os << ',' << fmt17(r.closed);
      os << "\n";
    }
    if (!cfg.out.empty()) {
      std::ofstream side(cfg.out + ".json");
      ordered_json j = report(cfg, checks);
      j["truncation_degree"] = L;
      j["max_abs_difference"] = max_diff;
      side << j.dump(2) << "\n";
    }
  }
  return finish(checks, cfg);
}

int cmd_coeffs(RunConfig cfg) {
  if (cfg.format.empty()) cfg.format = "csv";
  const pmw::LambdaParam lp(cfg.n);
  const pmw::WaveletSpec spec(lp, pmw::KernelKind::Poisson, cfg.order, cfg.rho);
  const int L = cfg.band >= 0 ? cfg.band : pmw::truncation_degree(spec, 1e-14);
  const pmw::CoefficientField f = pmw::directional_wavelet_field(spec, L);
  Output out(cfg.out);
  if (cfg.format == "json") {
    ordered_json j;
    j["config"] = cfg.to_json();
    j["truncation_degree"] = L;
    j["coefficients"] = ordered_json::array();
    for (int l = 0; l <= L; ++l)
      for (int k = 0; k <= std::min(l, f.order_bound()); ++k)
        if (f(l, k) != 0.0) j["coefficients"].push_back({{"l", l}, {"k1", k}, {"value", f(l, k)}});
    out.stream() << j.dump(2) << "\n";
  } else {
    auto& os = out.stream();
    os << "l,k1,value\n";
    for (int l = 0; l <= L; ++l)
      for (int k = 0; k <= std::min(l, f.order_bound()); ++k)
        if (f(l, k) != 0.0) os << l << ',' << k << ',' << fmt17(f(l, k)) << "\n";
  }
  return 0;
}

int cmd_gamma(RunConfig cfg) {
  if (cfg.tol < 0) cfg.tol = 1e-9;
  cfg.format = "json";
  const pmw::LambdaParam lp(cfg.n);
  const int Lc = cfg.band >= 0 ? cfg.band : 30;
  ordered_json j;
  std::vector<Check> checks;
  Output out(cfg.out);
  try {
    const pmw::GammaVector g = pmw::solve_gamma(lp, cfg.order);
    const pmw::CoefficientField F = pmw::mixed_unit_field(lp, g, Lc);
    double worst = 0.0;
    for (int l = 1; l <= Lc; ++l) {
      const double u = l * (2.0 * lp.lambda() + l);
      worst = std::max(worst, std::abs(pmw::sector_pairing(F, F, l) / std::pow(u, cfg.order) - 1.0));
    }
    checks.push_back({"sector_sum_equals_u_power", "mixed derivative energy (l(2 lambda + l))^order",
                      "admissibility.solve_gamma/rot_deriv.derivative_step", worst, 0.0, cfg.tol, worst < cfg.tol});
    j = report(cfg, checks);
    j["lambda"] = lp.lambda();
    j["gammas"] = g.gammas;
  } catch (const pmw::SolverError& e) {
    checks.push_back({"real_solution_exists", "mixing coefficient system", "admissibility.solve_gamma", 0.0, 1.0, 0.0, false});
    j = report(cfg, checks);
    j["lambda"] = lp.lambda();
    j["error"] = e.what();
    std::cerr << e.what() << "\n";
  }
  out.stream() << j.dump(2) << "\n";
  return finish(checks, cfg);
}

int cmd_verify(RunConfig cfg) {
  if (cfg.tol < 0) cfg.tol = 1e-6;
  if (cfg.band < 0) cfg.band = 20;
  cfg.format = "json";
  const pmw::LambdaParam lp(cfg.n);
  const pmw::PairReport rep = pmw::verify_pair_condition1(lp, cfg.order, cfg.band);
  std::vector<Check> checks;
  if (!rep.solved) {
    checks.push_back({"real_solution_exists", "mixing coefficient system", "admissibility.solve_gamma", 0.0, 1.0, 0.0, false});
  }
  for (const auto& d : rep.degrees) {
    const std::string l = std::to_string(d.l);
    checks.push_back({"condition1_closed_l" + l, "admissibility condition 1, exact rho integral",
                      "admissibility.verify_pair_condition1", d.closed, d.expected, cfg.tol, d.rel_closed < cfg.tol});
    checks.push_back({"condition1_quadrature_l" + l, "admissibility condition 1, numerical rho integral",
                      "admissibility.verify_pair_condition1", d.quadrature, d.expected, cfg.tol, d.rel_quadrature < cfg.tol});
  }
  ordered_json j = report(cfg, checks);
  j["constant_C"] = rep.C;
  if (!rep.note.empty()) j["note"] = rep.note;
  Output(cfg.out).stream() << j.dump(2) << "\n";
  return finish(checks, cfg);
}

int cmd_transform(RunConfig cfg) {
  if (cfg.tol < 0) cfg.tol = 1e-3;
  if (cfg.band < 0) cfg.band = 8;
  cfg.format = "json";
  if (cfg.n != 2) throw CLI::ValidationError("--n", "transform runs on S^2 only");
  const int rot_band = 2 * cfg.band;
  const pmw::RhoGrid rho = pmw::build_log_rho_grid(cfg.rho_min, cfg.rho_max, cfg.rho_steps);
  const pmw::RoundTripReport rep = pmw::s2_round_trip(cfg.order, cfg.band, rho, rot_band);
  std::vector<Check> checks{{"round_trip_relative_l2", "wavelet transform inversion on S^2", "transform.s2_round_trip",
                             rep.rel_l2_error, 0.0, cfg.tol, rep.rel_l2_error < cfg.tol}};
  ordered_json j = report(cfg, checks);
  j["rotation_band"] = rot_band;
  j["transform_values"] = rep.transform_values;
  j["predicted_relative_l2"] = rep.predicted_rel_error;
  Output(cfg.out).stream() << j.dump(2) << "\n";
  return finish(checks, cfg);
}

int cmd_limit(RunConfig cfg) {
  cfg.format = "json";
  const pmw::LambdaParam lp(cfg.n);
  pmw::EuclideanPoint xi;
  xi.coords.assign(static_cast<std::size_t>(cfg.n), 0.0);
  xi.coords[0] = 0.7;
  xi.coords[1] = -0.4;
  const std::vector<double> rhos{0.08, 0.04, 0.02, 0.01};
  const pmw::LimitProbe p = pmw::limit_convergence_probe(lp, cfg.order, xi, rhos);
  std::vector<Check> checks;
  checks.push_back({"error_decreasing", "small-scale limit", "euclid.limit_convergence_probe", p.decreasing() ? 1.0 : 0.0, 1.0, 0.0,
                    p.decreasing()});
  for (std::size_t i = 0; i < p.ratio.size(); ++i) {
    const bool ok = p.ratio[i] >= 1.6 && p.ratio[i] <= 2.4;
    checks.push_back({"error_ratio_" + std::to_string(i), "first-order convergence of the limit", "euclid.limit_convergence_probe",
                      p.ratio[i], 2.0, 0.4, ok});
  }
  ordered_json j = report(cfg, checks);
  j["xi"] = xi.coords;
  j["limit"] = p.limit;
  j["rho"] = p.rho;
  j["value"] = p.value;
  j["error"] = p.error;
  j["empirical_order"] = p.empirical_order();
  Output(cfg.out).stream() << j.dump(2) << "\n";
  return finish(checks, cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Directional Poisson multipole wavelets on S^n"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "sphere dimension")->check(CLI::Range(2, 64))->capture_default_str();
    sub->add_option("--order", cfg.order, "derivative order d or mixing order")->check(CLI::Range(0, 6))->capture_default_str();
    sub->add_option("--rho", cfg.rho, "scale")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--rho-min", cfg.rho_min, "smallest scale of the rho grid")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--rho-max", cfg.rho_max, "largest scale of the rho grid")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--rho-steps", cfg.rho_steps, "number of log-uniform rho nodes")->check(CLI::Range(2, 100000))->capture_default_str();
    sub->add_option("--grid", cfg.grid, "angle grid size per axis")->check(CLI::Range(1, 10000))->capture_default_str();
    sub->add_option("--band", cfg.band, "degree bound (truncation, L_check or signal band)")->check(CLI::Range(0, pmw::kMaxDegree));
    sub->add_option("--tol", cfg.tol, "tolerance override")->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out, "output file (default stdout)");
    sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--report-only", cfg.report_only, "exit 0 even when checks fail");
  };

  struct Sub {
    const char* name;
    const char* help;
    int (*run)(RunConfig);
  };
  const Sub subs[] = {{"eval", "wavelet values on a (theta1, theta2) grid", cmd_eval},
                      {"coeffs", "sector coefficients of the wavelet", cmd_coeffs},
                      {"gamma", "solve for the mixing coefficients", cmd_gamma},
                      {"verify", "admissibility condition 1 per degree", cmd_verify},
                      {"transform", "S^2 analysis and inversion round trip", cmd_transform},
                      {"limit", "small-scale limit probe", cmd_limit}};
  for (const auto& s : subs) add_common(app.add_subcommand(s.name, s.help));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  for (const auto& s : subs) {
    if (!app.got_subcommand(s.name)) continue;
    cfg.subcommand = s.name;
    try {
      if (cfg.rho_min >= cfg.rho_max) throw CLI::ValidationError("--rho-min", "must be below --rho-max");
      return s.run(cfg);
    } catch (const CLI::ValidationError& e) {
      std::cerr << "usage error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const pmw::DomainError& e) {
      std::cerr << "usage error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const pmw::TruncationError& e) {
      std::cerr << "tolerance not reachable: " << e.what() << "\n";
      return kExitCheck;
    } catch (const pmw::SolverError& e) {
      std::cerr << "solver failure: " << e.what() << "\n";
      return kExitCheck;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitCheck;
    }
  }
  return kExitUsage;
}
