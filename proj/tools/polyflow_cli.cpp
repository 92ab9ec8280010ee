// polyflow: command-line driver for the beta-polygon flow library.
//
// Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 check failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "polyflow/diagnostics.hpp"
#include "polyflow/errors.hpp"
#include "polyflow/experiments.hpp"
#include "polyflow/flow.hpp"
#include "polyflow/output.hpp"
#include "polyflow/self_similar.hpp"
#include "polyflow/serialization.hpp"

namespace pf = polyflow;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitCheck = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  std::size_t max_steps = 2'000'000;

  pf::IntegratorConfig config() const {
    pf::IntegratorConfig c;
    c.rel_tol = rel_tol;
    c.abs_tol = abs_tol;
    c.max_steps = max_steps;
    return c;
  }
};

void add_tolerances(CLI::App* cmd, Tolerances& tol) {
  cmd->add_option("--rel-tol", tol.rel_tol, "Integrator relative tolerance")->capture_default_str();
  cmd->add_option("--abs-tol", tol.abs_tol, "Integrator absolute tolerance")->capture_default_str();
  cmd->add_option("--max-steps", tol.max_steps, "Step budget per run")->capture_default_str();
}

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

// ---- evolve ---------------------------------------------------------------

struct EvolveArgs {
  int regular = 0;
  int k = 1;
  std::string input;
  double beta = 1.0;
  double t_end = 1.0;
  bool rescaled = false;
  bool check_selfsim = false;
  int snapshots = 6;
  bool reproducible = false;
  std::string out_dir = "out/evolve";
  Tolerances tol;
};

pf::Polygon initial_polygon(int regular, int k, const std::string& input) {
  if (regular > 0 && !input.empty()) throw UsageError("give either --regular or --input, not both");
  if (regular > 0) return pf::regular_polygon(regular, k);
  if (!input.empty()) return pf::load_polygon(input);
  throw UsageError("an initial polygon is required (--regular N or --input FILE)");
}

// Largest vertexwise |X_j(t) - a(t) P_k,j| / |a(t)| over the samples.
double self_similar_deviation(const pf::Trajectory& traj, int n, int k) {
  const pf::Polygon pk = pf::regular_polygon(n, k);
  const double l = pf::regular_edge_length(n, k);
  const double lam = pf::circulant_eigenvalue(n, k);
  const double beta = traj.beta();
  double worst = 0.0;
  for (const auto& s : traj.samples()) {
    const double a = beta > 0.0 ? pf::self_similar_scale(s.t, beta, l, lam) : std::exp(lam * s.t);
    for (std::size_t j = 0; j < pk.size(); ++j)
      worst = std::max(worst, std::abs(s.polygon.vertices()[j] - a * pk.vertices()[j]) / a);
  }
  return worst;
}

std::vector<pf::SvgPanel> snapshot_panels(const pf::Trajectory& traj, int count) {
  std::vector<pf::SvgPanel> panels;
  if (count <= 0) return panels;
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? traj.t_end()
                                : traj.t_begin() + (traj.t_end() - traj.t_begin()) * i / (count - 1);
    std::ostringstream label;
    label << (traj.kind() == pf::FlowKind::Plain ? "t = " : "tau = ") << t;
    panels.push_back({traj.state_at(t), label.str()});
  }
  return panels;
}

int cmd_evolve(const EvolveArgs& a) {
  if (a.check_selfsim && a.regular <= 0) throw UsageError("--check-selfsim needs --regular");
  const pf::Polygon p0 = initial_polygon(a.regular, a.k, a.input);
  const pf::IntegratorConfig cfg = a.tol.config();
  const pf::Trajectory traj = a.rescaled ? pf::evolve_rescaled(p0, a.beta, a.t_end, cfg)
                                         : pf::evolve(p0, a.beta, a.t_end, cfg);
  const pf::TrajectoryChecks checks = pf::check_trajectory(traj);
  auto summary = pf::summary_json(traj, checks);
  bool ok = checks.all_pass();

  if (a.check_selfsim) {
    if (a.rescaled) throw UsageError("--check-selfsim applies to the plain flow");
    const double dev = self_similar_deviation(traj, a.regular, a.k);
    summary["self_similar_max_deviation"] = dev;
    std::printf("self-similar max relative deviation: %.3e\n", dev);
    ok = ok && dev <= 1e-6;
  }

  pf::write_text_file(join(a.out_dir, "trajectory.csv"), pf::trajectory_csv(traj));
  pf::write_text_file(join(a.out_dir, "summary.json"), summary.dump(2) + "\n");
  if (a.snapshots > 0)
    pf::write_text_file(join(a.out_dir, "snapshots.svg"),
                        pf::render_svg(snapshot_panels(traj, a.snapshots), a.reproducible));

  std::printf("N=%zu beta=%g t_end=%g steps=%zu (rejected %zu)\n", traj.vertex_count(), a.beta,
              traj.t_end(), traj.steps_accepted(), traj.steps_rejected());
  std::cout << "monotone checks: " << summary["monotone_checks"].dump() << "\n";
  return ok ? kExitOk : kExitCheck;
}

// ---- heptagon -------------------------------------------------------------

struct HeptagonArgs {
  pf::HeptagonOptions opts;
  bool reproducible = false;
  std::string out_dir = "out/heptagon";
  Tolerances tol;
};

int cmd_heptagon(HeptagonArgs a) {
  a.opts.integrator = a.tol.config();
  pf::HeptagonRun run = pf::run_heptagon(a.opts);

  std::vector<pf::SvgPanel> panels{{run.initial, "X0"}};
  for (const auto& r : run.result.records) {
    std::ostringstream label;
    label << "k = " << r.k << " (c = " << r.c_k << ")";
    panels.push_back({run.panels[static_cast<std::size_t>(r.k)], label.str()});
  }
  const std::string csv = join(a.out_dir, "records.csv");
  const std::string svg = join(a.out_dir, "panels.svg");
  const std::string json = join(a.out_dir, "result.json");
  run.result.artifacts = {csv, svg, json};
  pf::write_text_file(csv, pf::records_csv(run.result));
  pf::write_text_file(svg, pf::render_svg(panels, a.reproducible));
  pf::write_text_file(json, pf::experiment_json(run.result).dump(2) + "\n");

  std::printf("%2s %12s %14s %14s %14s\n", "k", "c_k", "angle_error", "edge_ratio_err",
              "selfsim_resid");
  std::vector<double> angle, edge;
  for (const auto& r : run.result.records) {
    std::printf("%2d %12.4g %14.6e %14.6e %14.6e\n", r.k, r.c_k, r.angle_error,
                r.edge_ratio_error, r.self_similar_residual);
    angle.push_back(r.angle_error);
    edge.push_back(r.edge_ratio_error);
  }
  const bool ok = pf::is_nonincreasing(angle, 0.0) && pf::is_nonincreasing(edge, 0.0);
  return ok ? kExitOk : kExitCheck;
}

// ---- quad -----------------------------------------------------------------

struct QuadArgs {
  std::string shape = "rectangle";
  pf::QuadOptions opts;
  bool reproducible = false;
  std::string out_dir = "out/quad";
  Tolerances tol;
};

int cmd_quad(QuadArgs a) {
  a.opts.shape = pf::parse_quad_shape(a.shape);
  a.opts.integrator = a.tol.config();
  const pf::QuadRun run = pf::run_quad(a.opts);
  const pf::TrajectoryChecks checks = pf::check_trajectory(run.trajectory);
  auto j = pf::quad_json(run);
  j["monotone_checks"] = pf::monotone_checks_json(checks);
  pf::write_text_file(join(a.out_dir, "quad.json"), j.dump(2) + "\n");
  pf::write_text_file(join(a.out_dir, "quad.svg"),
                      pf::render_svg({{run.initial, "initial"},
                                      {run.trajectory.back().polygon, "final (rescaled)"}},
                                     a.reproducible));
  std::printf("shape=%s edge_residual=%.3e angle_residual=%.3e limit=%s\n", a.shape.c_str(),
              run.edge_residual, run.angle_residual, run.classification.c_str());
  return checks.all_pass() ? kExitOk : kExitCheck;
}

// ---- triangle -------------------------------------------------------------

struct TriangleArgs {
  std::string vertices;
  std::optional<std::uint64_t> seed;
  pf::TriangleOptions opts;
  std::string out_dir = "out/triangle";
  Tolerances tol;
};

int cmd_triangle(TriangleArgs a) {
  if (a.vertices.empty() == !a.seed) throw UsageError("give exactly one of --vertices or --seed");
  pf::Polygon p0 = [&] {
    if (!a.vertices.empty()) return pf::load_polygon(a.vertices);
    pf::SeededRng rng(*a.seed);
    return pf::random_triangle(rng);
  }();
  a.opts.integrator = a.tol.config();
  const pf::TriangleRun run = pf::run_triangle(p0, a.opts);
  pf::write_text_file(join(a.out_dir, "triangle.csv"), pf::triangle_csv(run));
  std::printf("tau=%g max|theta-pi/3|=%.3e V nonincreasing: %s\n", run.trajectory.t_end(),
              run.max_angle_error, run.V_nonincreasing ? "pass" : "fail");
  return run.V_nonincreasing ? kExitOk : kExitCheck;
}

// ---- spectrum -------------------------------------------------------------

struct SpectrumArgs {
  std::string n_range = "4..12";
  std::vector<double> betas{1.0};
  int jobs = 1;
  std::string out_dir = "out/spectrum";
};

std::vector<int> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  int lo = 0, hi = 0;
  try {
    if (dots == std::string::npos) {
      lo = hi = std::stoi(s);
    } else {
      lo = std::stoi(s.substr(0, dots));
      hi = std::stoi(s.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw UsageError("bad range '" + s + "', expected A..B");
  }
  if (lo < 3 || hi < lo) throw UsageError("range must satisfy 3 <= A <= B");
  std::vector<int> out;
  for (int n = lo; n <= hi; ++n) out.push_back(n);
  return out;
}

int cmd_spectrum(const SpectrumArgs& a) {
  const auto ns = parse_range(a.n_range);
  for (double b : a.betas)
    if (!(b > 0.0)) throw UsageError("--beta must be positive for the linearization");
  const auto results = pf::run_spectrum_sweep(ns, a.betas, a.jobs);
  bool ok = true;
  for (const auto& c : results) {
    std::ostringstream name;
    name << "spectrum_N" << c.report.n << "_beta" << c.report.beta << ".json";
    pf::write_text_file(join(a.out_dir, name.str()), pf::spectral_report_json(c).dump(2) + "\n");
    std::printf("N=%2d beta=%-5g dims=(%d,%d,%d) fd_err=%.2e center_res=%.2e gap=%.4g %s\n",
                c.report.n, c.report.beta, c.report.dim_unstable, c.report.dim_center,
                c.report.dim_stable, c.fd_jacobian_max_err, c.center_residual, c.report.stable_gap,
                c.pass() ? "pass" : "FAIL");
    ok = ok && c.pass();
  }
  return ok ? kExitOk : kExitCheck;
}

// ---- entropy --------------------------------------------------------------

struct EntropyArgs {
  int regular = 0;
  std::string input;
  double beta = 1.0;
  double t_end = 1.0;
  std::string x0 = "auto";
  int points = 20;
  std::string out_dir = "out/entropy";
  Tolerances tol;
};

std::optional<pf::Point> parse_x0(const std::string& s) {
  if (s == "auto") return std::nullopt;
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError("--x0 expects 'auto' or 'x,y'");
  try {
    return pf::Point{std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw UsageError("--x0 expects 'auto' or 'x,y'");
  }
}

int cmd_entropy(const EntropyArgs& a) {
  const pf::Polygon p0 = initial_polygon(a.regular, 1, a.input);
  if (!(a.beta > 0.0)) throw UsageError("--beta must be positive for the entropy");
  const pf::EntropyRun run =
      pf::run_entropy(p0, a.beta, a.t_end, parse_x0(a.x0), a.points, a.tol.config());
  pf::write_text_file(join(a.out_dir, "entropy.csv"), pf::entropy_csv(run));
  const bool residual_ok = run.max_relative_residual <= 1e-5;
  std::printf("rho nonincreasing: %s, max relative residual %.3e (%s)\n",
              run.rho_nonincreasing ? "pass" : "fail", run.max_relative_residual,
              residual_ok ? "pass" : "fail");
  return run.rho_nonincreasing && residual_ok ? kExitOk : kExitCheck;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"beta-polygon flow experiments"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file; command-line flags take precedence");

  EvolveArgs ev;
  auto* evolve = app.add_subcommand("evolve", "Integrate the flow and write trajectory CSV, summary JSON, SVG");
  evolve->add_option("--regular", ev.regular, "Start from the regular N-gon P_k");
  evolve->add_option("--k", ev.k, "Winding index k of the regular polygon")->capture_default_str();
  evolve->add_option("--input", ev.input, "Initial polygon file (.json or .csv)");
  evolve->add_option("--beta", ev.beta, "Flow exponent beta >= 0")->capture_default_str();
  evolve->add_option("--t-end", ev.t_end, "End time (tau for --rescaled)")->capture_default_str();
  evolve->add_flag("--rescaled", ev.rescaled, "Integrate the lambda_1-rescaled flow");
  evolve->add_flag("--check-selfsim", ev.check_selfsim, "Compare against a(t) P_k");
  evolve->add_option("--snapshots", ev.snapshots, "SVG snapshot count (0 disables)")->capture_default_str();
  evolve->add_flag("--reproducible", ev.reproducible, "Omit the SVG timestamp comment");
  evolve->add_option("--out-dir", ev.out_dir, "Output directory")->capture_default_str();
  add_tolerances(evolve, ev.tol);

  HeptagonArgs hp;
  auto* hepta = app.add_subcommand("heptagon", "Iterate-and-rescale heptagon experiment");
  hepta->add_option("--seed", hp.opts.seed, "Perturbation seed")->capture_default_str();
  hepta->add_option("--perturb", hp.opts.perturb, "Perturbation amplitude")->capture_default_str();
  hepta->add_option("--iterations", hp.opts.iterations, "Number of panels K >= 1")->capture_default_str();
  hepta->add_option("--tau", hp.opts.tau, "Evolution time per iteration")->capture_default_str();
  hepta->add_option("--scale", hp.opts.scale, "Dilation factor per iteration")->capture_default_str();
  hepta->add_option("--beta", hp.opts.beta, "Flow exponent")->capture_default_str();
  hepta->add_flag("--reproducible", hp.reproducible, "Omit the SVG timestamp comment");
  hepta->add_option("--out-dir", hp.out_dir, "Output directory")->capture_default_str();
  add_tolerances(hepta, hp.tol);

  QuadArgs qa;
  auto* quad = app.add_subcommand("quad", "Rescaled flow of a quadrilateral");
  quad->add_option("--shape", qa.shape, "rectangle | generic | rhombus")
      ->check(CLI::IsMember({"rectangle", "generic", "rhombus"}))
      ->capture_default_str();
  quad->add_option("--beta", qa.opts.beta, "Flow exponent beta > 0")->capture_default_str();
  quad->add_option("--tau-end", qa.opts.tau_end, "Rescaled end time")->capture_default_str();
  quad->add_option("--aspect", qa.opts.aspect, "Rectangle aspect ratio")->capture_default_str();
  quad->add_option("--angle", qa.opts.rhombus_angle, "Rhombus angle in radians")->capture_default_str();
  quad->add_option("--seed", qa.opts.seed, "Seed for the generic shape")->capture_default_str();
  quad->add_option("--perturb", qa.opts.perturb, "Perturbation for the generic shape")->capture_default_str();
  quad->add_flag("--reproducible", qa.reproducible, "Omit the SVG timestamp comment");
  quad->add_option("--out-dir", qa.out_dir, "Output directory")->capture_default_str();
  add_tolerances(quad, qa.tol);

  TriangleArgs ta;
  auto* tri = app.add_subcommand("triangle", "Triangle run with the Lyapunov function V");
  tri->add_option("--vertices", ta.vertices, "Triangle file (.json or .csv)");
  tri->add_option("--seed", ta.seed, "Draw a random triangle with this seed instead");
  tri->add_option("--beta", ta.opts.beta, "Flow exponent beta > 0")->capture_default_str();
  tri->add_option("--target", ta.opts.target, "Stop when max |theta - pi/3| drops below")->capture_default_str();
  tri->add_option("--tau-max", ta.opts.tau_max, "Rescaled time limit")->capture_default_str();
  tri->add_option("--out-dir", ta.out_dir, "Output directory")->capture_default_str();
  add_tolerances(tri, ta.tol);

  SpectrumArgs sa;
  auto* spec = app.add_subcommand("spectrum", "Linearization spectra at the regular polygon");
  spec->add_option("--n-range", sa.n_range, "Vertex counts A..B")->capture_default_str();
  spec->add_option("--beta", sa.betas, "One or more flow exponents")->capture_default_str();
  spec->add_option("--jobs", sa.jobs, "Concurrent (N, beta) pairs")->check(CLI::PositiveNumber)->capture_default_str();
  spec->add_option("--out-dir", sa.out_dir, "Output directory")->capture_default_str();

  EntropyArgs ea;
  auto* ent = app.add_subcommand("entropy", "Entropy rho(t) and its monotonicity residuals");
  ent->add_option("--regular", ea.regular, "Start from the regular N-gon");
  ent->add_option("--input", ea.input, "Initial polygon file (.json or .csv)");
  ent->add_option("--beta", ea.beta, "Flow exponent beta > 0")->capture_default_str();
  ent->add_option("--t-end", ea.t_end, "End time")->capture_default_str();
  ent->add_option("--x0", ea.x0, "'auto' (initial center of mass) or 'x,y'")->capture_default_str();
  ent->add_option("--points", ea.points, "Number of tabulated times")->capture_default_str();
  ent->add_option("--out-dir", ea.out_dir, "Output directory")->capture_default_str();
  add_tolerances(ent, ea.tol);

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

  try {
    if (*evolve) return cmd_evolve(ev);
    if (*hepta) return cmd_heptagon(hp);
    if (*quad) return cmd_quad(qa);
    if (*tri) return cmd_triangle(ta);
    if (*spec) return cmd_spectrum(sa);
    if (*ent) return cmd_entropy(ea);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const pf::InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const pf::Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
