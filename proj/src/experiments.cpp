#include "polyflow/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "polyflow/diagnostics.hpp"
#include "polyflow/entropy.hpp"
#include "polyflow/errors.hpp"
#include "polyflow/self_similar.hpp"
#include "polyflow/triangle.hpp"

namespace polyflow {

namespace {

constexpr double kPi = std::numbers::pi;

Polygon centered(const Polygon& p) { return p - center_of_mass(p); }

}  // namespace

double angle_error_to(const Polygon& p, double theta_ref) {
  double s = 0.0;
  for (double th : interior_angles(p)) s += (th - theta_ref) * (th - theta_ref);
  return s;
}

double angle_error(const Polygon& p) {
  const double n = static_cast<double>(p.size());
  return angle_error_to(p, (n - 2.0) * kPi / n);
}

double edge_ratio_error(const Polygon& p) {
  const auto l = edge_lengths(p);
  double s = 0.0;
  for (std::size_t i = 0; i < l.size(); ++i) {
    const double r = l[i] / l[(i + 1) % l.size()] - 1.0;
    s += r * r;
  }
  return s;
}

Polygon perturbed_regular_polygon(int n, std::uint64_t seed, double amplitude) {
  if (!(amplitude >= 0.0)) throw InvalidArgument("perturbation amplitude must be >= 0");
  Polygon p = regular_polygon(n, 1);
  SeededRng rng(seed);
  for (int j = 0; j < n; ++j) {
    const double ur = rng.uniform(-1.0, 1.0);
    const double ut = rng.uniform(-1.0, 1.0);
    const Point pj = p[j];
    p[j] = pj * (1.0 + amplitude * ur) + Point{0.0, 1.0} * pj * (amplitude * ut);
  }
  return p;
}

HeptagonRun run_heptagon(const HeptagonOptions& opts) {
  if (opts.iterations < 1) throw InvalidArgument("heptagon: iterations must be >= 1");
  if (!(opts.tau > 0.0)) throw InvalidArgument("heptagon: tau must be positive");
  if (!(opts.scale > 0.0)) throw InvalidArgument("heptagon: scale must be positive");

  HeptagonRun run{{}, perturbed_regular_polygon(7, opts.seed, opts.perturb), {}, {}};
  run.result.name = "heptagon";
  run.result.seed = opts.seed;
  run.result.parameters = {{"beta", opts.beta},
                           {"perturb", opts.perturb},
                           {"iterations", static_cast<double>(opts.iterations)},
                           {"tau", opts.tau},
                           {"scale", opts.scale}};

  Polygon start = run.initial;
  double c = 1.0;
  for (int k = 0; k < opts.iterations; ++k) {
    if (k > 0) {
      const Point q = center_of_mass(run.panels.back());
      start = opts.scale * (run.panels.back() - q) + q;
      c *= opts.scale;
    }
    Trajectory traj = evolve(start, opts.beta, opts.tau, opts.integrator);
    const Polygon& panel = traj.back().polygon;
    IterationRecord rec;
    rec.k = k;
    rec.c_k = c;
    rec.angle_error = angle_error(panel);
    rec.edge_ratio_error = edge_ratio_error(panel);
    try {
      rec.self_similar_residual = self_similar_residual(panel, opts.beta).residual;
    } catch (const ZeroVelocity&) {
      rec.self_similar_residual = 0.0;
    }
    run.result.records.push_back(rec);
    run.panels.push_back(panel);
    run.runs.push_back(std::move(traj));
  }
  return run;
}

QuadShape parse_quad_shape(const std::string& name) {
  if (name == "rectangle") return QuadShape::Rectangle;
  if (name == "generic") return QuadShape::Generic;
  if (name == "rhombus") return QuadShape::Rhombus;
  throw InvalidArgument("unknown quadrilateral shape '" + name + "'");
}

std::string to_string(QuadShape shape) {
  switch (shape) {
    case QuadShape::Rectangle: return "rectangle";
    case QuadShape::Generic: return "generic";
    case QuadShape::Rhombus: return "rhombus";
  }
  return "unknown";
}

Polygon quad_initial(const QuadOptions& opts) {
  switch (opts.shape) {
    case QuadShape::Rectangle: {
      if (!(opts.aspect > 0.0)) throw InvalidArgument("rectangle aspect must be positive");
      const double w = opts.aspect / 2.0, h = 0.5;
      return Polygon({{-w, -h}, {w, -h}, {w, h}, {-w, h}});
    }
    case QuadShape::Generic:
      return centered(perturbed_regular_polygon(4, opts.seed, opts.perturb));
    case QuadShape::Rhombus: {
      if (!(opts.rhombus_angle > 0.0 && opts.rhombus_angle < kPi))
        throw InvalidArgument("rhombus angle must lie in (0, pi)");
      const Point e = std::polar(1.0, opts.rhombus_angle);
      return centered(Polygon({{0.0, 0.0}, {1.0, 0.0}, 1.0 + e, e}));
    }
  }
  throw InvalidArgument("unknown quadrilateral shape");
}

QuadRun run_quad(const QuadOptions& opts) {
  const Polygon p0 = quad_initial(opts);
  Trajectory traj = evolve_rescaled(p0, opts.beta, opts.tau_end, opts.integrator, CenterMode::Pinned);
  std::vector<QuadCheckpoint> checkpoints;
  const int whole = static_cast<int>(std::floor(opts.tau_end));
  for (int i = 0; i <= whole; ++i) {
    const Polygon y = traj.state_at(static_cast<double>(i));
    checkpoints.push_back({static_cast<double>(i), edge_ratio_error(y), angle_error_to(y, kPi / 2)});
  }
  const Polygon& y = traj.back().polygon;
  const double edge = edge_ratio_error(y);
  const double angle = angle_error_to(y, kPi / 2);
  std::string cls = "other";
  if (edge <= 1e-6 && angle <= 1e-6)
    cls = "square";
  else if (edge <= 1e-4)
    cls = "rhombus";
  return QuadRun{opts.shape, p0, std::move(traj), std::move(checkpoints), edge, angle, cls};
}

Polygon random_triangle(SeededRng& rng) {
  for (;;) {
    std::vector<Point> v(3);
    for (auto& z : v) {
      const double x = rng.uniform();
      const double y = rng.uniform();
      z = {x, y};
    }
    Polygon p = counterclockwise(Polygon(v));
    const auto s2 = sin_squared_angles(p);
    // Reject nearly degenerate draws; they only slow the run down.
    if (*std::min_element(s2.begin(), s2.end()) < 1e-4) continue;
    return centered(p);
  }
}

TriangleRun run_triangle(const Polygon& p0, const TriangleOptions& opts) {
  if (p0.size() != 3) throw InvalidArgument("triangle run needs exactly 3 vertices");
  const Polygon start = counterclockwise(p0);
  triangle_angles(start);  // rejects degenerate input up front

  auto max_error = [](const Polygon& p) {
    const TriangleAngles ang = triangle_angles(p);
    double m = 0.0;
    for (double th : ang.values()) m = std::max(m, std::abs(th - kPi / 3));
    return m;
  };

  Trajectory traj =
      evolve_rescaled(start, opts.beta, opts.tau_chunk, opts.integrator, CenterMode::Pinned);
  while (max_error(traj.back().polygon) >= opts.target && traj.t_end() < opts.tau_max)
    traj = extend(traj, std::min(traj.t_end() + opts.tau_chunk, opts.tau_max));

  std::vector<TriangleRow> rows;
  std::vector<double> vs;
  rows.reserve(traj.samples().size());
  for (const auto& s : traj.samples()) {
    const TriangleAngles ang = triangle_angles(s.polygon);
    const double v = lyapunov_V(ang);
    rows.push_back({s.t, ang.values(), v, lyapunov_V_dot(s.polygon, opts.beta)});
    vs.push_back(v);
  }
  const double err = max_error(traj.back().polygon);
  const bool mono = is_nonincreasing(vs);
  return TriangleRun{std::move(traj), std::move(rows), mono, err, err < opts.target};
}

bool SpectrumCheck::pass(double fd_tol, double tol) const {
  return dims_ok && fd_jacobian_max_err <= fd_tol && center_residual <= tol &&
         d_spectrum_defect <= tol && unstable_eigenvalue_err <= tol &&
         unstable_span_residual <= 1e-8;
}

SpectrumCheck run_spectrum_check(int n, double beta, double fd_h) {
  SpectrumCheck c;
  c.report = classify_spectrum(n, beta);
  const BlockMatrices bl = build_blocks(n, beta);
  c.fd_jacobian_max_err = (fd_jacobian(n, beta, fd_h) - bl.linearization()).cwiseAbs().maxCoeff();
  c.center_residual = n >= 4 ? center_residual(bl) : 0.0;
  c.d_spectrum_defect = d_spectrum_defect(bl);

  const auto& r = c.report;
  for (int i = 0; i < r.dim_unstable; ++i)
    c.unstable_eigenvalue_err =
        std::max(c.unstable_eigenvalue_err, std::abs(r.eigenvalues(i) + bl.lambda_1));

  // Translations (1,...,1, 0,...,0) and (0,...,0, 1,...,1) should lie in E^u.
  for (int block = 0; block < 2; ++block) {
    Eigen::VectorXd t = Eigen::VectorXd::Zero(2 * n);
    t.segment(block * n, n).setConstant(1.0 / std::sqrt(static_cast<double>(n)));
    const Eigen::MatrixXd& u = r.unstable_basis;
    const double res = u.cols() == 0 ? 1.0 : (t - u * (u.transpose() * t)).norm();
    c.unstable_span_residual = std::max(c.unstable_span_residual, res);
  }

  const int center_expected = n == 4 ? 2 : 1;
  c.dims_ok = r.dim_unstable == 2 && r.dim_center == center_expected &&
              r.dim_stable == 2 * n - 2 - center_expected;
  return c;
}

std::vector<SpectrumCheck> run_spectrum_sweep(const std::vector<int>& ns,
                                              const std::vector<double>& betas, int jobs) {
  std::vector<std::pair<int, double>> tasks;
  for (int n : ns)
    for (double b : betas) tasks.emplace_back(n, b);
  std::vector<SpectrumCheck> out(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        out[i] = run_spectrum_check(tasks[i].first, tasks[i].second);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(tasks.size(), 1)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

EntropyRun run_entropy(const Polygon& p0, double beta, double t_end, std::optional<Point> x0,
                       int points, const IntegratorConfig& cfg) {
  if (points < 1) throw InvalidArgument("entropy: need at least one evaluation point");
  constexpr double h = 1e-5;
  if (!(t_end > 4.0 * h)) throw InvalidArgument("entropy: t_end too small");
  Trajectory traj = evolve(p0, beta, t_end, cfg);
  const Point x = x0.value_or(center_of_mass(p0));

  std::vector<EntropyRow> rows;
  double worst = 0.0;
  for (int i = 1; i <= points; ++i) {
    const double t = std::min(t_end * i / points, t_end - 2.0 * h);
    const MonotonicityCheck m = monotonicity_residual(traj, x, t, h);
    rows.push_back({t, entropy_rho(traj, x, t), m.numeric_derivative, m.formula, m.residual});
    if (m.formula != 0.0) worst = std::max(worst, m.residual / std::abs(m.formula));
  }

  std::vector<double> rho;
  rho.reserve(traj.samples().size());
  for (const auto& s : traj.samples()) rho.push_back(entropy_rho(traj, x, s.t));
  const bool mono = is_nonincreasing(rho);
  return EntropyRun{std::move(traj), x, std::move(rows), mono, worst};
}

}  // namespace polyflow
