#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polyflow/flow.hpp"
#include "polyflow/linearization.hpp"
#include "polyflow/polygon.hpp"
#include "polyflow/random.hpp"

namespace polyflow {

/// sum_i (theta_i - (N-2) pi / N)^2.
double angle_error(const Polygon& p);
/// sum_i (l_i / l_{i+1} - 1)^2.
double edge_ratio_error(const Polygon& p);
/// sum_i (theta_i - theta_ref)^2 for a fixed reference angle.
double angle_error_to(const Polygon& p, double theta_ref);

struct IterationRecord {
  int k = 0;
  double c_k = 1.0;
  double angle_error = 0.0;
  double edge_ratio_error = 0.0;
  double self_similar_residual = 0.0;
};

struct ExperimentResult {
  std::string name;
  std::vector<IterationRecord> records;
  std::uint64_t seed = 0;
  std::map<std::string, double> parameters;
  std::vector<std::string> artifacts;
};

/// Regular N-gon P_1 with vertex j moved to P_j (1 + a u_r) + i P_j a u_t,
/// u uniform in [-1, 1] drawn in the order r_0, t_0, r_1, t_1, ...
Polygon perturbed_regular_polygon(int n, std::uint64_t seed, double amplitude);

struct HeptagonOptions {
  std::uint64_t seed = 7;
  double perturb = 0.2;
  int iterations = 6;
  double tau = 1.0;
  double scale = 10.0;
  double beta = 1.0;
  IntegratorConfig integrator{};
};

struct HeptagonRun {
  ExperimentResult result;
  Polygon initial;
  /// Panel k: the state after k rescalings, evolved for time tau.
  std::vector<Polygon> panels;
  std::vector<Trajectory> runs;
};

/// Evolve the plain flow for time tau, record both error metrics, dilate by
/// `scale` about the center of mass and repeat. Record k is panel k with
/// c_k = scale^k.
HeptagonRun run_heptagon(const HeptagonOptions& opts);

enum class QuadShape { Rectangle, Generic, Rhombus };
QuadShape parse_quad_shape(const std::string& name);
std::string to_string(QuadShape shape);

struct QuadOptions {
  QuadShape shape = QuadShape::Rectangle;
  double beta = 1.0;
  double tau_end = 40.0;
  double aspect = 2.0;
  double rhombus_angle = 1.0471975511965976;  // pi/3
  std::uint64_t seed = 3;
  double perturb = 0.2;
  IntegratorConfig integrator{};
};

struct QuadCheckpoint {
  double tau;
  double edge_residual;
  double angle_residual;
};

struct QuadRun {
  QuadShape shape;
  Polygon initial;
  Trajectory trajectory;
  std::vector<QuadCheckpoint> checkpoints;
  double edge_residual;   // sum (l_i / l_{i+1} - 1)^2 at the end
  double angle_residual;  // sum (theta_i - pi/2)^2 at the end
  std::string classification;  // "square", "rhombus" or "other"
};

/// Initial quadrilateral for a shape, centered at the origin, counterclockwise.
Polygon quad_initial(const QuadOptions& opts);
/// Runs the center-pinned rescaled flow to tau_end.
QuadRun run_quad(const QuadOptions& opts);

struct TriangleRow {
  double t;
  std::array<double, 3> theta;
  double V;
  double V_dot;
};

struct TriangleRun {
  Trajectory trajectory;
  std::vector<TriangleRow> rows;
  bool V_nonincreasing;
  double max_angle_error;  // max_i |theta_i - pi/3| at the end
  bool converged;
};

struct TriangleOptions {
  double beta = 1.0;
  double target = 1e-6;     // stop once max |theta_i - pi/3| drops below
  double tau_chunk = 5.0;
  double tau_max = 400.0;
  IntegratorConfig integrator{};
};

/// Random counterclockwise nondegenerate triangle with vertices in the unit
/// square, centered at the origin.
Polygon random_triangle(SeededRng& rng);

/// Runs the center-pinned rescaled flow in chunks until the angles are within
/// `target` of pi/3 or tau_max is reached. V_dot is the plain-flow rate at the
/// sampled shape, which has the same sign as the rescaled rate.
TriangleRun run_triangle(const Polygon& p0, const TriangleOptions& opts = {});

struct SpectrumCheck {
  SpectralReport report;
  double fd_jacobian_max_err = 0.0;
  double center_residual = 0.0;       // 0 when N = 3
  double d_spectrum_defect = 0.0;
  double unstable_eigenvalue_err = 0.0;  // max |mu + lambda_1| over unstable mu
  double unstable_span_residual = 0.0;   // distance of translations from E^u
  bool dims_ok = false;
  bool pass(double fd_tol = 1e-6, double tol = 1e-10) const;
};

SpectrumCheck run_spectrum_check(int n, double beta, double fd_h = 1e-6);
/// Sweeps every (n, beta) pair; up to `jobs` pairs run concurrently. Results
/// are ordered by n, then beta.
std::vector<SpectrumCheck> run_spectrum_sweep(const std::vector<int>& ns,
                                              const std::vector<double>& betas, int jobs = 1);

struct EntropyRow {
  double t;
  double rho;
  double numeric_derivative;
  double formula;
  double residual;
};

struct EntropyRun {
  Trajectory trajectory;
  Point x0;
  std::vector<EntropyRow> rows;
  bool rho_nonincreasing;
  double max_relative_residual;  // max residual / |formula|
};

/// Plain run to t_end with rho and its monotonicity residual tabulated at
/// `points` evenly spaced times in [t_end / points, t_end - 2h]. x0 defaults to
/// the initial center of mass.
EntropyRun run_entropy(const Polygon& p0, double beta, double t_end, std::optional<Point> x0 = {},
                       int points = 20, const IntegratorConfig& cfg = {});

}  // namespace polyflow
