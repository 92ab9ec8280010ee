#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polyflow/diagnostics.hpp"
#include "polyflow/experiments.hpp"
#include "polyflow/flow.hpp"

namespace polyflow {

/// Writes `content` to `path`, creating parent directories. Throws Error on I/O failure.
void write_text_file(const std::string& path, const std::string& content);

/// Header `t,j,x,y,l_j,theta_j,F_alpha,rho`, one row per (sample, vertex).
/// l_j is the edge from vertex j to j+1. rho uses x0 (default: the initial
/// center of mass) and is `nan` where undefined (rescaled runs, beta = 0), as
/// is theta_j at a degenerate vertex.
std::string trajectory_csv(const Trajectory& traj, std::optional<Point> x0 = {});

nlohmann::ordered_json monotone_checks_json(const TrajectoryChecks& checks);
/// {beta, N, t_end, steps_accepted, steps_rejected, final_center_of_mass, monotone_checks}.
nlohmann::ordered_json summary_json(const Trajectory& traj, const TrajectoryChecks& checks);

/// Header `t,theta0,theta1,theta2,V,Vdot`.
std::string triangle_csv(const TriangleRun& run);

/// {N, beta, eigenvalues, dims: {unstable, center, stable}, checks: {...}}.
nlohmann::ordered_json spectral_report_json(const SpectrumCheck& check);

/// Header `k,c_k,angle_error,edge_ratio_error,self_similar_residual`.
std::string records_csv(const ExperimentResult& result);
nlohmann::ordered_json experiment_json(const ExperimentResult& result);

nlohmann::ordered_json quad_json(const QuadRun& run);

/// Header `t,rho,drho_dt_numeric,drho_dt_formula,residual`.
std::string entropy_csv(const EntropyRun& run);

struct SvgPanel {
  Polygon polygon;
  std::string label;
};

/// Panels on a grid of at most `columns` per row, each with its own fixed
/// square viewBox around the polygon, drawn as a closed path with vertex
/// dots. Unless `reproducible`, a generation-time comment is included.
std::string render_svg(const std::vector<SvgPanel>& panels, bool reproducible, int columns = 3);

}  // namespace polyflow
