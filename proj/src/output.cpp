#include "polyflow/output.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "polyflow/entropy.hpp"
#include "polyflow/errors.hpp"
#include "polyflow/serialization.hpp"

namespace polyflow {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const char* verdict(bool ok) { return ok ? "pass" : "fail"; }

std::string num(double v) { return std::isnan(v) ? "nan" : format_double(v); }

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

nlohmann::ordered_json point_json(Point p) { return {p.real(), p.imag()}; }

}  // namespace

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw Error("failed writing " + path);
}

std::string trajectory_csv(const Trajectory& traj, std::optional<Point> x0) {
  const bool has_rho = traj.kind() == FlowKind::Plain && traj.beta() > 0.0;
  const Point x = x0.value_or(traj.front().center_of_mass);
  std::ostringstream os;
  os << "t,j,x,y,l_j,theta_j,F_alpha,rho\n";
  for (const auto& s : traj.samples()) {
    const auto l = edge_lengths(s.polygon);
    std::vector<double> theta;
    try {
      theta = interior_angles(s.polygon);
    } catch (const DegenerateVertex&) {
      theta.assign(s.polygon.size(), kNaN);
    }
    const double rho = has_rho ? entropy_rho(traj, x, s.t) : kNaN;
    const std::string t = num(s.t), f = num(s.energy), r = num(rho);
    for (std::size_t j = 0; j < s.polygon.size(); ++j) {
      const Point v = s.polygon.vertices()[j];
      os << t << ',' << j << ',' << num(v.real()) << ',' << num(v.imag()) << ',' << num(l[j])
         << ',' << num(theta[j]) << ',' << f << ',' << r << '\n';
    }
  }
  return os.str();
}

nlohmann::ordered_json monotone_checks_json(const TrajectoryChecks& c) {
  return {{"F_alpha", verdict(c.energy_nonincreasing)},
          {"distance_to_points", verdict(c.distance_to_points_nonincreasing)},
          {"entropy_integral", verdict(c.entropy_integral_nondecreasing)},
          {"rho", verdict(c.rho_nonincreasing)},
          {"center_of_mass", verdict(c.center_conserved())},
          {"center_drift_relative", c.center_drift_relative},
          {"center_drift_limit", c.center_drift_limit}};
}

nlohmann::ordered_json summary_json(const Trajectory& traj, const TrajectoryChecks& checks) {
  return {{"beta", traj.beta()},
          {"N", traj.vertex_count()},
          {"flow", traj.kind() == FlowKind::Plain ? "plain" : "rescaled"},
          {"t_end", traj.t_end()},
          {"steps_accepted", traj.steps_accepted()},
          {"steps_rejected", traj.steps_rejected()},
          {"final_center_of_mass", point_json(traj.back().center_of_mass)},
          {"monotone_checks", monotone_checks_json(checks)}};
}

std::string triangle_csv(const TriangleRun& run) {
  std::ostringstream os;
  os << "t,theta0,theta1,theta2,V,Vdot\n";
  for (const auto& r : run.rows)
    os << num(r.t) << ',' << num(r.theta[0]) << ',' << num(r.theta[1]) << ',' << num(r.theta[2])
       << ',' << num(r.V) << ',' << num(r.V_dot) << '\n';
  return os.str();
}

nlohmann::ordered_json spectral_report_json(const SpectrumCheck& c) {
  const auto& r = c.report;
  std::vector<double> eig(r.eigenvalues.data(), r.eigenvalues.data() + r.eigenvalues.size());
  return {{"N", r.n},
          {"beta", r.beta},
          {"eigenvalues", eig},
          {"dims", {{"unstable", r.dim_unstable}, {"center", r.dim_center}, {"stable", r.dim_stable}}},
          {"zero_threshold", r.zero_threshold},
          {"stable_gap", r.stable_gap},
          {"checks",
           {{"fd_jacobian_max_err", c.fd_jacobian_max_err},
            {"center_residuals", c.center_residual},
            {"d_spectrum_defect", c.d_spectrum_defect},
            {"unstable_eigenvalue_err", c.unstable_eigenvalue_err},
            {"unstable_span_residual", c.unstable_span_residual},
            {"dims", verdict(c.dims_ok)},
            {"all", verdict(c.pass())}}}};
}

std::string records_csv(const ExperimentResult& result) {
  std::ostringstream os;
  os << "k,c_k,angle_error,edge_ratio_error,self_similar_residual\n";
  for (const auto& r : result.records)
    os << r.k << ',' << num(r.c_k) << ',' << num(r.angle_error) << ',' << num(r.edge_ratio_error)
       << ',' << num(r.self_similar_residual) << '\n';
  return os.str();
}

nlohmann::ordered_json experiment_json(const ExperimentResult& result) {
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const auto& r : result.records)
    records.push_back({{"k", r.k},
                       {"c_k", r.c_k},
                       {"angle_error", r.angle_error},
                       {"edge_ratio_error", r.edge_ratio_error},
                       {"self_similar_residual", r.self_similar_residual}});
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : result.parameters) params[k] = v;
  return {{"experiment", result.name},
          {"seed", result.seed},
          {"parameters", params},
          {"records", records},
          {"artifacts", result.artifacts}};
}

nlohmann::ordered_json quad_json(const QuadRun& run) {
  nlohmann::ordered_json cps = nlohmann::ordered_json::array();
  for (const auto& c : run.checkpoints)
    cps.push_back({{"tau", c.tau}, {"edge_residual", c.edge_residual}, {"angle_residual", c.angle_residual}});
  nlohmann::ordered_json init = nlohmann::ordered_json::array();
  for (const auto& v : run.initial.vertices()) init.push_back(point_json(v));
  nlohmann::ordered_json fin = nlohmann::ordered_json::array();
  for (const auto& v : run.trajectory.back().polygon.vertices()) fin.push_back(point_json(v));
  return {{"shape", to_string(run.shape)},
          {"beta", run.trajectory.beta()},
          {"tau_end", run.trajectory.t_end()},
          {"initial", init},
          {"final", fin},
          {"edge_residual", run.edge_residual},
          {"angle_residual", run.angle_residual},
          {"classification", run.classification},
          {"checkpoints", cps}};
}

std::string entropy_csv(const EntropyRun& run) {
  std::ostringstream os;
  os << "t,rho,drho_dt_numeric,drho_dt_formula,residual\n";
  for (const auto& r : run.rows)
    os << num(r.t) << ',' << num(r.rho) << ',' << num(r.numeric_derivative) << ','
       << num(r.formula) << ',' << num(r.residual) << '\n';
  return os.str();
}

std::string render_svg(const std::vector<SvgPanel>& panels, bool reproducible, int columns) {
  if (columns < 1) throw InvalidArgument("render_svg: columns must be positive");
  constexpr int kCell = 240, kLabel = 20;
  const int count = static_cast<int>(panels.size());
  const int cols = std::max(1, std::min(columns, count));
  const int rows = (count + cols - 1) / cols;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cols * kCell << "\" height=\""
     << rows * (kCell + kLabel) << "\">\n";
  if (!reproducible) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    os << "<!-- generated " << buf << " -->\n";
  }
  for (int i = 0; i < count; ++i) {
    const auto& panel = panels[static_cast<std::size_t>(i)];
    const auto v = panel.polygon.vertices();
    double xmin = v[0].real(), xmax = xmin, ymin = -v[0].imag(), ymax = ymin;
    for (const auto& z : v) {
      xmin = std::min(xmin, z.real());
      xmax = std::max(xmax, z.real());
      ymin = std::min(ymin, -z.imag());
      ymax = std::max(ymax, -z.imag());
    }
    double side = std::max(xmax - xmin, ymax - ymin);
    if (!(side > 0.0)) side = 1.0;
    side *= 1.2;
    const double x0 = 0.5 * (xmin + xmax) - side / 2, y0 = 0.5 * (ymin + ymax) - side / 2;
    const int px = (i % cols) * kCell, py = (i / cols) * (kCell + kLabel);

    os << "<text x=\"" << px + kCell / 2 << "\" y=\"" << py + 15
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << panel.label
       << "</text>\n";
    os << "<svg x=\"" << px << "\" y=\"" << py + kLabel << "\" width=\"" << kCell << "\" height=\""
       << kCell << "\" viewBox=\"" << short_num(x0) << ' ' << short_num(y0) << ' '
       << short_num(side) << ' ' << short_num(side) << "\">\n";
    os << "<path fill=\"none\" stroke=\"black\" stroke-width=\"" << short_num(side / 200)
       << "\" d=\"";
    for (std::size_t j = 0; j < v.size(); ++j)
      os << (j == 0 ? "M" : " L") << short_num(v[j].real()) << ' ' << short_num(-v[j].imag());
    os << " Z\"/>\n";
    for (const auto& z : v)
      os << "<circle cx=\"" << short_num(z.real()) << "\" cy=\"" << short_num(-z.imag())
         << "\" r=\"" << short_num(side / 100) << "\" fill=\"black\"/>\n";
    os << "</svg>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace polyflow
