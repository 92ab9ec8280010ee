#include "polyflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "polyflow/errors.hpp"
#include "polyflow/self_similar.hpp"

namespace polyflow {

void FlowParams::validate() const {
  if (!(beta >= 0.0)) throw InvalidArgument("beta must be >= 0");
  if (angle_floor_delta && !(*angle_floor_delta > 0.0 && *angle_floor_delta <= 1.0))
    throw InvalidArgument("angle floor delta must lie in (0, 1]");
}

namespace {

// dy = shift * y + weight * (M_Y Y), on the flattened (x..., y...) layout.
// With `pin` the mean of each coordinate block is removed afterwards.
void flow_rhs(const Eigen::VectorXd& y, double beta, double shift, double weight,
              Eigen::VectorXd& dy, bool pin = false) {
  const Eigen::Index n = y.size() / 2;
  dy.resize(y.size());
  // Edge j runs from vertex j to j+1; w_j = l_j^beta.
  double prev_dx = y(0) - y(n - 1);
  double prev_dy = y(n) - y(2 * n - 1);
  double prev_w = std::pow(std::hypot(prev_dx, prev_dy), beta);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index next = (j + 1 == n) ? 0 : j + 1;
    const double dx = y(next) - y(j);
    const double dyy = y(n + next) - y(n + j);
    const double w = std::pow(std::hypot(dx, dyy), beta);
    dy(j) = shift * y(j) + weight * (w * dx - prev_w * prev_dx);
    dy(n + j) = shift * y(n + j) + weight * (w * dyy - prev_w * prev_dy);
    prev_dx = dx;
    prev_dy = dyy;
    prev_w = w;
  }
  if (pin) {
    dy.head(n).array() -= dy.head(n).mean();
    dy.tail(n).array() -= dy.tail(n).mean();
  }
}

struct RhsCoefficients {
  double shift;
  double weight;
  bool pin;
};

RhsCoefficients coefficients(FlowKind kind, CenterMode mode, double beta, std::size_t n) {
  if (kind == FlowKind::Plain) return {0.0, 1.0, false};
  const int ni = static_cast<int>(n);
  return {-circulant_eigenvalue(ni, 1), 1.0 / std::pow(regular_edge_length(ni, 1), beta),
          mode == CenterMode::Pinned};
}

std::vector<Point> to_points(const Eigen::VectorXd& v) {
  const Eigen::Index n = v.size() / 2;
  std::vector<Point> out(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = {v(j), v(n + j)};
  return out;
}

bool accumulates_entropy(FlowKind kind, double beta) { return kind == FlowKind::Plain && beta > 0.0; }

double entropy_integrand(double s, double beta, const Eigen::VectorXd& v) {
  if (s <= 0.0) return 0.0;
  return 0.5 * beta * std::pow(s, 2.0 / beta + 1.0) * v.squaredNorm();
}

}  // namespace

double vector_norm(std::span<const Point> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

std::vector<Point> velocity(const Polygon& p, double beta) {
  Eigen::VectorXd dy;
  flow_rhs(flatten(p), beta, 0.0, 1.0, dy);
  return to_points(dy);
}

std::vector<Point> rescaled_velocity(const Polygon& y, double beta) {
  const auto c = coefficients(FlowKind::Rescaled, CenterMode::Free, beta, y.size());
  Eigen::VectorXd dy;
  flow_rhs(flatten(y), beta, c.shift, c.weight, dy);
  return to_points(dy);
}

struct TrajectoryBuilder {
  static OdeRhs rhs_for(const Trajectory& tr, std::size_t n) {
    const double beta = tr.beta_;
    const auto c = coefficients(tr.kind_, tr.center_mode_, beta, n);
    return [beta, c](const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
      flow_rhs(y, beta, c.shift, c.weight, dy, c.pin);
    };
  }

  static void push_sample(Trajectory& tr, double t, const Eigen::VectorXd& y,
                          const Eigen::VectorXd& f, double entropy) {
    Polygon poly = unflatten(y);
    const auto s2 = sin_squared_angles(poly);
    TrajectorySample s{t,
                       poly,
                       to_points(f),
                       entropy,
                       energy(poly, tr.beta_ + 2.0),
                       *std::min_element(s2.begin(), s2.end()),
                       center_of_mass(poly)};
    tr.samples_.push_back(std::move(s));
    tr.y_.push_back(y);
    tr.f_.push_back(f);
  }

  static void run(Trajectory& tr, double t_end) {
    const OdeRhs rhs = rhs_for(tr, tr.vertex_count());
    const bool entropy = accumulates_entropy(tr.kind_, tr.beta_);
    const double beta = tr.beta_;
    Eigen::VectorXd vmid;
    integrate_dopri5(rhs, tr.resume_, t_end, tr.config_, [&](const AcceptedStep& st) {
      double integral = tr.samples_.back().entropy_integral;
      if (entropy) {
        const double tm = 0.5 * (st.t0 + st.t1);
        const Eigen::VectorXd ym = hermite_interpolate(tm, st.t0, st.y0, st.f0, st.t1, st.y1, st.f1);
        rhs(ym, vmid);
        integral += (st.t1 - st.t0) / 6.0 *
                    (entropy_integrand(st.t0, beta, st.f0) + 4.0 * entropy_integrand(tm, beta, vmid) +
                     entropy_integrand(st.t1, beta, st.f1));
      }
      push_sample(tr, st.t1, st.y1, st.f1, integral);
    });
  }

  static Trajectory start(FlowKind kind, CenterMode mode, const Polygon& p0, double beta,
                          double t_end, const IntegratorConfig& cfg) {
    cfg.validate();
    if (!(t_end > 0.0)) throw InvalidArgument("end time must be positive");
    Trajectory tr(kind, mode, beta, cfg);
    const OdeRhs rhs = rhs_for(tr, p0.size());
    tr.resume_ = start_integration(rhs, 0.0, flatten(p0), cfg);
    push_sample(tr, 0.0, tr.resume_.y, tr.resume_.f, 0.0);
    run(tr, t_end);
    return tr;
  }

  static Trajectory extend(const Trajectory& base, double new_end) {
    Trajectory tr = base;
    if (new_end > tr.t_end()) run(tr, new_end);
    return tr;
  }
};

Trajectory evolve(const Polygon& p0, double beta, double t_end, const IntegratorConfig& cfg) {
  if (!(beta >= 0.0)) throw InvalidArgument("evolve: beta must be >= 0");
  return TrajectoryBuilder::start(FlowKind::Plain, CenterMode::Free, p0, beta, t_end, cfg);
}

Trajectory evolve_rescaled(const Polygon& y0, double beta, double tau_end,
                           const IntegratorConfig& cfg, CenterMode mode) {
  if (!(beta > 0.0)) throw BetaZero("evolve_rescaled: the rescaled flow requires beta > 0");
  return TrajectoryBuilder::start(FlowKind::Rescaled, mode, y0, beta, tau_end, cfg);
}

Trajectory extend(const Trajectory& traj, double new_end) {
  return TrajectoryBuilder::extend(traj, new_end);
}

std::size_t Trajectory::interval_index(double t) const {
  if (!(t >= t_begin() && t <= t_end()))
    throw RangeExceeded("time " + std::to_string(t) + " outside trajectory range [" +
                        std::to_string(t_begin()) + ", " + std::to_string(t_end()) + "]");
  if (samples_.size() == 1) return 0;
  // First sample with time > t, minus one; clamp so the last interval is closed.
  auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                             [](double v, const TrajectorySample& s) { return v < s.t; });
  std::size_t i = static_cast<std::size_t>(it - samples_.begin());
  i = (i == 0) ? 0 : i - 1;
  return std::min(i, samples_.size() - 2);
}

Polygon Trajectory::state_at(double t) const {
  const std::size_t i = interval_index(t);
  if (samples_.size() == 1) return samples_.front().polygon;
  return unflatten(hermite_interpolate(t, samples_[i].t, y_[i], f_[i], samples_[i + 1].t,
                                       y_[i + 1], f_[i + 1]));
}

std::vector<Point> Trajectory::velocity_at(double t) const {
  const Eigen::VectorXd y = flatten(state_at(t));
  Eigen::VectorXd dy;
  const auto c = coefficients(kind_, center_mode_, beta_, vertex_count());
  flow_rhs(y, beta_, c.shift, c.weight, dy, c.pin);
  return to_points(dy);
}

double Trajectory::entropy_integral_at(double t) const {
  const std::size_t i = interval_index(t);
  double integral = samples_[i].entropy_integral;
  if (!accumulates_entropy(kind_, beta_) || samples_.size() == 1 || t == samples_[i].t)
    return integral;
  const double t0 = samples_[i].t;
  const double tm = 0.5 * (t0 + t);
  auto integrand_at = [&](double s) {
    const Eigen::VectorXd ys =
        hermite_interpolate(s, t0, y_[i], f_[i], samples_[i + 1].t, y_[i + 1], f_[i + 1]);
    Eigen::VectorXd v;
    flow_rhs(ys, beta_, 0.0, 1.0, v);
    return entropy_integrand(s, beta_, v);
  };
  integral += (t - t0) / 6.0 *
              (entropy_integrand(t0, beta_, f_[i]) + 4.0 * integrand_at(tm) + integrand_at(t));
  return integral;
}

}  // namespace polyflow
