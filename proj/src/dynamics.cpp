#include "egta/dynamics.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace egta {

std::size_t VectorField::state_size() const {
  return std::accumulate(dims.begin(), dims.end(), std::size_t(0));
}

namespace {

std::vector<double> replicator(const std::vector<double>& x,
                               const std::vector<double>& fitness) {
  double average = 0.0;
  for (std::size_t l = 0; l < x.size(); ++l) average += x[l] * fitness[l];
  std::vector<double> dx(x.size());
  for (std::size_t l = 0; l < x.size(); ++l) dx[l] = x[l] * (fitness[l] - average);
  return dx;
}

void check_state_size(const VectorField& field, const std::vector<double>& state) {
  if (state.size() != field.state_size())
    throw std::invalid_argument("state dimension mismatch");
}

}  // namespace

VectorField single_population_field(const Matrix& payoff) {
  if (!payoff.square()) throw std::invalid_argument("payoff matrix must be square");
  const std::size_t k = payoff.rows();
  return VectorField{{k}, [payoff, k](const std::vector<double>& x) {
                       if (x.size() != k) throw std::invalid_argument("state dimension mismatch");
                       return replicator(x, payoff.times(x));
                     }};
}

VectorField single_population_field(const MetaPayoffTable& table) {
  const std::size_t k = table.num_strategies();
  return VectorField{{k}, [table, k](const std::vector<double>& x) {
                       if (x.size() != k) throw std::invalid_argument("state dimension mismatch");
                       MixedStrategy mix(x, 1e-6);
                       return replicator(mix.weights(), meta_expected_payoff(table, mix));
                     }};
}

VectorField two_population_field(const BimatrixGame& game) {
  const std::size_t k = game.rows();
  const std::size_t kp = game.cols();
  const Matrix a = game.row_payoffs;
  const Matrix b = game.col_payoffs;
  return VectorField{
      {k, kp}, [a, b, k, kp](const std::vector<double>& state) {
        if (state.size() != k + kp) throw std::invalid_argument("state dimension mismatch");
        std::vector<double> x(state.begin(), state.begin() + long(k));
        std::vector<double> y(state.begin() + long(k), state.end());
        auto dx = replicator(x, a.times(y));
        auto dy = replicator(y, b.left_times(x));
        dx.insert(dx.end(), dy.begin(), dy.end());
        return dx;
      }};
}

namespace {

void project_to_simplices(std::vector<double>& state,
                          const std::vector<std::size_t>& dims) {
  std::size_t offset = 0;
  for (std::size_t dim : dims) {
    double sum = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      double& v = state[offset + i];
      if (v < 0.0) v = 0.0;
      sum += v;
    }
    for (std::size_t i = 0; i < dim; ++i) state[offset + i] /= sum;
    offset += dim;
  }
}

void validate_start(const std::vector<double>& start,
                    const std::vector<std::size_t>& dims) {
  std::size_t offset = 0;
  for (std::size_t dim : dims) {
    // Throws when the block is off the simplex.
    MixedStrategy(std::vector<double>(start.begin() + long(offset),
                                      start.begin() + long(offset + dim)),
                  1e-6);
    offset += dim;
  }
}

}  // namespace

Trajectory integrate(const VectorField& field, const std::vector<double>& start,
                     double t_end, double step) {
  check_state_size(field, start);
  if (t_end <= 0.0 || step <= 0.0)
    throw std::invalid_argument("t_end and step must be positive");
  validate_start(start, field.dims);

  auto deriv = [&](const std::vector<double>& x) {
    auto dx = field.evaluate(x);
    for (double v : dx)
      if (!std::isfinite(v)) throw std::runtime_error("non-finite field value");
    return dx;
  };

  Trajectory trajectory;
  trajectory.dims = field.dims;
  std::vector<double> x = start;
  project_to_simplices(x, field.dims);
  trajectory.times.push_back(0.0);
  trajectory.points.push_back(x);

  const std::size_t n = x.size();
  double t = 0.0;
  while (t < t_end - 1e-12) {
    const double h = std::min(step, t_end - t);
    auto k1 = deriv(x);
    std::vector<double> tmp(n);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
    auto k2 = deriv(tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
    auto k3 = deriv(tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
    auto k4 = deriv(tmp);
    for (std::size_t i = 0; i < n; ++i)
      x[i] += h / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
    project_to_simplices(x, field.dims);
    t += h;
    trajectory.times.push_back(t);
    trajectory.points.push_back(x);
  }
  return trajectory;
}

std::vector<std::array<double, 3>> simplex_lattice(int resolution) {
  if (resolution < 1) throw std::invalid_argument("lattice resolution must be >= 1");
  std::vector<std::array<double, 3>> points;
  for (const auto& profile : enumerate_profiles(resolution, 3)) {
    points.push_back({double(profile.counts[0]) / resolution,
                      double(profile.counts[1]) / resolution,
                      double(profile.counts[2]) / resolution});
  }
  return points;
}

DirectionalField directional_field(const VectorField& field, int resolution) {
  if (field.populations() != 1 || field.dims[0] != 3)
    throw std::invalid_argument("directional field rendering needs a single 3-strategy population");
  DirectionalField out;
  out.resolution = resolution;
  out.points = simplex_lattice(resolution);
  out.arrows.reserve(out.points.size());
  for (const auto& p : out.points) {
    auto dx = field.evaluate({p[0], p[1], p[2]});
    out.arrows.push_back({dx[0], dx[1], dx[2]});
  }
  return out;
}

namespace {

double inf_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// Every population block within tolerance of a vertex.
bool near_vertex(const std::vector<double>& state,
                 const std::vector<std::size_t>& dims, double tolerance) {
  std::size_t offset = 0;
  for (std::size_t dim : dims) {
    bool found = false;
    for (std::size_t i = 0; i < dim && !found; ++i) {
      double d = std::abs(state[offset + i] - 1.0);
      for (std::size_t j = 0; j < dim; ++j)
        if (j != i) d = std::max(d, std::abs(state[offset + j]));
      found = d <= tolerance;
    }
    if (!found) return false;
    offset += dim;
  }
  return true;
}

}  // namespace

TrajectoryClass classify(const Trajectory& trajectory, const ClassifyOptions& options) {
  if (trajectory.points.empty()) return TrajectoryClass::kUndetermined;
  const auto& final_point = trajectory.points.back();
  const double horizon = trajectory.times.back();

  double drift = 0.0;
  for (std::size_t i = trajectory.points.size(); i-- > 0;) {
    if (trajectory.times[i] < horizon * (1.0 - options.settle_window)) break;
    drift = std::max(drift, inf_distance(trajectory.points[i], final_point));
  }
  if (drift <= options.settle_tolerance) {
    return near_vertex(final_point, trajectory.dims, options.vertex_tolerance)
               ? TrajectoryClass::kConvergedToVertex
               : TrajectoryClass::kConvergedToInterior;
  }

  // Cycling: a late point returns close to a much earlier one after a real
  // excursion away from it. Subsampled; the all-pairs scan is quadratic.
  const std::size_t stride = std::max<std::size_t>(1, trajectory.points.size() / 2000);
  for (std::size_t j = 0; j < trajectory.points.size(); j += stride) {
    if (trajectory.times[j] < options.min_time) continue;
    for (std::size_t i = 0; i < j; i += stride) {
      if (trajectory.times[j] - trajectory.times[i] < options.min_lag) break;
      if (inf_distance(trajectory.points[i], trajectory.points[j]) >=
          options.return_tolerance)
        continue;
      double excursion = 0.0;
      for (std::size_t m = i; m <= j; ++m)
        excursion = std::max(excursion,
                             inf_distance(trajectory.points[m], trajectory.points[i]));
      if (excursion >= options.min_excursion) return TrajectoryClass::kCycling;
    }
  }
  return TrajectoryClass::kUndetermined;
}

std::string to_string(TrajectoryClass c) {
  switch (c) {
    case TrajectoryClass::kConvergedToVertex: return "converged-to-vertex";
    case TrajectoryClass::kConvergedToInterior: return "converged-to-interior";
    case TrajectoryClass::kCycling: return "cycling";
    case TrajectoryClass::kUndetermined: return "undetermined";
  }
  return "undetermined";
}

}  // namespace egta
