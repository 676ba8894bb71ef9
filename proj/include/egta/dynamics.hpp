#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "egta/game.hpp"
#include "egta/hpt.hpp"
#include "egta/matrix.hpp"

namespace egta {

/// Replicator vector field over one simplex or a product of two. The state is
/// the concatenation of the population mixes; `dims` holds one simplex size
/// per population. Tangent vectors sum to 0 within each population block.
struct VectorField {
  std::vector<std::size_t> dims;
  std::function<std::vector<double>(const std::vector<double>&)> evaluate;

  std::size_t state_size() const;
  std::size_t populations() const { return dims.size(); }
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> points;  // concatenated states
  std::vector<std::size_t> dims;
};

/// Field arrows sampled on the barycentric lattice {(a/m, b/m, c/m)} of the
/// 2-simplex, boundary included.
struct DirectionalField {
  int resolution = 0;
  std::vector<std::array<double, 3>> points;
  std::vector<std::array<double, 3>> arrows;
};

/// x_l' = x_l ((A x)_l - x^T A x)
VectorField single_population_field(const Matrix& payoff);
/// Same, with (A x)_l replaced by the table's expected strategy payoff.
VectorField single_population_field(const MetaPayoffTable& table);
/// x_l' = x_l ((A y)_l - x^T A y),  y_l'' = y_l' ((x^T B)_l' - x^T B y)
VectorField two_population_field(const BimatrixGame& game);

/// Fixed-step RK4 from `start` to t_end, projecting back onto the simplex
/// (clip negatives, renormalize) after every step. Records every step.
/// Throws if the field ever evaluates to a non-finite value.
Trajectory integrate(const VectorField& field, const std::vector<double>& start,
                     double t_end, double step);

/// Sample a single-population 3-strategy field on the lattice of the given
/// resolution (m >= 1; m = 1 yields just the vertices).
DirectionalField directional_field(const VectorField& field, int resolution);

/// Barycentric lattice points of the 2-simplex at resolution m, in the same
/// reverse-lexicographic order as enumerate_profiles(m, 3).
std::vector<std::array<double, 3>> simplex_lattice(int resolution);

enum class TrajectoryClass { kConvergedToVertex, kConvergedToInterior, kCycling, kUndetermined };

struct ClassifyOptions {
  double vertex_tolerance = 1e-3;
  double settle_tolerance = 1e-3;   // max drift over the trailing window
  double settle_window = 0.1;       // fraction of the horizon
  double return_tolerance = 0.02;   // cycle: comes back this close...
  double min_time = 10.0;           // ...after this much time...
  double min_lag = 5.0;             // ...to a point at least this much older,
  double min_excursion = 0.05;      // having wandered at least this far away.
};

TrajectoryClass classify(const Trajectory& trajectory, const ClassifyOptions& options = {});
std::string to_string(TrajectoryClass c);

}  // namespace egta
