#include "egta/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

namespace egta {

namespace {

constexpr double kSolveTolerance = 1e-9;

std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t k, std::size_t size) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (current.size() == size) {
      out.push_back(current);
      return;
    }
    for (std::size_t i = start; i < k; ++i) {
      current.push_back(i);
      rec(i + 1);
      current.pop_back();
    }
  };
  rec(0);
  return out;
}

std::string support_to_string(const std::vector<std::size_t>& support) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < support.size(); ++i) os << (i ? "," : "") << support[i];
  os << "}";
  return os.str();
}

void note(std::vector<std::string>* warnings, const std::string& message) {
  if (warnings) warnings->push_back(message);
}

struct LinearSolution {
  Eigen::VectorXd x;
  bool usable = false;
  bool degenerate = false;
};

LinearSolution solve_square(const Eigen::MatrixXd& m, const Eigen::VectorXd& rhs) {
  LinearSolution solution;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  solution.degenerate = lu.rank() < m.rows();
  solution.x = lu.solve(rhs);
  const double scale = 1.0 + rhs.lpNorm<Eigen::Infinity>() + m.lpNorm<Eigen::Infinity>();
  solution.usable = (m * solution.x - rhs).lpNorm<Eigen::Infinity>() <= kSolveTolerance * scale;
  return solution;
}

// Clip solver dust and renormalize a support-restricted solution into a
// full-length distribution; rejects clearly negative weights.
bool expand_weights(const Eigen::VectorXd& solved, std::size_t offset,
                    const std::vector<std::size_t>& support, std::size_t k,
                    std::vector<double>& out) {
  out.assign(k, 0.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    double w = solved[long(offset + i)];
    if (w < -kSolveTolerance) return false;
    w = std::max(w, 0.0);
    out[support[i]] = w;
    sum += w;
  }
  if (sum <= 0.0) return false;
  for (double& w : out) w /= sum;
  return true;
}

double bimatrix_exploitability(const BimatrixGame& game, const std::vector<double>& x,
                               const std::vector<double>& y) {
  const auto ay = game.row_payoffs.times(y);
  const auto xb = game.col_payoffs.left_times(x);
  double row_value = 0.0, col_value = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) row_value += x[i] * ay[i];
  for (std::size_t j = 0; j < y.size(); ++j) col_value += y[j] * xb[j];
  const double row_best = *std::max_element(ay.begin(), ay.end());
  const double col_best = *std::max_element(xb.begin(), xb.end());
  return std::max(0.0, std::max(row_best - row_value, col_best - col_value));
}

bool close_profiles(const EquilibriumCandidate& a, const EquilibriumCandidate& b,
                    double tolerance) {
  if (a.profile.size() != b.profile.size()) return false;
  for (std::size_t p = 0; p < a.profile.size(); ++p) {
    if (a.profile[p].size() != b.profile[p].size()) return false;
    for (std::size_t i = 0; i < a.profile[p].size(); ++i)
      if (std::abs(a.profile[p][i] - b.profile[p][i]) > tolerance) return false;
  }
  return true;
}

void sort_candidates(std::vector<EquilibriumCandidate>& candidates) {
  std::sort(candidates.begin(), candidates.end(),
            [](const EquilibriumCandidate& a, const EquilibriumCandidate& b) {
              for (std::size_t p = 0; p < std::min(a.profile.size(), b.profile.size()); ++p)
                for (std::size_t i = 0; i < a.profile[p].size(); ++i) {
                  if (std::abs(a.profile[p][i] - b.profile[p][i]) > 1e-12)
                    return a.profile[p][i] > b.profile[p][i];
                }
              return false;
            });
}

}  // namespace

double exploitability(const NormalFormGame& game,
                      const std::vector<MixedStrategy>& profile) {
  const std::size_t p = game.num_players();
  const auto current = expected_payoff(game, profile);

  double worst = 0.0;
  for (std::size_t player = 0; player < p; ++player) {
    const std::size_t k = game.num_strategies(player);
    // Deviation values: expectation over the others with this player pinned.
    std::vector<double> deviation(k, 0.0);
    for (std::size_t index = 0; index < game.num_joints(); ++index) {
      const auto joint = game.joint_at(index);
      double weight = 1.0;
      for (std::size_t i = 0; i < p; ++i)
        if (i != player) weight *= profile[i][joint[i]];
      if (weight == 0.0) continue;
      deviation[joint[player]] += weight * game.payoff_tensor()[index][player];
    }
    const double best = *std::max_element(deviation.begin(), deviation.end());
    worst = std::max(worst, best - current[player]);
  }
  return std::max(0.0, worst);
}

std::vector<std::vector<std::size_t>> pure_equilibria(const NormalFormGame& game,
                                                      double tolerance) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t index = 0; index < game.num_joints(); ++index) {
    const auto joint = game.joint_at(index);
    const auto& rewards = game.payoff_tensor()[index];
    bool stable = true;
    for (std::size_t player = 0; player < game.num_players() && stable; ++player) {
      auto deviated = joint;
      for (std::size_t s = 0; s < game.num_strategies(player) && stable; ++s) {
        if (s == joint[player]) continue;
        deviated[player] = s;
        if (game.payoff(deviated, player) > rewards[player] + tolerance) stable = false;
      }
    }
    if (stable) out.push_back(joint);
  }
  return out;
}

std::vector<EquilibriumCandidate> support_enumeration_2p(
    const BimatrixGame& game, int max_support, std::vector<std::string>* warnings) {
  const std::size_t k = game.rows();
  const std::size_t kp = game.cols();
  if (k > 9 || kp > 9)
    throw std::invalid_argument("support enumeration is sized for games up to 9x9");
  std::size_t cap = std::min(k, kp);
  if (max_support > 0) cap = std::min(cap, std::size_t(max_support));

  std::vector<EquilibriumCandidate> found;
  for (std::size_t s1 = 1; s1 <= std::min(cap, k); ++s1) {
    for (std::size_t s2 = 1; s2 <= std::min(cap, kp); ++s2) {
      for (const auto& rows : subsets_of_size(k, s1)) {
        for (const auto& cols : subsets_of_size(kp, s2)) {
          // Unknowns: x over rows, y over cols, u, v.
          const std::size_t n = s1 + s2 + 2;
          Eigen::MatrixXd m = Eigen::MatrixXd::Zero(long(n), long(n));
          Eigen::VectorXd rhs = Eigen::VectorXd::Zero(long(n));
          for (std::size_t i = 0; i < s1; ++i) {
            for (std::size_t j = 0; j < s2; ++j)
              m(long(i), long(s1 + j)) = game.row_payoffs(rows[i], cols[j]);
            m(long(i), long(s1 + s2)) = -1.0;  // -u
          }
          for (std::size_t j = 0; j < s2; ++j) {
            for (std::size_t i = 0; i < s1; ++i)
              m(long(s1 + j), long(i)) = game.col_payoffs(rows[i], cols[j]);
            m(long(s1 + j), long(s1 + s2 + 1)) = -1.0;  // -v
          }
          for (std::size_t i = 0; i < s1; ++i) m(long(s1 + s2), long(i)) = 1.0;
          for (std::size_t j = 0; j < s2; ++j) m(long(s1 + s2 + 1), long(s1 + j)) = 1.0;
          rhs[long(s1 + s2)] = 1.0;
          rhs[long(s1 + s2 + 1)] = 1.0;

          const auto solution = solve_square(m, rhs);
          // A singular but consistent system means a continuum of solutions;
          // inconsistent ones are ordinary non-equilibrium supports.
          if (solution.degenerate && solution.usable)
            note(warnings, "degenerate indifference system for supports " +
                               support_to_string(rows) + "x" + support_to_string(cols));
          if (!solution.usable) continue;

          std::vector<double> x, y;
          if (!expand_weights(solution.x, 0, rows, k, x)) continue;
          if (!expand_weights(solution.x, s1, cols, kp, y)) continue;

          const double exploit = bimatrix_exploitability(game, x, y);
          if (exploit > kSolveTolerance) continue;

          EquilibriumCandidate candidate;
          candidate.profile = {MixedStrategy(x), MixedStrategy(y)};
          candidate.exploitability = exploit;
          candidate.support = {candidate.profile[0].support(kSupportThreshold),
                               candidate.profile[1].support(kSupportThreshold)};
          candidate.method = "support_enum";
          bool duplicate = false;
          for (const auto& existing : found)
            if (close_profiles(existing, candidate, 1e-7)) {
              duplicate = true;
              break;
            }
          if (!duplicate) found.push_back(std::move(candidate));
        }
      }
    }
  }
  sort_candidates(found);
  return found;
}

std::vector<MixedStrategy> single_population_equilibria(
    const Matrix& payoff, std::vector<std::string>* warnings) {
  if (!payoff.square())
    throw std::invalid_argument("single-population game needs a square matrix");
  const std::size_t k = payoff.rows();
  if (k > 9)
    throw std::invalid_argument("support enumeration is sized for games up to 9x9");

  std::vector<MixedStrategy> found;
  for (std::size_t size = 1; size <= k; ++size) {
    for (const auto& support : subsets_of_size(k, size)) {
      // Unknowns: x over support, v; indifference rows then normalization.
      const std::size_t n = size + 1;
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(long(n), long(n));
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(long(n));
      for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = 0; j < size; ++j)
          m(long(i), long(j)) = payoff(support[i], support[j]);
        m(long(i), long(size)) = -1.0;
      }
      for (std::size_t j = 0; j < size; ++j) m(long(size), long(j)) = 1.0;
      rhs[long(size)] = 1.0;

      const auto solution = solve_square(m, rhs);
      if (solution.degenerate && solution.usable)
        note(warnings, "degenerate single-population system for support " +
                           support_to_string(support));
      if (!solution.usable) continue;

      std::vector<double> x;
      if (!expand_weights(solution.x, 0, support, k, x)) continue;

      // Nash condition x^T A x = max(Ax).
      const auto ax = payoff.times(x);
      double value = 0.0;
      for (std::size_t i = 0; i < k; ++i) value += x[i] * ax[i];
      const double best = *std::max_element(ax.begin(), ax.end());
      if (best - value > kSolveTolerance) continue;

      MixedStrategy candidate(x);
      bool duplicate = false;
      for (const auto& existing : found) {
        double d = 0.0;
        for (std::size_t i = 0; i < k; ++i)
          d = std::max(d, std::abs(existing[i] - candidate[i]));
        if (d <= 1e-7) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) found.push_back(std::move(candidate));
    }
  }
  std::sort(found.begin(), found.end(), [](const MixedStrategy& a, const MixedStrategy& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (std::abs(a[i] - b[i]) > 1e-12) return a[i] > b[i];
    return false;
  });
  return found;
}

std::vector<EquilibriumCandidate> counterpart_nash_filter(
    const BimatrixGame& game, std::vector<std::string>* warnings) {
  const auto [first, second] = counterpart_games(game);
  // y-candidates come from counterpart A, x-candidates from B^T.
  const auto y_candidates = single_population_equilibria(first, warnings);
  const auto x_candidates = single_population_equilibria(second, warnings);

  std::vector<EquilibriumCandidate> verified;
  for (const auto& x : x_candidates) {
    const auto x_support = x.support(kSupportThreshold);
    for (const auto& y : y_candidates) {
      if (x_support != y.support(kSupportThreshold)) continue;
      const double exploit = bimatrix_exploitability(game, x.weights(), y.weights());
      if (exploit > kSolveTolerance) continue;
      EquilibriumCandidate candidate;
      candidate.profile = {x, y};
      candidate.exploitability = exploit;
      candidate.support = {x_support, x_support};
      candidate.method = "counterpart";
      verified.push_back(std::move(candidate));
    }
  }
  sort_candidates(verified);
  return verified;
}

double certify_two_epsilon(const EquilibriumCandidate& empirical_eq, double epsilon,
                           double tolerance) {
  if (epsilon < 0.0) throw std::invalid_argument("epsilon must be nonnegative");
  if (empirical_eq.exploitability > tolerance)
    throw std::invalid_argument("candidate is not an equilibrium of the empirical game");
  return 2.0 * epsilon;
}

}  // namespace egta
