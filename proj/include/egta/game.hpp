#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>
#include <functional>

#include "egta/matrix.hpp"

namespace egta {

/// A point on the probability simplex over k strategies. Weights within
/// `tolerance` of a valid distribution are renormalized on construction;
/// anything further off is rejected. Immutable afterwards.
class MixedStrategy {
 public:
  static constexpr double kDefaultTolerance = 1e-9;

  explicit MixedStrategy(std::vector<double> weights,
                         double tolerance = kDefaultTolerance);

  static MixedStrategy uniform(std::size_t k);
  static MixedStrategy vertex(std::size_t k, std::size_t index);

  const std::vector<double>& weights() const { return weights_; }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::size_t size() const { return weights_.size(); }
  double tolerance() const { return tolerance_; }

  /// Indices with weight above `threshold`.
  std::vector<std::size_t> support(double threshold = 1e-7) const;

 private:
  std::vector<double> weights_;
  double tolerance_;
};

struct BimatrixGame;

/// p-player normal-form game over finite strategy sets, stored as a dense
/// payoff tensor in row-major joint order. Immutable after construction.
class NormalFormGame {
 public:
  /// `payoffs[joint]` is the length-p reward vector for the row-major joint
  /// index. When `payoff_bounds` is omitted it defaults to the observed
  /// min/max over the tensor.
  NormalFormGame(std::vector<std::vector<std::string>> strategy_sets,
                 std::vector<std::vector<double>> payoffs,
                 std::optional<std::pair<double, double>> payoff_bounds = {});

  static NormalFormGame from_function(
      std::vector<std::vector<std::string>> strategy_sets,
      const std::function<std::vector<double>(const std::vector<std::size_t>&)>& fn,
      std::optional<std::pair<double, double>> payoff_bounds = {});
  static NormalFormGame from_bimatrix(const BimatrixGame& game);

  std::size_t num_players() const { return strategy_sets_.size(); }
  std::size_t num_strategies(std::size_t player) const {
    return strategy_sets_[player].size();
  }
  const std::vector<std::vector<std::string>>& strategy_sets() const {
    return strategy_sets_;
  }

  std::size_t num_joints() const { return payoffs_.size(); }
  std::size_t joint_index(const std::vector<std::size_t>& joint) const;
  std::vector<std::size_t> joint_at(std::size_t index) const;

  const std::vector<double>& payoff(const std::vector<std::size_t>& joint) const {
    return payoffs_[joint_index(joint)];
  }
  double payoff(const std::vector<std::size_t>& joint, std::size_t player) const {
    return payoffs_[joint_index(joint)][player];
  }
  const std::vector<std::vector<double>>& payoff_tensor() const { return payoffs_; }

  std::pair<double, double> payoff_bounds() const { return bounds_; }
  double payoff_range() const { return bounds_.second - bounds_.first; }

 private:
  std::vector<std::vector<std::string>> strategy_sets_;
  std::vector<std::vector<double>> payoffs_;
  std::pair<double, double> bounds_;
};

/// Two-player game as the pair of payoff matrices (A for the row player,
/// B for the column player), both k x k'.
struct BimatrixGame {
  Matrix row_payoffs;  // A
  Matrix col_payoffs;  // B
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

  BimatrixGame(Matrix a, Matrix b, std::vector<std::string> row_labels = {},
               std::vector<std::string> col_labels = {});

  std::size_t rows() const { return row_payoffs.rows(); }
  std::size_t cols() const { return row_payoffs.cols(); }
};

/// True iff all strategy sets coincide and payoffs are invariant under
/// simultaneously permuting players and their strategy choices. Exhaustive
/// over all permutations for p <= 4, adjacent transpositions beyond that.
bool is_symmetric(const NormalFormGame& game, double tolerance = 0.0);

/// Exact expected reward vector under a mixed profile (full tensor sum).
std::vector<double> expected_payoff(const NormalFormGame& game,
                                    const std::vector<MixedStrategy>& profile);

/// The two single-population games associated with a square bimatrix game:
/// first A, second B^T. Requires k == k'.
std::pair<Matrix, Matrix> counterpart_games(const BimatrixGame& game);

}  // namespace egta
