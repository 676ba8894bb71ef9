#include "egta/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace egta {

namespace {

std::vector<std::string> default_labels(std::size_t k, const std::string& prefix) {
  std::vector<std::string> labels(k);
  for (std::size_t i = 0; i < k; ++i) labels[i] = prefix + std::to_string(i + 1);
  return labels;
}

}  // namespace

MixedStrategy::MixedStrategy(std::vector<double> weights, double tolerance)
    : weights_(std::move(weights)), tolerance_(tolerance) {
  if (weights_.empty()) throw std::invalid_argument("empty mixed strategy");
  if (tolerance_ < 0.0) throw std::invalid_argument("negative tolerance");
  double sum = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w)) throw std::invalid_argument("non-finite weight");
    if (w < -tolerance_) throw std::invalid_argument("negative weight beyond tolerance");
    sum += w;
  }
  if (std::abs(sum - 1.0) > tolerance_)
    throw std::invalid_argument("weights do not sum to 1 within tolerance");
  for (double& w : weights_) w = std::max(w, 0.0);
  sum = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  for (double& w : weights_) w /= sum;
}

MixedStrategy MixedStrategy::uniform(std::size_t k) {
  return MixedStrategy(std::vector<double>(k, 1.0 / double(k)));
}

MixedStrategy MixedStrategy::vertex(std::size_t k, std::size_t index) {
  if (index >= k) throw std::invalid_argument("vertex index out of range");
  std::vector<double> w(k, 0.0);
  w[index] = 1.0;
  return MixedStrategy(std::move(w));
}

std::vector<std::size_t> MixedStrategy::support(double threshold) const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < weights_.size(); ++i)
    if (weights_[i] > threshold) idx.push_back(i);
  return idx;
}

NormalFormGame::NormalFormGame(std::vector<std::vector<std::string>> strategy_sets,
                               std::vector<std::vector<double>> payoffs,
                               std::optional<std::pair<double, double>> payoff_bounds)
    : strategy_sets_(std::move(strategy_sets)), payoffs_(std::move(payoffs)) {
  if (strategy_sets_.empty()) throw std::invalid_argument("game needs at least one player");
  std::size_t joints = 1;
  for (const auto& set : strategy_sets_) {
    if (set.empty()) throw std::invalid_argument("empty strategy set");
    joints *= set.size();
  }
  if (payoffs_.size() != joints)
    throw std::invalid_argument("payoff tensor has wrong number of entries");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& rewards : payoffs_) {
    if (rewards.size() != strategy_sets_.size())
      throw std::invalid_argument("reward vector length != number of players");
    for (double r : rewards) {
      if (!std::isfinite(r)) throw std::invalid_argument("non-finite payoff");
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  if (payoff_bounds) {
    bounds_ = *payoff_bounds;
    if (bounds_.first > lo || bounds_.second < hi)
      throw std::invalid_argument("payoff outside declared bounds");
  } else {
    bounds_ = {lo, hi};
  }
}

NormalFormGame NormalFormGame::from_function(
    std::vector<std::vector<std::string>> strategy_sets,
    const std::function<std::vector<double>(const std::vector<std::size_t>&)>& fn,
    std::optional<std::pair<double, double>> payoff_bounds) {
  std::size_t joints = 1;
  for (const auto& set : strategy_sets) joints *= set.size();
  const std::size_t p = strategy_sets.size();
  std::vector<std::vector<double>> payoffs;
  payoffs.reserve(joints);
  std::vector<std::size_t> joint(p, 0);
  for (std::size_t index = 0; index < joints; ++index) {
    payoffs.push_back(fn(joint));
    for (std::size_t i = p; i-- > 0;) {
      if (++joint[i] < strategy_sets[i].size()) break;
      joint[i] = 0;
    }
  }
  return NormalFormGame(std::move(strategy_sets), std::move(payoffs), payoff_bounds);
}

NormalFormGame NormalFormGame::from_bimatrix(const BimatrixGame& game) {
  std::vector<std::vector<std::string>> sets = {game.row_labels, game.col_labels};
  return from_function(std::move(sets), [&](const std::vector<std::size_t>& joint) {
    return std::vector<double>{game.row_payoffs(joint[0], joint[1]),
                               game.col_payoffs(joint[0], joint[1])};
  });
}

std::size_t NormalFormGame::joint_index(const std::vector<std::size_t>& joint) const {
  if (joint.size() != strategy_sets_.size())
    throw std::invalid_argument("joint strategy has wrong arity");
  std::size_t index = 0;
  for (std::size_t i = 0; i < joint.size(); ++i) {
    if (joint[i] >= strategy_sets_[i].size())
      throw std::invalid_argument("strategy index out of range");
    index = index * strategy_sets_[i].size() + joint[i];
  }
  return index;
}

std::vector<std::size_t> NormalFormGame::joint_at(std::size_t index) const {
  std::vector<std::size_t> joint(strategy_sets_.size());
  for (std::size_t i = strategy_sets_.size(); i-- > 0;) {
    joint[i] = index % strategy_sets_[i].size();
    index /= strategy_sets_[i].size();
  }
  return joint;
}

BimatrixGame::BimatrixGame(Matrix a, Matrix b, std::vector<std::string> row_labels_in,
                           std::vector<std::string> col_labels_in)
    : row_payoffs(std::move(a)),
      col_payoffs(std::move(b)),
      row_labels(std::move(row_labels_in)),
      col_labels(std::move(col_labels_in)) {
  if (row_payoffs.rows() != col_payoffs.rows() ||
      row_payoffs.cols() != col_payoffs.cols())
    throw std::invalid_argument("A and B must have identical dimensions");
  if (row_payoffs.rows() == 0 || row_payoffs.cols() == 0)
    throw std::invalid_argument("empty bimatrix");
  if (row_labels.empty()) row_labels = default_labels(row_payoffs.rows(), "R");
  if (col_labels.empty()) col_labels = default_labels(row_payoffs.cols(), "C");
  if (row_labels.size() != row_payoffs.rows() || col_labels.size() != row_payoffs.cols())
    throw std::invalid_argument("label count does not match matrix shape");
}

namespace {

// r^i(pi_sigma) == r^{sigma(i)}(pi) for one permutation, all joints.
bool permutation_holds(const NormalFormGame& game, const std::vector<std::size_t>& sigma,
                       double tolerance) {
  const std::size_t p = game.num_players();
  std::vector<std::size_t> permuted(p);
  for (std::size_t index = 0; index < game.num_joints(); ++index) {
    const auto joint = game.joint_at(index);
    for (std::size_t i = 0; i < p; ++i) permuted[i] = joint[sigma[i]];
    const auto& lhs = game.payoff(permuted);
    const auto& rhs = game.payoff(joint);
    for (std::size_t i = 0; i < p; ++i)
      if (std::abs(lhs[i] - rhs[sigma[i]]) > tolerance) return false;
  }
  return true;
}

}  // namespace

bool is_symmetric(const NormalFormGame& game, double tolerance) {
  const std::size_t p = game.num_players();
  const auto& sets = game.strategy_sets();
  for (std::size_t i = 1; i < p; ++i)
    if (sets[i] != sets[0]) return false;
  if (p == 1) return true;

  if (p <= 4) {
    std::vector<std::size_t> sigma(p);
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
      if (!permutation_holds(game, sigma, tolerance)) return false;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return true;
  }
  // Adjacent transpositions generate the full symmetric group.
  for (std::size_t i = 0; i + 1 < p; ++i) {
    std::vector<std::size_t> sigma(p);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::swap(sigma[i], sigma[i + 1]);
    if (!permutation_holds(game, sigma, tolerance)) return false;
  }
  return true;
}

std::vector<double> expected_payoff(const NormalFormGame& game,
                                    const std::vector<MixedStrategy>& profile) {
  const std::size_t p = game.num_players();
  if (profile.size() != p)
    throw std::invalid_argument("profile needs one mixed strategy per player");
  for (std::size_t i = 0; i < p; ++i)
    if (profile[i].size() != game.num_strategies(i))
      throw std::invalid_argument("mixed strategy dimension mismatch");

  std::vector<double> value(p, 0.0);
  for (std::size_t index = 0; index < game.num_joints(); ++index) {
    const auto joint = game.joint_at(index);
    double weight = 1.0;
    for (std::size_t i = 0; i < p; ++i) weight *= profile[i][joint[i]];
    if (weight == 0.0) continue;
    const auto& rewards = game.payoff_tensor()[index];
    for (std::size_t i = 0; i < p; ++i) value[i] += weight * rewards[i];
  }
  return value;
}

std::pair<Matrix, Matrix> counterpart_games(const BimatrixGame& game) {
  if (!game.row_payoffs.square())
    throw std::invalid_argument("counterpart games need a square bimatrix");
  return {game.row_payoffs, game.col_payoffs.transposed()};
}

}  // namespace egta
