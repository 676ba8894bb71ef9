#include "egta/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace egta {

std::string cell_key(std::size_t player, const std::vector<std::size_t>& joint) {
  std::ostringstream os;
  os << "p" << player << "|";
  for (std::size_t i = 0; i < joint.size(); ++i) os << (i ? "," : "") << joint[i];
  return os.str();
}

namespace {

std::string unordered_key(const std::vector<std::size_t>& joint) {
  auto sorted = joint;
  std::sort(sorted.begin(), sorted.end());
  std::ostringstream os;
  for (std::size_t i = 0; i < sorted.size(); ++i) os << (i ? "," : "") << sorted[i];
  return os.str();
}

double hoeffding_factor(double epsilon, double range, long long n) {
  const double scaled = epsilon / range;
  return std::max(0.0, 1.0 - 2.0 * std::exp(-2.0 * scaled * scaled * double(n)));
}

}  // namespace

CellCounts counts_from_log(const ObservationLog& log, CountMode mode) {
  CellCounts counts;
  for (const auto& record : log.records) {
    const std::string key = mode == CountMode::kOrderedCells
                                ? cell_key(record.player, record.joint)
                                : unordered_key(record.joint);
    ++counts[key];
  }
  return counts;
}

std::pair<NormalFormGame, CellCounts> estimate_game(
    const ObservationLog& log, std::vector<std::vector<std::string>> strategy_sets) {
  const std::size_t p = strategy_sets.size();
  std::size_t joints = 1;
  for (const auto& set : strategy_sets) joints *= set.size();

  std::vector<std::vector<double>> sums(joints, std::vector<double>(p, 0.0));
  std::vector<std::vector<long long>> tallies(joints, std::vector<long long>(p, 0));

  // Temporary game used only for joint indexing.
  std::vector<std::vector<double>> zeros(joints, std::vector<double>(p, 0.0));
  NormalFormGame shape(strategy_sets, zeros);

  for (const auto& record : log.records) {
    if (record.player >= p) throw std::invalid_argument("player index out of range");
    if (record.reward < log.payoff_bounds.first - 1e-12 ||
        record.reward > log.payoff_bounds.second + 1e-12)
      throw std::invalid_argument("observed reward outside payoff bounds");
    const std::size_t index = shape.joint_index(record.joint);
    sums[index][record.player] += record.reward;
    tallies[index][record.player] += 1;
  }

  CellCounts counts;
  std::vector<std::vector<double>> means(joints, std::vector<double>(p, 0.0));
  for (std::size_t index = 0; index < joints; ++index) {
    const auto joint = shape.joint_at(index);
    for (std::size_t player = 0; player < p; ++player) {
      if (tallies[index][player] == 0) {
        std::ostringstream os;
        os << "no samples for cell " << cell_key(player, joint) << " (";
        for (std::size_t i = 0; i < joint.size(); ++i)
          os << (i ? "," : "") << strategy_sets[i][joint[i]];
        os << ")";
        throw std::runtime_error(os.str());
      }
      means[index][player] = sums[index][player] / double(tallies[index][player]);
      counts[cell_key(player, joint)] = tallies[index][player];
    }
  }
  return {NormalFormGame(std::move(strategy_sets), std::move(means), log.payoff_bounds),
          std::move(counts)};
}

ConfidenceReport batch_confidence(const CellCounts& counts, double epsilon,
                                  double range) {
  if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
  if (range <= 0.0) throw std::invalid_argument("range must be positive");
  double confidence = 1.0;
  for (const auto& [key, n] : counts) {
    if (n <= 0) throw std::invalid_argument("cell count must be positive: " + key);
    confidence *= hoeffding_factor(epsilon, range, n);
  }
  return ConfidenceReport{epsilon, confidence, counts, range};
}

long long uniform_cell_count(const std::vector<std::size_t>& sizes) {
  if (sizes.empty()) throw std::invalid_argument("need at least one player");
  long long cells = 1;
  for (std::size_t k : sizes) cells *= (long long)(k);
  return cells * (long long)(sizes.size());
}

double uniform_confidence(long long n, const std::vector<std::size_t>& sizes,
                          double epsilon, double range) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (epsilon <= 0.0 || range <= 0.0)
    throw std::invalid_argument("epsilon and range must be positive");
  return std::pow(hoeffding_factor(epsilon, range, n), double(uniform_cell_count(sizes)));
}

long long required_samples(double epsilon, double delta,
                           const std::vector<std::size_t>& sizes, double range) {
  if (epsilon <= 0.0 || range <= 0.0)
    throw std::invalid_argument("epsilon and range must be positive");
  if (delta <= 0.0 || delta >= 1.0) throw std::invalid_argument("delta must lie in (0,1)");
  const double cells = double(uniform_cell_count(sizes));
  const double scaled = epsilon / range;
  // Solve (1 - 2 e^{-2 eps^2 n})^cells >= 1 - delta for the smallest n.
  const double threshold = (1.0 - std::pow(1.0 - delta, 1.0 / cells)) / 2.0;
  long long n = (long long)(std::ceil(-std::log(threshold) / (2.0 * scaled * scaled)));
  n = std::max(n, 1LL);
  while (uniform_confidence(n, sizes, epsilon, range) < 1.0 - delta) ++n;
  return n;
}

}  // namespace egta
