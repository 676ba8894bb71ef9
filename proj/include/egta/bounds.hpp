#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "egta/game.hpp"

namespace egta {

struct Observation {
  std::size_t player = 0;
  std::vector<std::size_t> joint;
  double reward = 0.0;
};

struct ObservationLog {
  std::vector<Observation> records;
  std::pair<double, double> payoff_bounds{0.0, 1.0};
};

/// Sample counts keyed by cell. Keys are "p<i>|j1,j2,..." for ordered
/// (player, joint) cells or arbitrary caller-chosen labels; the bound only
/// consumes the values.
using CellCounts = std::map<std::string, long long>;

std::string cell_key(std::size_t player, const std::vector<std::size_t>& joint);

enum class CountMode { kOrderedCells, kUnorderedPairs };

/// Tally per-cell sample counts from a log. Unordered mode merges the two
/// orderings of a 2-player joint (and all players), matching how win-rate
/// data counts one game once.
CellCounts counts_from_log(const ObservationLog& log,
                           CountMode mode = CountMode::kOrderedCells);

/// Empirical game from a log: cell means, plus the ordered per-cell counts.
/// Every (player, joint) cell needs at least one sample; the error names the
/// first missing cell.
std::pair<NormalFormGame, CellCounts> estimate_game(
    const ObservationLog& log,
    std::vector<std::vector<std::string>> strategy_sets);

struct ConfidenceReport {
  double epsilon = 0.0;
  double confidence = 0.0;  // lower bound on P(sup deviation < epsilon)
  CellCounts per_entry_counts;
  double range = 1.0;
};

/// Hoeffding product bound for the batch scenario:
/// prod over cells of max(0, 1 - 2 exp(-2 (eps/range)^2 n)).
ConfidenceReport batch_confidence(const CellCounts& counts, double epsilon,
                                  double range = 1.0);

/// Number of (player, joint) cells: |S^1| x ... x |S^p| x p.
long long uniform_cell_count(const std::vector<std::size_t>& sizes);

/// Closed-form bound when every cell gets n samples:
/// max(0, 1 - 2 exp(-2 (eps/range)^2 n)) ^ cell_count.
double uniform_confidence(long long n, const std::vector<std::size_t>& sizes,
                          double epsilon, double range = 1.0);

/// Smallest per-cell n with uniform_confidence >= 1 - delta:
/// ceil( -ln((1 - (1-delta)^(1/cells)) / 2) / (2 (eps/range)^2) ).
long long required_samples(double epsilon, double delta,
                           const std::vector<std::size_t>& sizes,
                           double range = 1.0);

}  // namespace egta
