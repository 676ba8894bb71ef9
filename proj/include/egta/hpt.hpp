#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "egta/game.hpp"
#include "egta/matrix.hpp"

namespace egta {

/// One row key of a meta payoff table: how many of the p interacting players
/// play each of the k strategies.
struct DiscreteProfile {
  std::vector<int> counts;

  int players() const;
  std::size_t size() const { return counts.size(); }
  bool operator==(const DiscreteProfile&) const = default;
};

/// The (N, U) meta payoff table: one row per discrete profile of p players
/// over k strategies, with the expected per-player payoff of each strategy
/// present in the profile. Rows are kept in reverse-lexicographic order
/// ([p,0,...,0] first) and payoffs of absent strategies are 0 by convention.
class MetaPayoffTable {
 public:
  MetaPayoffTable(int p, std::vector<std::string> strategy_labels,
                  std::vector<DiscreteProfile> profiles,
                  std::vector<std::vector<double>> payoffs);

  int players() const { return p_; }
  std::size_t num_strategies() const { return labels_.size(); }
  std::size_t num_rows() const { return profiles_.size(); }
  const std::vector<std::string>& strategy_labels() const { return labels_; }
  const DiscreteProfile& profile(std::size_t row) const { return profiles_[row]; }
  const std::vector<double>& payoffs(std::size_t row) const { return payoffs_[row]; }

  std::optional<std::size_t> row_index(const DiscreteProfile& profile) const;

 private:
  int p_;
  std::vector<std::string> labels_;
  std::vector<DiscreteProfile> profiles_;
  std::vector<std::vector<double>> payoffs_;
};

/// Per-player decomposition of a 2-population meta game. Both tables share
/// p = 2 and the same row ordering; mixed rows hold the two orderings of a
/// pairing explicitly (entry l of row {l,m} is the payoff when the row
/// player's own pick is l and the counterpart picks m).
struct AsymmetricMetaTable {
  MetaPayoffTable player1;
  MetaPayoffTable player2;
};

/// All compositions of p into k nonnegative parts, reverse-lexicographic.
std::vector<DiscreteProfile> enumerate_profiles(int p, int k);

/// Number of discrete profiles, binom(p+k-1, p), as a double-checked size.
std::size_t profile_count(int p, int k);

MetaPayoffTable build_symmetric_table(
    const std::function<std::vector<double>(const DiscreteProfile&)>& payoff_fn,
    int p, int k, std::vector<std::string> strategy_labels = {});

/// p = 2 table from a pairwise payoff matrix: row {l,m} carries (a_lm, a_ml).
MetaPayoffTable table_from_matrix(const Matrix& pairwise,
                                  std::vector<std::string> strategy_labels = {});

/// Decompose a square bimatrix game into the two per-player meta tables.
AsymmetricMetaTable build_from_bimatrix(const BimatrixGame& game);

/// Reconstruct the bimatrix from its decomposed tables (exact inverse).
BimatrixGame bimatrix_from_table(const AsymmetricMetaTable& table);

/// Multinomial probability of drawing the given profile when each of its
/// players is sampled iid from x. Convention 0^0 = 1.
double profile_probability(const DiscreteProfile& profile, const MixedStrategy& x);

/// Expected payoff per strategy under population mix x. Coordinate i weights
/// each row by the probability that a focal i-player meets that row's
/// remaining p-1 opponents, so for p = 2 tables built from a matrix A this is
/// exactly (A x)_i. Coordinate i is 0 when x_i = 0.
std::vector<double> meta_expected_payoff(const MetaPayoffTable& table,
                                         const MixedStrategy& x);

}  // namespace egta
