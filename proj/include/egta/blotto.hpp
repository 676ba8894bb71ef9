#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "egta/hpt.hpp"

namespace egta {

/// Troop allocation over n battlefields. Permutations of the vector are the
/// same strategy; play draws one uniformly.
struct BlottoStrategy {
  std::vector<int> allocation;

  explicit BlottoStrategy(std::vector<int> allocation);
  static BlottoStrategy parse(std::string_view text);  // "36,35,24,3,2"

  int troops() const;  // m
  std::size_t fields() const { return allocation.size(); }
  std::string to_string() const;
};

/// binom(m+n-1, n-1): allocations of m troops over n fields.
boost::multiprecision::cpp_int strategy_count(int troops, int fields);

/// Exact match outcome tallied over all distinct arrangement pairs. A
/// battlefield falls to strictly more troops; the game goes to whoever takes
/// more battlefields; a tied game is worth 1/2 to each side.
struct MatchStats {
  std::int64_t wins = 0;   // arrangement pairs won by the first strategy
  std::int64_t ties = 0;
  std::int64_t losses = 0;
  std::int64_t pairs = 0;

  double win_probability() const { return double(wins) / double(pairs); }
  double tie_probability() const { return double(ties) / double(pairs); }
  double loss_probability() const { return double(losses) / double(pairs); }
};

MatchStats match_stats(const BlottoStrategy& s, const BlottoStrategy& t);

/// Expected payoffs (win = 1, tie = 1/2, loss = 0) for the two sides;
/// the components sum to 1. Exact integer counting until the final division.
std::pair<double, double> match_payoff(const BlottoStrategy& s,
                                       const BlottoStrategy& t);

/// Symmetric p = 2 meta table over the given strategies via match_payoff.
MetaPayoffTable blotto_meta_table(const std::vector<BlottoStrategy>& strategies,
                                  std::vector<std::string> labels = {});

}  // namespace egta
