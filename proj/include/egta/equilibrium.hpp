#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "egta/game.hpp"
#include "egta/matrix.hpp"

namespace egta {

struct EquilibriumCandidate {
  std::vector<MixedStrategy> profile;
  double exploitability = 0.0;
  std::vector<std::vector<std::size_t>> support;
  std::string method;  // "pure" | "support_enum" | "counterpart"
};

/// Support threshold used when comparing supports of numerical solutions.
inline constexpr double kSupportThreshold = 1e-7;

/// max over players of (best pure-deviation payoff - expected payoff).
/// Zero (up to tolerance) exactly at Nash equilibria.
double exploitability(const NormalFormGame& game,
                      const std::vector<MixedStrategy>& profile);

/// All joint pure strategies from which no player gains by deviating
/// (tolerance 1e-12 on the payoff comparison).
std::vector<std::vector<std::size_t>> pure_equilibria(const NormalFormGame& game,
                                                      double tolerance = 1e-12);

/// Support enumeration for bimatrix games: for every support pair up to
/// max_support per side, solve the indifference system, keep nonnegative
/// solutions that survive the best-response check, and deduplicate within
/// inf-distance 1e-7. max_support = 0 means min(k, k'). Singular or
/// inconsistent systems are skipped; a note lands in `warnings` if given.
std::vector<EquilibriumCandidate> support_enumeration_2p(
    const BimatrixGame& game, int max_support = 0,
    std::vector<std::string>* warnings = nullptr);

/// Symmetric single-population equilibria of a square matrix game:
/// x with x^T A x = max(Ax), found by support enumeration and verified
/// within 1e-9.
std::vector<MixedStrategy> single_population_equilibria(
    const Matrix& payoff, std::vector<std::string>* warnings = nullptr);

/// Counterpart-game decomposition: y-candidates from the single-population
/// game A, x-candidates from B^T; same-support pairs verified against the
/// bimatrix (exploitability <= 1e-9) are Nash equilibria of (A, B).
/// The construction only reaches equilibria whose two sides share a support;
/// use support_enumeration_2p when differing-support equilibria matter.
std::vector<EquilibriumCandidate> counterpart_nash_filter(
    const BimatrixGame& game, std::vector<std::string>* warnings = nullptr);

/// An exact equilibrium of a payoff table that is off from the truth by at
/// most epsilon (sup norm) is a 2*epsilon equilibrium of the true game.
double certify_two_epsilon(const EquilibriumCandidate& empirical_eq,
                           double epsilon, double tolerance = 1e-9);

}  // namespace egta
