#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "egta/blotto.hpp"
#include "egta/bounds.hpp"
#include "egta/fixtures.hpp"
#include "test_util.hpp"

using namespace egta;

namespace {

// Implementation-independent uniform in [0,1).
double canonical_uniform(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1p-53;
}

}  // namespace

TEST_CASE("counts_from_log") {
  ObservationLog log;
  log.payoff_bounds = {0, 1};
  log.records = {{0, {0, 1}, 1.0}, {1, {0, 1}, 0.0}, {0, {1, 0}, 0.5}, {0, {0, 1}, 1.0}};

  const auto ordered = counts_from_log(log, CountMode::kOrderedCells);
  CHECK(ordered.at("p0|0,1") == 2);
  CHECK(ordered.at("p1|0,1") == 1);
  CHECK(ordered.at("p0|1,0") == 1);

  const auto unordered = counts_from_log(log, CountMode::kUnorderedPairs);
  CHECK(unordered.at("0,1") == 4);  // both orderings and both players merge
}

TEST_CASE("estimate_game") {
  const std::vector<std::vector<std::string>> sets{{"a", "b"}, {"a", "b"}};

  SUBCASE("single sample per cell reproduces the samples") {
    ObservationLog log;
    log.payoff_bounds = {0, 1};
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t player = 0; player < 2; ++player)
          log.records.push_back({player, {i, j}, double(i + j + player) / 4.0});
    const auto [game, counts] = estimate_game(log, sets);
    CHECK(game.payoff({1, 1}, 1) == doctest::Approx(0.75));
    CHECK(counts.at("p0|0,0") == 1);
  }

  SUBCASE("mean of {0,1} is one half") {
    ObservationLog log;
    log.payoff_bounds = {0, 1};
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t player = 0; player < 2; ++player) {
          log.records.push_back({player, {i, j}, 0.0});
          log.records.push_back({player, {i, j}, 1.0});
        }
    const auto [game, counts] = estimate_game(log, sets);
    for (std::size_t index = 0; index < game.num_joints(); ++index)
      for (double r : game.payoff_tensor()[index]) CHECK(r == doctest::Approx(0.5));
    CHECK(counts.at("p1|1,0") == 2);
  }

  SUBCASE("missing cells are reported by name") {
    ObservationLog log;
    log.payoff_bounds = {0, 1};
    log.records = {{0, {0, 0}, 1.0}};
    CHECK_THROWS_WITH_AS(estimate_game(log, sets),
                         doctest::Contains("p1|0,0"), std::runtime_error);
  }

  SUBCASE("samples outside the declared bounds are rejected") {
    ObservationLog log;
    log.payoff_bounds = {0, 1};
    log.records = {{0, {0, 0}, 1.5}};
    CHECK_THROWS_AS(estimate_game(log, sets), std::invalid_argument);
  }
}

TEST_CASE("batch_confidence") {
  SUBCASE("alphago pair counts (63, 65, 133) at eps 0.15") {
    const auto counts = fixtures::counts("alphago_counts_rp_vp_rv");
    const auto report = batch_confidence(counts, 0.15, 1.0);
    CHECK(report.confidence == doctest::Approx(0.783873273278639).epsilon(1e-9));
    CHECK(report.confidence >= 0.78);
  }

  SUBCASE("alphago pair counts (65, 106, 91) at eps 0.15") {
    const auto counts = fixtures::counts("alphago_counts_rv_vp_rvp");
    const auto report = batch_confidence(counts, 0.15, 1.0);
    CHECK(report.confidence == doctest::Approx(0.848298401616057).epsilon(1e-9));
  }

  SUBCASE("confidence approaches 1 as counts grow") {
    CellCounts counts{{"a", 1000000}, {"b", 1000000}};
    CHECK(batch_confidence(counts, 0.05, 1.0).confidence == doctest::Approx(1.0));
  }

  SUBCASE("tiny counts clamp to zero rather than going negative") {
    CellCounts counts{{"a", 1}};
    CHECK(batch_confidence(counts, 0.05, 1.0).confidence == 0.0);
  }

  SUBCASE("monotone in every count and in epsilon") {
    std::mt19937 rng(73);
    std::uniform_int_distribution<long long> n_dist(5, 500);
    std::uniform_real_distribution<double> e_dist(0.05, 0.4);
    for (int trial = 0; trial < 50; ++trial) {
      CellCounts counts{{"a", n_dist(rng)}, {"b", n_dist(rng)}, {"c", n_dist(rng)}};
      const double eps = e_dist(rng);
      const double base = batch_confidence(counts, eps, 1.0).confidence;
      auto bumped = counts;
      bumped["b"] += 50;
      CHECK(batch_confidence(bumped, eps, 1.0).confidence >= base);
      CHECK(batch_confidence(counts, eps * 1.5, 1.0).confidence >= base);
    }
  }

  SUBCASE("input validation") {
    CHECK_THROWS_AS(batch_confidence({{"a", 0}}, 0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(batch_confidence({{"a", 5}}, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(batch_confidence({{"a", 5}}, 0.1, 0.0), std::invalid_argument);
  }
}

TEST_CASE("uniform_confidence and required_samples") {
  SUBCASE("cell count matches |S1| x |S2| x p") {
    CHECK(uniform_cell_count({3, 3}) == 18);
    CHECK(uniform_cell_count({2, 3, 4}) == 72);
  }

  SUBCASE("leduc-scale payoffs make n=100 vacuous") {
    CHECK(uniform_confidence(100, {3, 3}, 0.05, 26.0) == 0.0);
  }

  SUBCASE("epsilon at the payoff range is nearly free") {
    const long long n = 20;
    const double floor_factor = 1.0 - 2.0 * std::exp(-2.0 * double(n));
    CHECK(uniform_confidence(n, {3, 3}, 26.0, 26.0) >=
          std::pow(std::max(0.0, floor_factor), 18.0));
    CHECK(uniform_confidence(n, {3, 3}, 26.0, 26.0) > 0.99);
  }

  SUBCASE("leduc sample requirement: 886255 per cell, and it is tight") {
    const long long n = required_samples(0.05, 0.05, {3, 3}, 26.0);
    CHECK(n == 886255);
    CHECK(uniform_confidence(n, {3, 3}, 0.05, 26.0) >= 0.95);
    CHECK(uniform_confidence(n - 1, {3, 3}, 0.05, 26.0) < 0.95);
  }

  SUBCASE("doubling the range quadruples the requirement up to ceiling") {
    std::mt19937 rng(79);
    std::uniform_real_distribution<double> e_dist(0.02, 0.3);
    for (int trial = 0; trial < 20; ++trial) {
      const double eps = e_dist(rng);
      const long long base = required_samples(eps, 0.1, {2, 2}, 1.0);
      const long long doubled = required_samples(eps, 0.1, {2, 2}, 2.0);
      CHECK(doubled >= 4 * base - 4);
      CHECK(doubled <= 4 * base + 1);
    }
  }

  SUBCASE("round trip: the requirement always meets its confidence target") {
    std::mt19937 rng(83);
    std::uniform_real_distribution<double> e_dist(0.01, 0.5);
    std::uniform_real_distribution<double> d_dist(0.01, 0.3);
    std::uniform_real_distribution<double> r_dist(0.5, 30.0);
    std::uniform_int_distribution<std::size_t> k_dist(2, 4);
    std::uniform_int_distribution<int> p_dist(2, 3);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<std::size_t> sizes;
      for (int p = p_dist(rng); p > 0; --p) sizes.push_back(k_dist(rng));
      const double eps = e_dist(rng), delta = d_dist(rng), range = r_dist(rng);
      const long long n = required_samples(eps, delta, sizes, range);
      CHECK(uniform_confidence(n, sizes, eps, range) >= 1.0 - delta);
    }
  }

  SUBCASE("input validation") {
    CHECK_THROWS_AS(required_samples(0.1, 0.0, {2, 2}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(required_samples(0.1, 1.0, {2, 2}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(uniform_confidence(0, {2, 2}, 0.1, 1.0), std::invalid_argument);
  }
}

TEST_CASE("the product bound is conservative on a known Bernoulli game") {
  // Three cells of Bernoulli(1/2) rewards, 30 samples each, eps = 0.2.
  std::mt19937_64 rng(89);
  const double eps = 0.2;
  const long long n = 30;
  const double bound =
      batch_confidence({{"a", n}, {"b", n}, {"c", n}}, eps, 1.0).confidence;

  int covered = 0;
  const int replications = 1000;
  for (int rep = 0; rep < replications; ++rep) {
    bool all_within = true;
    for (int cell = 0; cell < 3; ++cell) {
      double sum = 0.0;
      for (long long i = 0; i < n; ++i) sum += canonical_uniform(rng) < 0.5 ? 1.0 : 0.0;
      if (std::abs(sum / double(n) - 0.5) >= eps) all_within = false;
    }
    if (all_within) ++covered;
  }
  CHECK(double(covered) / replications >= bound);
}

TEST_CASE("estimated blotto game concentrates around the exact oracle") {
  // 1000 samples per cell of the strongest-trio game, 100 replications;
  // every cell mean must sit within 0.05 of the exact value in >= 99 of them.
  const std::vector<BlottoStrategy> trio{BlottoStrategy::parse("36,35,24,3,2"),
                                         BlottoStrategy::parse("37,37,21,3,2"),
                                         BlottoStrategy::parse("35,35,26,2,2")};
  double truth[3][3];
  double win_prob[3][3], tie_prob[3][3];
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const auto stats = match_stats(trio[i], trio[j]);
      truth[i][j] = double(2 * stats.wins + stats.ties) / double(2 * stats.pairs);
      win_prob[i][j] = stats.win_probability();
      tie_prob[i][j] = stats.tie_probability();
    }

  std::mt19937_64 rng(97);
  const int replications = 100;
  const long long samples = 1000;
  int within[3][3] = {};
  for (int rep = 0; rep < replications; ++rep) {
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        double sum = 0.0;
        for (long long s = 0; s < samples; ++s) {
          const double u = canonical_uniform(rng);
          sum += u < win_prob[i][j] ? 1.0 : (u < win_prob[i][j] + tie_prob[i][j] ? 0.5 : 0.0);
        }
        if (std::abs(sum / double(samples) - truth[i][j]) < 0.05) ++within[i][j];
      }
  }
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(double(within[i][j]) / replications >= 0.99);
}
