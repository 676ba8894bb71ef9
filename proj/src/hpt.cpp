#include "egta/hpt.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace egta {

namespace {

std::vector<std::string> default_labels(std::size_t k) {
  std::vector<std::string> labels(k);
  for (std::size_t i = 0; i < k; ++i) labels[i] = "s" + std::to_string(i + 1);
  return labels;
}

std::uint64_t binom(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    result = result / i * (n - r + i) + result % i * (n - r + i) / i;
  }
  return result;
}

// p! / (n_1! ... n_k!) as an exact integer (fits comfortably for p <= 20).
std::uint64_t multinomial(const std::vector<int>& counts) {
  std::uint64_t total = 0;
  std::uint64_t result = 1;
  for (int c : counts) {
    total += std::uint64_t(c);
    result *= binom(total, std::uint64_t(c));
  }
  return result;
}

}  // namespace

int DiscreteProfile::players() const {
  return std::accumulate(counts.begin(), counts.end(), 0);
}

MetaPayoffTable::MetaPayoffTable(int p, std::vector<std::string> strategy_labels,
                                 std::vector<DiscreteProfile> profiles,
                                 std::vector<std::vector<double>> payoffs)
    : p_(p),
      labels_(std::move(strategy_labels)),
      profiles_(std::move(profiles)),
      payoffs_(std::move(payoffs)) {
  if (p_ < 1) throw std::invalid_argument("meta table needs p >= 1");
  const std::size_t k = labels_.size();
  if (k == 0) throw std::invalid_argument("meta table needs at least one strategy");
  const auto expected = enumerate_profiles(p_, int(k));
  if (profiles_.size() != expected.size() || payoffs_.size() != profiles_.size())
    throw std::invalid_argument("meta table row count mismatch");
  for (std::size_t r = 0; r < profiles_.size(); ++r) {
    if (profiles_[r] != expected[r])
      throw std::invalid_argument("meta table rows out of canonical order");
    if (payoffs_[r].size() != k)
      throw std::invalid_argument("meta table payoff width mismatch");
    for (std::size_t j = 0; j < k; ++j)
      if (profiles_[r].counts[j] == 0 && payoffs_[r][j] != 0.0)
        throw std::invalid_argument("nonzero payoff for absent strategy");
  }
}

std::optional<std::size_t> MetaPayoffTable::row_index(const DiscreteProfile& profile) const {
  for (std::size_t r = 0; r < profiles_.size(); ++r)
    if (profiles_[r] == profile) return r;
  return std::nullopt;
}

std::vector<DiscreteProfile> enumerate_profiles(int p, int k) {
  if (p < 1 || k < 1) throw std::invalid_argument("enumerate_profiles needs p,k >= 1");
  std::vector<DiscreteProfile> out;
  out.reserve(profile_count(p, k));
  std::vector<int> counts(k, 0);
  // Reverse-lexicographic: leading coordinate descends first.
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == k - 1) {
      counts[pos] = remaining;
      out.push_back(DiscreteProfile{counts});
      return;
    }
    for (int c = remaining; c >= 0; --c) {
      counts[pos] = c;
      rec(pos + 1, remaining - c);
    }
  };
  rec(0, p);
  return out;
}

std::size_t profile_count(int p, int k) {
  return std::size_t(binom(std::uint64_t(p + k - 1), std::uint64_t(p)));
}

MetaPayoffTable build_symmetric_table(
    const std::function<std::vector<double>(const DiscreteProfile&)>& payoff_fn,
    int p, int k, std::vector<std::string> strategy_labels) {
  if (strategy_labels.empty()) strategy_labels = default_labels(std::size_t(k));
  auto profiles = enumerate_profiles(p, k);
  std::vector<std::vector<double>> payoffs;
  payoffs.reserve(profiles.size());
  for (const auto& profile : profiles) {
    auto u = payoff_fn(profile);
    if (u.size() != std::size_t(k))
      throw std::invalid_argument("payoff_fn returned wrong width");
    for (int j = 0; j < k; ++j)
      if (profile.counts[std::size_t(j)] == 0 && u[std::size_t(j)] != 0.0)
        throw std::invalid_argument("payoff_fn returned nonzero payoff for absent strategy");
    payoffs.push_back(std::move(u));
  }
  return MetaPayoffTable(p, std::move(strategy_labels), std::move(profiles),
                         std::move(payoffs));
}

MetaPayoffTable table_from_matrix(const Matrix& pairwise,
                                  std::vector<std::string> strategy_labels) {
  if (!pairwise.square()) throw std::invalid_argument("pairwise matrix must be square");
  const int k = int(pairwise.rows());
  return build_symmetric_table(
      [&](const DiscreteProfile& profile) {
        std::vector<double> u(std::size_t(k), 0.0);
        int l = -1, m = -1;
        for (int j = 0; j < k; ++j) {
          if (profile.counts[std::size_t(j)] == 2) l = m = j;
          if (profile.counts[std::size_t(j)] == 1) (l < 0 ? l : m) = j;
        }
        u[std::size_t(l)] = pairwise(std::size_t(l), std::size_t(m));
        if (m != l) u[std::size_t(m)] = pairwise(std::size_t(m), std::size_t(l));
        return u;
      },
      2, k, std::move(strategy_labels));
}

AsymmetricMetaTable build_from_bimatrix(const BimatrixGame& game) {
  if (!game.row_payoffs.square())
    throw std::invalid_argument("decomposition needs a square bimatrix");
  // Entry l of row {l,m} is the payoff when this player's own pick is l and
  // the counterpart picks m; diagonal rows carry the (l,l) pairing.
  return AsymmetricMetaTable{table_from_matrix(game.row_payoffs, game.row_labels),
                             table_from_matrix(game.col_payoffs, game.col_labels)};
}

BimatrixGame bimatrix_from_table(const AsymmetricMetaTable& table) {
  const auto& t1 = table.player1;
  const auto& t2 = table.player2;
  if (t1.players() != 2 || t2.players() != 2 ||
      t1.num_strategies() != t2.num_strategies())
    throw std::invalid_argument("malformed asymmetric table");
  const std::size_t k = t1.num_strategies();
  Matrix a(k, k), b(k, k);
  for (std::size_t l = 0; l < k; ++l) {
    for (std::size_t m = 0; m < k; ++m) {
      DiscreteProfile profile{std::vector<int>(k, 0)};
      profile.counts[l] += 1;
      profile.counts[m] += 1;
      const auto row = t1.row_index(profile);
      a(l, m) = t1.payoffs(*row)[l];
      b(l, m) = t2.payoffs(*row)[l];
    }
  }
  return BimatrixGame(std::move(a), std::move(b), t1.strategy_labels(),
                      t2.strategy_labels());
}

double profile_probability(const DiscreteProfile& profile, const MixedStrategy& x) {
  if (profile.size() != x.size())
    throw std::invalid_argument("profile/strategy dimension mismatch");
  for (int n : profile.counts)
    if (n < 0) throw std::invalid_argument("negative profile count");
  double prob = double(multinomial(profile.counts));
  for (std::size_t j = 0; j < profile.size(); ++j) {
    const int n = profile.counts[j];
    if (n == 0) continue;  // 0^0 = 1
    prob *= std::pow(x[j], n);
    if (prob == 0.0) return 0.0;
  }
  return prob;
}

std::vector<double> meta_expected_payoff(const MetaPayoffTable& table,
                                         const MixedStrategy& x) {
  const std::size_t k = table.num_strategies();
  if (x.size() != k) throw std::invalid_argument("strategy dimension mismatch");
  std::vector<double> value(k, 0.0);
  // Row weight for coordinate i: probability that a focal i-player meets the
  // row's remaining p-1 opponents. For p = 2 matrix tables this collapses to
  // (A x)_i.
  for (std::size_t r = 0; r < table.num_rows(); ++r) {
    const auto& profile = table.profile(r);
    const auto& u = table.payoffs(r);
    for (std::size_t i = 0; i < k; ++i) {
      if (profile.counts[i] == 0 || x[i] == 0.0) continue;
      DiscreteProfile rest = profile;
      rest.counts[i] -= 1;
      value[i] += profile_probability(rest, x) * u[i];
    }
  }
  for (std::size_t i = 0; i < k; ++i)
    if (x[i] == 0.0) value[i] = 0.0;
  return value;
}

}  // namespace egta
