#include "egta/blotto.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace egta {

namespace mp = boost::multiprecision;

BlottoStrategy::BlottoStrategy(std::vector<int> allocation_in)
    : allocation(std::move(allocation_in)) {
  if (allocation.empty()) throw std::invalid_argument("empty allocation");
  for (int t : allocation)
    if (t < 0) throw std::invalid_argument("negative troop count");
}

BlottoStrategy BlottoStrategy::parse(std::string_view text) {
  std::vector<int> troops;
  std::string token;
  std::istringstream in{std::string(text)};
  while (std::getline(in, token, ',')) {
    std::size_t pos = 0;
    const int value = std::stoi(token, &pos);
    while (pos < token.size() && std::isspace((unsigned char)token[pos])) ++pos;
    if (pos != token.size()) throw std::invalid_argument("bad allocation token: " + token);
    troops.push_back(value);
  }
  if (troops.empty()) throw std::invalid_argument("empty allocation string");
  return BlottoStrategy(std::move(troops));
}

int BlottoStrategy::troops() const {
  int m = 0;
  for (int t : allocation) m += t;
  return m;
}

std::string BlottoStrategy::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < allocation.size(); ++i)
    os << (i ? "," : "") << allocation[i];
  return os.str();
}

mp::cpp_int strategy_count(int troops, int fields) {
  if (troops < 0 || fields < 1) throw std::invalid_argument("need m >= 0, n >= 1");
  // binom(m+n-1, n-1)
  mp::cpp_int result = 1;
  const int r = fields - 1;
  for (int i = 1; i <= r; ++i) {
    result *= troops + i;
    result /= i;
  }
  return result;
}

namespace {

std::vector<std::vector<int>> distinct_arrangements(const BlottoStrategy& s) {
  std::vector<int> v = s.allocation;
  std::sort(v.begin(), v.end());
  std::vector<std::vector<int>> out;
  do {
    out.push_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

}  // namespace

MatchStats match_stats(const BlottoStrategy& s, const BlottoStrategy& t) {
  if (s.fields() != t.fields())
    throw std::invalid_argument("strategies allocate over different battlefield counts");
  if (s.troops() != t.troops())
    throw std::invalid_argument("strategies allocate different troop totals");
  if (s.fields() > 7)
    throw std::invalid_argument("battlefield count too large for exact enumeration");

  // A uniformly random permutation of a multiset lands on each distinct
  // arrangement with equal probability, so the distinct-arrangement pairs
  // carry equal weight.
  const auto left = distinct_arrangements(s);
  const auto right = distinct_arrangements(t);

  MatchStats stats;
  const std::size_t n = s.fields();
  for (const auto& a : left) {
    for (const auto& b : right) {
      int won = 0, lost = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (a[i] > b[i]) ++won;
        else if (a[i] < b[i]) ++lost;
        // equal troops: the battlefield falls to neither side
      }
      if (won > lost) ++stats.wins;
      else if (won < lost) ++stats.losses;
      else ++stats.ties;
    }
  }
  stats.pairs = std::int64_t(left.size() * right.size());
  return stats;
}

std::pair<double, double> match_payoff(const BlottoStrategy& s, const BlottoStrategy& t) {
  const auto stats = match_stats(s, t);
  const double first = double(2 * stats.wins + stats.ties) / double(2 * stats.pairs);
  const double second = double(2 * stats.losses + stats.ties) / double(2 * stats.pairs);
  return {first, second};
}

MetaPayoffTable blotto_meta_table(const std::vector<BlottoStrategy>& strategies,
                                  std::vector<std::string> labels) {
  if (strategies.size() < 2)
    throw std::invalid_argument("meta table needs at least two strategies");
  for (const auto& s : strategies) {
    if (s.fields() != strategies[0].fields() || s.troops() != strategies[0].troops())
      throw std::invalid_argument("inconsistent strategies (fields or troop totals differ)");
  }
  const std::size_t k = strategies.size();
  if (labels.empty()) {
    labels.reserve(k);
    for (const auto& s : strategies) labels.push_back(s.to_string());
  }
  Matrix pairwise(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    pairwise(i, i) = 0.5;
    for (std::size_t j = i + 1; j < k; ++j) {
      const auto [first, second] = match_payoff(strategies[i], strategies[j]);
      pairwise(i, j) = first;
      pairwise(j, i) = second;
    }
  }
  return table_from_matrix(pairwise, std::move(labels));
}

}  // namespace egta
