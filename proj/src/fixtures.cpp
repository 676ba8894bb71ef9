#include "egta/fixtures.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <stdexcept>

#include "egta/io.hpp"

#ifndef EGTA_SOURCE_FIXTURES_DIR
#define EGTA_SOURCE_FIXTURES_DIR ""
#endif

namespace egta::fixtures {

namespace {

using nlohmann::json;

const std::set<std::string> kKnownKinds = {"game", "meta_table", "matrix_pair",
                                           "counts", "blotto_strategies"};

Matrix matrix_from_payload(const json& j) {
  const auto values = j.at("values").get<std::vector<std::vector<double>>>();
  if (values.empty()) throw std::invalid_argument("empty matrix payload");
  Matrix m(values.size(), values[0].size());
  for (std::size_t r = 0; r < values.size(); ++r) {
    if (values[r].size() != values[0].size())
      throw std::invalid_argument("ragged matrix payload");
    for (std::size_t c = 0; c < values[r].size(); ++c) m(r, c) = values[r][c];
  }
  return m;
}

void validate_payload(const std::string& kind, const json& payload) {
  if (kind == "game") {
    game_from_json(payload);
  } else if (kind == "meta_table") {
    table_from_json(payload);
  } else if (kind == "matrix_pair") {
    matrix_from_payload(payload.at("first"));
    matrix_from_payload(payload.at("second"));
  } else if (kind == "counts") {
    if (!payload.at("range").is_number())
      throw std::invalid_argument("counts payload needs a numeric range");
    for (const auto& cell : payload.at("cells")) {
      cell.at("key").get<std::string>();
      if (cell.at("n").get<long long>() <= 0)
        throw std::invalid_argument("cell count must be positive");
    }
  } else if (kind == "blotto_strategies") {
    for (const auto& entry : payload.at("strategies"))
      BlottoStrategy(entry.at("allocation").get<std::vector<int>>());
  }
}

}  // namespace

std::filesystem::path default_dir() {
  if (const char* env = std::getenv("EGTA_FIXTURES"); env && *env)
    return std::filesystem::path(env);
  for (const char* candidate : {"data/fixtures", "../data/fixtures"}) {
    std::filesystem::path p(candidate);
    if (std::filesystem::is_directory(p)) return p;
  }
  return std::filesystem::path(EGTA_SOURCE_FIXTURES_DIR);
}

Fixture load(const std::string& name, const std::filesystem::path& dir) {
  const std::filesystem::path base = dir.empty() ? default_dir() : dir;
  const std::filesystem::path path = base / (name + ".json");
  std::ifstream in(path);
  if (!in) throw std::runtime_error("unknown fixture: " + name + " (" + path.string() + ")");
  json j = json::parse(in);

  Fixture fixture;
  fixture.name = j.value("name", name);
  fixture.source = j.value("source", "");
  fixture.kind = j.at("kind").get<std::string>();
  if (!kKnownKinds.count(fixture.kind))
    throw std::runtime_error("fixture " + name + " has unknown kind " + fixture.kind);
  if (fixture.source.empty())
    throw std::runtime_error("fixture " + name + " is missing its source citation");
  fixture.payload = j.at("payload");
  validate_payload(fixture.kind, fixture.payload);
  return fixture;
}

NormalFormGame game(const std::string& name, const std::filesystem::path& dir) {
  const Fixture fixture = load(name, dir);
  if (fixture.kind != "game")
    throw std::runtime_error("fixture " + name + " is not a game");
  return game_from_json(fixture.payload);
}

BimatrixGame bimatrix(const std::string& name, const std::filesystem::path& dir) {
  const NormalFormGame nfg = game(name, dir);
  if (nfg.num_players() != 2)
    throw std::runtime_error("fixture " + name + " is not a 2-player game");
  const std::size_t k = nfg.num_strategies(0);
  const std::size_t kp = nfg.num_strategies(1);
  Matrix a(k, kp), b(k, kp);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < kp; ++j) {
      const auto& rewards = nfg.payoff({i, j});
      a(i, j) = rewards[0];
      b(i, j) = rewards[1];
    }
  return BimatrixGame(std::move(a), std::move(b), nfg.strategy_sets()[0],
                      nfg.strategy_sets()[1]);
}

MetaPayoffTable table(const std::string& name, const std::filesystem::path& dir) {
  const Fixture fixture = load(name, dir);
  if (fixture.kind != "meta_table")
    throw std::runtime_error("fixture " + name + " is not a meta table");
  return table_from_json(fixture.payload);
}

CellCounts counts(const std::string& name, const std::filesystem::path& dir) {
  const Fixture fixture = load(name, dir);
  if (fixture.kind != "counts")
    throw std::runtime_error("fixture " + name + " is not a counts fixture");
  CellCounts out;
  for (const auto& cell : fixture.payload.at("cells"))
    out[cell.at("key").get<std::string>()] = cell.at("n").get<long long>();
  return out;
}

std::vector<BlottoStrategy> blotto_strategies(const std::string& name,
                                              const std::filesystem::path& dir) {
  const Fixture fixture = load(name, dir);
  if (fixture.kind != "blotto_strategies")
    throw std::runtime_error("fixture " + name + " is not a strategy list");
  std::vector<BlottoStrategy> out;
  for (const auto& entry : fixture.payload.at("strategies"))
    out.emplace_back(entry.at("allocation").get<std::vector<int>>());
  return out;
}

}  // namespace egta::fixtures
