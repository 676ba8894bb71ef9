#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "egta/blotto.hpp"
#include "egta/bounds.hpp"
#include "egta/game.hpp"
#include "egta/hpt.hpp"

namespace egta::fixtures {

struct Fixture {
  std::string name;
  std::string source;  // where the numbers come from
  std::string kind;    // "game" | "meta_table" | "matrix_pair" | "counts" | "blotto_strategies"
  nlohmann::json payload;
};

/// Fixture directory resolution: $EGTA_FIXTURES, then ./data/fixtures and
/// ../data/fixtures, then the build-time source path.
std::filesystem::path default_dir();

/// Load and schema-validate a fixture by name. Throws on unknown names and
/// on payloads that fail their kind's schema.
Fixture load(const std::string& name, const std::filesystem::path& dir = {});

// Typed accessors for the common kinds.
NormalFormGame game(const std::string& name, const std::filesystem::path& dir = {});
BimatrixGame bimatrix(const std::string& name, const std::filesystem::path& dir = {});
MetaPayoffTable table(const std::string& name, const std::filesystem::path& dir = {});
CellCounts counts(const std::string& name, const std::filesystem::path& dir = {});
std::vector<BlottoStrategy> blotto_strategies(const std::string& name,
                                              const std::filesystem::path& dir = {});

}  // namespace egta::fixtures
