#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "egta/bounds.hpp"
#include "egta/dynamics.hpp"
#include "egta/equilibrium.hpp"
#include "egta/game.hpp"
#include "egta/hpt.hpp"

namespace egta {

/// "%.12g"-style formatting; stable across runs for byte-identical output.
std::string format_double(double value, int significant_digits = 12);

// --- JSON -------------------------------------------------------------
// Game: {"players": p, "strategies": [[labels]...],
//        "payoffs": [{"joint": [..], "rewards": [..]}...], "bounds": [a,b]}
nlohmann::ordered_json game_to_json(const NormalFormGame& game);
NormalFormGame game_from_json(const nlohmann::json& j);

// Meta table: {"p":, "strategies": [..], "rows": [{"counts": [..], "payoffs": [..]}...]}
nlohmann::ordered_json table_to_json(const MetaPayoffTable& table);
MetaPayoffTable table_from_json(const nlohmann::json& j);

// Asymmetric variant nests {"player1": table, "player2": table}.
nlohmann::ordered_json asymmetric_table_to_json(const AsymmetricMetaTable& table);
AsymmetricMetaTable asymmetric_table_from_json(const nlohmann::json& j);

nlohmann::ordered_json equilibrium_to_json(const EquilibriumCandidate& candidate);

// --- CSV --------------------------------------------------------------
// Bimatrix: two k x k' label-framed blocks (A then B), each preceded by a
// header row of column labels.
void bimatrix_to_csv(const BimatrixGame& game, std::ostream& out);
BimatrixGame bimatrix_from_csv(std::istream& in);

// Single square block with row/column labels (win-rate matrices).
void matrix_to_csv(const Matrix& m, const std::vector<std::string>& labels,
                   std::ostream& out);
Matrix matrix_from_csv(std::istream& in, std::vector<std::string>* labels);

// Meta table: counts block then payoffs block, one header row.
void table_to_csv(const MetaPayoffTable& table, std::ostream& out);

// Trajectory: t, x_1..x_k [, y_1..y_k'].
void trajectory_to_csv(const Trajectory& trajectory,
                       const std::vector<std::string>& labels, std::ostream& out);

// Directional field: point coordinates then arrow components.
void field_to_csv(const DirectionalField& field,
                  const std::vector<std::string>& labels, std::ostream& out);

// Observation log: player,joint,reward with ';'-separated joint indices.
void log_to_csv(const ObservationLog& log, std::ostream& out);
ObservationLog log_from_csv(std::istream& in,
                            std::pair<double, double> payoff_bounds);

}  // namespace egta
