#include "egta/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace egta {

std::string format_double(double value, int significant_digits) {
  if (value == 0.0) value = 0.0;  // strip the sign off negative zero
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*g", significant_digits, value);
  return buffer;
}

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string trim(const std::string& s) {
  std::size_t begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  std::size_t end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

std::vector<std::vector<std::string>> read_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    rows.push_back(split_csv_line(trimmed));
  }
  return rows;
}

double parse_number(const std::string& cell) {
  std::size_t pos = 0;
  double value = std::stod(cell, &pos);
  if (pos != cell.size()) throw std::invalid_argument("bad numeric cell: " + cell);
  return value;
}

// One label-framed block: header "",labels... then rows "label,values...".
// Returns the index just past the block.
std::size_t parse_block(const std::vector<std::vector<std::string>>& rows,
                        std::size_t start, Matrix* out,
                        std::vector<std::string>* row_labels,
                        std::vector<std::string>* col_labels) {
  if (start >= rows.size()) throw std::invalid_argument("missing CSV block");
  const auto& header = rows[start];
  if (header.size() < 2) throw std::invalid_argument("CSV header too short");
  col_labels->assign(header.begin() + 1, header.end());
  const std::size_t cols = col_labels->size();

  std::vector<std::vector<double>> values;
  std::size_t r = start + 1;
  for (; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() == cols + 1 && row[0].empty()) break;  // next block header
    if (row.size() != cols + 1)
      throw std::invalid_argument("CSV row has wrong cell count");
    bool numeric_row = true;
    std::vector<double> numbers(cols);
    try {
      for (std::size_t c = 0; c < cols; ++c) numbers[c] = parse_number(row[c + 1]);
    } catch (const std::exception&) {
      numeric_row = false;
    }
    if (!numeric_row) break;  // header of the next block with same layout
    row_labels->push_back(row[0]);
    values.push_back(std::move(numbers));
  }
  if (values.empty()) throw std::invalid_argument("CSV block has no rows");
  *out = Matrix(values.size(), cols);
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) (*out)(i, j) = values[i][j];
  return r;
}

}  // namespace

// --- JSON ---------------------------------------------------------------

ordered_json game_to_json(const NormalFormGame& game) {
  ordered_json j;
  j["players"] = game.num_players();
  j["strategies"] = game.strategy_sets();
  ordered_json payoffs = ordered_json::array();
  for (std::size_t index = 0; index < game.num_joints(); ++index) {
    ordered_json entry;
    entry["joint"] = game.joint_at(index);
    entry["rewards"] = game.payoff_tensor()[index];
    payoffs.push_back(std::move(entry));
  }
  j["payoffs"] = std::move(payoffs);
  j["bounds"] = {game.payoff_bounds().first, game.payoff_bounds().second};
  return j;
}

NormalFormGame game_from_json(const json& j) {
  if (!j.contains("players") || !j.contains("strategies") || !j.contains("payoffs"))
    throw std::invalid_argument("game JSON needs players, strategies, payoffs");
  const auto strategy_sets = j.at("strategies").get<std::vector<std::vector<std::string>>>();
  if (strategy_sets.size() != j.at("players").get<std::size_t>())
    throw std::invalid_argument("players field disagrees with strategies");

  std::size_t joints = 1;
  for (const auto& set : strategy_sets) joints *= set.size();
  std::vector<std::vector<double>> payoffs(joints);
  std::vector<bool> seen(joints, false);

  // Index arithmetic without a constructed game.
  auto index_of = [&](const std::vector<std::size_t>& joint) {
    if (joint.size() != strategy_sets.size())
      throw std::invalid_argument("joint strategy has wrong arity");
    std::size_t index = 0;
    for (std::size_t i = 0; i < joint.size(); ++i) {
      if (joint[i] >= strategy_sets[i].size())
        throw std::invalid_argument("strategy index out of range in payoffs");
      index = index * strategy_sets[i].size() + joint[i];
    }
    return index;
  };

  for (const auto& entry : j.at("payoffs")) {
    const auto joint = entry.at("joint").get<std::vector<std::size_t>>();
    const std::size_t index = index_of(joint);
    if (seen[index]) throw std::invalid_argument("duplicate payoff entry");
    seen[index] = true;
    payoffs[index] = entry.at("rewards").get<std::vector<double>>();
  }
  for (bool s : seen)
    if (!s) throw std::invalid_argument("payoff tensor incomplete");

  std::optional<std::pair<double, double>> bounds;
  if (j.contains("bounds")) {
    const auto b = j.at("bounds").get<std::vector<double>>();
    if (b.size() != 2) throw std::invalid_argument("bounds must be [a,b]");
    bounds = {b[0], b[1]};
  }
  return NormalFormGame(strategy_sets, std::move(payoffs), bounds);
}

ordered_json table_to_json(const MetaPayoffTable& table) {
  ordered_json j;
  j["p"] = table.players();
  j["strategies"] = table.strategy_labels();
  ordered_json rows = ordered_json::array();
  for (std::size_t r = 0; r < table.num_rows(); ++r) {
    ordered_json row;
    row["counts"] = table.profile(r).counts;
    row["payoffs"] = table.payoffs(r);
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

MetaPayoffTable table_from_json(const json& j) {
  if (!j.contains("p") || !j.contains("strategies") || !j.contains("rows"))
    throw std::invalid_argument("table JSON needs p, strategies, rows");
  const int p = j.at("p").get<int>();
  auto labels = j.at("strategies").get<std::vector<std::string>>();
  std::vector<DiscreteProfile> profiles;
  std::vector<std::vector<double>> payoffs;
  for (const auto& row : j.at("rows")) {
    profiles.push_back(DiscreteProfile{row.at("counts").get<std::vector<int>>()});
    payoffs.push_back(row.at("payoffs").get<std::vector<double>>());
  }
  return MetaPayoffTable(p, std::move(labels), std::move(profiles), std::move(payoffs));
}

ordered_json asymmetric_table_to_json(const AsymmetricMetaTable& table) {
  ordered_json j;
  j["player1"] = table_to_json(table.player1);
  j["player2"] = table_to_json(table.player2);
  return j;
}

AsymmetricMetaTable asymmetric_table_from_json(const json& j) {
  if (!j.contains("player1") || !j.contains("player2"))
    throw std::invalid_argument("asymmetric table JSON needs player1 and player2");
  return AsymmetricMetaTable{table_from_json(j.at("player1")),
                             table_from_json(j.at("player2"))};
}

ordered_json equilibrium_to_json(const EquilibriumCandidate& candidate) {
  ordered_json j;
  ordered_json profile = ordered_json::array();
  for (const auto& mix : candidate.profile) profile.push_back(mix.weights());
  j["profile"] = std::move(profile);
  j["exploitability"] = candidate.exploitability;
  j["support"] = candidate.support;
  j["method"] = candidate.method;
  return j;
}

// --- CSV ----------------------------------------------------------------

void matrix_to_csv(const Matrix& m, const std::vector<std::string>& labels,
                   std::ostream& out) {
  for (std::size_t c = 0; c < m.cols(); ++c) out << "," << labels[c];
  out << "\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << labels[r];
    for (std::size_t c = 0; c < m.cols(); ++c) out << "," << format_double(m(r, c));
    out << "\n";
  }
}

Matrix matrix_from_csv(std::istream& in, std::vector<std::string>* labels) {
  const auto rows = read_csv(in);
  Matrix m;
  std::vector<std::string> row_labels, col_labels;
  const std::size_t next = parse_block(rows, 0, &m, &row_labels, &col_labels);
  if (next != rows.size()) throw std::invalid_argument("unexpected trailing CSV rows");
  if (row_labels != col_labels)
    throw std::invalid_argument("matrix CSV needs matching row and column labels");
  if (labels) *labels = row_labels;
  return m;
}

void bimatrix_to_csv(const BimatrixGame& game, std::ostream& out) {
  auto block = [&](const Matrix& m) {
    for (std::size_t c = 0; c < m.cols(); ++c) out << "," << game.col_labels[c];
    out << "\n";
    for (std::size_t r = 0; r < m.rows(); ++r) {
      out << game.row_labels[r];
      for (std::size_t c = 0; c < m.cols(); ++c) out << "," << format_double(m(r, c));
      out << "\n";
    }
  };
  block(game.row_payoffs);
  block(game.col_payoffs);
}

BimatrixGame bimatrix_from_csv(std::istream& in) {
  const auto rows = read_csv(in);
  Matrix a, b;
  std::vector<std::string> row_labels_a, col_labels_a, row_labels_b, col_labels_b;
  std::size_t next = parse_block(rows, 0, &a, &row_labels_a, &col_labels_a);
  next = parse_block(rows, next, &b, &row_labels_b, &col_labels_b);
  if (next != rows.size()) throw std::invalid_argument("unexpected trailing CSV rows");
  if (row_labels_a != row_labels_b || col_labels_a != col_labels_b)
    throw std::invalid_argument("the two bimatrix blocks must share labels");
  return BimatrixGame(std::move(a), std::move(b), row_labels_a, col_labels_a);
}

void table_to_csv(const MetaPayoffTable& table, std::ostream& out) {
  const auto& labels = table.strategy_labels();
  for (std::size_t j = 0; j < labels.size(); ++j) out << (j ? "," : "") << "n:" << labels[j];
  for (const auto& label : labels) out << ",u:" << label;
  out << "\n";
  for (std::size_t r = 0; r < table.num_rows(); ++r) {
    const auto& profile = table.profile(r);
    for (std::size_t j = 0; j < profile.size(); ++j)
      out << (j ? "," : "") << profile.counts[j];
    for (double u : table.payoffs(r)) out << "," << format_double(u);
    out << "\n";
  }
}

void trajectory_to_csv(const Trajectory& trajectory,
                       const std::vector<std::string>& labels, std::ostream& out) {
  out << "t";
  std::size_t offset = 0;
  for (std::size_t pop = 0; pop < trajectory.dims.size(); ++pop) {
    const char prefix = pop == 0 ? 'x' : 'y';
    for (std::size_t i = 0; i < trajectory.dims[pop]; ++i) {
      out << "," << prefix << ":";
      out << (offset + i < labels.size() ? labels[offset + i] : std::to_string(i + 1));
    }
    offset += trajectory.dims[pop];
  }
  out << "\n";
  for (std::size_t row = 0; row < trajectory.points.size(); ++row) {
    out << format_double(trajectory.times[row]);
    for (double v : trajectory.points[row]) out << "," << format_double(v);
    out << "\n";
  }
}

void field_to_csv(const DirectionalField& field,
                  const std::vector<std::string>& labels, std::ostream& out) {
  auto name = [&](std::size_t i) {
    return i < labels.size() ? labels[i] : "s" + std::to_string(i + 1);
  };
  out << "x:" << name(0) << ",x:" << name(1) << ",x:" << name(2);
  out << ",dx:" << name(0) << ",dx:" << name(1) << ",dx:" << name(2) << "\n";
  for (std::size_t i = 0; i < field.points.size(); ++i) {
    const auto& p = field.points[i];
    const auto& a = field.arrows[i];
    out << format_double(p[0]) << "," << format_double(p[1]) << "," << format_double(p[2]);
    out << "," << format_double(a[0]) << "," << format_double(a[1]) << ","
        << format_double(a[2]) << "\n";
  }
}

void log_to_csv(const ObservationLog& log, std::ostream& out) {
  out << "player,joint,reward\n";
  for (const auto& record : log.records) {
    out << record.player << ",";
    for (std::size_t i = 0; i < record.joint.size(); ++i)
      out << (i ? ";" : "") << record.joint[i];
    out << "," << format_double(record.reward) << "\n";
  }
}

ObservationLog log_from_csv(std::istream& in, std::pair<double, double> payoff_bounds) {
  ObservationLog log;
  log.payoff_bounds = payoff_bounds;
  const auto rows = read_csv(in);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r == 0 && !rows[r].empty() && rows[r][0] == "player") continue;  // header
    if (rows[r].size() != 3) throw std::invalid_argument("log rows are player,joint,reward");
    Observation record;
    record.player = std::size_t(std::stoul(rows[r][0]));
    std::istringstream joint_in(rows[r][1]);
    std::string token;
    while (std::getline(joint_in, token, ';'))
      record.joint.push_back(std::size_t(std::stoul(trim(token))));
    record.reward = parse_number(rows[r][2]);
    log.records.push_back(std::move(record));
  }
  return log;
}

}  // namespace egta
