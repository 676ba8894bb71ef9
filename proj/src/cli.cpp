#include "egta/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "egta/blotto.hpp"
#include "egta/bounds.hpp"
#include "egta/dynamics.hpp"
#include "egta/equilibrium.hpp"
#include "egta/io.hpp"
#include "egta/plot.hpp"

namespace egta::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("cannot parse " + path.string() + ": " + e.what());
  }
}

void write_text_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << content;
}

void write_json_file(const fs::path& path, const ordered_json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

bool has_format(const std::string& formats, const std::string& wanted) {
  std::istringstream in(formats);
  std::string token;
  while (std::getline(in, token, ','))
    if (token == wanted) return true;
  return false;
}

// Either a meta table (single population) or a bimatrix game.
using AnalysisInput = std::variant<MetaPayoffTable, BimatrixGame>;

AnalysisInput load_analysis_input(const fs::path& path) {
  const std::string ext = path.extension().string();
  if (ext == ".json") {
    const json j = read_json_file(path);
    try {
      if (j.contains("rows")) return table_from_json(j);
      if (j.contains("payoffs")) {
        const NormalFormGame game = game_from_json(j);
        if (game.num_players() != 2)
          throw InputError("dynamics and equilibrium commands need a 2-player game");
        const std::size_t k = game.num_strategies(0), kp = game.num_strategies(1);
        Matrix a(k, kp), b(k, kp);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t jj = 0; jj < kp; ++jj) {
            const auto& r = game.payoff({i, jj});
            a(i, jj) = r[0];
            b(i, jj) = r[1];
          }
        return BimatrixGame(std::move(a), std::move(b), game.strategy_sets()[0],
                            game.strategy_sets()[1]);
      }
    } catch (const std::exception& e) {
      throw InputError(path.string() + ": " + e.what());
    }
    throw InputError(path.string() + ": unrecognized JSON input");
  }
  if (ext == ".csv") {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    try {
      return bimatrix_from_csv(in);
    } catch (const std::exception& e) {
      throw InputError(path.string() + ": " + e.what());
    }
  }
  throw InputError("input must be .json or .csv: " + path.string());
}

std::vector<std::vector<double>> parse_starts(const std::string& text) {
  std::vector<std::vector<double>> starts;
  std::istringstream groups(text);
  std::string group;
  while (std::getline(groups, group, ';')) {
    std::vector<double> point;
    std::istringstream in(group);
    std::string cell;
    while (std::getline(in, cell, ',')) point.push_back(std::stod(cell));
    if (!point.empty()) starts.push_back(std::move(point));
  }
  return starts;
}

std::vector<std::vector<double>> default_starts(const std::vector<std::size_t>& dims) {
  std::vector<std::vector<double>> starts;
  if (dims.size() == 1 && dims[0] == 3) {
    // Interior lattice at resolution 5, then the centroid.
    for (const auto& profile : enumerate_profiles(5, 3)) {
      if (profile.counts[0] == 0 || profile.counts[1] == 0 || profile.counts[2] == 0)
        continue;
      starts.push_back({profile.counts[0] / 5.0, profile.counts[1] / 5.0,
                        profile.counts[2] / 5.0});
    }
  }
  std::vector<double> centroid;
  for (std::size_t dim : dims)
    centroid.insert(centroid.end(), dim, 1.0 / double(dim));
  starts.push_back(std::move(centroid));
  return starts;
}

std::string two_digit(std::size_t i) {
  std::string s = std::to_string(i);
  return s.size() < 2 ? "0" + s : s;
}

struct TrajectoryRun {
  std::string tag;  // "", "cp1", "cp2"
  VectorField field;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> starts;
};

int cmd_trajectories(const fs::path& input, const std::string& starts_text,
                     double step, double horizon, const fs::path& out_dir,
                     const std::string& formats, const std::string& mode,
                     std::ostream& out) {
  const AnalysisInput loaded = load_analysis_input(input);
  std::vector<TrajectoryRun> runs;

  if (std::holds_alternative<MetaPayoffTable>(loaded)) {
    const auto& table = std::get<MetaPayoffTable>(loaded);
    runs.push_back({"", single_population_field(table), table.strategy_labels(), {}});
  } else {
    const auto& game = std::get<BimatrixGame>(loaded);
    if (mode == "counterpart") {
      auto [first, second] = counterpart_games(game);
      runs.push_back({"cp1", single_population_field(first), game.row_labels, {}});
      runs.push_back({"cp2", single_population_field(second), game.col_labels, {}});
    } else {
      auto labels = game.row_labels;
      labels.insert(labels.end(), game.col_labels.begin(), game.col_labels.end());
      runs.push_back({"", two_population_field(game), labels, {}});
    }
  }

  const auto explicit_starts = parse_starts(starts_text);
  for (auto& run : runs)
    run.starts = explicit_starts.empty() ? default_starts(run.field.dims) : explicit_starts;

  for (const auto& run : runs) {
    const std::string prefix = run.tag.empty() ? "" : run.tag + "_";
    std::vector<Trajectory> trajectories;
    std::ostringstream summary;
    summary << "trajectory,start,classification\n";
    for (std::size_t i = 0; i < run.starts.size(); ++i) {
      Trajectory trajectory = integrate(run.field, run.starts[i], horizon, step);
      const TrajectoryClass cls = classify(trajectory);
      std::ostringstream csv;
      trajectory_to_csv(trajectory, run.labels, csv);
      if (has_format(formats, "csv"))
        write_text_file(out_dir / (prefix + "trajectory_" + two_digit(i) + ".csv"),
                        csv.str());
      summary << i << ",";
      for (std::size_t c = 0; c < run.starts[i].size(); ++c)
        summary << (c ? " " : "") << format_double(run.starts[i][c], 6);
      summary << "," << to_string(cls) << "\n";
      out << (run.tag.empty() ? "trajectory " : run.tag + " trajectory ") << i << ": "
          << to_string(cls) << "\n";
      trajectories.push_back(std::move(trajectory));
    }
    if (has_format(formats, "csv"))
      write_text_file(out_dir / (prefix + "summary.csv"), summary.str());
    if (has_format(formats, "svg") && run.field.populations() == 1 &&
        run.field.dims[0] == 3)
      write_text_file(out_dir / (prefix + "trajectories.svg"),
                      trajectories_svg(trajectories, run.labels));
  }
  return kExitOk;
}

int cmd_field(const fs::path& input, int resolution, const fs::path& out_dir,
              const std::string& formats, std::ostream& out) {
  const AnalysisInput loaded = load_analysis_input(input);
  if (!std::holds_alternative<MetaPayoffTable>(loaded))
    throw InputError("field rendering needs a meta table input");
  const auto& table = std::get<MetaPayoffTable>(loaded);
  const auto field = directional_field(single_population_field(table), resolution);
  if (has_format(formats, "csv")) {
    std::ostringstream csv;
    field_to_csv(field, table.strategy_labels(), csv);
    write_text_file(out_dir / "field.csv", csv.str());
  }
  if (has_format(formats, "svg"))
    write_text_file(out_dir / "field.svg", field_svg(field, table.strategy_labels()));
  out << "field: " << field.points.size() << " grid points\n";
  return kExitOk;
}

int cmd_build_table(const fs::path& input, const std::string& subset_text,
                    const fs::path& out_dir, const std::string& formats,
                    std::ostream& out) {
  std::ifstream in(input);
  if (!in) throw InputError("cannot open " + input.string());
  std::vector<std::string> labels;
  Matrix winrates;
  try {
    winrates = matrix_from_csv(in, &labels);
  } catch (const std::exception& e) {
    throw InputError(input.string() + ": " + e.what());
  }
  if (!winrates.square()) throw InputError("win-rate matrix must be square");
  for (std::size_t r = 0; r < winrates.rows(); ++r)
    for (std::size_t c = 0; c < winrates.cols(); ++c)
      if (winrates(r, c) < 0.0 || winrates(r, c) > 1.0)
        throw InputError("win rate outside [0,1] at " + labels[r] + "," + labels[c]);

  std::vector<std::size_t> pick;
  std::vector<std::string> picked_labels;
  if (subset_text.empty()) {
    pick.resize(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) pick[i] = i;
    picked_labels = labels;
  } else {
    std::istringstream subset_in(subset_text);
    std::string token;
    while (std::getline(subset_in, token, ',')) {
      const auto it = std::find(labels.begin(), labels.end(), token);
      if (it == labels.end()) throw InputError("unknown strategy label: " + token);
      pick.push_back(std::size_t(it - labels.begin()));
      picked_labels.push_back(token);
    }
  }
  if (pick.empty()) throw InputError("empty strategy subset");

  Matrix sub(pick.size(), pick.size());
  for (std::size_t i = 0; i < pick.size(); ++i) {
    for (std::size_t j = 0; j < pick.size(); ++j)
      sub(i, j) = winrates(pick[i], pick[j]);
    sub(i, i) = 0.5;  // self-play
  }
  const MetaPayoffTable table = table_from_matrix(sub, picked_labels);
  if (has_format(formats, "json")) write_json_file(out_dir / "table.json", table_to_json(table));
  if (has_format(formats, "csv")) {
    std::ostringstream csv;
    table_to_csv(table, csv);
    write_text_file(out_dir / "table.csv", csv.str());
  }
  out << "table: " << table.num_rows() << " rows over " << pick.size()
      << " strategies\n";
  return kExitOk;
}

int cmd_nash(const fs::path& input, const std::string& mode, int max_support,
             const fs::path& out_dir, std::ostream& out) {
  const AnalysisInput loaded = load_analysis_input(input);
  if (!std::holds_alternative<BimatrixGame>(loaded))
    throw InputError("nash analysis needs a 2-player game input");
  const auto& game = std::get<BimatrixGame>(loaded);

  std::vector<std::string> warnings;
  std::vector<EquilibriumCandidate> equilibria;
  if (mode == "bimatrix") {
    equilibria = support_enumeration_2p(game, max_support, &warnings);
  } else if (mode == "counterpart") {
    equilibria = counterpart_nash_filter(game, &warnings);
  } else if (mode == "symmetric") {
    if (game.row_payoffs != game.col_payoffs.transposed())
      throw InputError("symmetric mode needs A == B^T");
    for (const auto& x : single_population_equilibria(game.row_payoffs, &warnings)) {
      EquilibriumCandidate candidate;
      candidate.profile = {x};
      candidate.exploitability = 0.0;
      candidate.support = {x.support(kSupportThreshold)};
      candidate.method = "support_enum";
      equilibria.push_back(std::move(candidate));
    }
  } else {
    throw InputError("mode must be symmetric, bimatrix or counterpart");
  }

  ordered_json report;
  report["input"] = input.filename().string();
  report["mode"] = mode;
  ordered_json list = ordered_json::array();
  for (const auto& candidate : equilibria) list.push_back(equilibrium_to_json(candidate));
  report["equilibria"] = std::move(list);
  report["warnings"] = warnings;
  write_json_file(out_dir / "nash.json", report);

  out << equilibria.size() << " equilibria (" << mode << ")\n";
  for (const auto& candidate : equilibria) {
    out << "  [";
    for (std::size_t p = 0; p < candidate.profile.size(); ++p) {
      out << (p ? " | " : "");
      for (std::size_t i = 0; i < candidate.profile[p].size(); ++i)
        out << (i ? "," : "") << format_double(candidate.profile[p][i], 6);
    }
    out << "]  exploitability " << format_double(candidate.exploitability, 3) << "\n";
  }
  for (const auto& w : warnings) out << "warning: " << w << "\n";
  return warnings.empty() ? kExitOk : kExitNumericalWarning;
}

int cmd_bounds(const std::string& counts_path, const std::string& log_path,
               double epsilon, double delta, double range, const std::string& shape_text,
               long long uniform_n, const std::string& cell_mode, const fs::path& out_dir,
               std::ostream& out) {
  if (counts_path.empty() == log_path.empty())
    throw InputError("provide exactly one of --counts or --log");
  if (epsilon <= 0.0) throw InputError("--epsilon must be positive");
  if (cell_mode != "unordered" && cell_mode != "ordered")
    throw InputError("--mode must be ordered or unordered");

  CellCounts counts;
  if (!counts_path.empty()) {
    const json j = read_json_file(counts_path);
    if (j.contains("range") && range == 0.0) range = j.at("range").get<double>();
    const json& cells = j.contains("payload") ? j.at("payload").at("cells") : j.at("cells");
    for (const auto& cell : cells)
      counts[cell.at("key").get<std::string>()] = cell.at("n").get<long long>();
  } else {
    std::ifstream in(log_path);
    if (!in) throw InputError("cannot open " + log_path);
    ObservationLog log = log_from_csv(in, {0.0, range > 0.0 ? range : 1.0});
    counts = counts_from_log(log, cell_mode == "ordered" ? CountMode::kOrderedCells
                                                         : CountMode::kUnorderedPairs);
  }
  if (range == 0.0) range = 1.0;
  if (counts.empty()) throw InputError("no cells present");

  const ConfidenceReport batch = batch_confidence(counts, epsilon, range);

  ordered_json report;
  report["epsilon"] = epsilon;
  report["range"] = range;
  ordered_json cells = ordered_json::array();
  for (const auto& [key, n] : counts) cells.push_back({{"key", key}, {"n", n}});
  report["cells"] = std::move(cells);
  report["batch_confidence"] = batch.confidence;
  report["two_epsilon_certificate"] = 2.0 * epsilon;
  out << "batch confidence: " << format_double(batch.confidence, 6) << "\n";

  if (!shape_text.empty()) {
    std::vector<std::size_t> sizes;
    std::istringstream in(shape_text);
    std::string token;
    while (std::getline(in, token, ',')) sizes.push_back(std::size_t(std::stoul(token)));
    report["cells_uniform"] = uniform_cell_count(sizes);
    if (uniform_n > 0) {
      const double conf = uniform_confidence(uniform_n, sizes, epsilon, range);
      report["uniform_n"] = uniform_n;
      report["uniform_confidence"] = conf;
      out << "uniform confidence at n=" << uniform_n << ": " << format_double(conf, 6)
          << "\n";
    }
    if (delta > 0.0) {
      if (delta >= 1.0) throw InputError("--delta must lie in (0,1)");
      const long long required = required_samples(epsilon, delta, sizes, range);
      report["delta"] = delta;
      report["required_samples"] = required;
      out << "required samples per cell: " << required << "\n";
    }
  }
  write_json_file(out_dir / "bounds.json", report);
  return kExitOk;
}

int cmd_blotto(const std::vector<std::string>& strategy_texts, const fs::path& out_dir,
               const std::string& formats, std::ostream& out) {
  std::vector<BlottoStrategy> strategies;
  for (const auto& text : strategy_texts) {
    try {
      strategies.push_back(BlottoStrategy::parse(text));
    } catch (const std::exception& e) {
      throw InputError("bad allocation '" + text + "': " + e.what());
    }
  }
  for (const auto& s : strategies)
    if (s.troops() != strategies[0].troops() || s.fields() != strategies[0].fields())
      throw InputError("allocations must share troop total and battlefield count");

  const int m = strategies[0].troops();
  const int n = int(strategies[0].fields());
  out << "strategy space: " << strategy_count(m, n).str() << " allocations of " << m
      << " troops over " << n << " battlefields\n";

  std::vector<std::string> labels;
  for (const auto& s : strategies) labels.push_back(s.to_string());
  Matrix payoffs(strategies.size(), strategies.size());
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    payoffs(i, i) = 0.5;
    for (std::size_t j = i + 1; j < strategies.size(); ++j) {
      const auto [first, second] = match_payoff(strategies[i], strategies[j]);
      payoffs(i, j) = first;
      payoffs(j, i) = second;
    }
  }
  std::ostringstream matrix_csv;
  matrix_to_csv(payoffs, labels, matrix_csv);
  write_text_file(out_dir / "payoffs.csv", matrix_csv.str());

  if (strategies.size() >= 2) {
    const MetaPayoffTable table = blotto_meta_table(strategies, labels);
    if (has_format(formats, "json"))
      write_json_file(out_dir / "table.json", table_to_json(table));
    if (has_format(formats, "csv")) {
      std::ostringstream table_csv;
      table_to_csv(table, table_csv);
      write_text_file(out_dir / "table.csv", table_csv.str());
    }
  }
  for (std::size_t i = 0; i < strategies.size(); ++i)
    for (std::size_t j = 0; j < strategies.size(); ++j)
      if (i != j)
        out << labels[i] << " vs " << labels[j] << ": "
            << format_double(payoffs(i, j), 6) << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Meta-game analysis: payoff tables, replicator dynamics, equilibria, "
               "and sample-size bounds"};
  app.require_subcommand(1);

  // Shared option storage.
  std::string input, out_dir = ".", subset, starts, shape, counts_path, log_path;
  std::string build_formats = "json,csv", traj_formats = "csv,svg",
              field_formats = "csv,svg", blotto_formats = "json,csv";
  std::string traj_mode = "twopop", nash_mode = "bimatrix", bounds_mode = "unordered";
  double step = 0.01, horizon = 200.0, epsilon = 0.0, delta = 0.0, range = 0.0;
  int grid = 10, max_support = 0;
  long long uniform_n = 0;
  std::vector<std::string> allocations;

  auto* build = app.add_subcommand("build-table", "Meta payoff table from a win-rate CSV");
  build->add_option("--input", input, "square win-rate CSV")->required();
  build->add_option("--subset", subset, "comma-separated strategy labels");
  build->add_option("--out-dir", out_dir, "output directory");
  build->add_option("--format", build_formats, "csv,json");

  auto* traj = app.add_subcommand("trajectories", "Integrate replicator trajectories");
  traj->add_option("--input", input, "meta-table JSON, game JSON, or bimatrix CSV")->required();
  traj->add_option("--starts", starts, "semicolon-separated simplex points");
  traj->add_option("--step", step, "RK4 step")->check(CLI::PositiveNumber);
  traj->add_option("--horizon", horizon, "integration horizon")->check(CLI::PositiveNumber);
  traj->add_option("--mode", traj_mode, "twopop|counterpart (bimatrix inputs)");
  traj->add_option("--out-dir", out_dir, "output directory");
  traj->add_option("--format", traj_formats, "csv,svg");

  auto* field = app.add_subcommand("field", "Directional field on the 2-simplex");
  field->add_option("--input", input, "meta-table JSON")->required();
  field->add_option("--grid", grid, "barycentric resolution")->check(CLI::Range(1, 200));
  field->add_option("--out-dir", out_dir, "output directory");
  field->add_option("--format", field_formats, "csv,svg");

  auto* nash = app.add_subcommand("nash", "Equilibrium analysis");
  nash->add_option("--input", input, "game JSON or bimatrix CSV")->required();
  nash->add_option("--mode", nash_mode, "symmetric|bimatrix|counterpart");
  nash->add_option("--max-support", max_support, "support size cap (0 = full)");
  nash->add_option("--out-dir", out_dir, "output directory");

  auto* bounds = app.add_subcommand("bounds", "Hoeffding confidence report");
  bounds->add_option("--counts", counts_path, "per-cell counts JSON");
  bounds->add_option("--log", log_path, "observation log CSV");
  bounds->add_option("--epsilon", epsilon, "payoff uncertainty")->required();
  bounds->add_option("--delta", delta, "failure probability for required samples");
  bounds->add_option("--range", range, "payoff range b-a (default 1 or from counts file)");
  bounds->add_option("--shape", shape, "per-player strategy counts, e.g. 3,3");
  bounds->add_option("--n", uniform_n, "per-cell samples for the uniform bound");
  bounds->add_option("--mode", bounds_mode, "log cell tally: unordered|ordered");
  bounds->add_option("--out-dir", out_dir, "output directory");

  auto* blotto = app.add_subcommand("blotto", "Exact Colonel Blotto payoffs and meta table");
  blotto->add_option("allocations", allocations, "strategies like 36,35,24,3,2")->required();
  blotto->add_option("--out-dir", out_dir, "output directory");
  blotto->add_option("--format", blotto_formats, "csv,json");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitInputError;
  }

  try {
    if (build->parsed())
      return cmd_build_table(input, subset, out_dir, build_formats, out);
    if (traj->parsed())
      return cmd_trajectories(input, starts, step, horizon, out_dir, traj_formats,
                              traj_mode, out);
    if (field->parsed()) return cmd_field(input, grid, out_dir, field_formats, out);
    if (nash->parsed()) return cmd_nash(input, nash_mode, max_support, out_dir, out);
    if (bounds->parsed())
      return cmd_bounds(counts_path, log_path, epsilon, delta, range, shape, uniform_n,
                        bounds_mode, out_dir, out);
    if (blotto->parsed()) return cmd_blotto(allocations, out_dir, blotto_formats, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  err << "no command\n";
  return kExitInputError;
}

}  // namespace egta::cli
