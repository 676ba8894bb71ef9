#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <json.hpp>

#include "egta/blotto.hpp"
#include "egta/bounds.hpp"
#include "egta/dynamics.hpp"
#include "egta/equilibrium.hpp"
#include "egta/fixtures.hpp"
#include "egta/io.hpp"

namespace py = pybind11;
using namespace egta;

namespace {

Matrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw std::invalid_argument("empty matrix");
  Matrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows[0].size()) throw std::invalid_argument("ragged matrix");
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::vector<std::vector<double>> matrix_to_rows(const Matrix& m) {
  std::vector<std::vector<double>> rows(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = m(r, c);
  return rows;
}

std::vector<MixedStrategy> profile_from_lists(
    const std::vector<std::vector<double>>& profile) {
  std::vector<MixedStrategy> out;
  out.reserve(profile.size());
  for (const auto& weights : profile) out.emplace_back(weights);
  return out;
}

py::object json_to_py(const nlohmann::json& j) {
  switch (j.type()) {
    case nlohmann::json::value_t::null: return py::none();
    case nlohmann::json::value_t::boolean: return py::bool_(j.get<bool>());
    case nlohmann::json::value_t::number_integer: return py::int_(j.get<long long>());
    case nlohmann::json::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case nlohmann::json::value_t::number_float: return py::float_(j.get<double>());
    case nlohmann::json::value_t::string: return py::str(j.get<std::string>());
    case nlohmann::json::value_t::array: {
      py::list list;
      for (const auto& item : j) list.append(json_to_py(item));
      return list;
    }
    case nlohmann::json::value_t::object: {
      py::dict dict;
      for (const auto& [key, value] : j.items()) dict[py::str(key)] = json_to_py(value);
      return dict;
    }
    default: return py::none();
  }
}

py::object big_int(const boost::multiprecision::cpp_int& value) {
  const std::string digits = value.str();
  PyObject* obj = PyLong_FromString(digits.c_str(), nullptr, 10);
  if (!obj) throw py::error_already_set();
  return py::reinterpret_steal<py::object>(obj);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Meta-game analysis: payoff tables, replicator dynamics, equilibria, "
            "and sample-size bounds";

  // --- core types -------------------------------------------------------
  py::class_<NormalFormGame>(m, "NormalFormGame")
      .def(py::init<std::vector<std::vector<std::string>>,
                    std::vector<std::vector<double>>,
                    std::optional<std::pair<double, double>>>(),
           py::arg("strategy_sets"), py::arg("payoffs"),
           py::arg("payoff_bounds") = std::nullopt)
      .def_property_readonly("num_players", &NormalFormGame::num_players)
      .def_property_readonly("strategy_sets", &NormalFormGame::strategy_sets)
      .def_property_readonly("payoff_bounds", &NormalFormGame::payoff_bounds)
      .def("payoff",
           [](const NormalFormGame& game, const std::vector<std::size_t>& joint) {
             return game.payoff(joint);
           })
      .def("to_json", [](const NormalFormGame& game) { return game_to_json(game).dump(2); })
      .def_static("from_json", [](const std::string& text) {
        return game_from_json(nlohmann::json::parse(text));
      });

  py::class_<BimatrixGame>(m, "BimatrixGame")
      .def(py::init([](const std::vector<std::vector<double>>& a,
                       const std::vector<std::vector<double>>& b,
                       std::vector<std::string> row_labels,
                       std::vector<std::string> col_labels) {
             return BimatrixGame(matrix_from_rows(a), matrix_from_rows(b),
                                 std::move(row_labels), std::move(col_labels));
           }),
           py::arg("a"), py::arg("b"), py::arg("row_labels") = std::vector<std::string>{},
           py::arg("col_labels") = std::vector<std::string>{})
      .def_property_readonly(
          "a", [](const BimatrixGame& g) { return matrix_to_rows(g.row_payoffs); })
      .def_property_readonly(
          "b", [](const BimatrixGame& g) { return matrix_to_rows(g.col_payoffs); })
      .def_readonly("row_labels", &BimatrixGame::row_labels)
      .def_readonly("col_labels", &BimatrixGame::col_labels)
      .def("to_normal_form", &NormalFormGame::from_bimatrix);

  py::class_<DiscreteProfile>(m, "DiscreteProfile")
      .def(py::init<std::vector<int>>(), py::arg("counts"))
      .def_readonly("counts", &DiscreteProfile::counts)
      .def_property_readonly("players", &DiscreteProfile::players);

  py::class_<MetaPayoffTable>(m, "MetaPayoffTable")
      .def_property_readonly("p", &MetaPayoffTable::players)
      .def_property_readonly("strategy_labels", &MetaPayoffTable::strategy_labels)
      .def_property_readonly("num_rows", &MetaPayoffTable::num_rows)
      .def("rows",
           [](const MetaPayoffTable& table) {
             py::list rows;
             for (std::size_t r = 0; r < table.num_rows(); ++r)
               rows.append(py::make_tuple(table.profile(r).counts, table.payoffs(r)));
             return rows;
           })
      .def("to_json", [](const MetaPayoffTable& t) { return table_to_json(t).dump(2); })
      .def_static("from_json", [](const std::string& text) {
        return table_from_json(nlohmann::json::parse(text));
      });

  py::class_<AsymmetricMetaTable>(m, "AsymmetricMetaTable")
      .def_readonly("player1", &AsymmetricMetaTable::player1)
      .def_readonly("player2", &AsymmetricMetaTable::player2)
      .def("to_json",
           [](const AsymmetricMetaTable& t) { return asymmetric_table_to_json(t).dump(2); });

  // --- games --------------------------------------------------------------
  m.def("is_symmetric", &is_symmetric, py::arg("game"), py::arg("tolerance") = 0.0);
  m.def(
      "expected_payoff",
      [](const NormalFormGame& game, const std::vector<std::vector<double>>& profile) {
        return expected_payoff(game, profile_from_lists(profile));
      },
      py::arg("game"), py::arg("profile"));
  m.def(
      "counterpart_games",
      [](const BimatrixGame& game) {
        const auto [first, second] = counterpart_games(game);
        return py::make_tuple(matrix_to_rows(first), matrix_to_rows(second));
      },
      py::arg("game"), "The single-population games (A, B^T) of a square bimatrix game.");

  // --- heuristic payoff tables ---------------------------------------------
  m.def("enumerate_profiles", [](int p, int k) {
    py::list out;
    for (const auto& profile : enumerate_profiles(p, k)) out.append(profile.counts);
    return out;
  });
  m.def(
      "profile_probability",
      [](const std::vector<int>& counts, const std::vector<double>& x) {
        return profile_probability(DiscreteProfile{counts}, MixedStrategy(x));
      },
      py::arg("counts"), py::arg("x"));
  m.def(
      "build_symmetric_table",
      [](const std::function<std::vector<double>(const std::vector<int>&)>& payoff_fn,
         int p, int k, std::vector<std::string> labels) {
        return build_symmetric_table(
            [&](const DiscreteProfile& profile) { return payoff_fn(profile.counts); }, p,
            k, std::move(labels));
      },
      py::arg("payoff_fn"), py::arg("p"), py::arg("k"),
      py::arg("labels") = std::vector<std::string>{});
  m.def(
      "table_from_matrix",
      [](const std::vector<std::vector<double>>& pairwise, std::vector<std::string> labels) {
        return table_from_matrix(matrix_from_rows(pairwise), std::move(labels));
      },
      py::arg("pairwise"), py::arg("labels") = std::vector<std::string>{});
  m.def("build_from_bimatrix", &build_from_bimatrix, py::arg("game"));
  m.def(
      "meta_expected_payoff",
      [](const MetaPayoffTable& table, const std::vector<double>& x) {
        return meta_expected_payoff(table, MixedStrategy(x));
      },
      py::arg("table"), py::arg("x"));

  // --- replicator dynamics ---------------------------------------------------
  py::class_<VectorField>(m, "VectorField")
      .def_readonly("dims", &VectorField::dims)
      .def("evaluate",
           [](const VectorField& field, const std::vector<double>& state) {
             return field.evaluate(state);
           });

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("times", &Trajectory::times)
      .def_readonly("points", &Trajectory::points)
      .def_readonly("dims", &Trajectory::dims);

  py::class_<DirectionalField>(m, "DirectionalField")
      .def_readonly("resolution", &DirectionalField::resolution)
      .def_readonly("points", &DirectionalField::points)
      .def_readonly("arrows", &DirectionalField::arrows);

  m.def(
      "single_population_field",
      [](const std::vector<std::vector<double>>& payoff) {
        return single_population_field(matrix_from_rows(payoff));
      },
      py::arg("payoff"));
  m.def(
      "single_population_field_from_table",
      [](const MetaPayoffTable& table) { return single_population_field(table); },
      py::arg("table"));
  m.def("two_population_field", &two_population_field, py::arg("game"));
  m.def("integrate", &integrate, py::arg("field"), py::arg("start"), py::arg("t_end"),
        py::arg("step") = 0.01);
  m.def("directional_field", &directional_field, py::arg("field"), py::arg("resolution"));
  m.def(
      "classify",
      [](const Trajectory& trajectory) { return to_string(classify(trajectory)); },
      py::arg("trajectory"));

  // --- equilibrium analysis ----------------------------------------------------
  py::class_<EquilibriumCandidate>(m, "EquilibriumCandidate")
      .def_property_readonly("profile",
                             [](const EquilibriumCandidate& candidate) {
                               py::list profile;
                               for (const auto& mix : candidate.profile)
                                 profile.append(mix.weights());
                               return profile;
                             })
      .def_readonly("exploitability", &EquilibriumCandidate::exploitability)
      .def_readonly("support", &EquilibriumCandidate::support)
      .def_readonly("method", &EquilibriumCandidate::method);

  m.def(
      "exploitability",
      [](const NormalFormGame& game, const std::vector<std::vector<double>>& profile) {
        return exploitability(game, profile_from_lists(profile));
      },
      py::arg("game"), py::arg("profile"));
  m.def("pure_equilibria", &pure_equilibria, py::arg("game"),
        py::arg("tolerance") = 1e-12);
  m.def(
      "support_enumeration_2p",
      [](const BimatrixGame& game, int max_support) {
        return support_enumeration_2p(game, max_support);
      },
      py::arg("game"), py::arg("max_support") = 0);
  m.def(
      "single_population_equilibria",
      [](const std::vector<std::vector<double>>& payoff) {
        py::list out;
        for (const auto& x : single_population_equilibria(matrix_from_rows(payoff)))
          out.append(x.weights());
        return out;
      },
      py::arg("payoff"));
  m.def(
      "counterpart_nash_filter",
      [](const BimatrixGame& game) { return counterpart_nash_filter(game); },
      py::arg("game"));
  m.def("certify_two_epsilon", &certify_two_epsilon, py::arg("empirical_eq"),
        py::arg("epsilon"), py::arg("tolerance") = 1e-9);

  // --- finite-sample bounds -------------------------------------------------------
  py::class_<ConfidenceReport>(m, "ConfidenceReport")
      .def_readonly("epsilon", &ConfidenceReport::epsilon)
      .def_readonly("confidence", &ConfidenceReport::confidence)
      .def_readonly("per_entry_counts", &ConfidenceReport::per_entry_counts)
      .def_readonly("range", &ConfidenceReport::range);

  m.def(
      "batch_confidence",
      [](const std::map<std::string, long long>& counts, double epsilon, double range) {
        return batch_confidence(CellCounts(counts.begin(), counts.end()), epsilon, range);
      },
      py::arg("counts"), py::arg("epsilon"), py::arg("range") = 1.0);
  m.def("uniform_cell_count", &uniform_cell_count, py::arg("sizes"));
  m.def("uniform_confidence", &uniform_confidence, py::arg("n"), py::arg("sizes"),
        py::arg("epsilon"), py::arg("range") = 1.0);
  m.def("required_samples", &required_samples, py::arg("epsilon"), py::arg("delta"),
        py::arg("sizes"), py::arg("range") = 1.0);
  m.def(
      "estimate_game",
      [](const std::vector<std::tuple<std::size_t, std::vector<std::size_t>, double>>&
             records,
         std::vector<std::vector<std::string>> strategy_sets,
         std::pair<double, double> payoff_bounds) {
        ObservationLog log;
        log.payoff_bounds = payoff_bounds;
        for (const auto& [player, joint, reward] : records)
          log.records.push_back({player, joint, reward});
        auto [game, counts] = estimate_game(log, std::move(strategy_sets));
        return py::make_tuple(std::move(game),
                              std::map<std::string, long long>(counts.begin(), counts.end()));
      },
      py::arg("records"), py::arg("strategy_sets"),
      py::arg("payoff_bounds") = std::pair<double, double>{0.0, 1.0});

  // --- colonel blotto ----------------------------------------------------------------
  m.def(
      "strategy_count",
      [](int troops, int fields) { return big_int(strategy_count(troops, fields)); },
      py::arg("troops"), py::arg("fields"));
  m.def(
      "match_payoff",
      [](const std::vector<int>& s, const std::vector<int>& t) {
        return match_payoff(BlottoStrategy(s), BlottoStrategy(t));
      },
      py::arg("s"), py::arg("t"));
  m.def(
      "blotto_meta_table",
      [](const std::vector<std::vector<int>>& allocations, std::vector<std::string> labels) {
        std::vector<BlottoStrategy> strategies;
        strategies.reserve(allocations.size());
        for (const auto& allocation : allocations) strategies.emplace_back(allocation);
        return blotto_meta_table(strategies, std::move(labels));
      },
      py::arg("allocations"), py::arg("labels") = std::vector<std::string>{});

  // --- fixtures -------------------------------------------------------------------------
  using OptionalPath = std::optional<std::filesystem::path>;
  const auto resolve_dir = [](const OptionalPath& dir) {
    return dir.value_or(std::filesystem::path{});
  };
  m.def(
      "load_fixture",
      [resolve_dir](const std::string& name, const OptionalPath& dir) {
        const auto fixture = fixtures::load(name, resolve_dir(dir));
        py::dict out;
        out["name"] = fixture.name;
        out["source"] = fixture.source;
        out["kind"] = fixture.kind;
        out["payload"] = json_to_py(fixture.payload);
        return out;
      },
      py::arg("name"), py::arg("dir") = py::none());
  m.def(
      "fixture_game",
      [resolve_dir](const std::string& name, const OptionalPath& dir) {
        return fixtures::game(name, resolve_dir(dir));
      },
      py::arg("name"), py::arg("dir") = py::none());
  m.def(
      "fixture_bimatrix",
      [resolve_dir](const std::string& name, const OptionalPath& dir) {
        return fixtures::bimatrix(name, resolve_dir(dir));
      },
      py::arg("name"), py::arg("dir") = py::none());
  m.def(
      "fixture_table",
      [resolve_dir](const std::string& name, const OptionalPath& dir) {
        return fixtures::table(name, resolve_dir(dir));
      },
      py::arg("name"), py::arg("dir") = py::none());
  m.def("fixtures_dir", []() { return fixtures::default_dir(); });
}
