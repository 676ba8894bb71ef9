#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "egta/blotto.hpp"
#include "egta/cli.hpp"
#include "egta/fixtures.hpp"
#include "egta/io.hpp"
#include "test_util.hpp"

using namespace egta;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("egta_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
  std::size_t count = 0, pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

fs::path winrate_csv() { return fixtures::default_dir() / "alphago_winrates.csv"; }
fs::path psro_csv() { return fixtures::default_dir() / "psro_leduc.csv"; }

}  // namespace

TEST_CASE("build-table") {
  SUBCASE("alphago subset reproduces the published table") {
    const auto dir = scratch_dir("build_table");
    const auto result = run_cli({"build-table", "--input", winrate_csv().string(),
                                 "--subset", "a_rvp,a_vp,a_rp", "--out-dir", dir.string()});
    CHECK(result.exit_code == 0);
    const auto produced = table_from_json(nlohmann::json::parse(slurp(dir / "table.json")));
    const auto expected = fixtures::table("alphago_table5");
    REQUIRE(produced.num_rows() == expected.num_rows());
    for (std::size_t r = 0; r < produced.num_rows(); ++r)
      for (std::size_t j = 0; j < 3; ++j)
        CHECK(produced.payoffs(r)[j] == doctest::Approx(expected.payoffs(r)[j]));
    CHECK(fs::exists(dir / "table.csv"));
  }

  SUBCASE("single-strategy subset yields the lone self-play row") {
    const auto dir = scratch_dir("build_table_single");
    const auto result = run_cli({"build-table", "--input", winrate_csv().string(),
                                 "--subset", "zen", "--out-dir", dir.string()});
    CHECK(result.exit_code == 0);
    const auto produced = table_from_json(nlohmann::json::parse(slurp(dir / "table.json")));
    CHECK(produced.num_rows() == 1);
    CHECK(produced.payoffs(0) == std::vector<double>{0.5});
  }

  SUBCASE("unknown labels are input errors") {
    const auto dir = scratch_dir("build_table_bad");
    const auto result = run_cli({"build-table", "--input", winrate_csv().string(),
                                 "--subset", "a_rvp,nope", "--out-dir", dir.string()});
    CHECK(result.exit_code == cli::kExitInputError);
    CHECK(result.err.find("nope") != std::string::npos);
  }

  SUBCASE("win rates outside [0,1] are input errors") {
    const auto dir = scratch_dir("build_table_range");
    const fs::path bad = dir / "bad.csv";
    std::ofstream(bad) << ",a,b\na,0.5,1.2\nb,-0.2,0.5\n";
    const auto result =
        run_cli({"build-table", "--input", bad.string(), "--out-dir", dir.string()});
    CHECK(result.exit_code == cli::kExitInputError);
  }

  SUBCASE("non-square input is an input error") {
    const auto dir = scratch_dir("build_table_shape");
    const fs::path bad = dir / "bad.csv";
    std::ofstream(bad) << ",a,b\na,0.5,0.5\n";
    const auto result =
        run_cli({"build-table", "--input", bad.string(), "--out-dir", dir.string()});
    CHECK(result.exit_code == cli::kExitInputError);
  }
}

TEST_CASE("trajectories command") {
  // A table input for the commands below.
  const auto table_dir = scratch_dir("traj_table");
  REQUIRE(run_cli({"build-table", "--input", winrate_csv().string(), "--subset",
                   "a_rvp,a_vp,a_rp", "--out-dir", table_dir.string()})
              .exit_code == 0);
  const std::string table_json = (table_dir / "table.json").string();

  SUBCASE("default grid converges to the strongest variant") {
    const auto dir = scratch_dir("traj_default");
    const auto result = run_cli({"trajectories", "--input", table_json, "--out-dir",
                                 dir.string()});
    CHECK(result.exit_code == 0);
    // 6 interior lattice starts + centroid.
    CHECK(count_occurrences(result.out, "converged-to-vertex") == 7);
    const std::string summary = slurp(dir / "summary.csv");
    CHECK(count_occurrences(summary, "converged-to-vertex") == 7);
    CHECK(fs::exists(dir / "trajectory_00.csv"));
    CHECK(fs::exists(dir / "trajectory_06.csv"));
    const std::string svg = slurp(dir / "trajectories.svg");
    CHECK(count_occurrences(svg, "<path ") == 7);
    CHECK(svg.find("<svg xmlns") != std::string::npos);
  }

  SUBCASE("vertex start produces a constant path") {
    const auto dir = scratch_dir("traj_vertex");
    const auto result = run_cli({"trajectories", "--input", table_json, "--starts",
                                 "1,0,0", "--horizon", "5", "--out-dir", dir.string()});
    CHECK(result.exit_code == 0);
    const std::string csv = slurp(dir / "trajectory_00.csv");
    CHECK(count_occurrences(csv, ",1,0,0") == 501);
  }

  SUBCASE("blotto cycle start is classified cycling") {
    const auto blotto_dir = scratch_dir("traj_blotto_table");
    const auto fixture = fixtures::load("blotto_table7");
    {
      std::ofstream out(blotto_dir / "table7.json");
      out << fixture.payload.dump(2);
    }
    const auto dir = scratch_dir("traj_cycle");
    const auto result =
        run_cli({"trajectories", "--input", (blotto_dir / "table7.json").string(),
                 "--starts", "0.6,0.25,0.15", "--out-dir", dir.string()});
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("cycling") != std::string::npos);
  }

  SUBCASE("bimatrix counterpart mode emits one run per counterpart") {
    const auto dir = scratch_dir("traj_cp");
    const auto result = run_cli({"trajectories", "--input", psro_csv().string(),
                                 "--mode", "counterpart", "--out-dir", dir.string()});
    CHECK(result.exit_code == 0);
    CHECK(fs::exists(dir / "cp1_summary.csv"));
    CHECK(fs::exists(dir / "cp2_summary.csv"));
    CHECK(fs::exists(dir / "cp1_trajectories.svg"));
    // Counterpart one is absorbed by strategy A from everywhere.
    CHECK(count_occurrences(slurp(dir / "cp1_summary.csv"), "converged-to-vertex") == 7);
  }

  SUBCASE("two-population mode writes coupled trajectories") {
    const auto dir = scratch_dir("traj_twopop");
    const auto result =
        run_cli({"trajectories", "--input", psro_csv().string(), "--starts",
                 "0.4,0.3,0.3,0.2,0.5,0.3", "--horizon", "50", "--out-dir", dir.string()});
    CHECK(result.exit_code == 0);
    const std::string csv = slurp(dir / "trajectory_00.csv");
    CHECK(csv.rfind("t,x:A,x:B,x:C,y:D,y:E,y:F", 0) == 0);
  }

  SUBCASE("two-population default start is the per-population centroid") {
    const auto dir = scratch_dir("traj_twopop_default");
    const auto result = run_cli({"trajectories", "--input", psro_csv().string(),
                                 "--horizon", "5", "--out-dir", dir.string()});
    CHECK(result.exit_code == 0);
    const std::string summary = slurp(dir / "summary.csv");
    CHECK(summary.find("0.333333 0.333333 0.333333 0.333333 0.333333 0.333333") !=
          std::string::npos);
  }

  SUBCASE("off-simplex starts are input errors") {
    const auto dir = scratch_dir("traj_bad");
    const auto result = run_cli({"trajectories", "--input", table_json, "--starts",
                                 "0.9,0.4,0.1", "--out-dir", dir.string()});
    CHECK(result.exit_code == cli::kExitInputError);
  }

  SUBCASE("the a_v/a_p/zen face is intransitive and cycles") {
    const auto face_dir = scratch_dir("traj_zen_table");
    REQUIRE(run_cli({"build-table", "--input", winrate_csv().string(), "--subset",
                     "a_v,a_p,zen", "--out-dir", face_dir.string()})
                .exit_code == 0);
    const auto dir = scratch_dir("traj_zen");
    const auto result =
        run_cli({"trajectories", "--input", (face_dir / "table.json").string(),
                 "--starts", "0.5,0.3,0.2", "--out-dir", dir.string()});
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("cycling") != std::string::npos);
  }
}

TEST_CASE("field command") {
  const auto table_dir = scratch_dir("field_table");
  REQUIRE(run_cli({"build-table", "--input", winrate_csv().string(), "--subset",
                   "a_rvp,a_vp,a_rp", "--out-dir", table_dir.string()})
              .exit_code == 0);
  const std::string table_json = (table_dir / "table.json").string();

  SUBCASE("grid resolution 1: vertices only, zero arrows") {
    const auto dir = scratch_dir("field_m1");
    const auto result = run_cli({"field", "--input", table_json, "--grid", "1",
                                 "--out-dir", dir.string()});
    CHECK(result.exit_code == 0);
    const std::string csv = slurp(dir / "field.csv");
    CHECK(count_occurrences(csv, "\n") == 4);  // header + 3 vertices
    CHECK(count_occurrences(csv, ",0,0,0\n") == 3);
  }

  SUBCASE("structural SVG: one marker line per grid point") {
    const auto dir = scratch_dir("field_svg");
    const auto result = run_cli({"field", "--input", table_json, "--grid", "10",
                                 "--out-dir", dir.string()});
    CHECK(result.exit_code == 0);
    const std::string svg = slurp(dir / "field.svg");
    CHECK(count_occurrences(svg, "<line ") == 66);
    CHECK(count_occurrences(svg, "marker-end") == 66);
  }
}

TEST_CASE("nash command") {
  SUBCASE("psro counterpart analysis keeps only (A, D)") {
    const auto dir = scratch_dir("nash_cp");
    const auto result = run_cli({"nash", "--input", psro_csv().string(), "--mode",
                                 "counterpart", "--out-dir", dir.string()});
    CHECK(result.exit_code == 0);
    const auto report = nlohmann::json::parse(slurp(dir / "nash.json"));
    REQUIRE(report["equilibria"].size() == 1);
    CHECK(report["equilibria"][0]["method"] == "counterpart");
    CHECK(report["equilibria"][0]["profile"][0] == nlohmann::json({1.0, 0.0, 0.0}));
    CHECK(report["equilibria"][0]["profile"][1] == nlohmann::json({1.0, 0.0, 0.0}));
    CHECK(report["equilibria"][0]["exploitability"].get<double>() <= 1e-9);
  }

  SUBCASE("battle of the sexes support enumeration finds three") {
    const auto dir = scratch_dir("nash_bos");
    {
      std::ofstream out(dir / "bos.json");
      out << game_to_json(NormalFormGame::from_bimatrix(egta::testing::battle_of_sexes()))
                 .dump(2);
    }
    const auto result = run_cli({"nash", "--input", (dir / "bos.json").string(),
                                 "--out-dir", dir.string()});
    CHECK(result.exit_code == 0);
    const auto report = nlohmann::json::parse(slurp(dir / "nash.json"));
    CHECK(report["equilibria"].size() == 3);
  }

  SUBCASE("the all-zero game reports degeneracy warnings with exit code 3") {
    const auto dir = scratch_dir("nash_zero");
    {
      std::ofstream out(dir / "zero.json");
      const BimatrixGame zero(Matrix(2, 2, 0.0), Matrix(2, 2, 0.0));
      out << game_to_json(NormalFormGame::from_bimatrix(zero)).dump(2);
    }
    const auto result = run_cli({"nash", "--input", (dir / "zero.json").string(),
                                 "--out-dir", dir.string()});
    CHECK(result.exit_code == cli::kExitNumericalWarning);
    const auto report = nlohmann::json::parse(slurp(dir / "nash.json"));
    CHECK(!report["warnings"].empty());
    for (const auto& eq : report["equilibria"])
      CHECK(eq["exploitability"].get<double>() == 0.0);
  }

  SUBCASE("symmetric mode demands a symmetric game") {
    const auto dir = scratch_dir("nash_sym");
    const auto result = run_cli({"nash", "--input", psro_csv().string(), "--mode",
                                 "symmetric", "--out-dir", dir.string()});
    CHECK(result.exit_code == cli::kExitInputError);
  }

  SUBCASE("parse failures are input errors") {
    const auto dir = scratch_dir("nash_parse");
    std::ofstream(dir / "junk.json") << "{not json";
    const auto result = run_cli({"nash", "--input", (dir / "junk.json").string(),
                                 "--out-dir", dir.string()});
    CHECK(result.exit_code == cli::kExitInputError);
  }
}

TEST_CASE("bounds command") {
  SUBCASE("alphago counts fixture reproduces the 0.78 confidence") {
    const auto dir = scratch_dir("bounds_alphago");
    const auto result = run_cli(
        {"bounds", "--counts",
         (fixtures::default_dir() / "alphago_counts_rp_vp_rv.json").string(),
         "--epsilon", "0.15", "--out-dir", dir.string()});
    CHECK(result.exit_code == 0);
    const auto report = nlohmann::json::parse(slurp(dir / "bounds.json"));
    CHECK(report["batch_confidence"].get<double>() ==
          doctest::Approx(0.783873273278639).epsilon(1e-9));
    CHECK(report["two_epsilon_certificate"].get<double>() == doctest::Approx(0.30));
  }

  SUBCASE("leduc-style shape report") {
    const auto dir = scratch_dir("bounds_leduc");
    const auto result = run_cli(
        {"bounds", "--counts",
         (fixtures::default_dir() / "alphago_counts_rp_vp_rv.json").string(),
         "--epsilon", "0.05", "--delta", "0.05", "--range", "26", "--shape", "3,3",
         "--n", "100", "--out-dir", dir.string()});
    CHECK(result.exit_code == 0);
    const auto report = nlohmann::json::parse(slurp(dir / "bounds.json"));
    CHECK(report["required_samples"].get<long long>() == 886255);
    CHECK(report["uniform_confidence"].get<double>() == 0.0);
    CHECK(report["cells_uniform"].get<long long>() == 18);
  }

  SUBCASE("log ingestion in unordered mode") {
    const auto dir = scratch_dir("bounds_log");
    {
      std::ofstream out(dir / "log.csv");
      out << "player,joint,reward\n";
      for (int i = 0; i < 40; ++i) out << "0,0;1," << (i % 2) << "\n";
      for (int i = 0; i < 40; ++i) out << "1,1;0," << (i % 2) << "\n";
    }
    const auto result = run_cli({"bounds", "--log", (dir / "log.csv").string(),
                                 "--epsilon", "0.2", "--out-dir", dir.string()});
    CHECK(result.exit_code == 0);
    const auto report = nlohmann::json::parse(slurp(dir / "bounds.json"));
    REQUIRE(report["cells"].size() == 1);  // both orderings collapse
    CHECK(report["cells"][0]["n"].get<long long>() == 80);
  }

  SUBCASE("needs exactly one input") {
    const auto dir = scratch_dir("bounds_none");
    const auto result = run_cli({"bounds", "--epsilon", "0.1", "--out-dir", dir.string()});
    CHECK(result.exit_code == cli::kExitInputError);
  }
}

TEST_CASE("blotto command") {
  SUBCASE("frequently played trio reproduces its table end to end") {
    const auto dir = scratch_dir("blotto_trio");
    const auto result =
        run_cli({"blotto", "20,20,20,20,20", "1,32,33,1,33", "10,10,35,35,10",
                 "--out-dir", dir.string()});
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("4598126") != std::string::npos);
    const auto produced = table_from_json(nlohmann::json::parse(slurp(dir / "table.json")));
    const auto expected = fixtures::table("blotto_table7");
    for (std::size_t r = 0; r < produced.num_rows(); ++r)
      for (std::size_t j = 0; j < 3; ++j)
        CHECK(produced.payoffs(r)[j] == doctest::Approx(expected.payoffs(r)[j]));
    CHECK(fs::exists(dir / "payoffs.csv"));
  }

  SUBCASE("single strategy gives the 1x1 self-play matrix") {
    const auto dir = scratch_dir("blotto_single");
    const auto result = run_cli({"blotto", "10,10,10", "--out-dir", dir.string()});
    CHECK(result.exit_code == 0);
    const std::string csv = slurp(dir / "payoffs.csv");
    CHECK(csv.find("0.5") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "table.json"));
  }

  SUBCASE("allocation sum mismatch is an input error") {
    const auto dir = scratch_dir("blotto_bad");
    const auto result =
        run_cli({"blotto", "10,10,10", "20,5,4", "--out-dir", dir.string()});
    CHECK(result.exit_code == cli::kExitInputError);
  }
}

TEST_CASE("repeated runs are byte-identical") {
  auto run_twice = [](const std::string& label, const std::vector<std::string>& args_base) {
    const auto dir_a = scratch_dir(label + "_a");
    const auto dir_b = scratch_dir(label + "_b");
    auto args_a = args_base;
    args_a.insert(args_a.end(), {"--out-dir", dir_a.string()});
    auto args_b = args_base;
    args_b.insert(args_b.end(), {"--out-dir", dir_b.string()});
    REQUIRE(run_cli(args_a).exit_code == 0);
    REQUIRE(run_cli(args_b).exit_code == 0);

    std::vector<fs::path> files_a;
    for (const auto& entry : fs::recursive_directory_iterator(dir_a))
      if (entry.is_regular_file()) files_a.push_back(entry.path());
    CHECK(!files_a.empty());
    for (const auto& file : files_a) {
      const auto rel = fs::relative(file, dir_a);
      CHECK(slurp(file) == slurp(dir_b / rel));
    }
  };

  const auto table_dir = scratch_dir("det_table");
  REQUIRE(run_cli({"build-table", "--input", winrate_csv().string(), "--subset",
                   "a_rvp,a_vp,a_rp", "--out-dir", table_dir.string()})
              .exit_code == 0);

  run_twice("det_traj", {"trajectories", "--input", (table_dir / "table.json").string(),
                         "--horizon", "50"});
  run_twice("det_blotto", {"blotto", "20,20,20,20,20", "1,32,33,1,33", "10,10,35,35,10"});
}
