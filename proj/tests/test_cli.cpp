#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "circot/oracle.hpp"
#include "commands.hpp"
#include "support.hpp"

using namespace circot;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string text;
  nlohmann::json json;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out;
  const int code = cli::run(args, out);
  Outcome o{code, out.str(), {}};
  try {
    o.json = nlohmann::json::parse(o.text);
  } catch (const nlohmann::json::exception&) {
  }
  return o;
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("circot_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  std::string write(const std::string& name, const std::string& body) const {
    const auto p = path_ / name;
    std::ofstream(p) << body;
    return p.string();
  }

 private:
  fs::path path_;
};

const TempDir& dir() {
  static TempDir d;
  return d;
}

std::string atom_json(double x) {
  return R"({"points": [{"x": )" + std::to_string(x) + R"(, "m": 1}]})";
}

}  // namespace

TEST_CASE("distance between antipodal atoms") {
  const auto a = dir().write("a.json", atom_json(0.25));
  const auto b = dir().write("b.json", atom_json(0.75));
  const auto o = run_cli({"distance", a, b, "--lambda", "1"});
  REQUIRE(o.code == 0);
  CHECK(std::abs(o.json["cost"].get<double>() - 0.5) <= 1e-12);
  CHECK(std::abs(o.json["mk_distance"].get<double>() - 0.5) <= 1e-12);
  for (const char* key : {"theta_star", "exact", "iterations", "epsilon_used", "cost_evaluations",
                          "wall_time_ms"}) {
    CHECK(o.json.contains(key));
  }
  CHECK_FALSE(o.json.contains("trace"));

  const auto verbose = run_cli({"distance", a, b, "--verbose", "--deterministic"});
  REQUIRE(verbose.code == 0);
  CHECK(verbose.json["trace"].size() == verbose.json["iterations"].get<std::size_t>());
  CHECK_FALSE(verbose.json.contains("wall_time_ms"));
  CHECK(std::abs(verbose.json["mk_distance"].get<double>() - 0.5) <= 1e-12);
}

TEST_CASE("distance between identical files") {
  const auto a = dir().write("same.json", R"({"points": [{"x": 0.3, "m": 0.25}, {"x": 0.6, "m": 0.75}]})");
  const auto o = run_cli({"distance", a, a});
  REQUIRE(o.code == 0);
  CHECK(o.json["cost"].get<double>() == 0.0);
  CHECK(o.json["exact"].get<bool>());
}

TEST_CASE("plan output") {
  SUBCASE("identity") {
    const auto a = dir().write("half.json", atom_json(0.5));
    const auto o = run_cli({"plan", a, a});
    REQUIRE(o.code == 0);
    REQUIRE(o.json["assignments"].size() == 1);
    CHECK(o.json["assignments"][0]["mass"].get<double>() == 1.0);
    CHECK(o.json["total_cost"].get<double>() == 0.0);
  }
  SUBCASE("two atoms with a denominator") {
    const auto a = dir().write("two0.csv", "x,m\n0.75,0.5\n0.25,0.5\n");
    const auto b = dir().write("two1.csv", "x,m\n0.5,0.5\n1.0,0.5\n");
    const auto o = run_cli({"plan", a, b, "--lambda", "1", "--denominator", "2"});
    REQUIRE(o.code == 0);
    CHECK(std::abs(o.json["cost"].get<double>() - 0.25) <= 1e-12);
    CHECK(std::abs(o.json["total_cost"].get<double>() - 0.25) <= 1e-12);
    CHECK(o.json["denominator"].get<int>() == 2);
    const auto& rows = o.json["assignments"];
    REQUIRE(rows.size() >= 2);
    for (std::size_t k = 1; k < rows.size(); ++k) {
      CHECK(rows[k]["source_position"].get<double>() >= rows[k - 1]["source_position"].get<double>());
    }
  }
}

TEST_CASE("curve sampling") {
  const auto a = dir().write("c0.json", atom_json(0.5));
  const auto b = dir().write("c1.json", atom_json(1.0));
  const auto o = run_cli({"curve", a, b, "--range", "0:1", "--samples", "101"});
  REQUIRE(o.code == 0);
  REQUIRE(o.json["curve"].size() == 101);
  for (const auto& row : o.json["curve"]) {
    const double t = row["theta"].get<double>();
    CHECK(std::abs(row["cost"].get<double>() - (0.25 + 2 * t)) <= 1e-12);
  }
  const auto& bps = o.json["breakpoints"];
  REQUIRE(bps.size() == 2);
  CHECK(bps[0].get<double>() == 0.0);
  CHECK(bps[1].get<double>() == 1.0);

  const auto same = run_cli({"curve", a, a, "--samples", "13", "--lambda", "1.5"});
  REQUIRE(same.code == 0);
  double best = INFINITY;
  double at = NAN;
  for (const auto& row : same.json["curve"]) {
    if (row["cost"].get<double>() < best) {
      best = row["cost"].get<double>();
      at = row["theta"].get<double>();
    }
  }
  CHECK(best == 0.0);
  CHECK(at == 0.0);

  CHECK(run_cli({"curve", a, b, "--samples", "1"}).code == 1);
  CHECK(run_cli({"curve", a, b, "--range", "1:0"}).code == 1);
}

TEST_CASE("curve breakpoints match the oracle candidates") {
  testing::Rng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const auto h0 = testing::random_float_histogram(rng, 1 + rng() % 5);
    const auto h1 = testing::random_float_histogram(rng, 1 + rng() % 5);
    const auto to_json = [](const CircularHistogram& h) {
      nlohmann::json j;
      for (std::size_t i = 0; i < h.size(); ++i) {
        j["points"].push_back({{"x", h.positions()[i]}, {"m", h.masses()[i]}});
      }
      return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::strict);
    };
    const auto a = dir().write("r0.json", cli::dump_json(nlohmann::ordered_json::parse(to_json(h0))));
    const auto b = dir().write("r1.json", cli::dump_json(nlohmann::ordered_json::parse(to_json(h1))));
    const auto o = run_cli({"curve", a, b, "--range", "-1.5:2", "--samples", "3"});
    REQUIRE(o.code == 0);
    const auto expected = oracle::candidate_shifts(cli::read_histogram(a), cli::read_histogram(b),
                                                   -1.5, 2.0);
    REQUIRE(o.json["breakpoints"].size() == expected.size());
    for (std::size_t k = 0; k < expected.size(); ++k) {
      CHECK(o.json["breakpoints"][k].get<double>() == expected[k]);
    }
  }
}

TEST_CASE("check runs both oracles") {
  const auto a = dir().write("k0.json",
                             R"({"points": [{"x": 0.25, "m": 0.5}, {"x": 0.75, "m": 0.5}], "denominator": 2})");
  const auto b = dir().write("k1.json",
                             R"({"points": [{"x": 0.5, "m": 0.5}, {"x": 1.0, "m": 0.5}], "denominator": 2})");
  const auto o = run_cli({"check", a, b, "--lambda", "1"});
  REQUIRE(o.code == 0);
  CHECK(o.json["agree"].get<bool>());
  CHECK(std::abs(o.json["oracle_breakpoints"]["cost"].get<double>() - 0.25) <= 1e-12);
  CHECK(std::abs(o.json["oracle_rotations"]["cost"].get<double>() - 0.25) <= 1e-12);
  CHECK(std::abs(o.json["cost"].get<double>() - 0.25) <= 1e-12);

  const auto x = dir().write("k2.json", atom_json(0.5));
  const auto same = run_cli({"check", x, x, "--denominator", "1"});
  REQUIRE(same.code == 0);
  CHECK(same.json["oracle_breakpoints"]["cost"].get<double>() == 0.0);

  const auto y = dir().write("k3.json", atom_json(1.0));
  const auto floats = run_cli({"check", x, y});
  REQUIRE(floats.code == 0);
  CHECK(floats.json["oracle_rotations"].is_null());
  CHECK(std::abs(floats.json["oracle_breakpoints"]["cost"].get<double>() - 0.25) <= 1e-12);

  std::string big = "x,m\n";
  char line[64];
  for (int i = 1; i <= 101; ++i) {
    std::snprintf(line, sizeof line, "%.17g,%.17g\n", i / 101.0, 1.0 / 101.0);
    big += line;
  }
  const auto huge = dir().write("big.csv", big);
  const auto refused = run_cli({"check", huge, huge, "--denominator", "101"});
  CHECK(refused.code == 1);
  CHECK(refused.json["error"] == "TooLarge");
}

TEST_CASE("histogram files") {
  const auto csv = dir().write("h.csv", "# comment\nx,m\n0.2, 0.25\n0.7,0.75\n\n");
  const auto json = dir().write(
      "h.json", R"({"points": [{"x": 0.7, "m": 0.75}, {"x": 0.2, "m": 0.25}]})");
  const auto from_csv = cli::read_histogram(csv);
  const auto from_json = cli::read_histogram(json);
  REQUIRE(from_csv.size() == 2);
  CHECK(from_csv.positions()[0] == from_json.positions()[0]);
  CHECK(from_csv.masses()[1] == from_json.masses()[1]);

  const auto other = dir().write("o.csv", "0.5,0.5\n0.9,0.5\n");
  const auto r1 = run_cli({"distance", csv, other, "--deterministic"});
  const auto r2 = run_cli({"distance", json, other, "--deterministic"});
  REQUIRE(r1.code == 0);
  CHECK(r1.text == r2.text);

  SUBCASE("denominators") {
    CHECK(*cli::read_histogram(csv, 4).denominator() == 4);
    const auto declared = dir().write(
        "d.json", R"({"points": [{"x": 0.5, "m": 0.5}, {"x": 0.1, "m": 0.5}], "denominator": 2})");
    CHECK(*cli::read_histogram(declared, 4).denominator() == 2);
    CHECK_FALSE(cli::read_histogram(csv).denominator());
  }
  SUBCASE("semicolons and tabs") {
    CHECK(cli::parse_histogram("0.1;0.5\n0.2\t0.5\n").size() == 2);
  }
}

TEST_CASE("errors are reported as JSON") {
  const auto good = dir().write("g.json", atom_json(0.5));
  const auto missing = run_cli({"distance", "/nonexistent/file.json", good});
  CHECK(missing.code == 1);
  CHECK(missing.json["error"] == "ParseError");
  CHECK(missing.json.contains("detail"));

  const auto bad_mass = dir().write("bad.csv", "0.1,0.4\n0.3,0.4\n");
  const auto mass = run_cli({"distance", bad_mass, good});
  CHECK(mass.code == 1);
  CHECK(mass.json["error"] == "MassSumMismatch");

  const auto negative = dir().write("neg.csv", "0.1,1.5\n0.3,-0.5\n");
  CHECK(run_cli({"distance", negative, good}).json["error"] == "NonPositiveMass");

  const auto garbage = dir().write("garbage.json", "{\"points\": [1, 2]}");
  CHECK(run_cli({"distance", garbage, good}).json["error"] == "ParseError");
  const auto not_number = dir().write("nn.csv", "x,m\n0.1,abc\n");
  CHECK(run_cli({"distance", not_number, good}).json["error"] == "ParseError");

  const auto eps = run_cli({"distance", good, good, "--epsilon", "0"});
  CHECK(eps.code == 2);
  CHECK(eps.json["error"] == "InvalidEpsilon");

  const auto lambda = run_cli({"distance", good, good, "--lambda", "0.5"});
  CHECK(lambda.code == 1);
  CHECK(lambda.json["error"] == "InvalidArgument");

  CHECK(run_cli({"frobnicate"}).code == 1);
  CHECK(run_cli({}).code == 1);
  CHECK(run_cli({"distance", good}).code == 1);
}

TEST_CASE("bench output") {
  const std::vector<std::string> args{"bench", "--sizes", "4,8,16", "--epsilons", "1e-4,1e-8",
                                      "--repeats", "1", "--seed", "5", "--deterministic"};
  const auto first = run_cli(args);
  const auto second = run_cli(args);
  REQUIRE(first.code == 0);
  CHECK(first.text == second.text);
  REQUIRE(first.json["rows"].size() == 6);
  CHECK(first.json["rows"][0]["n"] == 4);
  CHECK(first.json["rows"][0]["n0"] == 2);
  CHECK_FALSE(first.json["rows"][0].contains("mean_time_ms"));
  CHECK_FALSE(first.json.contains("fits"));

  const auto timed = run_cli({"bench", "--sizes", "4,8,16", "--epsilons", "1e-2,1e-4,1e-8",
                              "--repeats", "2"});
  REQUIRE(timed.code == 0);
  CHECK(timed.json["rows"][0].contains("mean_time_ms"));
  CHECK(timed.json["fits"].size() == 6);

  const auto other_seed = run_cli({"bench", "--sizes", "4,8,16", "--epsilons", "1e-4,1e-8",
                                   "--repeats", "1", "--seed", "6", "--deterministic"});
  CHECK(other_seed.text != first.text);

  ::setenv("CIRC_OT_SEED", "5", 1);
  const auto from_env = run_cli({"bench", "--sizes", "4,8,16", "--epsilons", "1e-4,1e-8",
                                 "--repeats", "1", "--deterministic"});
  ::unsetenv("CIRC_OT_SEED");
  CHECK(from_env.text == first.text);

  CHECK(run_cli({"bench", "--sizes", "1"}).code == 1);
  CHECK(run_cli({"bench", "--repeats", "0"}).code == 1);
}

TEST_CASE("numbers are written with 17 significant digits") {
  nlohmann::ordered_json j;
  j["a"] = 0.1;
  j["b"] = 1.0;
  j["c"] = 7;
  j["d"] = {1e-300, 2.5};
  const auto text = cli::dump_json(j, 0);
  CHECK(text == R"({"a":0.10000000000000001,"b":1.0,"c":7,"d":[1e-300,2.5]})");
  const auto back = nlohmann::json::parse(text);
  CHECK(back["a"].get<double>() == 0.1);
  CHECK(back["d"][0].get<double>() == 1e-300);
}

TEST_CASE("fit helper") {
  const auto f = cli::fit_line({1, 2, 3, 4}, {3, 5, 7, 9});
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r_squared == doctest::Approx(1.0));
  CHECK(cli::fit_line({1, 2, 3}, {1, 3, 2}).r_squared == doctest::Approx(0.25));
}

TEST_CASE("executable exit codes") {
  const auto a = dir().write("e0.json", atom_json(0.25));
  const std::string exe = CIRCOT_CLI_PATH;
  const auto status = [&](const std::string& args) {
    const int raw = std::system((exe + " " + args + " > /dev/null").c_str());
    return WEXITSTATUS(raw);
  };
  CHECK(status("distance " + a + " " + a) == 0);
  CHECK(status("distance " + a + " /nonexistent.json") == 1);
  CHECK(status("distance " + a + " " + a + " --epsilon -1") == 2);
  CHECK(status("--help") == 0);
}
