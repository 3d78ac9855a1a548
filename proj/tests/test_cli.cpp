#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "corruptlab/error.hpp"

using corruptlab::cli::parse_grid;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "corruptlab-cli");
  std::ostringstream out, err;
  const int code = corruptlab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string example(const std::string& name) { return std::string(CORRUPTLAB_EXAMPLES_DIR) + "/" + name; }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "corruptlab_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch(name);
  std::ofstream(p) << text;
  return p.string();
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("parse_grid") {
  CHECK(parse_grid("0:0.45:0.05").size() == 10);
  CHECK(parse_grid("0:0.45:0.05").back() == doctest::Approx(0.45));
  CHECK(parse_grid("0.1:0.3:0.1") == std::vector<double>{0.1, 0.2, 0.3});
  CHECK(parse_grid("1:1:0.5") == std::vector<double>{1.0});
  CHECK_THROWS_AS(parse_grid("0:1"), corruptlab::Error);
  CHECK_THROWS_AS(parse_grid("0:1:0"), corruptlab::Error);
  CHECK_THROWS_AS(parse_grid("1:0:0.1"), corruptlab::Error);
  CHECK_THROWS_AS(parse_grid("a:b:c"), corruptlab::Error);
}

TEST_CASE("analyze") {
  const Result id = run({"analyze", "--kernel", example("identity_kernel.json")});
  REQUIRE(id.code == 0);
  const json j = json::parse(id.out);
  CHECK(j["alpha"] == 1.0);
  CHECK(j["row_norm"] == 1.0);

  const Result noisy = run({"analyze", "--kernel", example("binary_noise_kernel.json"), "--loss",
                            example("zero_one_loss.json")});
  REQUIRE(noisy.code == 0);
  const json k = json::parse(noisy.out);
  CHECK(k["alpha"].get<double>() == doctest::Approx(0.7));
  CHECK(k["corrected_sup"].get<double>() == doctest::Approx(0.9 / 0.7));

  const fs::path exported = scratch("reconstruction.json");
  const Result ex = run({"analyze", "--kernel", example("binary_noise_kernel.json"), "--export-reconstruction",
                         exported.string()});
  REQUIRE(ex.code == 0);
  const json r = json::parse(read_file(exported));
  CHECK(r["matrix"][0][0].get<double>() == doctest::Approx(0.8 / 0.7));
  CHECK(r["residual"].get<double>() <= 1e-9);

  const std::string flat = write_file("flat.json", R"({"from":["a","b"],"to":["x","y"],"matrix":[[0.5,0.5],[0.5,0.5]]})");
  const Result singular = run({"analyze", "--kernel", flat});
  CHECK(singular.code == 0);
  CHECK(json::parse(singular.out)["reconstructible"] == false);
}

TEST_CASE("input errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"analyze"}).code == 2);
  CHECK(run({"analyze", "--kernel", "/nonexistent/kernel.json"}).code == 2);
  CHECK(run({"analyze", "--kernel", write_file("bad.json", "{not json")}).code == 2);
  const std::string not_stochastic =
      write_file("ns.json", R"({"from":["a","b"],"to":["x","y"],"matrix":[[0.5,0.5],[0.6,0.5]]})");
  const Result ns = run({"analyze", "--kernel", not_stochastic});
  CHECK(ns.code == 2);
  CHECK(ns.err.find("NotStochastic") != std::string::npos);
  CHECK(run({"tables", "--family", "gaussian", "--grid", "0:0.1:0.05"}).code == 2);
  CHECK(run({"tables", "--family", "binary-noise", "--grid", "0:0.1"}).code == 2);
  CHECK(run({"tables", "--family", "binary-noise", "--grid", "0:1.5:0.5"}).code == 2);
}

TEST_CASE("tables") {
  const Result r = run({"tables", "--family", "symmetric-noise", "--grid", "0:0.45:0.05", "--classes", "3"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header ==
        "param,alpha_closed,alpha_numeric,row_norm_closed,row_norm_numeric,corrected01_closed,corrected01_numeric,"
        "max_abs_diff,note");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  CHECK(rows == 10);
  CHECK(run({"tables", "--family", "symmetric-noise", "--grid", "0:0.45:0.05", "--classes", "3"}).out == r.out);

  const Result flagged = run({"tables", "--family", "binary-noise", "--grid", "0.4:0.5:0.1"});
  REQUIRE(flagged.code == 0);
  CHECK(flagged.out.find("not reconstructible") != std::string::npos);
}

TEST_CASE("plan") {
  const Result r = run({"plan", "--offers", example("offers.json"), "--budget", "10"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["greedy"]["counts"]["B"] == 10);
  CHECK(j["exact"]["objective"].get<double>() == doctest::Approx(5.0));
  CHECK(j["rank_lower"] == json::array({"B", "A"}));
  CHECK(j["rank_upper"] == json::array({"B", "A"}));

  const std::string tiny = write_file(
      "tiny.json", R"([{"name":"A","alpha":0.5,"cost":{"num":1,"den":1000}}])");
  const Result guarded = run({"plan", "--offers", tiny, "--budget", "100000"});
  CHECK(guarded.code == 3);
  CHECK(guarded.err.find("CapacityGuardExceeded") != std::string::npos);
  const Result no_sup = run({"plan", "--offers", tiny, "--budget", "1/100"});
  REQUIRE(no_sup.code == 0);
  CHECK(json::parse(no_sup.out)["rank_upper"].is_null());
  CHECK(run({"plan", "--offers", tiny, "--budget", "abc"}).code == 2);
}

TEST_CASE("lecam") {
  const Result clean = run({"lecam", "--problem", example("coin_problem.json"), "--theta1", "0.4", "--theta2", "0.6"});
  REQUIRE(clean.code == 0);
  CHECK(json::parse(clean.out)["bound"].get<double>() == doctest::Approx(0.04));

  const Result noisy = run({"lecam", "--problem", example("coin_problem.json"), "--theta1", "0.4", "--theta2", "0.6",
                            "--n", "5", "--kernel", example("coin_noise_kernel.json")});
  REQUIRE(noisy.code == 0);
  const json j = json::parse(noisy.out);
  CHECK(j["bound"].get<double>() == doctest::Approx(0.025));
  CHECK(j["effective_n"].get<double>() == doctest::Approx(2.5));

  const Result mixed = run({"lecam", "--problem", example("coin_problem.json"), "--theta1", "0.4", "--theta2", "0.6",
                            "--mix", example("coin_mix.json")});
  REQUIRE(mixed.code == 0);
  CHECK(json::parse(mixed.out)["effective_n"].get<double>() == doctest::Approx(10.0));

  CHECK(run({"lecam", "--problem", example("coin_problem.json"), "--theta1", "0.3", "--theta2", "0.6"}).code == 2);
  CHECK(run({"lecam", "--problem", example("coin_problem.json"), "--theta1", "0.4", "--theta2", "0.6", "--kernel",
             example("binary_noise_kernel.json")})
            .code == 2);
}

TEST_CASE("simulate is byte-stable") {
  const fs::path a = scratch("risk_a.csv"), b = scratch("risk_b.csv");
  const Result ra = run({"simulate", "--config", example("risk_config.json"), "--out", a.string()});
  const Result rb = run({"simulate", "--config", example("risk_config.json"), "--out", b.string()});
  REQUIRE(ra.code == 0);
  REQUIRE(rb.code == 0);
  CHECK(ra.out == rb.out);
  CHECK(read_file(a) == read_file(b));
  CHECK(read_file(a).rfind("n,mean_excess_risk,std_error,envelope\n", 0) == 0);

  CHECK(run({"simulate", "--config", example("risk_config.json"), "--out", a.string(), "--mode", "fast-rate"}).code ==
        2);
  CHECK(run({"simulate", "--config", example("risk_config.json"), "--out", a.string(), "--mode", "bogus"}).code == 2);
}
