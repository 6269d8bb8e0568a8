#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "plb/cli.hpp"
#include "plb/errors.hpp"
#include "plb/io.hpp"

using namespace plb;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) { return std::string(PLB_TEST_DATA_DIR) + "/" + name; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("domain specs") {
  CHECK(parse_domain("disc").label == "disc");
  CHECK(std::holds_alternative<PolygonalCurve>(parse_domain("polygon:6").source));
  CHECK(std::holds_alternative<ConformalDomain>(parse_domain("epicycloid:4").source));
  const auto s = std::get<SnowflakeParams>(parse_domain("snowflake:0.3:3:seed=5").source);
  CHECK(s.depth == 3);
  CHECK(s.choices.kind == SnowflakeChoices::Kind::seeded_random);
  CHECK(s.choices.seed == 5);
  CHECK_THROWS_AS(parse_domain("triangle"), ParameterError);
  CHECK_THROWS_AS(parse_domain("polygon:2"), ParameterError);
  CHECK_THROWS_AS(parse_domain("snowflake:0.3:x"), ParameterError);
}

TEST_CASE("ranges") {
  const auto r = parse_range("1:2:0.25");
  REQUIRE(r.size() == 5);
  CHECK(r.back() == 2.0);
  CHECK(parse_range("3").size() == 1);
  CHECK_THROWS_AS(parse_range("2:1:0.1"), ParameterError);
  CHECK_THROWS_AS(parse_range("1:2:0"), ParameterError);
}

TEST_CASE("exit codes") {
  CHECK(run({"--help"}).code == kExitOk);
  CHECK(run({}).code == kExitError);
  CHECK(run({"bound", "--route", "B"}).code == kExitError);
  CHECK(run({"bound", "--route", "X", "--p", "3"}).code == kExitError);
  CHECK(run({"verify", "--domain", "square", "--p", "2", "--route", "SW", "--h", "-1"}).code == kExitError);
  const Run alpha_two = run({"bound", "--route", "B", "--p", "3", "--alpha", "2", "--area", "1", "--phi-norm", "1"});
  CHECK(alpha_two.code == kExitError);
  const Run ok = run({"bound", "--route", "corollary", "--p", "3", "--domain", "epicycloid:3"});
  CHECK(ok.code == kExitOk);
  CHECK(Json::parse(ok.out)["feasible"] == true);
}

TEST_CASE("infeasibility exits with code 2 and names the constraint") {
  const Run r = run({"bound", "--route", "C", "--p", "3", "--C", "1e40", "--area", "1"});
  CHECK(r.code == kExitInfeasible);
  const Json j = Json::parse(r.out);
  CHECK(j["feasible"] == false);
  CHECK(j["route"] == "theorem_C");
  CHECK(j["infeasible_constraint"] == "K < inf");
  CHECK(r.err.find("K < inf") != std::string::npos);
  const Run k_one = run({"bound", "--route", "A", "--p", "3", "--K", "1"});
  CHECK(k_one.code == kExitInfeasible);
  CHECK(Json::parse(k_one.out)["route"] == "theorem_A");
  CHECK(Json::parse(k_one.out)["infeasible_constraint"] == "K > 1");
}

TEST_CASE("sweep rows equal single bound evaluations") {
  const Run sweep = run({"sweep", "--route", "A", "--p", "3", "--K", "1.05:3:0.05"});
  REQUIRE(sweep.code == kExitOk);
  std::istringstream lines(sweep.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "K,log10_M_p");
  int rows = 0;
  while (std::getline(lines, line)) {
    const auto comma = line.find(',');
    const std::string k = line.substr(0, comma);
    const Run single = run({"bound", "--route", "A", "--p", "3", "--K", k, "--area", "1"});
    REQUIRE(single.code == kExitOk);
    CHECK(format_real(Json::parse(single.out)["M_p"]["log10"].get<double>()) == line.substr(comma + 1));
    ++rows;
  }
  CHECK(rows == 40);
}

TEST_CASE("log-only output drops linear values") {
  const Run r = run({"bound", "--route", "corollary", "--p", "3", "--area", "2", "--phi-norm", "1", "--log-only"});
  REQUIRE(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK_FALSE(j["mu_lower"].contains("value"));
  CHECK(j["mu_lower"].contains("ln"));
}

TEST_CASE("config file mirrors flags and output goes to a file") {
  const std::string cfg = temp_path("bound.cfg");
  const std::string out = temp_path("bound.json");
  {
    std::ofstream f(cfg);
    f << "[bound]\nroute=corollary\np=3\narea=2\nphi-norm=1\n";
  }
  const Run r = run({"--config", cfg, "--output", out, "bound"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.empty());
  std::ifstream f(out);
  const Json j = Json::parse(f);
  const Run direct = run({"bound", "--route", "corollary", "--p", "3", "--area", "2", "--phi-norm", "1"});
  CHECK(j == Json::parse(direct.out));
  std::remove(cfg.c_str());
  std::remove(out.c_str());
}

TEST_CASE("domain export and seeded verification are deterministic") {
  const Run csv = run({"domain", "--domain", "snowflake:0.3:2", "--format", "csv"});
  CHECK(csv.code == kExitOk);
  CHECK(csv.out.rfind("x,y\n", 0) == 0);
  const std::string off = temp_path("mesh.off");
  CHECK(run({"domain", "--domain", "square", "--mesh-h", "0.2", "--off", off}).code == kExitOk);
  CHECK(run({"domain", "--domain", "square", "--mesh-h", "0.2"}).code == kExitError);
  std::remove(off.c_str());
  const std::vector<std::string> args{"verify", "--domain", "polygon:12", "--p", "3", "--route", "SW",
                                      "--h", "0.2", "--seed", "4"};
  CHECK(run(args).code == kExitError);  // SW needs p = 2
  const std::vector<std::string> args2{"verify", "--domain", "epicycloid:4", "--p", "3", "--route", "corollary",
                                       "--h", "0.2", "--seed", "4"};
  const Run c = run(args2);
  const Run d = run(args2);
  CHECK(c.code == kExitOk);
  CHECK(c.out == d.out);
  CHECK(Json::parse(c.out)["pass"] == true);
}

TEST_CASE("curve-metrics reads a vertex CSV and domain writes SVG") {
  const std::string csv = temp_path("flake.csv");
  const std::string svg = temp_path("flake.svg");
  CHECK(run({"-o", csv, "domain", "--domain", "snowflake:0.3:2", "--svg", svg}).code == kExitOk);
  const Run from_file = run({"curve-metrics", "--in", csv});
  const Run direct = run({"curve-metrics", "--domain", "snowflake:0.3:2"});
  CHECK(from_file.code == kExitOk);
  CHECK(Json::parse(from_file.out)["bounded_turning_C"] == Json::parse(direct.out)["bounded_turning_C"]);
  std::ifstream f(svg);
  const std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  CHECK(text.rfind("<svg", 0) == 0);
  CHECK(run({"curve-metrics"}).code == kExitError);
  CHECK(run({"curve-metrics", "--in", csv, "--domain", "disc"}).code == kExitError);
  std::remove(csv.c_str());
  std::remove(svg.c_str());
}

}
