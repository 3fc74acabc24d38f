#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "vircoh/json_io.hpp"

using vircoh::json;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "vircoh");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = vircoh::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) { return std::string(VIRCOH_TEST_TMP_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST(Cli, SymprodReportsDimensions) {
  const Result r = run({"symprod", "--manifold", "cp:1", "--n", "2", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto pos = r.out.find('{');
  const json j = json::parse(r.out.substr(pos));
  EXPECT_EQ(j["total_dim"], 6);
  EXPECT_EQ(j["invariant_dim"], 5);
}

TEST(Cli, SymprodSingleFactorIsTheRing) {
  const Result r = run({"symprod", "--manifold", "cp:1", "--n", "1", "--out", tmp("n1.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(slurp(tmp("n1.json")));
  EXPECT_EQ(j["total_dim"], 2);
  EXPECT_EQ(j["group"]["n"], 1);
}

TEST(Cli, SymprodShowsEulerCoefficient) {
  const Result r = run({"symprod", "--manifold", "cp:2", "--n", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("3*x1^2*x2^2"), std::string::npos) << r.out;
}

TEST(Cli, SymprodChecksPass) {
  const Result r = run({"symprod", "--manifold", "sphere:2", "--n", "3", "--check", "all"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
}

TEST(Cli, InertiaSymprodAllChecks) {
  EXPECT_EQ(run({"inertia", "--fixture", "symprod2", "--manifold", "cp:1", "--check", "all"}).code, 0);
}

TEST(Cli, InertiaNonInjectiveIsReportedNotFailed) {
  const Result r = run({"inertia", "--fixture", "cpn-zp", "--n", "3", "--p", "5", "--points", "--check",
                        "homomorphism,injectivity", "--json"});
  EXPECT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out.substr(r.out.find("\n{") + 1));
  EXPECT_EQ(j["checks"][0]["pass"], true);
  EXPECT_EQ(j["checks"][1]["injective"], false);
  EXPECT_EQ(j["checks"][1]["sectors"][1]["kernel_dim"], 1);
  const Result strict = run({"inertia", "--fixture", "cpn-zp", "--n", "3", "--p", "5", "--points", "--check",
                             "homomorphism,injectivity", "--strict"});
  EXPECT_EQ(strict.code, 1);
}

TEST(Cli, CorruptedFixtureFails) {
  const Result r = run({"inertia", "--fixture", "symprod2-corrupted", "--manifold", "cp:1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("(1@Delta, 1@Delta)"), std::string::npos);
}

TEST(Cli, GroupRingModeLabelsImageOnly) {
  const Result r = run({"inertia", "--fixture", "cpn-zp", "--n", "2", "--p", "3", "--points", "--mode", "group-ring"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("image only"), std::string::npos);
}

TEST(Cli, VerifyBundled) {
  EXPECT_EQ(run({"verify", "--bundled", "cp1-squared"}).code, 0);
  EXPECT_EQ(run({"verify", "--bundled", "cp1-squared-invariants"}).code, 0);
  EXPECT_EQ(run({"verify", "--presentation", std::string(VIRCOH_TEST_DATA_DIR) + "/presentations/cp1_squared.json"}).code, 0);
}

TEST(Cli, VerifyMutatedRelationFails) {
  json doc = json::parse(slurp(std::string(VIRCOH_TEST_DATA_DIR) + "/presentations/cp1_squared_invariants.json"));
  doc["relations"][2] = "u^2 - 2*w^2";
  write(tmp("mutated.json"), doc.dump(2));
  const Result r = run({"verify", "--presentation", tmp("mutated.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("u^2 - 2*w^2"), std::string::npos);
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, ScenarioRoundTrip) {
  ASSERT_EQ(run({"fixtures", "--fixture", "cpn-zp", "--n", "2", "--p", "3", "--points", "--out", tmp("cpn.json")}).code, 0);
  const Result from_file = run({"inertia", "--scenario", tmp("cpn.json"), "--check", "all"});
  const Result from_fixture = run({"inertia", "--fixture", "cpn-zp", "--n", "2", "--p", "3", "--points", "--check", "all"});
  EXPECT_EQ(from_file.code, 0) << from_file.err;
  // identical apart from the scenario name line
  EXPECT_EQ(from_file.out.substr(from_file.out.find('\n')), from_fixture.out.substr(from_fixture.out.find('\n')));

  ASSERT_EQ(run({"inertia", "--fixture", "symprod2-corrupted", "--emit-scenario", tmp("bad.json")}).code, 1);
  EXPECT_EQ(run({"inertia", "--scenario", tmp("bad.json")}).code, 1);
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args{"symprod", "--manifold", "cp:1", "--n", "3", "--check", "all", "--json"};
  EXPECT_EQ(run(args).out, run(args).out);
  const std::vector<std::string> in{"inertia", "--fixture", "cpn-zp", "--n", "3", "--p", "5", "--points", "--check", "all", "--json"};
  EXPECT_EQ(run(in).out, run(in).out);
}

TEST(Cli, MalformedScenarioIsAnInputError) {
  write(tmp("broken.json"), "{\n  \"group\": {\"kind\": \"cyclic\", \"p\": 3},\n  \"ambient\": \n");
  const Result r = run({"inertia", "--scenario", tmp("broken.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("broken.json:4:"), std::string::npos) << r.err;

  write(tmp("schema.json"), R"({"group": {"kind": "cyclic", "p": 3}, "ambient": {"kind": "cp", "m": "two"}, "components": []})");
  const Result s = run({"inertia", "--scenario", tmp("schema.json")});
  EXPECT_EQ(s.code, 2);
  EXPECT_NE(s.err.find("/ambient/m"), std::string::npos) << s.err;
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"symprod", "--manifold", "torus"}).code, 2);
  EXPECT_EQ(run({"symprod", "--n", "0"}).code, 2);
  EXPECT_EQ(run({"symprod", "--check", "nonsense"}).code, 2);
  EXPECT_EQ(run({"inertia"}).code, 2);
  EXPECT_EQ(run({"inertia", "--fixture", "nope"}).code, 2);
  EXPECT_EQ(run({"verify"}).code, 2);
  EXPECT_EQ(run({"verify", "--bundled", "nope"}).code, 2);
  EXPECT_EQ(run({"symprod", "--manifold", "cp:1", "--n", "7"}).code, 2);  // group too large
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, DimensionCapFromEnvironment) {
  ::setenv("VIRCOH_MAX_DIM", "8", 1);
  const Result big = run({"symprod", "--manifold", "cp:1", "--n", "4"});
  const Result ok = run({"symprod", "--manifold", "cp:1", "--n", "3"});
  ::setenv("VIRCOH_MAX_DIM", "zero", 1);
  const Result bad = run({"symprod", "--manifold", "cp:1", "--n", "2"});
  ::unsetenv("VIRCOH_MAX_DIM");
  EXPECT_EQ(big.code, 2);
  EXPECT_NE(big.err.find("VIRCOH_MAX_DIM"), std::string::npos);
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(bad.code, 2);
}

TEST(Cli, FixtureList) {
  const Result r = run({"fixtures", "--list"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("cpn-zp"), std::string::npos);
}

TEST(Cli, ExitCodeMapping) {
  using vircoh::ErrorCode;
  EXPECT_EQ(vircoh::cli::exit_code_for(ErrorCode::NotGStable), 1);
  EXPECT_EQ(vircoh::cli::exit_code_for(ErrorCode::ProductEscapesSubspace), 1);
  EXPECT_EQ(vircoh::cli::exit_code_for(ErrorCode::InvalidInput), 2);
  EXPECT_EQ(vircoh::cli::exit_code_for(ErrorCode::TooLarge), 2);
}
