#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "diagcat/cli.hpp"

using namespace diagcat;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = run(std::move(args), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// Splits a replay command line, honouring single quotes and the '\'' escape.
std::vector<std::string> shell_split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false, have = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '\'') quoted = false;
      else cur += c;
    } else if (c == '\'') {
      quoted = have = true;
    } else if (c == '\\' && i + 1 < line.size()) {
      cur += line[++i];
      have = true;
    } else if (c == ' ') {
      if (have) out.push_back(cur);
      cur.clear();
      have = false;
    } else {
      cur += c;
      have = true;
    }
  }
  if (have) out.push_back(cur);
  return out;
}

Json without_timing(const std::string& line) {
  Json j = Json::parse(line);
  j.erase("elapsed_ms");
  return j;
}

}  // namespace

TEST(Cli, ComposeExample) {
  auto r = run_cli({"compose", "--t", "5", "1", "1'"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "5 * <empty>\n");
  EXPECT_EQ(run_cli({"compose", "1", "1'"}).out, "t * <empty>\n");
}

TEST(Cli, TensorAndMoebius) {
  EXPECT_EQ(run_cli({"tensor", "1 1'", "1 1'"}).out, "1 * 1 1' | 2 2'\n");
  EXPECT_EQ(run_cli({"moebius", "1 1' | 2 2'"}).out, "-1 * 1 2 1' 2' + 1 * 1 1' | 2 2'\n");
  EXPECT_EQ(run_cli({"moebius", "--prime", "1 | 2"}).out, "1 * 1 | 2 - 1 * 1 2\n");
}

TEST(Cli, HomBasisJson) {
  auto r = run_cli({"hom-basis", "--m", "1", "--n", "1", "--json"});
  ASSERT_EQ(r.code, 0);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["dimension"], 2);
  EXPECT_EQ(j["basis"][0], "1 | 1'");
  EXPECT_EQ(j["basis"][1], "1 1'");
  EXPECT_EQ(run_cli({"hom-basis", "--m", "3", "--n", "0", "--class", "H"}).out, "");
}

TEST(Cli, ExitCodes) {
  auto pass = run_cli({"check", "representable-sprime", "--m-max", "3", "--t", "generic", "--json"});
  EXPECT_EQ(pass.code, 0);
  auto j = Json::parse(pass.out);
  EXPECT_EQ(j["status"], "pass-up-to-bound");
  EXPECT_TRUE(j["witness"].is_null());

  auto zero = run_cli({"check", "representable-sprime", "--t", "0"});
  EXPECT_EQ(zero.code, 2);
  EXPECT_NE(zero.err.find("requires t ≠ 0"), std::string::npos);

  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"check", "diag", "--bogus"}).code, 2);
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"compose", "1 1", "1'"}).code, 2);
  EXPECT_EQ(run_cli({"check", "diag", "--class", "Nope"}).code, 2);
  EXPECT_EQ(run_cli({"--help"}).code, 0);

  auto fail = run_cli({"check", "representable-h", "--i", "0", "--m-max", "2"});
  EXPECT_EQ(fail.code, 1);
  EXPECT_NE(fail.out.find("representable-h: fail"), std::string::npos);
}

TEST(Cli, JsonSchema) {
  auto r = run_cli({"check", "diag", "--class", "*", "--max-points", "3", "--json"});
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    auto j = Json::parse(line);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"check", "params", "status", "witness", "elapsed_ms"}));
    EXPECT_TRUE(j["params"].is_object());
    EXPECT_TRUE(j["elapsed_ms"].is_number_integer());
    ++count;
  }
  EXPECT_EQ(count, 5);
}

TEST(Cli, ByteStableUnderFixedSeed) {
  std::vector<std::string> args{"check", "ex2", "--max-points", "5", "--samples", "100", "--seed", "42", "--json"};
  auto a = run_cli(args), b = run_cli(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(without_timing(a.out).dump(), without_timing(b.out).dump());
  auto c = run_cli({"check", "ex2", "--max-points", "5", "--samples", "100", "--seed", "43", "--json"});
  EXPECT_EQ(without_timing(c.out)["params"]["seed"], 43);
}

TEST(Cli, ReplayReproducesFailure) {
  auto first = run_cli({"check", "representable-h", "--i", "0", "--m-max", "2", "--json"});
  ASSERT_EQ(first.code, 1);
  auto j = Json::parse(first.out);
  ASSERT_EQ(j["status"], "fail");
  std::string replay = j["witness"]["replay"];
  auto args = shell_split(replay);
  ASSERT_EQ(args.front(), "diagcat");
  args.erase(args.begin());
  auto again = run_cli(args);
  EXPECT_EQ(again.code, 1);
  EXPECT_EQ(without_timing(again.out).dump(), without_timing(first.out).dump());

  // Quoted arguments survive the round trip.
  auto z = run_cli({"check", "split", "--t", "0", "--object", "[0]@id", "--from", "[1]@id", "--to", "[0]@id", "--matrix",
                    "{1 * 1}", "--json"});
  ASSERT_EQ(z.code, 1);
  auto zj = Json::parse(z.out);
  auto zargs = shell_split(zj["witness"]["replay"].get<std::string>());
  zargs.erase(zargs.begin());
  auto z2 = run_cli(zargs);
  EXPECT_EQ(z2.code, 1);
  EXPECT_EQ(without_timing(z2.out).dump(), without_timing(z.out).dump());
}

TEST(Cli, EnvironmentBound) {
  ::setenv("DIAGCAT_MAX_POINTS", "3", 1);
  auto r = run_cli({"check", "diag", "--json"});
  EXPECT_EQ(Json::parse(r.out)["params"]["max_points"], 3);
  auto explicit_bound = run_cli({"check", "diag", "--max-points", "2", "--json"});
  EXPECT_EQ(Json::parse(explicit_bound.out)["params"]["max_points"], 2);
  ::setenv("DIAGCAT_MAX_POINTS", "zero", 1);
  EXPECT_EQ(run_cli({"check", "diag"}).code, 2);
  ::unsetenv("DIAGCAT_MAX_POINTS");
}

TEST(Cli, FpCommands) {
  auto embed = run_cli({"fp", "embed", "[0]@id"});
  EXPECT_EQ(embed.out, "coker( [1]@id → [1]@id : {-(1)/(t) * 1 | 1' + 1 * 1 1'} )\n");
  auto hom = run_cli({"fp", "hom", "--json", "coker( 0 → [1]@id : {} )", "coker( 0 → [2]@id : {} )"});
  EXPECT_EQ(Json::parse(hom.out)["dimension"], 5);
  auto coker = run_cli({"fp", "coker", "--src", "coker( 0 → [1]@id : {} )", "--dst", "coker( 0 → [0]@id : {} )",
                        "--alpha", "{1 * 1}"});
  EXPECT_EQ(coker.code, 0);
  EXPECT_EQ(coker.out, "coker( [1]@id → [0]@id : {1 * 1} )\n");
  auto kernel = run_cli({"fp", "kernel", "--src", "coker( 0 → [1]@id : {} )", "--dst", "coker( 0 → [0]@id : {} )",
                         "--alpha", "{1 * 1}"});
  EXPECT_EQ(kernel.code, 0);
  EXPECT_EQ(kernel.out.rfind("coker( ", 0), 0u);
  auto bad = run_cli({"fp", "coker", "--src", "coker( 0 → [1]@id : {} )", "--dst", "coker( 0 → [0]@id : {} )",
                      "--alpha", "{1 * 1 | 2}"});
  EXPECT_EQ(bad.code, 2);
}
