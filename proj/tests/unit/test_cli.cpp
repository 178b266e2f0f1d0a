#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sys/wait.h>

#include "padicbetti/registry.hpp"
#include "padicbetti/serialize.hpp"

using namespace padicbetti;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(PADIC_BETTI_CLI) + " " + args + " 2>/dev/null";
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) out.append(buf.data(), n);
  int status = pclose(f);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Json run_json(const std::string& args, int expect_code = 0) {
  auto r = run(args + " --json");
  EXPECT_EQ(r.code, expect_code) << args << "\n" << r.out;
  auto j = Json::parse(r.out);
  // canonical form is a fixed point
  EXPECT_EQ(dump_canonical(j), r.out) << args;
  return j;
}

}  // namespace

TEST(Cli, ComputeExamples) {
  auto t = run_json("compute --space torus:2 --tower abelian:p=3,d=2 --betti 1 --field Q");
  EXPECT_EQ(t["result"]["limit"]["residue"], 2);
  EXPECT_EQ(t["result"]["limit"]["status"], "converged");
  for (const auto& key : {"input", "result", "checks"}) EXPECT_TRUE(t.contains(key));
  auto e = run_json("compute --space surface:2 --tower abelian:p=5,d=1 --euler");
  EXPECT_EQ(e["result"]["limit"]["residue"], 0);
  auto f = run_json("compute --space free:2 --tower trivial --betti 1");
  EXPECT_EQ(f["result"]["limit"]["residue"], 2);
}

TEST(Cli, OtherCommands) {
  auto k = run_json("knot --delta \"t^2-t+1\" --m 6 --p 5");
  EXPECT_EQ(k["result"]["b1"], 3);
  auto fab = run_json("fab-torsion --matrix \"1+25,5;5,1\" --p 5 --precision 4 --levels 3");
  EXPECT_EQ(fab["checks"]["dual_route_agree"], true);
  auto fr = run_json("frattini --group C8");
  EXPECT_EQ(fr["result"]["length"], 3);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("compute --space torus:2 --tower abelian:p=3,d=2 --betti 1").code, 0);
  // 1 + 4^n converges, so --strict has nothing to object to
  EXPECT_EQ(run("compute --space free:2 --tower abelian:p=2,d=2 --betti 1 --precision 2 --strict").code, 0);
  EXPECT_EQ(run("compute --space torus:2 --tower abelian:p=3,d=2 --betti 1 --field F3").code, 1);
  EXPECT_EQ(run("compute --space nowhere --betti 1").code, 1);
  EXPECT_EQ(run("fab-torsion --matrix \"2,1;1,1\" --p 3").code, 1);
  // deterministic
  auto a = run("compute --space surface:2 --tower abelian:p=3,d=2 --betti 1 --json");
  auto b = run("compute --space surface:2 --tower abelian:p=3,d=2 --betti 1 --json");
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, MalformedFilesNameTheField) {
  const std::string path = ::testing::TempDir() + "bad_complex.json";
  std::ofstream(path) << R"({"generators": ["x"], "ranks": [1, 1], "boundaries": [[[[["x", 1], ["q", -1]]]]]})";
  auto r = run("compute --space complex:" + path + " --betti 0");
  EXPECT_EQ(r.code, 1);
  std::ofstream(path) << "{ not json";
  EXPECT_EQ(run("compute --space complex:" + path + " --betti 0").code, 1);
  try {
    complex_from_json(Json::parse(R"({"generators": ["x"], "ranks": [1, 1], "boundaries": [[[[["x", 1], ["q", -1]]]]]})"));
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("complex.boundaries[0][0][0]"), std::string::npos) << e.what();
  }
}

TEST(Serialize, ComplexRoundTrip) {
  for (const char* s : {"torus:3", "surface:2", "klein", "trefoil", "product(circle,torus:2)", "wedge(circle,sphere:3)"}) {
    auto c = build_space(s);
    auto j = complex_to_json(c);
    auto back = complex_from_json(j);
    EXPECT_EQ(dump_canonical(complex_to_json(back)), dump_canonical(j)) << s;
  }
}

TEST(Serialize, IntegersAndSequences) {
  EXPECT_EQ(to_json(Integer(-5)), Json(-5));
  Integer big = ipow(10UL, 30);
  EXPECT_EQ(to_json(big), Json(big.get_str()));
  EXPECT_EQ(integer_from_json(to_json(big), "x"), big);
  EXPECT_THROW(integer_from_json(Json(1.5), "x"), std::invalid_argument);
  auto j = to_json(PAdicApprox::converged(3, 4, 70));
  EXPECT_EQ(j["residue"], 70);
  EXPECT_EQ(j["status"], "converged");
  EXPECT_EQ(dump_canonical(Json::parse(dump_canonical(j))), dump_canonical(j));
}

TEST(Serialize, IntExpressions) {
  EXPECT_EQ(parse_int_expression("1+25"), 26);
  EXPECT_EQ(parse_int_expression("-3*2^2"), -12);
  EXPECT_EQ(parse_int_expression("5^2 - 1"), 24);
  EXPECT_THROW(parse_int_expression(""), std::invalid_argument);
  EXPECT_THROW(parse_int_expression("2^9999"), std::invalid_argument);
  EXPECT_EQ(parse_int_matrix("1+25,5;5,1"), (IntMatrix{{26, 5}, {5, 1}}));
  EXPECT_THROW(parse_int_matrix("1,2;3"), std::invalid_argument);
}
