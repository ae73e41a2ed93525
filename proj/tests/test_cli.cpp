#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "json.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(QDISS_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const std::string& f) { return std::string(QDISS_DATA_DIR) + "/" + f; }

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, ValidateReportsProfile) {
  auto r = run("validate lukasiewicz:5");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "mv: yes"));

  auto c = run("--format machine validate c3");
  EXPECT_EQ(c.code, 0);
  auto j = nlohmann::json::parse(c.out);
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_EQ(j["checks"][1]["details"]["flags"]["girard"], true);
  EXPECT_EQ(j["checks"][1]["details"]["cyclic_dualizing"], nlohmann::json::array({"k"}));
  EXPECT_EQ(j["version"], "0.1.0");
  EXPECT_TRUE(contains(j["input_digest"].get<std::string>(), "sha256:"));
}

TEST(Cli, MalformedFileGivesLocatedError) {
  auto r = run("validate " + data("bad_tensor.qnt"));
  EXPECT_NE(r.code, 0);
  EXPECT_TRUE(contains(r.out, "line 7"));
}

TEST(Cli, HomsDump) {
  EXPECT_TRUE(contains(run("homs c3 K k k").out, "{k, top}"));
  EXPECT_TRUE(contains(run("homs c3 H top top").out, "{bot, top}"));
  EXPECT_TRUE(contains(run("homs boolean:1 B bot bot").out, "{0, 1}"));
}

TEST(Cli, CheckMatrices) {
  EXPECT_EQ(run("check similarity boolean:1 --matrix " + data("equivalence.mat")).code, 0);
  EXPECT_EQ(run("check dissimilarity boolean:1 --matrix " + data("equivalence_complement.mat")).code, 0);
  auto bad = run("check similarity boolean:1 --matrix " + data("asymmetric.mat"));
  EXPECT_EQ(bad.code, 1);
  EXPECT_TRUE(contains(bad.out, "S2-symmetry (a, b)"));
  EXPECT_EQ(run("check apartness boolean:2 --matrix " + data("apartness.mat")).code, 0);
  auto l = run("check similarity lawvere --matrix " + data("lawvere_distance.mat"));
  EXPECT_EQ(l.code, 0);
  EXPECT_TRUE(contains(l.out, "[sampled]"));
}

TEST(Cli, VerifyAndSearch) {
  EXPECT_EQ(run("verify endo-girard godel:3").code, 0);
  EXPECT_TRUE(contains(run("search-iso godel:3").out, "none-exists"));
  EXPECT_TRUE(contains(run("search-iso lukasiewicz:4").out, "result: found"));
  auto b = run("search-iso lukasiewicz:6 --budget 1");
  EXPECT_EQ(b.code, 1);
  EXPECT_TRUE(contains(b.out, "budget-exceeded"));
}

TEST(Cli, GradeAndEnumerate) {
  EXPECT_TRUE(contains(run("grade neg_KH c3").out, "homomorphism=yes"));
  EXPECT_EQ(run("grade perp_KH godel:3").code, 2);
  auto e = run("enumerate --max-size 3 --iso");
  EXPECT_EQ(e.code, 0);
  EXPECT_TRUE(contains(e.out, "count: 5"));
}

TEST(Cli, MachineReportIsDeterministicWithoutTiming) {
  auto a = run("--format machine --no-timing --seed 5 --samples 40 verify all lawvere");
  auto b = run("--format machine --no-timing --seed 5 --samples 40 verify all lawvere");
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.code, 0);
}

TEST(Cli, UnknownBuiltinFails) {
  auto r = run("validate frobnicate:3");
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.out, "UnknownName"));
}
