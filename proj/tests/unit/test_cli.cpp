#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace cli = entropica::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) {
  return (std::filesystem::path(ENTROPICA_FIXTURES) / (name + ".alg")).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Cli, CheckReportsCounterexample) {
  const auto r = run({"check", fixture("g1"), "(x*y)*(u*v) = (x*u)*(y*v)"});
  EXPECT_EQ(r.code, cli::kFails);
  EXPECT_NE(r.out.find("RESULT: FAILS"), std::string::npos);
  EXPECT_NE(r.out.find("COUNTEREXAMPLE: x=a, y=a, u=b, v=a"), std::string::npos);
  EXPECT_EQ(run({"check", "g1", "x*x = x"}).code, cli::kOk);
}

TEST(Cli, SubMatchesFixture) {
  const auto r = run({"sub", fixture("g1")});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out, slurp(fixture("subg1")));
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(run({"check", "no_such_file.alg", "x=x"}).code, cli::kUsage);
  const auto bad = run({"check", "g1", "(x*y"});
  EXPECT_EQ(bad.code, cli::kUsage);
  EXPECT_NE(bad.err.find("parse error"), std::string::npos);
  EXPECT_EQ(run({"census", "--order", "4"}).code, cli::kUsage);
}

TEST(Cli, SubcommandsRun) {
  EXPECT_EQ(run({"gep", "g1"}).code, cli::kFails);
  EXPECT_EQ(run({"gep", "m9"}).code, cli::kOk);
  EXPECT_EQ(run({"gep", "--mode", "basic", "g1"}).code, cli::kUnknown);
  EXPECT_EQ(run({"entropy", "g1"}).code, cli::kFails);
  EXPECT_EQ(run({"entropy", "t"}).code, cli::kOk);
  const auto c = run({"clone", "-k", "2", "g1"});
  EXPECT_EQ(c.code, cli::kOk);
  EXPECT_NE(c.out.find("SIZE: 4"), std::string::npos);
  EXPECT_NE(run({"free", "-k", "2", "g1"}).out.find("SIZE: 4"), std::string::npos);
  EXPECT_EQ(run({"glob", "g1"}).code, cli::kOk);
  EXPECT_EQ(run({"precursor", "z3", "x", "x+x"}).code, cli::kOk);
  EXPECT_EQ(run({"subv", "t", "x*(x*y) = y"}).code, cli::kFails);
  EXPECT_EQ(run({"subv", "z3", "x+x = x"}).code, cli::kOk);
  EXPECT_EQ(run({"globv", "z3", "x+x = x"}).code, cli::kFails);
  EXPECT_EQ(run({"globv", "leftzero2", "x*x = x"}).code, cli::kOk);
  EXPECT_EQ(run({"focal", "x*(y*z)", "y*(x*z)"}).code, cli::kOk);
  EXPECT_EQ(run({"focal", "(x*y)*z", "(y*x)*z"}).code, cli::kFails);
  EXPECT_EQ(run({"example", "g1"}).out, slurp(fixture("g1")));
  EXPECT_EQ(run({"example", "--list"}).code, cli::kOk);
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::vector<std::string>> commands = {
      {"check", "g1", "(x*y)*(u*v) = (x*u)*(y*v)"},
      {"sub", "g1"},
      {"gep", "m9"},
      {"clone", "-k", "2", "--tables", "g2"},
      {"subv", "z3", "x+x = x"},
      {"globv", "g1", "x*(y*z) = y*(x*z)"},
  };
  for (const auto& c : commands) EXPECT_EQ(run(c).out, run(c).out) << c[0];
}

TEST(Cli, CensusIndependentOfJobs) {
  const auto one = run({"census", "--order", "3", "--idempotent", "--jobs", "1"});
  const auto many = run({"census", "--order", "3", "--idempotent", "--jobs", "4", "--chunk", "50"});
  EXPECT_EQ(one.code, cli::kOk);
  EXPECT_EQ(one.out, many.out);
  EXPECT_NE(one.out.find("G1_CLASS_SUB_CLOSED_GEP_FAILS: yes"), std::string::npos);
}

TEST(Cli, CensusCsvAndResume) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto csv = (dir / "entropica_cli.csv").string(), mark = (dir / "entropica_cli.json").string();
  std::filesystem::remove(csv);
  std::filesystem::remove(mark);
  const auto whole = run({"census", "--order", "2", "--csv", csv});
  const std::string full_csv = slurp(csv);
  std::filesystem::remove(csv);
  // Same census run as two resumed halves via the bookmark.
  const auto a = run({"census", "--order", "2", "--chunk", "4", "--resume", mark, "--csv", csv});
  const auto b = run({"census", "--order", "2", "--chunk", "4", "--resume", mark, "--csv", csv});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(whole.out, a.out);
  EXPECT_EQ(slurp(csv), full_csv);
  std::filesystem::remove(csv);
  std::filesystem::remove(mark);
}

TEST(Cli, PaperVerify) {
  const auto r = run({"paper-verify"});
  EXPECT_EQ(r.code, cli::kOk) << r.out;
  EXPECT_NE(r.out.find("PASSED: "), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
}
