#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "cyclo/cli.hpp"

using namespace cyclo;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, ComputeJson) {
  const auto r = run({"compute", "--p", "2", "--ell", "3", "--t", "2", "--method", "both"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["method"], "both");
  EXPECT_EQ(j["order_factorization"]["2"], 31);
  EXPECT_EQ(j["p_multiplicities"]["5"], 4);
}

TEST(Cli, ComputeText) {
  const auto r = run({"--format", "text", "compute", "--p", "5", "--ell", "3", "--t", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("G(5,3,1)"), std::string::npos);
  EXPECT_NE(r.out.find("e_2: 6"), std::string::npos);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args{"--threads", "3", "compute", "--p", "3", "--ell", "5", "--t", "1"};
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, ExitCodes) {
  auto r = run({"compute", "--p", "7", "--ell", "3", "--t", "1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("NotPrimitive"), std::string::npos);
  EXPECT_EQ(r.err.find("NotPrimitive: NotPrimitive"), std::string::npos);
  EXPECT_EQ(run({"compute", "--p", "2", "--ell", "3"}).code, 1);
  EXPECT_EQ(run({"compute", "--p", "2", "--ell", "3", "--t", "2", "--method", "fast"}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"compute", "--p", "2", "--ell", "3", "--t", "6", "--method", "bruteforce", "--max-q", "64"}).code, 1);
  EXPECT_EQ(run({"verify", "--p", "5", "--ell", "3", "--t", "1", "--which", "blocks", "--precision", "2"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, Verify) {
  auto r = run({"verify", "--p", "2", "--ell", "3", "--t", "2"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["suites"].size(), 4u);
  r = run({"--format", "text", "verify", "--p", "3", "--ell", "5", "--t", "1", "--which", "blocks"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("blocks: pass"), std::string::npos);
  EXPECT_EQ(run({"verify", "--p", "3", "--ell", "5", "--t", "1", "--which", "walks"}).code, 1);
}

TEST(Cli, Table) {
  auto r = run({"--format", "text", "table", "--t", "1", "--p-list", "5,11"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("p=5 {e_0: 8, e_1: 10, e_2: 6}"), std::string::npos);
  r = run({"table", "--t", "2", "--p-list", "5,7"});
  EXPECT_EQ(r.code, 1);
  const auto j = Json::parse(r.out);
  EXPECT_TRUE(j["rows"][1].contains("error"));
  EXPECT_EQ(run({"table", "--t", "1", "--p-list", ""}).code, 1);
  EXPECT_EQ(run({"table", "--t", "1", "--p-list", "5,x"}).code, 1);
  EXPECT_EQ(run({"table", "--t", "1", "--p-list", "5", "--ell", "5"}).code, 1);
}

TEST(Cli, ExportLaplacian) {
  const auto path = std::filesystem::temp_directory_path() / "cyclo_test_laplacian.txt";
  const auto r = run({"compute", "--p", "2", "--ell", "3", "--t", "2", "--export-laplacian", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream f(path);
  std::string line;
  int rows = 0;
  while (std::getline(f, line)) {
    std::istringstream is(line);
    long v, sum = 0;
    int cols = 0;
    while (is >> v) {
      sum += v;
      ++cols;
    }
    EXPECT_EQ(cols, 16);
    EXPECT_EQ(sum, 0);
    ++rows;
  }
  EXPECT_EQ(rows, 16);
  std::filesystem::remove(path);
}

TEST(Cli, MaxQFromEnvironment) {
  ::setenv("CYCLO_MAX_Q", "32", 1);
  const int code = run({"compute", "--p", "2", "--ell", "3", "--t", "3", "--method", "bruteforce"}).code;
  ::unsetenv("CYCLO_MAX_Q");
  EXPECT_EQ(code, 1);
}

TEST(Cli, BinaryExitStatus) {
  const char* bin = std::getenv("CYCLO_CLI");
  if (!bin) GTEST_SKIP() << "CYCLO_CLI not set";
  auto status = [&](const std::string& args) {
    const int s = std::system((std::string(bin) + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(s);
  };
  EXPECT_EQ(status("compute --p 2 --ell 3 --t 2"), 0);
  EXPECT_EQ(status("compute --p 7 --ell 3 --t 1"), 1);
  EXPECT_EQ(status("compute"), 1);
}
