#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef REFINEDP_CLI_PATH
#error "REFINEDP_CLI_PATH must point at the command-line binary"
#endif

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string out_file = std::string(std::tmpnam(nullptr)) + ".out";
  std::string cmd = std::string(REFINEDP_CLI_PATH) + " " + args + " > " +
                    out_file + " 2>&1";
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_file);
  std::stringstream ss;
  ss << in.rdbuf();
  std::remove(out_file.c_str());
  return {code, ss.str()};
}

std::string scratch_path(const char* name) {
  return std::string("/tmp/refinedp_cli_test_") + name;
}

TEST(Cli, SeededSamplingIsDeterministic) {
  std::string m = scratch_path("m1.json");
  std::string args = "sample --mu 0 --beta 1 --n 5 --seed 42 --manifest " + m;
  RunResult a = run_cli(args);
  RunResult b = run_cli(args);
  EXPECT_EQ(a.exit_code, 0) << a.output;
  EXPECT_EQ(a.output, b.output);
  EXPECT_NE(a.output.find("index,value,bits,iterations"), std::string::npos);
}

TEST(Cli, InvalidScaleIsParameterError) {
  RunResult r = run_cli("sample --beta 0 --n 1 --seed 1 --manifest " +
                        scratch_path("m2.json"));
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("beta"), std::string::npos);
}

TEST(Cli, UnknownFlagIsParameterError) {
  RunResult r = run_cli("sample --bogus 1");
  EXPECT_EQ(r.exit_code, 2);
}

TEST(Cli, TraceReplayReproducesOutputs) {
  std::string trace = scratch_path("t.trace");
  std::string first = scratch_path("first.csv");
  std::string replay = scratch_path("replay.csv");
  RunResult a = run_cli("sample --mu 0.5 --beta 2 --n 4 --seed 9 --trace-out " +
                        trace + " --out " + first + " --manifest " +
                        scratch_path("m3.json"));
  ASSERT_EQ(a.exit_code, 0) << a.output;
  RunResult b = run_cli("sample --tape-in " + trace + " --out " + replay +
                        " --manifest " + scratch_path("m4.json"));
  ASSERT_EQ(b.exit_code, 0) << b.output;
  std::ifstream f1(first), f2(replay);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  EXPECT_FALSE(s1.str().empty());
  EXPECT_EQ(s1.str(), s2.str());
}

TEST(Cli, NonDyadicParameterRecordedInManifest) {
  std::string m = scratch_path("m5.json");
  RunResult r = run_cli("sample --mu 0.1 --beta 1 --n 1 --seed 3 --manifest " + m);
  ASSERT_EQ(r.exit_code, 0) << r.output;
  std::ifstream in(m);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_NE(ss.str().find("\"rounded_up\": true"), std::string::npos);
  EXPECT_NE(ss.str().find("\"dyadic\""), std::string::npos);
  EXPECT_NE(ss.str().find("test-only"), std::string::npos);
}

TEST(Cli, AttackReportHasStableFields) {
  RunResult r = run_cli("attack --pattern additive --n 1500 --seed 5 --manifest " +
                        scratch_path("m6.json"));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const char* fields[] = {"\"mechanism\"", "\"input0\"",  "\"input1\"",
                          "\"samples_per_side\"", "\"predicate\"",
                          "\"count0\"", "\"count1\"", "\"fraction0\"",
                          "\"fraction1\"", "\"verdict\"", "\"seed\""};
  std::size_t pos = 0;
  for (const char* f : fields) {
    std::size_t next = r.output.find(f, pos);
    ASSERT_NE(next, std::string::npos) << f;
    EXPECT_GE(next, pos) << f << " out of order";
    pos = next;
  }
  EXPECT_NE(r.output.find("\"verdict\": \"vulnerable\""), std::string::npos);
}

TEST(Cli, VerifyPassesOnToyGrid) {
  RunResult r = run_cli("verify --toy-grid 4 --rounds 6 --manifest " +
                        scratch_path("m7.json"));
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("\"verdict\": \"pass\""), std::string::npos);
  RunResult bad = run_cli("verify --toy-grid 5 --rounds 6");
  EXPECT_EQ(bad.exit_code, 2);
}

TEST(Cli, FitSmokeTest) {
  RunResult r = run_cli("fit --n 15000 --buckets 15 --seed 8 --manifest " +
                        scratch_path("m8.json"));
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("\"p_value\""), std::string::npos);
}

TEST(Cli, BenchReportsHistogram) {
  RunResult r = run_cli("bench --n 3000 --seed 4 --manifest " +
                        scratch_path("m9.json"));
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("samples_per_second"), std::string::npos);
  EXPECT_NE(r.output.find("iteration_histogram"), std::string::npos);
}

TEST(Cli, EnvVarOverridesBasePrecision) {
  std::string m = scratch_path("m10.json");
  std::string cmd = std::string("REFINE_DP_PRECISION_BASE=48 ") +
                    REFINEDP_CLI_PATH +
                    " bench --n 100 --seed 1 --manifest " + m +
                    " > /dev/null 2>&1";
  ASSERT_EQ(WEXITSTATUS(std::system(cmd.c_str())), 0);
  std::ifstream in(m);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_NE(ss.str().find("\"base_prec\": 48"), std::string::npos);
}

}  // namespace
