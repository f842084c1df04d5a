#include "hv/cli.hpp"
#include "hv/simulation.hpp"

#include <gtest/gtest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

using namespace hv;
namespace fs = std::filesystem;

namespace {

struct CliResult
{
  int code;
  std::string out;
  std::string err;
};

CliResult cli(const std::vector<std::string>& args)
{
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test
{
 protected:
  void SetUp() override
  {
    dir_ = fs::temp_directory_path() / ("hv_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    std::ofstream cfg(path("landau.cfg"));
    cfg << "# small Landau run\nM = 8\nN = 32\nk = 0.5\nA = 0.01\nt_end = 12\n";
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, RunWritesTrace)
{
  const CliResult r = cli({"run", "--config", path("landau.cfg"), "--out", path("trace.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(path("trace.csv"));
  const EnergyTrace t = read_trace_csv(in);
  ASSERT_GT(t.rows.size(), 10u);
  EXPECT_EQ(t.rows.back().t, 12.0);
}

TEST_F(CliTest, FitPrintsRateAndPeaks)
{
  ASSERT_EQ(cli({"run", "--config", path("landau.cfg"), "--out", path("trace.csv")}).code, 0);
  const CliResult r = cli({"fit", "--trace", path("trace.csv"), "--window", "0:12"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::smatch m;
  ASSERT_TRUE(std::regex_search(r.out, m, std::regex(R"(^gamma=(\S+) peaks=(\d+) residual=(\S+)\n$)"))) << r.out;
  EXPECT_LT(std::stod(m[1]), 0.0);
  EXPECT_GE(std::stoi(m[2]), 3);

  const CliResult automatic = cli({"fit", "--trace", path("trace.csv")});
  EXPECT_EQ(automatic.code, 0) << automatic.err;
}

TEST_F(CliTest, SweepExtrapolates)
{
  const CliResult r =
      cli({"sweep", "--config", path("landau.cfg"), "--vary", "N=16,32,64", "--extrapolate", "--jobs", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("N,dx,gamma,peaks,residual\n"), std::string::npos);
  EXPECT_NE(r.out.find("\n16,"), std::string::npos);
  EXPECT_NE(r.out.find("\n64,"), std::string::npos);
  EXPECT_TRUE(std::regex_search(r.out, std::regex(R"(gamma0=\S+ gamma1=\S+ residual=\S+)"))) << r.out;

  // the worker count does not change results
  const CliResult serial = cli({"sweep", "--config", path("landau.cfg"), "--vary", "N=16,32,64", "--extrapolate"});
  EXPECT_EQ(serial.out, r.out);
}

TEST_F(CliTest, RecurrenceReportsBracketOrAbsence)
{
  std::ofstream cfg(path("long.cfg"));
  cfg << "M = 10\nN = 64\nk = 0.5\nt_end = 40\n";
  cfg.close();
  ASSERT_EQ(cli({"run", "--config", path("long.cfg"), "--out", path("long.csv")}).code, 0);
  const CliResult r = cli({"recurrence", "--trace", path("long.csv"), "--threshold", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(std::regex_search(r.out, std::regex(R"(t_lo=\S+ t_hi=\S+ midpoint=\S+)"))) << r.out;
}

TEST_F(CliTest, ErrorsGiveNonzeroExit)
{
  EXPECT_NE(cli({}).code, 0);
  EXPECT_NE(cli({"frobnicate"}).code, 0);
  EXPECT_NE(cli({"run"}).code, 0);
  EXPECT_NE(cli({"run", "--config", path("missing.cfg")}).code, 0);
  std::ofstream bad(path("bad.cfg"));
  bad << "M = 8\nN = 32\nk = 0.5\nt_end = 1\ncolour = blue\n";
  bad.close();
  const CliResult r = cli({"run", "--config", path("bad.cfg")});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("colour"), std::string::npos);
  EXPECT_NE(cli({"fit", "--trace", path("landau.cfg")}).code, 0);
  EXPECT_NE(cli({"fit", "--trace", path("x.csv"), "--window", "abc"}).code, 0);
  EXPECT_NE(cli({"sweep", "--config", path("landau.cfg"), "--vary", "N"}).code, 0);
}

TEST_F(CliTest, ExecutableRuns)
{
  const char* exe = std::getenv("HV_CLI");
  if (!exe) GTEST_SKIP() << "HV_CLI not set";
  const std::string cmd = std::string(exe) + " run --config " + path("landau.cfg") + " --out " + path("exe.csv");
  EXPECT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_TRUE(fs::exists(path("exe.csv")));
  EXPECT_NE(std::system((std::string(exe) + " bogus > /dev/null 2>&1").c_str()), 0);
}
