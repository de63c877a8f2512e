#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "qwsearch/cli.hpp"
#include "qwsearch/report.hpp"

namespace qwsearch::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::vector<double> column(const std::string& name) const {
    const auto idx = static_cast<std::size_t>(
        std::find(header.begin(), header.end(), name) - header.begin());
    std::vector<double> out;
    for (const auto& r : rows) out.push_back(r.at(idx));
    return out;
  }
};

// Largest p over the first half of the run, which holds exactly one peak at
// the default horizon.
std::pair<double, double> first_peak(const Table& t) {
  const std::vector<double> times = t.column("t");
  const std::vector<double> p = t.column("p");
  std::size_t best = 0;
  for (std::size_t k = 0; k < p.size() && times[k] <= 0.5 * times.back(); ++k) {
    if (p[k] > p[best]) best = k;
  }
  return {times[best], p[best]};
}

Table parse_csv(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  std::istringstream head(line);
  for (std::string cell; std::getline(head, cell, ',');) t.header.push_back(cell);
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    for (std::string cell; std::getline(cells, cell, ',');) {
      double v = 0.0;
      std::from_chars(cell.data(), cell.data() + cell.size(), v);
      row.push_back(v);
    }
    t.rows.push_back(row);
  }
  return t;
}

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    const auto eq = line.find(" = ");
    if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return kv;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qwsearch_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST(Simulate, CriticalRunPeaksAtOne) {
  const Result r = invoke({"simulate", "--n", "100", "--gamma", "0.01", "--lambda", "0",
                           "--observables", "h0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Table t = parse_csv(r.out);
  EXPECT_EQ(t.header, (std::vector<std::string>{"t", "p", "norm", "h0"}));
  const auto [t_star, p_star] = first_peak(t);
  EXPECT_NEAR(p_star, 1.0, 1e-6);
  EXPECT_NEAR(t_star, 15.708, 0.01);
}

TEST(Simulate, ZeroHorizonGivesSingleRow) {
  const Result r = invoke({"simulate", "--n", "2", "--gamma", "0.5", "--lambda", "0", "--tmax", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Table t = parse_csv(r.out);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_NEAR(t.column("p")[0], 0.5, 1e-15);
}

TEST(Simulate, AttractiveRescaledEnergyIsConstant) {
  const Result r = invoke({"simulate", "--n", "100", "--gamma", "attractive", "--lambda", "-2",
                           "--observables", "rescaled"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::vector<double> e = parse_csv(r.out).column("rescaled");
  for (double v : e) EXPECT_NEAR(v, e.front(), 1e-9);
}

TEST(Simulate, ColumnOrderIsCanonical) {
  const Result r = invoke({"simulate", "--n", "10", "--gamma", "repulsive", "--lambda", "0.3",
                           "--tmax", "1", "--observables", "rescaled,h0,heff,gp"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "t,p,norm,h0,gp,heff,rescaled");
}

TEST(Simulate, FullSpaceAgreesWithSubspace) {
  const std::vector<std::string> base = {"simulate", "--n", "6", "--gamma", "attractive",
                                         "--lambda", "-1", "--tmax", "5"};
  std::vector<std::string> full = base;
  full.insert(full.end(), {"--space", "full"});
  const Table a = parse_csv(invoke(base).out);
  const Table b = parse_csv(invoke(full).out);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t k = 0; k < a.rows.size(); ++k) EXPECT_NEAR(a.rows[k][1], b.rows[k][1], 1e-9);
}

TEST(Simulate, UsageErrors) {
  EXPECT_EQ(invoke({"simulate", "--n", "1", "--gamma", "0.5"}).code, kUsage);
  EXPECT_EQ(invoke({"simulate", "--n", "10", "--gamma", "sideways"}).code, kUsage);
  EXPECT_EQ(invoke({"simulate", "--n", "10", "--gamma", "repulsive", "--lambda", "-1"}).code,
            kUsage);
  EXPECT_EQ(invoke({"simulate", "--n", "10", "--gamma", "attractive", "--lambda", "0"}).code,
            kUsage);
  EXPECT_EQ(invoke({"simulate", "--n", "10", "--gamma", "0.1", "--observables", "mass"}).code,
            kUsage);
  EXPECT_EQ(invoke({"simulate", "--n", "10", "--gamma", "0.1", "--space", "half"}).code, kUsage);
  EXPECT_EQ(invoke({"simulate", "--gamma", "0.1"}).code, kUsage);
  EXPECT_EQ(invoke({"bogus"}).code, kUsage);
  EXPECT_EQ(invoke({}).code, kUsage);
}

TEST(Simulate, NumericFailure) {
  const Result r = invoke({"simulate", "--n", "100", "--gamma", "0.01", "--tmax", "100", "--dt", "10"});
  EXPECT_EQ(r.code, kNumeric);
  EXPECT_NE(r.err.find("diverged"), std::string::npos);
}

TEST(Simulate, HelpAndVersion) {
  EXPECT_EQ(invoke({"--help"}).code, kOk);
  const Result v = invoke({"--version"});
  EXPECT_EQ(v.code, kOk);
  EXPECT_NE(v.out.find(std::string(kToolVersion)), std::string::npos);
}

TEST_F(CliFiles, ManifestReplayIsByteIdentical) {
  const fs::path csv = dir_ / "run.csv";
  const Result r = invoke({"simulate", "--n", "37", "--gamma", "repulsive", "--lambda", "0.25",
                           "--sample-every", "7", "--observables", "gp,h0", "--out", csv.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(csv.string() + ".manifest");
  const report::RunManifest manifest = report::RunManifest::parse(in);
  EXPECT_EQ(manifest.command, "simulate");
  for (const char* key : {"n", "gamma", "lambda", "marked", "tmax", "dt", "sample_every",
                          "observables", "space"}) {
    EXPECT_FALSE(manifest.value(key).empty()) << key;
  }

  std::vector<std::string> replay = manifest.argv;
  const fs::path again = dir_ / "replay.csv";
  replay.insert(replay.end(), {"--out", again.string()});
  ASSERT_EQ(invoke(replay).code, 0);
  EXPECT_EQ(slurp(csv), slurp(again));
}

TEST_F(CliFiles, RerunIsByteIdentical) {
  const std::vector<std::string> args = {"simulate", "--n", "50", "--gamma", "attractive",
                                         "--lambda", "-1.5", "--observables", "rescaled,gp"};
  EXPECT_EQ(invoke(args).out, invoke(args).out);
}

TEST_F(CliFiles, UnwritableOutputIsIoError) {
  const fs::path blocked = dir_ / "file";
  std::ofstream(blocked) << "x";
  const Result r = invoke({"simulate", "--n", "4", "--gamma", "0.25", "--out",
                           (blocked / "sub.csv").string()});
  EXPECT_EQ(r.code, kIoError);
}

TEST_F(CliFiles, FigureWritesOneFilePerCurve) {
  const Result r = invoke({"figure", "--id", "fig2a", "--n", "100", "--out-dir", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* g : {"0.001", "0.005", "0.008", "0.009", "0.01"}) {
    EXPECT_TRUE(fs::exists(dir_ / ("fig2a_gamma=" + std::string(g) + ".csv"))) << g;
  }
  EXPECT_TRUE(fs::exists(dir_ / "fig2a_manifest.txt"));
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 5);
}

TEST_F(CliFiles, FigureFourCriticalCurve) {
  const Result r = invoke({"figure", "--id", "fig4", "--n", "100", "--out-dir", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(dir_)) files += entry.path().extension() == ".csv";
  EXPECT_EQ(files, 4u);
  const Table t = parse_csv(slurp(dir_ / "fig4_lambda=0.csv"));
  EXPECT_NEAR(first_peak(t).first, 15.708, 0.01 * 15.708);

  const std::string first = slurp(dir_ / "fig4_lambda=-2.csv");
  ASSERT_EQ(invoke({"figure", "--id", "fig4", "--n", "100", "--out-dir", dir_.string()}).code, 0);
  EXPECT_EQ(first, slurp(dir_ / "fig4_lambda=-2.csv"));
}

TEST(Figure, UnknownId) { EXPECT_EQ(invoke({"figure", "--id", "fig9", "--n", "10"}).code, kUsage); }

TEST(Critical, GammaMode) {
  const Result r = invoke({"critical", "--n", "100", "--mode", "gamma"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto kv = parse_key_values(r.out);
  EXPECT_EQ(kv.at("gamma_c"), "0.01");
  EXPECT_NEAR(std::stod(kv.at("delta_e_c")), 0.2, 1e-15);
  EXPECT_NEAR(std::stod(kv.at("t_star_c")), 15.70796, 1e-5);
  EXPECT_NEAR(std::stod(kv.at("p_star_c")), 1.0, 1e-15);
  EXPECT_EQ(parse_key_values(invoke({"critical", "--n", "4", "--mode", "gamma"}).out).at("gamma_c"),
            "0.25");
}

TEST(Critical, LambdaMode) {
  const Result r = invoke({"critical", "--n", "100", "--mode", "lambda", "--resolution", "0.001"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto kv = parse_key_values(r.out);
  const double lo = std::stod(kv.at("lambda_low"));
  const double hi = std::stod(kv.at("lambda_high"));
  EXPECT_GT(lo, 0.60);
  EXPECT_LT(hi, 0.62);
  EXPECT_LE(hi - lo, 0.001);
}

TEST(Critical, BadMode) {
  EXPECT_EQ(invoke({"critical", "--n", "100", "--mode", "delta"}).code, kUsage);
  EXPECT_EQ(invoke({"critical", "--n", "100", "--mode", "lambda", "--resolution", "0"}).code,
            kUsage);
}

}  // namespace
}  // namespace qwsearch::cli
