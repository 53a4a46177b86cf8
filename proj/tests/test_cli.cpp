#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sric/cli.hpp"
#include "sric/report_io.hpp"

namespace fs = std::filesystem;
using namespace sric;

namespace {

struct CliRun {
    int code;
    std::string out, err;
};

CliRun cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("sric_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    // Three assets, 20 months of 21 business days, generic date,value layout.
    void write_panel(const std::string& name) const {
        const ReturnsPanel p = simulate_panel(axis_population(0.5, 3, 1.0), 20, 21, RngSpec{21});
        std::ofstream out(path(name));
        out << "date,A,B,C\n";
        for (Eigen::Index i = 0; i < p.n_periods(); ++i) {
            out << p.dates[static_cast<std::size_t>(i)].iso();
            for (Eigen::Index j = 0; j < 3; ++j) out << ',' << format_double(p.returns(i, j));
            out << '\n';
        }
    }

    fs::path dir_;
};

}  // namespace

TEST(CliEval, WorkedExample) {
    const CliRun r = cli({"eval", "--rho", "1", "--k", "5", "--T", "10", "--cost", "0.2"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["sric"].get<double>(), 0.5, 1e-12);
    EXPECT_NEAR(j["sric_net"].get<double>(), 0.3, 1e-12);
    EXPECT_TRUE(j["sric_defined"].get<bool>());
}

TEST(CliEval, ZeroRhoGivesNullSric) {
    const CliRun r = cli({"eval", "--rho", "0", "--k", "2", "--T", "1"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["sric"].is_null());
    EXPECT_FALSE(j["sric_defined"].get<bool>());
}

TEST(CliEval, InvalidInputsExitWithUsage) {
    EXPECT_EQ(cli({"eval", "--rho", "-1", "--k", "5", "--T", "10"}).code, kExitUsage);
    EXPECT_EQ(cli({"eval", "--rho", "1", "--k", "5", "--T", "0"}).code, kExitUsage);
    EXPECT_EQ(cli({"eval", "--rho", "1"}).code, kExitUsage);
    EXPECT_EQ(cli({}).code, kExitUsage);
    EXPECT_EQ(cli({"nonsense"}).code, kExitUsage);
}

TEST_F(CliTest, SimulateFrontierWritesReport) {
    const CliRun r = cli({"simulate", "frontier", "--seed", "7", "--reps", "2000", "--out", path("a")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const CsvTable arms = read_csv_table(dir_ / "a" / "arms.csv");
    EXPECT_EQ(arms.rows.size(), 20u);
    const auto report = read_json(dir_ / "a" / "report.json");
    EXPECT_TRUE(report["scalars"].contains("argmax_k"));
    EXPECT_EQ(report["master_seed"].get<std::uint64_t>(), 7u);
    EXPECT_EQ(report["replications"].get<std::int64_t>(), 2000);
    EXPECT_TRUE(fs::exists(dir_ / "a" / "histograms.csv"));
}

TEST_F(CliTest, SimulateIsReproducibleAcrossThreadCounts) {
    ASSERT_EQ(cli({"simulate", "select", "--seed", "3", "--reps", "200", "--threads", "1", "--out", path("a")}).code,
              kExitOk);
    ASSERT_EQ(cli({"simulate", "select", "--seed", "3", "--reps", "200", "--threads", "3", "--out", path("b")}).code,
              kExitOk);
    for (const char* f : {"report.json", "arms.csv", "histograms.csv"}) {
        EXPECT_EQ(slurp(dir_ / "a" / f), slurp(dir_ / "b" / f)) << f;
    }
}

TEST_F(CliTest, SimulateRejectsBadConfig) {
    EXPECT_EQ(cli({"simulate", "frontier", "--reps", "0", "--out", path("a")}).code, kExitUsage);
    EXPECT_EQ(cli({"simulate", "nope", "--out", path("a")}).code, kExitUsage);
    {
        std::ofstream cfg(path("cfg.json"));
        cfg << R"({"n_assets": 5, "colour": "red", "T": -1})";
    }
    const CliRun r = cli({"simulate", "frontier", "--config", path("cfg.json"), "--out", path("a")});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("colour"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("T"), std::string::npos) << r.err;
    EXPECT_FALSE(fs::exists(dir_ / "a" / "report.json"));
}

TEST_F(CliTest, BacktestWritesSummaryAndWarnsWithoutRiskfree) {
    write_panel("panel.csv");
    const CliRun r = cli({"backtest", "--format", "generic", "--data", path("panel.csv"), "--lookback", "12", "--out", path("bt")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.err.find("risk-free"), std::string::npos) << r.err;
    const CsvTable summary = read_csv_table(dir_ / "bt" / "summary.csv");
    ASSERT_EQ(summary.rows.size(), 4u);
    std::set<std::string> criteria;
    for (const auto& row : summary.rows) criteria.insert(row[summary.column("criterion")]);
    EXPECT_EQ(criteria, (std::set<std::string>{"SRIC", "AIC", "EQUAL_WEIGHT", "MARKOWITZ"}));
    EXPECT_TRUE(fs::exists(dir_ / "bt" / "lookback_12.json"));
    EXPECT_TRUE(fs::exists(dir_ / "bt" / "lookback_12.csv"));
}

TEST_F(CliTest, BacktestSweepAndCriteriaSubset) {
    write_panel("panel.csv");
    const CliRun r = cli({"backtest", "--format", "generic", "--data", path("panel.csv"), "--lookback", "sweep", "3:5", "--criteria",
                       "SRIC,MARKOWITZ", "--out", path("bt")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const CsvTable summary = read_csv_table(dir_ / "bt" / "summary.csv");
    EXPECT_EQ(summary.rows.size(), 6u);
}

TEST_F(CliTest, BacktestParseErrorNamesFileAndLine) {
    {
        std::ofstream out(path("bad.csv"));
        out << "date,A,B\n2001-01-02,0.01,0.02\n2001-01-03,0.01,abc\n";
    }
    const CliRun r = cli({"backtest", "--data", path("bad.csv"), "--out", path("bt")});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("bad.csv"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST(CliVerify, ExitCodeMatchesResults) {
    EXPECT_EQ(cli({"verify", "--level", "medium"}).code, kExitUsage);
    const CliRun r = cli({"verify", "--level", "quick", "--seed", "20240601"});
    ASSERT_NE(r.code, kExitUsage) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j.size(), 11u);
    bool all = true;
    for (const auto& c : j) all = all && c["passed"].get<bool>();
    EXPECT_EQ(r.code, all ? kExitOk : kExitVerifyFailed);
}
