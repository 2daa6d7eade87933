#include "cogmc/experiments.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "cogmc/scenario.hpp"

namespace cogmc {
namespace {

Scenario default_scenario() { return parse_scenario(default_scenario_text()); }

std::vector<double> range(double lo, double hi, double step)
{
    std::vector<double> v;
    for (double x = lo; x <= hi + 1e-9; x += step) v.push_back(x);
    return v;
}

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::size_t fields(const std::string& line) { return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1; }

TEST(FormatNumber, TwelveSignificantDigits)
{
    EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(format_number(18.5), "18.5");
    EXPECT_EQ(format_number(1e-9), "1e-09");
}

TEST(Sweep, CsvSchema)
{
    const auto sc = default_scenario();
    const auto rows = run_sweep(sc, "user_count", {10, 20});
    std::ostringstream os;
    write_sweep_csv(os, "user_count", rows);
    const auto text = os.str();
    EXPECT_EQ(text.find('\r'), std::string::npos);
    const auto ls = lines(text);
    ASSERT_EQ(ls.size(), 3u);
    EXPECT_EQ(ls[0], "param,value,status,groups,ee,iterations,converged,power,rate,outage,throughput");
    for (std::size_t i = 1; i < ls.size(); ++i) {
        EXPECT_EQ(fields(ls[i]), 11u);
        EXPECT_EQ(ls[i].rfind("user_count,", 0), 0u);
        EXPECT_NE(ls[i].find(",ok,2,"), std::string::npos);
    }
}

TEST(Sweep, SingleValueMatchesSolve)
{
    const auto sc = default_scenario();
    const auto rows = run_sweep(sc, "user_count", {30});
    const auto direct = solve_scenario(apply_sweep_value(sc, "user_count", 30));
    ASSERT_TRUE(rows[0].report && direct.report);
    EXPECT_EQ(rows[0].report->ee, direct.report->ee);
    EXPECT_EQ(rows[0].report->allocation.power, direct.report->allocation.power);
}

TEST(Sweep, ByteIdenticalAcrossRuns)
{
    const auto sc = default_scenario();
    std::ostringstream a, b;
    write_sweep_csv(a, "user_count", run_sweep(sc, "user_count", range(10, 100, 10)));
    write_sweep_csv(b, "user_count", run_sweep(sc, "user_count", range(10, 100, 10)));
    EXPECT_EQ(a.str(), b.str());
}

TEST(Sweep, FailedPointsAreRows)
{
    const auto sc = default_scenario();
    // -40 dB threshold makes p_max fall below p_min.
    const auto rows = run_sweep(sc, "interference_threshold_db", {-12.3, -40});
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].status, kExitOk);
    EXPECT_EQ(rows[1].status, kExitInfeasible);
    EXPECT_FALSE(rows[1].report);
    const auto bad = run_sweep(sc, "user_count", {2.5});
    EXPECT_EQ(bad[0].status, kExitUsage);
    std::ostringstream os;
    write_sweep_csv(os, "interference_threshold_db", rows);
    const auto ls = lines(os.str());
    EXPECT_EQ(ls[2], "interference_threshold_db,-40,infeasible,2,,,,,,,");
}

TEST(Trends, UserCountSweepOnReferenceScenario)
{
    for (int groups : {2, 3}) {
        auto sc = apply_sweep_value(default_scenario(), "group_count", groups);
        const auto rows = run_sweep(sc, "user_count", range(10, 100, 10));
        bool found = false;
        const auto bad = check_trends("user_count", rows, &found);
        EXPECT_TRUE(found);
        EXPECT_TRUE(bad.empty()) << groups << " groups: " << (bad.empty() ? "" : bad.front());
    }
}

TEST(Trends, GroupCountIncreasesEe)
{
    const auto rows = run_sweep(default_scenario(), "group_count", {1, 2, 3, 4});
    EXPECT_TRUE(check_trends("group_count", rows).empty());
}

TEST(Trends, DetectsViolationsAndOrdersByValue)
{
    auto rows = run_sweep(default_scenario(), "user_count", {40, 10, 20});
    EXPECT_TRUE(check_trends("user_count", rows).empty());
    rows[1].report->ee *= 0.5;  // K = 10 now below K = 20
    const auto bad = check_trends("user_count", rows);
    ASSERT_FALSE(bad.empty());
    EXPECT_NE(bad.front().find("EE increased"), std::string::npos);
    bool found = true;
    EXPECT_TRUE(check_trends("circuit_power", rows, &found).empty());
    EXPECT_FALSE(found);
}

TEST(Compare, JointDominatesPowerOnly)
{
    const auto rows = run_compare(default_scenario(), "user_count", range(10, 100, 10));
    for (const auto& r : rows) {
        ASSERT_EQ(r.status, kExitOk);
        EXPECT_GE(r.ratio(), 1.0 - 1e-12) << "K=" << *r.value;
    }
}

TEST(Compare, GoldenMarginAtFiftyUsers)
{
    const auto r = compare_scenario(apply_sweep_value(default_scenario(), "user_count", 50));
    ASSERT_EQ(r.status, kExitOk);
    EXPECT_NEAR(r.ratio(), 1.12988247841, 1e-7);
    EXPECT_NEAR(r.joint->ee, 22.1658854218, 1e-6);
    EXPECT_NEAR(r.power_only->ee, 19.6178680928, 1e-6);
}

TEST(Compare, CsvSchema)
{
    const auto rows = run_compare(default_scenario(), "user_count", {10, 50});
    std::ostringstream os;
    write_compare_csv(os, "user_count", rows);
    const auto ls = lines(os.str());
    ASSERT_EQ(ls.size(), 3u);
    EXPECT_EQ(ls[0], std::string(kCompareCsvHeader));
    EXPECT_EQ(fields(ls[1]), 12u);
    EXPECT_EQ(fields(ls[2]), 12u);
}

Scenario light(Scenario sc)
{
    sc.verify.mc_samples = 200000;
    sc.verify.grid_power = 200;
    sc.verify.grid_rate = 200;
    return sc;
}

TEST(Verify, DefaultScenarioPasses)
{
    const auto rep = run_verify(light(default_scenario()));
    EXPECT_TRUE(rep.passed());
    std::vector<std::string> names;
    for (const auto& c : rep.checks) {
        names.push_back(c.name);
        EXPECT_EQ(c.status, CheckStatus::Pass) << c.name << " " << c.detail;
    }
    EXPECT_EQ(names, (std::vector<std::string>{"converged", "feasibility", "mc_outage_g0", "mc_throughput_g0",
                                               "mc_outage_g1", "mc_throughput_g1", "grid_optimality"}));
}

TEST(Verify, CorruptedPowerFailsMonteCarlo)
{
    VerifyOptions opt;
    opt.corrupt_power = 0.8;
    const auto rep = run_verify(light(default_scenario()), opt);
    EXPECT_FALSE(rep.passed());
    for (const auto& c : rep.checks)
        if (c.name.rfind("mc_", 0) == 0) EXPECT_EQ(c.status, CheckStatus::Fail) << c.name;
}

TEST(Verify, GridSkippedBeyondTwoGroups)
{
    const auto rep = run_verify(light(apply_sweep_value(default_scenario(), "group_count", 3)));
    EXPECT_TRUE(rep.passed());
    EXPECT_EQ(rep.checks.back().name, "grid_optimality");
    EXPECT_EQ(rep.checks.back().status, CheckStatus::Skip);
}

TEST(Verify, InfeasibleScenarioFails)
{
    const auto rep = run_verify(apply_sweep_value(default_scenario(), "interference_threshold_db", -40));
    EXPECT_FALSE(rep.passed());
    EXPECT_EQ(rep.solve.status, kExitInfeasible);
}

TEST(Verify, CsvByteIdentical)
{
    const auto sc = light(default_scenario());
    std::ostringstream a, b;
    write_verify_csv(a, run_verify(sc));
    write_verify_csv(b, run_verify(sc));
    EXPECT_EQ(a.str(), b.str());
    const auto ls = lines(a.str());
    EXPECT_EQ(ls[0], "check,status,value,reference,bound,detail");
    for (const auto& l : ls) EXPECT_EQ(fields(l), 6u) << l;
}

TEST(StatusName, Mapping)
{
    EXPECT_EQ(status_name(kExitOk), "ok");
    EXPECT_EQ(status_name(kExitNotConverged), "not_converged");
    EXPECT_EQ(status_name(kExitInfeasible), "infeasible");
    EXPECT_EQ(status_name(kExitNumerical), "numerical");
    EXPECT_EQ(status_name(kExitScenario), "invalid");
}

}  // namespace
}  // namespace cogmc
