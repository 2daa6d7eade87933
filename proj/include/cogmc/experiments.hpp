#pragma once

// Scenario-level drivers behind the command-line verbs, and their CSV output.
// CSV files are UTF-8, comma separated, LF terminated, with a header row;
// numbers use 12 significant digits and per-group values are joined with ';'.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cogmc/descent.hpp"
#include "cogmc/scenario.hpp"

namespace cogmc {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitInternal = 1,
    kExitUsage = 2,
    kExitScenario = 3,
    kExitInfeasible = 4,
    kExitNotConverged = 5,
    kExitNumerical = 6,
    kExitVerifyFailed = 7,
    kExitTrendFailed = 8,
};

/// Outcome class of one sweep point: ok, not_converged, infeasible, numerical, invalid.
std::string_view status_name(ExitCode code);

/// Formats with 12 significant digits.
std::string format_number(double v);

struct PointResult {
    std::optional<double> value;  // swept value, absent for a plain solve
    ExitCode status = kExitOk;
    std::string error;
    std::size_t groups = 0;
    std::optional<SolveReport> report;
};

/// Solves one scenario. Never throws for solver-level failures; they are
/// recorded in `status` and `error`.
PointResult solve_scenario(const Scenario& sc);

/// One row per value, in the order given. Points run in parallel.
std::vector<PointResult> run_sweep(const Scenario& base, std::string_view param, const std::vector<double>& values);

inline constexpr std::string_view kSweepCsvHeader =
    "param,value,status,groups,ee,iterations,converged,power,rate,outage,throughput";

void write_sweep_csv(std::ostream& os, std::string_view param, const std::vector<PointResult>& rows);

/// Trend rules by swept parameter. user_count: power non-decreasing, rate and
/// EE non-increasing with K. group_count: power and rate non-increasing, EE
/// strictly increasing with G. Rows are ordered by value first; failed rows
/// are a violation. Returns one message per violation; `rule_found` reports
/// whether the parameter has rules at all.
std::vector<std::string> check_trends(std::string_view param, const std::vector<PointResult>& rows,
                                      bool* rule_found = nullptr);

struct CompareResult {
    std::optional<double> value;
    ExitCode status = kExitOk;
    std::string error;
    std::size_t groups = 0;
    std::optional<SolveReport> joint;
    std::optional<SolveReport> power_only;  // every rate fixed at rate_max

    double ratio() const { return joint->ee / power_only->ee; }
};

std::vector<CompareResult> run_compare(const Scenario& base, std::string_view param, const std::vector<double>& values);
CompareResult compare_scenario(const Scenario& sc);

inline constexpr std::string_view kCompareCsvHeader =
    "param,value,status,groups,ee_joint,ee_power_only,ratio,iterations_joint,iterations_power_only,power_joint,"
    "rate_joint,power_power_only";

void write_compare_csv(std::ostream& os, std::string_view param, const std::vector<CompareResult>& rows);

enum class CheckStatus { Pass, Fail, Skip };

struct VerifyCheck {
    std::string name;
    CheckStatus status = CheckStatus::Skip;
    double value = 0.0;      // measured quantity
    double reference = 0.0;  // what it is compared against
    double bound = 0.0;      // allowed deviation or threshold
    std::string detail;
};

struct VerifyOptions {
    /// Power actually simulated is the solved power times this factor.
    /// Anything but 1 corrupts the allocation under test.
    double corrupt_power = 1.0;
    /// Relative EE shortfall allowed against the grid optimum.
    double grid_rel_tol = 5e-3;
};

struct VerifyReport {
    PointResult solve;
    std::vector<VerifyCheck> checks;

    bool passed() const;
};

/// Solves the scenario, then checks feasibility, convergence, Monte Carlo
/// outage and throughput of every group (3 standard errors) and, for at most
/// two groups, optimality against the grid search.
VerifyReport run_verify(const Scenario& sc, const VerifyOptions& options = {});

inline constexpr std::string_view kVerifyCsvHeader = "check,status,value,reference,bound,detail";

void write_verify_csv(std::ostream& os, const VerifyReport& report);

/// Human-readable summary of one solve.
void print_solve_summary(std::ostream& os, const Scenario& sc, const PointResult& result);

}  // namespace cogmc
