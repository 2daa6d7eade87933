// cogmc: energy-efficient joint power and rate allocation for cognitive radio
// multicast groups.
//
//   cogmc solve   [--scenario f.yaml] [--out row.csv]
//   cogmc sweep   [--scenario f.yaml] [--param user_count --values 10,20,30] --out sweep.csv [--assert-trends]
//   cogmc compare [--scenario f.yaml] [--param ... --values ...] --out compare.csv
//   cogmc verify  [--scenario f.yaml] [--seed N] [--samples N] [--out checks.csv] [--corrupt-power F]
//
// Without --scenario the bundled default scenario is used.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cogmc/experiments.hpp"
#include "cogmc/scenario.hpp"

namespace {

using namespace cogmc;

struct Common {
    std::string scenario;
    std::string out;
    std::optional<int> max_iter;
    std::optional<double> tol;
};

struct SweepArgs {
    std::string param;
    std::string values;
    bool assert_trends = false;
};

void add_common(CLI::App* cmd, Common& c)
{
    cmd->add_option("--scenario", c.scenario, "Scenario file (YAML); defaults to the bundled scenario");
    cmd->add_option("--out", c.out, "CSV output path");
    cmd->add_option("--max-iter", c.max_iter, "Override settings.max_iterations")->check(CLI::PositiveNumber);
    cmd->add_option("--tol", c.tol, "Override settings.ee_rel_tol")->check(CLI::PositiveNumber);
}

void add_sweep(CLI::App* cmd, SweepArgs& s)
{
    cmd->add_option("--param", s.param, "Swept parameter (overrides the scenario's sweep)");
    cmd->add_option("--values", s.values, "Comma-separated sweep values");
}

Scenario load(const Common& c)
{
    Scenario sc = c.scenario.empty() ? parse_scenario(default_scenario_text()) : load_scenario(c.scenario);
    if (c.max_iter) sc.settings.max_iterations = *c.max_iter;
    if (c.tol) sc.settings.ee_rel_tol = *c.tol;
    return sc;
}

std::vector<double> parse_values(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos)
            throw CLI::ValidationError("--values", "not a number: '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw CLI::ValidationError("--values", "empty list");
    return out;
}

// Resolves the sweep from flags or the scenario; with neither, a single point.
SweepSpec resolve_sweep(const Scenario& sc, const SweepArgs& args)
{
    if (!args.param.empty()) {
        if (args.values.empty()) throw CLI::ValidationError("--values", "required with --param");
        return {args.param, parse_values(args.values)};
    }
    if (!args.values.empty()) throw CLI::ValidationError("--param", "required with --values");
    if (sc.sweep) return *sc.sweep;
    return {"user_count", {static_cast<double>(sc.groups.front().user_count)}};
}

template <typename W>
int write_output(const std::string& path, W&& writer)
{
    if (path.empty()) {
        writer(std::cout);
        return kExitOk;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        std::cerr << "error: cannot write '" << path << "'\n";
        return kExitInternal;
    }
    writer(os);
    return kExitOk;
}

template <typename Rows>
int first_failure(const Rows& rows)
{
    for (const auto& r : rows)
        if (r.status != kExitOk) return r.status;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Energy-efficient joint rate and power allocation for cognitive radio multicast"};
    app.require_subcommand(1);

    Common common;
    SweepArgs sweep_args;
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;
    double corrupt = 1.0;

    auto* solve_cmd = app.add_subcommand("solve", "Solve one scenario and print the allocation");
    add_common(solve_cmd, common);

    auto* sweep_cmd = app.add_subcommand("sweep", "Solve over a list of parameter values");
    add_common(sweep_cmd, common);
    add_sweep(sweep_cmd, sweep_args);
    sweep_cmd->add_flag("--assert-trends", sweep_args.assert_trends, "Fail unless the documented trends hold");

    auto* compare_cmd = app.add_subcommand("compare", "Joint allocation against power-only adaptation at rate_max");
    add_common(compare_cmd, common);
    add_sweep(compare_cmd, sweep_args);

    auto* verify_cmd = app.add_subcommand("verify", "Check a solve against Monte Carlo and grid-search oracles");
    add_common(verify_cmd, common);
    auto* seed_opt = verify_cmd->add_option("--seed", seed, "Monte Carlo seed");
    auto* samples_opt = verify_cmd->add_option("--samples", samples, "Monte Carlo trials per group")
                            ->check(CLI::PositiveNumber);
    verify_cmd->add_option("--corrupt-power", corrupt, "Scale the simulated power (negative control)")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        Scenario sc = load(common);

        if (*solve_cmd) {
            const auto res = solve_scenario(sc);
            print_solve_summary(std::cout, sc, res);
            if (!common.out.empty()) {
                const int rc = write_output(common.out, [&](std::ostream& os) { write_sweep_csv(os, "none", {res}); });
                if (rc != kExitOk) return rc;
            }
            if (res.status != kExitOk) std::cerr << "error: " << res.error << '\n';
            return res.status;
        }

        if (*sweep_cmd) {
            const auto spec = resolve_sweep(sc, sweep_args);
            const auto rows = run_sweep(sc, spec.param, spec.values);
            if (const int rc = write_output(common.out, [&](std::ostream& os) { write_sweep_csv(os, spec.param, rows); });
                rc != kExitOk)
                return rc;
            for (const auto& r : rows)
                if (!r.error.empty()) std::cerr << "point " << format_number(*r.value) << ": " << r.error << '\n';
            if (sweep_args.assert_trends) {
                bool known = false;
                const auto bad = check_trends(spec.param, rows, &known);
                if (!known) {
                    std::cerr << "error: no trend rule for parameter '" << spec.param << "'\n";
                    return kExitUsage;
                }
                for (const auto& b : bad) std::cerr << "trend violated: " << b << '\n';
                if (!bad.empty()) return kExitTrendFailed;
                std::cerr << "trends hold for " << spec.param << '\n';
            }
            return first_failure(rows);
        }

        if (*compare_cmd) {
            const auto spec = resolve_sweep(sc, sweep_args);
            const auto rows = run_compare(sc, spec.param, spec.values);
            if (const int rc =
                    write_output(common.out, [&](std::ostream& os) { write_compare_csv(os, spec.param, rows); });
                rc != kExitOk)
                return rc;
            return first_failure(rows);
        }

        if (*verify_cmd) {
            if (*seed_opt) sc.verify.seed = seed;
            if (*samples_opt) sc.verify.mc_samples = samples;
            const auto rep = run_verify(sc, VerifyOptions{corrupt});
            for (const auto& c : rep.checks) {
                const char* tag = c.status == CheckStatus::Pass ? "PASS" : c.status == CheckStatus::Fail ? "FAIL" : "SKIP";
                std::cerr << tag << ' ' << c.name << "  value=" << format_number(c.value)
                          << " reference=" << format_number(c.reference) << " bound=" << format_number(c.bound);
                if (!c.detail.empty()) std::cerr << "  " << c.detail;
                std::cerr << '\n';
            }
            if (const int rc = write_output(common.out, [&](std::ostream& os) { write_verify_csv(os, rep); });
                rc != kExitOk)
                return rc;
            if (!rep.solve.report) return rep.solve.status;
            return rep.passed() ? kExitOk : kExitVerifyFailed;
        }
    } catch (const ScenarioError& e) {
        std::cerr << "scenario error: " << e.what() << '\n';
        return kExitScenario;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitInternal;
}
