#include "cogmc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "cogmc/oracle.hpp"

namespace cogmc {

namespace {

template <typename F>
std::string join(std::size_t n, F&& element)
{
    std::string out;
    for (std::size_t i = 0; i < n; ++i) {
        if (i) out += ';';
        out += format_number(element(i));
    }
    return out;
}

bool leq(double a, double b) { return a <= b + 1e-9 * std::max(std::abs(a), std::abs(b)); }

std::string value_field(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

template <typename Row, typename F>
std::vector<Row> run_points(const Scenario& base, std::string_view param, const std::vector<double>& values, F&& run)
{
    std::vector<Row> rows(values.size());
    const auto n = static_cast<std::int64_t>(values.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        Row row;
        try {
            row = run(apply_sweep_value(base, param, values[idx]));
        } catch (const std::exception& e) {
            row.status = kExitUsage;
            row.error = e.what();
        }
        row.value = values[idx];
        rows[idx] = std::move(row);
    }
    return rows;
}

// Runs `body` and maps library exceptions to an exit code and message.
template <typename Row, typename F>
void guarded(Row& row, F&& body)
{
    try {
        body();
    } catch (const InfeasibleError& e) {
        row.status = kExitInfeasible;
        row.error = e.what();
    } catch (const NumericalError& e) {
        row.status = kExitNumerical;
        row.error = e.what();
    } catch (const DomainError& e) {
        row.status = kExitScenario;
        row.error = e.what();
    }
}

const char* check_status_name(CheckStatus s)
{
    switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skip: return "skip";
    }
    return "unknown";
}

std::string csv_text(std::string s)
{
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

}  // namespace

std::string_view status_name(ExitCode code)
{
    switch (code) {
    case kExitOk: return "ok";
    case kExitNotConverged: return "not_converged";
    case kExitInfeasible: return "infeasible";
    case kExitNumerical: return "numerical";
    case kExitScenario:
    case kExitUsage: return "invalid";
    default: return "error";
    }
}

std::string format_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

PointResult solve_scenario(const Scenario& sc)
{
    PointResult out;
    out.groups = sc.groups.size();
    guarded(out, [&] {
        const auto sys = sc.system();
        out.report = solve(sys, sc.settings);
        out.status = out.report->converged ? kExitOk : kExitNotConverged;
    });
    return out;
}

std::vector<PointResult> run_sweep(const Scenario& base, std::string_view param, const std::vector<double>& values)
{
    return run_points<PointResult>(base, param, values, solve_scenario);
}

void write_sweep_csv(std::ostream& os, std::string_view param, const std::vector<PointResult>& rows)
{
    os << kSweepCsvHeader << '\n';
    for (const auto& row : rows) {
        os << param << ',' << value_field(row.value) << ',' << status_name(row.status) << ',' << row.groups;
        if (row.report) {
            const auto& r = *row.report;
            const auto n = r.allocation.size();
            os << ',' << format_number(r.ee) << ',' << r.iterations_used << ',' << (r.converged ? "true" : "false")
               << ',' << join(n, [&](std::size_t g) { return r.allocation.power[g]; }) << ','
               << join(n, [&](std::size_t g) { return r.allocation.rate[g]; }) << ','
               << join(n, [&](std::size_t g) { return r.per_group[g].outage; }) << ','
               << join(n, [&](std::size_t g) { return r.per_group[g].throughput; });
        } else {
            os << ",,,,,,,";
        }
        os << '\n';
    }
}

std::vector<std::string> check_trends(std::string_view param, const std::vector<PointResult>& rows, bool* rule_found)
{
    std::vector<std::string> bad;
    const bool by_k = param == "user_count";
    const bool by_g = param == "group_count";
    if (rule_found) *rule_found = by_k || by_g;
    if (!by_k && !by_g) return bad;

    std::vector<const PointResult*> sorted;
    for (const auto& r : rows) {
        if (!r.report) {
            bad.push_back("point " + value_field(r.value) + " failed: " + std::string(status_name(r.status)));
            continue;
        }
        sorted.push_back(&r);
    }
    std::stable_sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return *a->value < *b->value; });

    for (std::size_t i = 1; i < sorted.size(); ++i) {
        const auto& lo = *sorted[i - 1]->report;
        const auto& hi = *sorted[i]->report;
        const std::string span = value_field(sorted[i - 1]->value) + " -> " + value_field(sorted[i]->value);
        const auto common = std::min(lo.allocation.size(), hi.allocation.size());
        for (std::size_t g = 0; g < common; ++g) {
            const double p0 = lo.allocation.power[g], p1 = hi.allocation.power[g];
            const double r0 = lo.allocation.rate[g], r1 = hi.allocation.rate[g];
            const std::string grp = " (group " + std::to_string(g) + ", " + span + ")";
            if (by_k && !leq(p0, p1)) bad.push_back("power decreased with user_count" + grp);
            if (by_g && !leq(p1, p0)) bad.push_back("power increased with group_count" + grp);
            if (!leq(r1, r0)) bad.push_back("rate increased with " + std::string(param) + grp);
        }
        if (by_k && !leq(hi.ee, lo.ee)) bad.push_back("EE increased with user_count (" + span + ")");
        if (by_g && !(hi.ee > lo.ee)) bad.push_back("EE did not increase with group_count (" + span + ")");
    }
    return bad;
}

CompareResult compare_scenario(const Scenario& sc)
{
    CompareResult out;
    out.groups = sc.groups.size();
    guarded(out, [&] {
        const auto sys = sc.system();
        out.joint = solve(sys, sc.settings);
        std::vector<double> rates;
        for (const auto& g : sc.groups) rates.push_back(g.rate_max);
        out.power_only = solve_power_only(sys, rates, sc.settings);
        out.status = out.joint->converged && out.power_only->converged ? kExitOk : kExitNotConverged;
    });
    return out;
}

std::vector<CompareResult> run_compare(const Scenario& base, std::string_view param, const std::vector<double>& values)
{
    return run_points<CompareResult>(base, param, values, compare_scenario);
}

void write_compare_csv(std::ostream& os, std::string_view param, const std::vector<CompareResult>& rows)
{
    os << kCompareCsvHeader << '\n';
    for (const auto& row : rows) {
        os << param << ',' << value_field(row.value) << ',' << status_name(row.status) << ',' << row.groups;
        if (row.joint && row.power_only) {
            const auto& j = *row.joint;
            const auto& p = *row.power_only;
            const auto n = j.allocation.size();
            os << ',' << format_number(j.ee) << ',' << format_number(p.ee) << ',' << format_number(row.ratio()) << ','
               << j.iterations_used << ',' << p.iterations_used << ','
               << join(n, [&](std::size_t g) { return j.allocation.power[g]; }) << ','
               << join(n, [&](std::size_t g) { return j.allocation.rate[g]; }) << ','
               << join(n, [&](std::size_t g) { return p.allocation.power[g]; });
        } else {
            os << ",,,,,,,,";
        }
        os << '\n';
    }
}

bool VerifyReport::passed() const
{
    return std::none_of(checks.begin(), checks.end(), [](const auto& c) { return c.status == CheckStatus::Fail; });
}

VerifyReport run_verify(const Scenario& sc, const VerifyOptions& options)
{
    VerifyReport rep;
    rep.solve = solve_scenario(sc);
    if (!rep.solve.report) {
        rep.checks.push_back({"solve", CheckStatus::Fail, 0, 0, 0, rep.solve.error});
        return rep;
    }
    const auto sys = sc.system();
    const auto& sol = *rep.solve.report;
    const auto& alloc = sol.allocation;

    rep.checks.push_back({"converged", sol.converged ? CheckStatus::Pass : CheckStatus::Fail,
                          static_cast<double>(sol.iterations_used), static_cast<double>(sc.settings.max_iterations), 0,
                          ""});

    VerifyCheck feas{"feasibility", CheckStatus::Pass, 0, 0, 0, ""};
    try {
        check_feasible(sys, alloc);
        for (std::size_t g = 0; g < sys.group_count(); ++g) {
            const auto& grp = sys.group(g);
            const double worst = group_outage(alloc.power[g], grp.rate_min, grp, sys.noise_power());
            feas.value = std::max(feas.value, worst - grp.outage_max);
            if (worst > grp.outage_max * (1.0 + 1e-12)) {
                feas.status = CheckStatus::Fail;
                feas.detail = "outage at rate_min exceeds outage_max in group " + std::to_string(g);
            }
        }
    } catch (const NumericalError& e) {
        feas.status = CheckStatus::Fail;
        feas.detail = e.what();
    }
    rep.checks.push_back(feas);

    for (std::size_t g = 0; g < sys.group_count(); ++g) {
        const auto& grp = sys.group(g);
        const double p = alloc.power[g];
        const double r = alloc.rate[g];
        const McSettings mc{sc.verify.mc_samples, sc.verify.seed + g};
        const auto est = mc_group_outage(p * options.corrupt_power, r, grp, sys.noise_power(), mc);
        const auto exact = group_metrics(p, r, grp, sys.noise_power());
        const double n = static_cast<double>(mc.samples);
        const double sigma = std::max(est.stderr_outage, std::sqrt(exact.outage * (1.0 - exact.outage) / n));
        const std::string suffix = "_g" + std::to_string(g);

        VerifyCheck out{"mc_outage" + suffix, CheckStatus::Pass, est.outage_hat, exact.outage, 3.0 * sigma, ""};
        if (std::abs(out.value - out.reference) > out.bound) out.status = CheckStatus::Fail;
        rep.checks.push_back(out);

        VerifyCheck thr{"mc_throughput" + suffix, CheckStatus::Pass, est.throughput_hat, exact.throughput,
                        3.0 * r * sigma, ""};
        if (std::abs(thr.value - thr.reference) > thr.bound) thr.status = CheckStatus::Fail;
        rep.checks.push_back(thr);
    }

    VerifyCheck grid{"grid_optimality", CheckStatus::Skip, sol.ee, 0, options.grid_rel_tol, ""};
    if (sys.group_count() <= kGridMaxGroups) {
        const auto best = grid_search(sys, sc.verify.grid_power, sc.verify.grid_rate);
        grid.reference = best.ee;
        grid.status = sol.ee >= best.ee * (1.0 - options.grid_rel_tol) ? CheckStatus::Pass : CheckStatus::Fail;
    } else {
        grid.detail = "skipped: more than " + std::to_string(kGridMaxGroups) + " groups";
    }
    rep.checks.push_back(grid);
    return rep;
}

void write_verify_csv(std::ostream& os, const VerifyReport& report)
{
    os << kVerifyCsvHeader << '\n';
    for (const auto& c : report.checks)
        os << c.name << ',' << check_status_name(c.status) << ',' << format_number(c.value) << ','
           << format_number(c.reference) << ',' << format_number(c.bound) << ',' << csv_text(c.detail) << '\n';
}

void print_solve_summary(std::ostream& os, const Scenario& sc, const PointResult& result)
{
    os << "groups: " << sc.groups.size() << "  noise: " << format_number(sc.noise_power)
       << " W  circuit: " << format_number(sc.circuit_power) << " W\n";
    if (!result.report) {
        os << "status: " << status_name(result.status) << " (" << result.error << ")\n";
        return;
    }
    const auto& r = *result.report;
    os << "status: " << status_name(result.status) << "  iterations: " << r.iterations_used << "\n";
    os << "energy efficiency: " << format_number(r.ee) << " (bps/Hz)/W\n";
    for (std::size_t g = 0; g < r.allocation.size(); ++g)
        os << "  group " << g << ": power " << format_number(r.allocation.power[g]) << " W  rate "
           << format_number(r.allocation.rate[g]) << " bps/Hz  outage " << format_number(r.per_group[g].outage)
           << "  throughput " << format_number(r.per_group[g].throughput) << " bps/Hz  ["
           << to_string(r.power_cases[g]) << "]\n";
}

}  // namespace cogmc
