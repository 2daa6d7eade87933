#pragma once

// Scenario files: YAML documents describing one problem instance, solver
// settings, verification settings and an optional sweep.
//
//   schema_version: 1                 # required
//   noise_power_db: -90               # or noise_power (W)
//   circuit_power_db: 1               # or circuit_power (W)
//   group_count: 2                    # replicate `group` this many times ...
//   group: {user_count: 10, ...}
//   groups: [{...}, {...}]            # ... or list every group explicitly
//   settings: {ee_rel_tol, max_iterations, init_power_fraction}
//   verify: {seed, mc_samples, grid_power, grid_rate}
//   sweep: {param: user_count, values: [10, 20]}
//
// Group keys: user_count, mean_gain_ss, mean_gain_sp, interference_threshold
// (or interference_threshold_db), rate_min, rate_max, outage_max. A key with a
// `_db` suffix is converted with 10^(x/10); giving both forms is an error, as
// is any unknown key.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cogmc/descent.hpp"
#include "cogmc/model.hpp"

namespace cogmc {

inline constexpr int kScenarioSchemaVersion = 1;

/// Parse or validation failure anchored to a 1-based line (0 when unknown).
class ScenarioError : public std::runtime_error {
public:
    ScenarioError(const std::string& message, int line, std::string field);

    int line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    int line_;
    std::string field_;
};

struct VerifyConfig {
    std::uint64_t seed = 1;
    std::uint64_t mc_samples = 1'000'000;
    std::size_t grid_power = 500;
    std::size_t grid_rate = 500;
};

struct SweepSpec {
    std::string param;
    std::vector<double> values;
};

struct Scenario {
    int schema_version = kScenarioSchemaVersion;
    double noise_power = 0.0;
    double circuit_power = 0.0;
    std::vector<GroupConfig> groups;
    /// Set when the groups were replicated from a single `group` template.
    std::optional<GroupConfig> group_template;
    DescentSettings settings;
    VerifyConfig verify;
    std::optional<SweepSpec> sweep;

    /// May throw InfeasibleError.
    SystemConfig system() const;
};

Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);

/// The bundled two-group default scenario.
std::string_view default_scenario_text();

/// Names accepted by apply_sweep_value.
inline constexpr std::string_view kSweepParams[] = {
    "user_count", "group_count", "interference_threshold", "interference_threshold_db", "circuit_power",
    "circuit_power_db"};

/// Copy of `base` with one parameter replaced; user_count and the
/// interference threshold apply to every group. Throws DomainError for an
/// unknown parameter or an unusable value.
Scenario apply_sweep_value(const Scenario& base, std::string_view param, double value);

}  // namespace cogmc
