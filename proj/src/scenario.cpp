#include "cogmc/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "default_scenario.hpp"

namespace cogmc {

namespace {

int line_of(const YAML::Node& node) { return node.Mark().line >= 0 ? node.Mark().line + 1 : 0; }

[[noreturn]] void fail(const YAML::Node& node, const std::string& field, const std::string& what)
{
    throw ScenarioError(what, line_of(node), field);
}

void reject_unknown(const YAML::Node& map, const std::set<std::string>& allowed, const std::string& where)
{
    for (const auto& kv : map) {
        const auto key = kv.first.as<std::string>();
        if (!allowed.count(key)) fail(kv.first, where + key, "unknown key '" + key + "'");
    }
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& field)
{
    if (!node.IsScalar()) fail(node, field, "expected a scalar value");
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        fail(node, field, "cannot convert '" + node.Scalar() + "'");
    }
}

double number(const YAML::Node& node, const std::string& field)
{
    const auto v = scalar<double>(node, field);
    if (!std::isfinite(v)) fail(node, field, "value must be finite");
    return v;
}

// Reads `key` (linear) or `key_db`, never both. Returns std::nullopt when absent.
std::optional<double> linear_or_db(const YAML::Node& map, const std::string& key, const std::string& where)
{
    const auto lin = map[key];
    const auto db = map[key + "_db"];
    if (lin && db) fail(db, where + key + "_db", "both '" + key + "' and '" + key + "_db' given");
    if (lin) return number(lin, where + key);
    if (db) return db_to_linear(number(db, where + key + "_db"));
    return std::nullopt;
}

double required_linear_or_db(const YAML::Node& map, const std::string& key, const std::string& where)
{
    auto v = linear_or_db(map, key, where);
    if (!v) fail(map, where + key, "missing required key '" + key + "' (or '" + key + "_db')");
    return *v;
}

GroupConfig parse_group(const YAML::Node& node, const std::string& where)
{
    if (!node.IsMap()) fail(node, where, "group must be a mapping");
    reject_unknown(node,
                   {"user_count", "mean_gain_ss", "mean_gain_sp", "interference_threshold", "interference_threshold_db",
                    "rate_min", "rate_max", "outage_max"},
                   where);
    auto need = [&](const char* key) {
        const auto n = node[key];
        if (!n) fail(node, where + key, std::string("missing required key '") + key + "'");
        return n;
    };
    GroupConfig g;
    g.user_count = scalar<int>(need("user_count"), where + "user_count");
    g.mean_gain_ss = number(need("mean_gain_ss"), where + "mean_gain_ss");
    g.mean_gain_sp = number(need("mean_gain_sp"), where + "mean_gain_sp");
    g.interference_threshold = required_linear_or_db(node, "interference_threshold", where);
    g.rate_min = number(need("rate_min"), where + "rate_min");
    g.rate_max = number(need("rate_max"), where + "rate_max");
    g.outage_max = number(need("outage_max"), where + "outage_max");
    try {
        g.validate();
    } catch (const DomainError& e) {
        fail(node, where, e.what());
    }
    return g;
}

void parse_settings(const YAML::Node& node, DescentSettings& s)
{
    if (!node.IsMap()) fail(node, "settings", "settings must be a mapping");
    reject_unknown(node, {"ee_rel_tol", "max_iterations", "init_power_fraction"}, "settings.");
    if (node["ee_rel_tol"]) s.ee_rel_tol = number(node["ee_rel_tol"], "settings.ee_rel_tol");
    if (node["max_iterations"]) s.max_iterations = scalar<int>(node["max_iterations"], "settings.max_iterations");
    if (node["init_power_fraction"])
        s.init_power_fraction = number(node["init_power_fraction"], "settings.init_power_fraction");
    try {
        s.validate();
    } catch (const DomainError& e) {
        fail(node, "settings", e.what());
    }
}

void parse_verify(const YAML::Node& node, VerifyConfig& v)
{
    if (!node.IsMap()) fail(node, "verify", "verify must be a mapping");
    reject_unknown(node, {"seed", "mc_samples", "grid_power", "grid_rate"}, "verify.");
    if (node["seed"]) v.seed = scalar<std::uint64_t>(node["seed"], "verify.seed");
    if (node["mc_samples"]) v.mc_samples = scalar<std::uint64_t>(node["mc_samples"], "verify.mc_samples");
    if (node["grid_power"]) v.grid_power = scalar<std::size_t>(node["grid_power"], "verify.grid_power");
    if (node["grid_rate"]) v.grid_rate = scalar<std::size_t>(node["grid_rate"], "verify.grid_rate");
    if (v.mc_samples < 1) fail(node["mc_samples"], "verify.mc_samples", "mc_samples must be >= 1");
    if (v.grid_power < 1 || v.grid_rate < 1) fail(node, "verify", "grid sizes must be >= 1");
}

SweepSpec parse_sweep(const YAML::Node& node)
{
    if (!node.IsMap()) fail(node, "sweep", "sweep must be a mapping");
    reject_unknown(node, {"param", "values"}, "sweep.");
    SweepSpec sw;
    if (!node["param"]) fail(node, "sweep.param", "missing required key 'param'");
    sw.param = scalar<std::string>(node["param"], "sweep.param");
    bool known = false;
    for (auto p : kSweepParams) known = known || p == sw.param;
    if (!known) fail(node["param"], "sweep.param", "unknown sweep parameter '" + sw.param + "'");
    const auto vals = node["values"];
    if (!vals || !vals.IsSequence() || vals.size() == 0)
        fail(vals ? vals : node, "sweep.values", "values must be a non-empty list");
    for (const auto& v : vals) sw.values.push_back(number(v, "sweep.values"));
    return sw;
}

}  // namespace

ScenarioError::ScenarioError(const std::string& message, int line, std::string field)
    : std::runtime_error(
          (line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
          (field.empty() ? std::string() : field + ": ") + message),
      line_(line),
      field_(std::move(field))
{
}

SystemConfig Scenario::system() const { return SystemConfig(groups, noise_power, circuit_power); }

Scenario parse_scenario(std::string_view text)
{
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        throw ScenarioError(e.msg, e.mark.line >= 0 ? e.mark.line + 1 : 0, "");
    }
    if (!root.IsMap()) throw ScenarioError("scenario must be a mapping", line_of(root), "");
    reject_unknown(root,
                   {"schema_version", "noise_power", "noise_power_db", "circuit_power", "circuit_power_db",
                    "group_count", "group", "groups", "settings", "verify", "sweep"},
                   "");

    Scenario sc;
    if (!root["schema_version"]) fail(root, "schema_version", "missing required key 'schema_version'");
    sc.schema_version = scalar<int>(root["schema_version"], "schema_version");
    if (sc.schema_version != kScenarioSchemaVersion)
        fail(root["schema_version"], "schema_version",
             "unsupported schema_version " + std::to_string(sc.schema_version) + " (expected " +
                 std::to_string(kScenarioSchemaVersion) + ")");

    sc.noise_power = required_linear_or_db(root, "noise_power", "");
    if (!(sc.noise_power > 0.0)) fail(root, "noise_power", "noise power must be > 0");
    sc.circuit_power = required_linear_or_db(root, "circuit_power", "");
    if (!(sc.circuit_power >= 0.0)) fail(root, "circuit_power", "circuit power must be >= 0");

    const auto tmpl = root["group"];
    const auto list = root["groups"];
    if (tmpl && list) fail(list, "groups", "give either 'group' with 'group_count' or 'groups', not both");
    if (tmpl) {
        const auto count = root["group_count"];
        if (!count) fail(tmpl, "group_count", "'group' requires 'group_count'");
        const int n = scalar<int>(count, "group_count");
        if (n < 1) fail(count, "group_count", "group_count must be >= 1");
        sc.group_template = parse_group(tmpl, "group.");
        sc.groups.assign(static_cast<std::size_t>(n), *sc.group_template);
    } else if (list) {
        if (root["group_count"]) fail(root["group_count"], "group_count", "group_count only applies to 'group'");
        if (!list.IsSequence() || list.size() == 0) fail(list, "groups", "groups must be a non-empty list");
        for (std::size_t i = 0; i < list.size(); ++i)
            sc.groups.push_back(parse_group(list[i], "groups[" + std::to_string(i) + "]."));
    } else {
        fail(root, "groups", "missing 'group' or 'groups'");
    }

    if (root["settings"]) parse_settings(root["settings"], sc.settings);
    if (root["verify"]) parse_verify(root["verify"], sc.verify);
    if (root["sweep"]) {
        sc.sweep = parse_sweep(root["sweep"]);
        if (sc.sweep->param == "group_count" && !sc.group_template)
            fail(root["sweep"], "sweep.param", "a group_count sweep requires the 'group' template form");
    }
    return sc;
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file '" + path + "'", 0, "");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::string_view default_scenario_text() { return kDefaultScenarioYaml; }

Scenario apply_sweep_value(const Scenario& base, std::string_view param, double value)
{
    Scenario sc = base;
    auto integral = [&](const char* name) {
        if (value != std::floor(value) || value < 1.0 || value > 1e9)
            throw DomainError(std::string(name) + " must be a positive integer");
        return static_cast<int>(value);
    };
    if (param == "user_count") {
        const int k = integral("user_count");
        for (auto& g : sc.groups) g.user_count = k;
        if (sc.group_template) sc.group_template->user_count = k;
    } else if (param == "group_count") {
        if (!sc.group_template) throw DomainError("a group_count sweep requires the 'group' template form");
        sc.groups.assign(static_cast<std::size_t>(integral("group_count")), *sc.group_template);
    } else if (param == "interference_threshold" || param == "interference_threshold_db") {
        const double q = param == "interference_threshold" ? value : db_to_linear(value);
        if (!(q > 0.0)) throw DomainError("interference_threshold must be > 0");
        for (auto& g : sc.groups) g.interference_threshold = q;
        if (sc.group_template) sc.group_template->interference_threshold = q;
    } else if (param == "circuit_power" || param == "circuit_power_db") {
        const double pc = param == "circuit_power" ? value : db_to_linear(value);
        if (!(pc >= 0.0)) throw DomainError("circuit_power must be >= 0");
        sc.circuit_power = pc;
    } else {
        throw DomainError("unknown sweep parameter '" + std::string(param) + "'");
    }
    return sc;
}

}  // namespace cogmc
