#include "btcsim/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

namespace btcsim {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError("config: " + path + ": " + what);
}

double as_double(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<int>();
}

bool as_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) fail(path, "expected a boolean");
    return j.get<bool>();
}

std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

void apply_curve(const json& j, FittedExponential& curve, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object {a, b, t_offset}");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string sub = path + "." + it.key();
        if (it.key() == "a") {
            curve.a = as_double(it.value(), sub);
        } else if (it.key() == "b") {
            curve.b = as_double(it.value(), sub);
        } else if (it.key() == "t_offset") {
            curve.t_offset = as_double(it.value(), sub);
        } else {
            fail(sub, "unknown key");
        }
    }
}

//! Field tables shared by the parser and the serializer so the two cannot drift.
struct CalibrationFields {
    std::map<std::string, double CalibrationSet::*> doubles;
    std::map<std::string, int CalibrationSet::*> ints;
    std::map<std::string, FittedExponential CalibrationSet::*> curves;
};

const CalibrationFields& calibration_fields() {
    static const CalibrationFields fields = {
        {
            {"electricity_price", &CalibrationSet::electricity_price},
            {"reward_before_halving", &CalibrationSet::reward_before_halving},
            {"reward_after_halving", &CalibrationSet::reward_after_halving},
            {"initial_price", &CalibrationSet::initial_price},
            {"final_traders", &CalibrationSet::final_traders},
            {"initial_bitcoins", &CalibrationSet::initial_bitcoins},
            {"richest_bitcoins", &CalibrationSet::richest_bitcoins},
            {"richest_cash", &CalibrationSet::richest_cash},
            {"entrant_cash_scale", &CalibrationSet::entrant_cash_scale},
            {"entrant_alpha", &CalibrationSet::entrant_alpha},
            {"pool_slack", &CalibrationSet::pool_slack},
            {"initial_miner_hash", &CalibrationSet::initial_miner_hash},
            {"initial_miner_power", &CalibrationSet::initial_miner_power},
            {"gamma1_mean", &CalibrationSet::gamma1_mean},
            {"gamma1_sd", &CalibrationSet::gamma1_sd},
            {"gamma_mean", &CalibrationSet::gamma_mean},
            {"gamma_sd", &CalibrationSet::gamma_sd},
            {"decision_period", &CalibrationSet::decision_period},
            {"decision_sd", &CalibrationSet::decision_sd},
            {"trigger_threshold", &CalibrationSet::trigger_threshold},
            {"trigger_fraction", &CalibrationSet::trigger_fraction},
            {"divest_margin", &CalibrationSet::divest_margin},
            {"chartist_threshold", &CalibrationSet::chartist_threshold},
            {"chartist_window_mean", &CalibrationSet::chartist_window_mean},
            {"chartist_window_sd", &CalibrationSet::chartist_window_sd},
            {"contrarian_fraction", &CalibrationSet::contrarian_fraction},
            {"beta_random_mean", &CalibrationSet::beta_random_mean},
            {"beta_random_sd", &CalibrationSet::beta_random_sd},
            {"beta_chartist_mean", &CalibrationSet::beta_chartist_mean},
            {"beta_chartist_sd", &CalibrationSet::beta_chartist_sd},
            {"limit_mu", &CalibrationSet::limit_mu},
            {"volatility_gain", &CalibrationSet::volatility_gain},
            {"sigma_lo", &CalibrationSet::sigma_lo},
            {"sigma_hi", &CalibrationSet::sigma_hi},
            {"p_market_miner", &CalibrationSet::p_market_miner},
            {"p_market_random", &CalibrationSet::p_market_random},
            {"p_market_chartist", &CalibrationSet::p_market_chartist},
            {"expiry_random_mean", &CalibrationSet::expiry_random_mean},
            {"expiry_random_sd", &CalibrationSet::expiry_random_sd},
            {"p_active_random", &CalibrationSet::p_active_random},
            {"p_active_chartist", &CalibrationSet::p_active_chartist},
            {"random_share", &CalibrationSet::random_share},
            {"chartist_share", &CalibrationSet::chartist_share},
            {"gox_entry_fraction", &CalibrationSet::gox_entry_fraction},
            {"gox_p_active", &CalibrationSet::gox_p_active},
            {"scale", &CalibrationSet::scale},
        },
        {
            {"halving_step", &CalibrationSet::halving_step},
            {"initial_traders", &CalibrationSet::initial_traders},
            {"trigger_window", &CalibrationSet::trigger_window},
            {"gox_buy_start", &CalibrationSet::gox_buy_start},
            {"gox_sell_start", &CalibrationSet::gox_sell_start},
            {"gox_entry_stop", &CalibrationSet::gox_entry_stop},
            {"horizon", &CalibrationSet::horizon},
        },
        {
            {"hash_rate_curve", &CalibrationSet::hash_rate_curve},
            {"power_curve", &CalibrationSet::power_curve},
            {"trader_count_curve", &CalibrationSet::trader_count_curve},
            {"miner_prob_curve", &CalibrationSet::miner_prob_curve},
        },
    };
    return fields;
}

void apply_calibration(const json& j, CalibrationSet& calib, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    const auto& fields = calibration_fields();
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string sub = path + "." + it.key();
        if (auto d = fields.doubles.find(it.key()); d != fields.doubles.end()) {
            calib.*(d->second) = as_double(it.value(), sub);
        } else if (auto i = fields.ints.find(it.key()); i != fields.ints.end()) {
            calib.*(i->second) = as_int(it.value(), sub);
        } else if (auto c = fields.curves.find(it.key()); c != fields.curves.end()) {
            apply_curve(it.value(), calib.*(c->second), sub);
        } else {
            fail(sub, "unknown key");
        }
    }
}

std::vector<std::uint64_t> as_seeds(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of seeds");
    std::vector<std::uint64_t> seeds;
    seeds.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& e = j[i];
        const std::string sub = path + "[" + std::to_string(i) + "]";
        if (!e.is_number_integer() || (e.is_number_integer() && !e.is_number_unsigned() &&
                                       e.get<std::int64_t>() < 0))
            fail(sub, "expected a non-negative integer");
        seeds.push_back(e.get<std::uint64_t>());
    }
    return seeds;
}

ordered_json curve_to_json(const FittedExponential& c) {
    return ordered_json{{"a", c.a}, {"b", c.b}, {"t_offset", c.t_offset}};
}

}  // namespace

std::vector<std::uint64_t> RunConfig::effective_seeds() const {
    if (!seeds.empty()) return seeds;
    std::vector<std::uint64_t> out;
    out.reserve(static_cast<std::size_t>(runs > 0 ? runs : 0));
    for (int i = 1; i <= runs; ++i) out.push_back(static_cast<std::uint64_t>(i));
    return out;
}

void RunConfig::validate() const {
    if (seeds.empty() && runs < 1) throw ConfigError("config: runs: must be at least 1");
    if (output_dir.empty()) throw ConfigError("config: output_dir: must not be empty");
    try {
        calibration.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

RunConfig parse_config_json(const std::string& text, const RunConfig& base) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be an object");

    RunConfig out = base;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        if (key == "scenario") {
            out.scenario = scenario_from_string(as_string(it.value(), key));
        } else if (key == "runs") {
            out.runs = as_int(it.value(), key);
        } else if (key == "seeds") {
            out.seeds = as_seeds(it.value(), key);
        } else if (key == "output_dir") {
            out.output_dir = as_string(it.value(), key);
        } else if (key == "emit_trades") {
            out.emit_trades = as_bool(it.value(), key);
        } else if (key == "real_price_csv") {
            out.real_price_csv = as_string(it.value(), key);
        } else if (key == "calibration") {
            apply_calibration(it.value(), out.calibration, key);
        } else {
            fail(key, "unknown key");
        }
    }
    return out;
}

RunConfig load_config_file(const std::string& path, const RunConfig& base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_json(buffer.str(), base);
}

std::string config_to_json(const RunConfig& config) {
    const auto& fields = calibration_fields();
    ordered_json calib;
    for (const auto& [name, member] : fields.curves)
        calib[name] = curve_to_json(config.calibration.*member);
    for (const auto& [name, member] : fields.ints)
        calib[name] = config.calibration.*member;
    for (const auto& [name, member] : fields.doubles)
        calib[name] = config.calibration.*member;

    ordered_json j;
    j["scenario"] = to_string(config.scenario);
    j["runs"] = config.runs;
    j["seeds"] = config.seeds;
    j["output_dir"] = config.output_dir;
    j["emit_trades"] = config.emit_trades;
    j["real_price_csv"] = config.real_price_csv;
    j["calibration"] = calib;
    return j.dump(2) + "\n";
}

std::string to_string(Scenario scenario) {
    return scenario == Scenario::Gox ? "gox" : "base";
}

Scenario scenario_from_string(const std::string& name) {
    if (name == "base") return Scenario::Base;
    if (name == "gox") return Scenario::Gox;
    throw ConfigError("config: scenario: unknown value '" + name + "' (use base or gox)");
}

}  // namespace btcsim
