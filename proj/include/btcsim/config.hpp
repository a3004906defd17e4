#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "btcsim/calibration.hpp"
#include "btcsim/trader.hpp"

namespace btcsim {

//! Raised for malformed config files, unknown keys, or invalid values.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

//! A full run request: calibration plus scenario, seeds and output knobs.
//! Merge order is defaults <- config file <- command-line flags.
struct RunConfig {
    CalibrationSet calibration;
    Scenario scenario = Scenario::Base;
    int runs = 10;
    std::vector<std::uint64_t> seeds;  // empty = 1..runs
    std::string output_dir = "out";
    bool emit_trades = false;
    std::string real_price_csv;

    //! Seeds actually used: the explicit list, or 1..runs.
    std::vector<std::uint64_t> effective_seeds() const;

    //! Throws ConfigError when the combination is unusable.
    void validate() const;
};

//! Parse a JSON config file laid over `base`. Unknown keys are rejected with
//! their full path; type errors name the key.
RunConfig load_config_file(const std::string& path, const RunConfig& base = {});

//! Same, from an in-memory JSON string (used by tests and --config - ).
RunConfig parse_config_json(const std::string& text, const RunConfig& base = {});

//! Serialize the fully merged config (for the effective_config.json echo).
std::string config_to_json(const RunConfig& config);

std::string to_string(Scenario scenario);
Scenario scenario_from_string(const std::string& name);

}  // namespace btcsim
