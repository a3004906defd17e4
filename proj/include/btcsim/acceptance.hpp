#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "btcsim/config.hpp"

namespace btcsim {

struct CriterionResult {
    int number = 0;
    std::string name;
    bool passed = false;
    std::string detail;  // measured values, thresholds, seed counts
};

struct AcceptanceReport {
    std::vector<CriterionResult> criteria;

    bool all_passed() const {
        for (const auto& c : criteria)
            if (!c.passed) return false;
        return true;
    }
};

//! Cross-check the incremental order book against the brute-force reference on
//! `streams` seeded random order streams of up to `max_orders` each. Returns an
//! empty string when every stream matched trade-for-trade, else a description
//! of the first divergence.
std::string matcher_differential(int streams, int max_orders);

//! Run the whole verification battery at desk scale: deterministic anchors,
//! matcher equivalence, conservation audits, return-distribution properties,
//! miner economics (including the hardware-spend sweep), power consumption,
//! the bubble scenario and byte-level reproducibility. Progress goes to `log`,
//! one line per criterion.
AcceptanceReport run_acceptance(const RunConfig& base_config, std::ostream& log);

//! Render the report as JSON (criterion name -> {passed, detail}).
std::string verdict_json(const AcceptanceReport& report);

//! Write verdict_json to a file, creating parent directories.
void write_verdict(const std::string& path, const AcceptanceReport& report);

}  // namespace btcsim
