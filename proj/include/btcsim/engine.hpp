#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "btcsim/config.hpp"
#include "btcsim/orderbook.hpp"
#include "btcsim/trader.hpp"

namespace btcsim {

//! End-of-day aggregates for one population.
struct PopulationSlice {
    long count = 0;
    double cash = 0.0;
    double bitcoins = 0.0;
    double wealth = 0.0;  // cash + bitcoins * close
};

//! One simulated day.
struct DailyRecord {
    int step = 0;
    double close = 0.0;   // last trade price, carried forward on quiet days
    double volume = 0.0;  // BTC traded
    long trade_count = 0;
    double network_hash = 0.0;       // H/s
    double total_power = 0.0;        // W
    double electricity_spend = 0.0;  // $ actually paid today
    double hardware_spend = 0.0;     // $ deducted for new rigs today
    PopulationSlice miners, randoms, chartists, gox;
};

//! Names/values of every numeric DailyRecord column except `step`, in CSV order.
//! Single source of truth for the CSV writer and the ensemble aggregator.
const std::vector<std::string>& daily_record_fields();
std::vector<double> daily_record_values(const DailyRecord& r);

//! Conservation and ledger checks accumulated while a run executes.
struct AuditTrail {
    double max_btc_error = 0.0;          // relative, vs initial endowment + minted
    double max_cash_flow_error = 0.0;    // relative, step cash delta vs flows
    double max_reservation_error = 0.0;  // absolute $ / BTC ledger mismatch
    double max_trade_transfer_error = 0.0;  // relative, |payment - price*quantity|
    long unfunded_cancellations = 0;     // market buys cut short by their escrow
    long zero_hash_steps = 0;
    double electricity_shortfall = 0.0;  // bills unpaid for lack of cash

    bool clean(double tol = 1e-9) const {
        return max_btc_error <= tol && max_cash_flow_error <= tol &&
               max_reservation_error <= 1e-6 && max_trade_transfer_error <= tol &&
               zero_hash_steps == 0;
    }
};

struct RunResult {
    std::uint64_t seed = 0;
    std::vector<DailyRecord> records;
    std::vector<Trade> trades;  // populated only when config.emit_trades
    std::vector<Trader> final_traders;
    AuditTrail audit;
    double initial_bitcoins_total = 0.0;
    double minted_total = 0.0;
    double injected_cash_total = 0.0;
};

//! Execute one full simulation. Deterministic in (config, seed).
RunResult run_simulation(const RunConfig& config, std::uint64_t seed);

//! Per-run data kept by the Monte Carlo harness after trimming trader state.
struct WealthSummary {
    // Step-1 miner cohort (the initial miners), per-capita.
    double cohort_start_per_capita = 0.0;  // entry endowment valued at the initial price
    double cohort_end_per_capita = 0.0;    // final wealth at the last close
    double all_miner_end_per_capita = 0.0;
    double corr_wealth_hash = 0.0;   // cohort final wealth vs final hash rate
    double corr_ratio_gamma = 0.0;   // cohort wealth growth vs mean drawn gamma1
    long cohort_size = 0;
    long final_miner_count = 0;
};

struct RunSummary {
    std::uint64_t seed = 0;
    std::vector<DailyRecord> records;
    AuditTrail audit;
    WealthSummary wealth;
    long final_trader_count = 0;
    double initial_bitcoins_total = 0.0;
    double minted_total = 0.0;
    double final_bitcoins_total = 0.0;
};

//! Cross-run per-step mean/std for every daily_record_fields() column.
//! Deviations are population-style (divide by n), so a single run gives 0.
struct EnsembleStats {
    std::vector<std::vector<double>> mean;  // [step][field]
    std::vector<std::vector<double>> stddev;

    //! Column accessor by field name; throws on unknown names.
    std::vector<double> mean_series(const std::string& field) const;
};

struct MonteCarloOptions {
    bool write_files = false;  // run_<seed>.csv, plus trades_<seed>.csv when emit_trades
    std::string output_dir;
    unsigned jobs = 0;  // 0 = hardware concurrency
};

struct MonteCarloResult {
    std::vector<RunSummary> runs;  // sorted by seed order of config.effective_seeds()
    EnsembleStats ensemble;
};

//! Run every configured seed (possibly in parallel), optionally writing
//! run_<seed>.csv / trades_<seed>.csv, and aggregate the ensemble.
MonteCarloResult monte_carlo(const RunConfig& config, const MonteCarloOptions& options = {});

}  // namespace btcsim
