#pragma once

#include <cmath>
#include <string>

namespace btcsim {

//! Exponential fit a * exp(b * (t + t_offset)) — the shared functional form behind
//! the hash-rate, power-efficiency, trader-count and miner-probability curves.
struct FittedExponential {
    double a = 0.0;
    double b = 0.0;
    double t_offset = 0.0;

    double value(double t) const { return a * std::exp(b * (t + t_offset)); }
};

//! Relative frequencies used when assigning a population to a trader.
struct PopulationShares {
    double miner = 0.0;
    double random_trader = 0.0;
    double chartist = 0.0;
};

//! Every tunable constant of the simulated market, September 2010 .. September 2015,
//! daily steps, market scaled 1:100 relative to the real exchange. Defaults encode
//! the calibrated values; any field can be overridden through the JSON config.
struct CalibrationSet {
    // Fitted curves. hash_rate_curve gives hardware purchasable per dollar in
    // H/(s*$); power_curve gives consumption per unit hash in W/(H/s);
    // trader_count_curve gives the unscaled real trader head-count; the miner
    // probability curve gives the chance an entrant is a miner.
    FittedExponential hash_rate_curve{8.635e4, 0.006318, 0.0};
    FittedExponential power_curve{4.649e-7, -0.004055, 0.0};
    FittedExponential trader_count_curve{2624.0, 0.002971, 608.0};
    FittedExponential miner_prob_curve{0.9425, -0.002654, 0.0};

    double electricity_price = 1.4e-4;  // $ per W*h
    double reward_before_halving = 72.0;  // BTC minted per day (scaled)
    double reward_after_halving = 36.0;
    int halving_step = 853;

    double initial_price = 0.0649;  // $ per BTC
    int initial_traders = 160;
    double final_traders = 39649.0;   // anchor for the end of the run
    double initial_bitcoins = 23274.0;  // anchor for the initial endowment total
    double richest_bitcoins = 4117.0;   // Zipf scale of initial BTC endowments
    double richest_cash = 20587.0;      // Zipf scale of initial cash endowments
    double entrant_cash_scale = 200000.0;  // entrant rank-1 cash
    double entrant_alpha = 0.6;            // entrant cash ~ scale / rank^alpha
    double pool_slack = 0.05;              // spare entrants pre-generated

    double initial_miner_hash = 1.73e7;  // H/s of the endowed first-day unit
    double initial_miner_power = 75.0;   // W of that unit

    // Miner behaviour.
    double gamma1_mean = 0.15, gamma1_sd = 0.15;   // cash fraction spent on hardware
    double gamma_mean = 0.175, gamma_sd = 0.075;   // BTC fraction sold per decision
    double decision_period = 60.0, decision_sd = 6.0;  // days between decisions
    int trigger_window = 15;
    double trigger_threshold = 0.016;  // price variation that wakes extra miners
    double trigger_fraction = 0.10;    // share of miners that are trigger-sensitive
    double divest_margin = 1.2;  // divest when cost > margin * daily mining value

    // Chartist behaviour.
    double chartist_threshold = 0.01;
    double chartist_window_mean = 20.0, chartist_window_sd = 1.0;
    double contrarian_fraction = 0.10;

    // Order generation.
    double beta_random_mean = 0.25, beta_random_sd = 0.2;
    double beta_chartist_mean = 0.4, beta_chartist_sd = 0.2;
    double limit_mu = 1.05;        // mean of the limit-price multiplier draw
    double volatility_gain = 2.5;  // K: sigma_i = clamp(K * stdev|returns|, lo, hi)
    double sigma_lo = 0.003, sigma_hi = 0.01;
    double p_market_miner = 1.0;  // miners always sell at market; kept for config parity
    double p_market_random = 0.2;
    double p_market_chartist = 0.7;
    double expiry_random_mean = 3.0, expiry_random_sd = 1.0;  // days

    // Activation and population split.
    double p_active_random = 0.1;
    double p_active_chartist = 0.5;
    double random_share = 0.7;   // non-miner entrants: share that trade randomly
    double chartist_share = 0.3;

    // Hoarding-exchange scenario.
    double gox_entry_fraction = 0.40;  // entering Random traders converted
    int gox_buy_start = 700;
    int gox_sell_start = 1249;
    int gox_entry_stop = 1249;
    double gox_p_active = 0.1;

    int horizon = 1856;   // simulated days
    double scale = 100.0; // market size divisor vs the real exchange

    // --- derived quantities ---

    double hash_rate_per_dollar(double t) const { return hash_rate_curve.value(t); }
    double power_per_hash(double t) const { return power_curve.value(t); }

    double block_reward(int t) const {
        return t <= halving_step ? reward_before_halving : reward_after_halving;
    }

    //! Scaled trader head-count target at step t.
    double traders_target(double t) const { return trader_count_curve.value(t) / scale; }

    double miner_probability(double t) const {
        const double p = miner_prob_curve.value(t);
        return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p);
    }

    PopulationShares population_shares(double t) const {
        return split_shares(miner_probability(t));
    }

    //! Split the non-miner remainder between random traders and chartists.
    PopulationShares split_shares(double p_miner) const {
        return {p_miner, random_share * (1.0 - p_miner), chartist_share * (1.0 - p_miner)};
    }

    //! Throws std::invalid_argument naming the offending field.
    void validate() const;
};

}  // namespace btcsim
