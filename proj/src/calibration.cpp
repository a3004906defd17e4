#include "btcsim/calibration.hpp"

#include <cmath>
#include <stdexcept>

namespace btcsim {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("calibration: " + what);
}

void require_probability(double p, const std::string& name) {
    require(p >= 0.0 && p <= 1.0, name + " must lie in [0, 1]");
}

}  // namespace

void CalibrationSet::validate() const {
    require(hash_rate_curve.a > 0.0, "hash_rate_curve.a must be positive");
    require(power_curve.a > 0.0, "power_curve.a must be positive");
    require(trader_count_curve.a > 0.0, "trader_count_curve.a must be positive");
    require(miner_prob_curve.a > 0.0, "miner_prob_curve.a must be positive");

    require(electricity_price > 0.0, "electricity_price must be positive");
    require(reward_before_halving >= 0.0, "reward_before_halving must be non-negative");
    require(reward_after_halving >= 0.0, "reward_after_halving must be non-negative");
    require(halving_step >= 1, "halving_step must be at least 1");

    require(initial_price > 0.0, "initial_price must be positive");
    require(initial_traders >= 1, "initial_traders must be at least 1");
    require(final_traders > 0.0, "final_traders must be positive");
    require(initial_bitcoins > 0.0, "initial_bitcoins must be positive");
    require(richest_bitcoins > 0.0, "richest_bitcoins must be positive");
    require(richest_cash > 0.0, "richest_cash must be positive");
    require(entrant_cash_scale > 0.0, "entrant_cash_scale must be positive");
    require(entrant_alpha > 0.0, "entrant_alpha must be positive");
    require(pool_slack >= 0.0, "pool_slack must be non-negative");

    require(initial_miner_hash > 0.0, "initial_miner_hash must be positive");
    require(initial_miner_power > 0.0, "initial_miner_power must be positive");

    require(gamma1_mean > 0.0 && gamma1_sd > 0.0, "gamma1 moments must be positive");
    require(gamma_mean > 0.0 && gamma_sd > 0.0, "gamma moments must be positive");
    require(decision_period >= 1.0, "decision_period must be at least 1");
    require(decision_sd >= 0.0, "decision_sd must be non-negative");
    require(trigger_window >= 1, "trigger_window must be at least 1");
    require(trigger_threshold > 0.0, "trigger_threshold must be positive");
    require_probability(trigger_fraction, "trigger_fraction");
    require(divest_margin >= 1.0, "divest_margin must be at least 1");

    require(chartist_threshold > 0.0, "chartist_threshold must be positive");
    require(chartist_window_mean >= 1.0, "chartist_window_mean must be at least 1");
    require(chartist_window_sd >= 0.0, "chartist_window_sd must be non-negative");
    require_probability(contrarian_fraction, "contrarian_fraction");

    require(beta_random_mean > 0.0 && beta_random_sd > 0.0, "random beta moments must be positive");
    require(beta_chartist_mean > 0.0 && beta_chartist_sd > 0.0,
            "chartist beta moments must be positive");
    require(limit_mu > 0.5, "limit_mu must exceed the 0.5 truncation floor");
    require(volatility_gain > 0.0, "volatility_gain must be positive");
    require(sigma_lo > 0.0, "sigma_lo must be positive");
    require(sigma_lo < sigma_hi, "sigma_lo must be below sigma_hi");
    require_probability(p_market_miner, "p_market_miner");
    require_probability(p_market_random, "p_market_random");
    require_probability(p_market_chartist, "p_market_chartist");
    require(expiry_random_mean > 0.0 && expiry_random_sd > 0.0,
            "expiry moments must be positive");

    require_probability(p_active_random, "p_active_random");
    require_probability(p_active_chartist, "p_active_chartist");
    require(random_share >= 0.0 && chartist_share >= 0.0, "population shares must be non-negative");
    require(std::abs(random_share + chartist_share - 1.0) < 1e-9,
            "random_share + chartist_share must equal 1");

    require_probability(gox_entry_fraction, "gox_entry_fraction");
    require(gox_buy_start >= 1, "gox_buy_start must be at least 1");
    require(gox_sell_start >= gox_buy_start, "gox_sell_start must not precede gox_buy_start");
    require(gox_entry_stop >= 1, "gox_entry_stop must be at least 1");
    require_probability(gox_p_active, "gox_p_active");

    require(horizon >= 1, "horizon must be at least 1");
    require(scale > 0.0, "scale must be positive");
}

}  // namespace btcsim
