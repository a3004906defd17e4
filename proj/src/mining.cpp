#include "btcsim/mining.hpp"

#include <algorithm>
#include <cmath>

namespace btcsim {

double miner_hash(const Trader& trader, int step) {
    double total = 0.0;
    for (const auto& u : trader.hardware)
        if (u.active && u.purchase_step <= step) total += u.hash_rate;
    return total;
}

double network_hash(const std::vector<Trader>& traders, int step) {
    double total = 0.0;
    for (const auto& t : traders) total += miner_hash(t, step);
    return total;
}

double daily_electricity_cost(const Trader& trader, const CalibrationSet& calib) {
    double watts = 0.0;
    for (const auto& u : trader.hardware)
        if (u.active) watts += u.power;
    return calib.electricity_price * watts * 24.0;
}

double distribute_rewards(std::vector<Trader>& traders, const CalibrationSet& calib, int step) {
    const double total_hash = network_hash(traders, step);
    if (!(total_hash > 0.0)) return 0.0;
    const double reward = calib.block_reward(step);
    double minted = 0.0;
    for (auto& t : traders) {
        const double h = miner_hash(t, step);
        if (h <= 0.0) continue;
        const double credit = reward * (h / total_hash);
        t.bitcoins += credit;
        minted += credit;
    }
    return minted;
}

namespace {

double daily_unit_cost(const HardwareUnit& unit, const CalibrationSet& calib) {
    return calib.electricity_price * unit.power * 24.0;
}

double daily_mining_value(double unit_hash, double total_hash, double price, int step,
                          const CalibrationSet& calib) {
    if (!(total_hash > 0.0)) return 0.0;
    return (unit_hash / total_hash) * calib.block_reward(step) * price;
}

}  // namespace

bool evaluate_buy_constraint(const HardwareUnit& candidate, double network_hash_excl,
                             double price, int step, const CalibrationSet& calib) {
    const double cost = daily_unit_cost(candidate, calib);
    const double value = daily_mining_value(candidate.hash_rate,
                                            network_hash_excl + candidate.hash_rate, price, step,
                                            calib);
    return cost < value;
}

bool evaluate_divest(const HardwareUnit& unit, double network_hash_total, double price, int step,
                     const CalibrationSet& calib) {
    const double cost = daily_unit_cost(unit, calib);
    const double value = daily_mining_value(unit.hash_rate, network_hash_total, price, step, calib);
    return cost > calib.divest_margin * value;
}

bool trigger_check(const PriceHistory& history, const CalibrationSet& calib) {
    const auto v = history.relative_variation(calib.trigger_window, false);
    return v && *v > calib.trigger_threshold;
}

MinerDecisionResult miner_decision(Trader& trader, double network_hash_now, double price,
                                   const CalibrationSet& calib, int step, Rng& rng) {
    MinerDecisionResult result;

    const double gap = std::round(calib.decision_period + rng.normal(0.0, calib.decision_sd));
    trader.next_decision_step = step + std::max(1, static_cast<int>(gap));

    // Divest pass: every active unit is judged against the current network.
    for (auto& u : trader.hardware) {
        if (u.active && evaluate_divest(u, network_hash_now, price, step, calib)) {
            u.active = false;
            result.hash_removed += u.hash_rate;
        }
    }
    network_hash_now -= result.hash_removed;

    const double gamma1 = std::min(1.0, rng.lognormal_ms(calib.gamma1_mean, calib.gamma1_sd));
    const double gamma = std::min(1.0, rng.lognormal_ms(calib.gamma_mean, calib.gamma_sd));
    trader.gamma1_sum += gamma1;
    trader.gamma1_draws += 1;

    const double sellable = gamma * trader.available_btc();
    double sell_btc = 0.0;

    if (trader.cash > 0.0) {
        // Hardware worth half the combined budget goes in immediately; the cash
        // half is deducted now, the BTC half arrives as the sell order fills.
        const double cash_commit = gamma1 * trader.cash;
        const double budget = cash_commit + sellable * price;
        const double rate = calib.hash_rate_per_dollar(step);
        HardwareUnit candidate{step, 0.5 * budget * rate, 0.0, true};
        candidate.power = calib.power_per_hash(step) * candidate.hash_rate;

        if (candidate.hash_rate > 0.0 &&
            evaluate_buy_constraint(candidate, network_hash_now, price, step, calib)) {
            trader.cash -= cash_commit;
            trader.hardware.push_back(candidate);
            result.hardware_cash_spent = cash_commit;
            result.hash_added = candidate.hash_rate;
            sell_btc = sellable;
        } else {
            sell_btc = 0.5 * sellable;  // uneconomical: sell half to cover bills
        }
    } else {
        sell_btc = sellable;  // broke: liquidate the usual fraction
    }

    if (sell_btc > kMinQuantity) {
        OrderRequest req;
        req.trader_id = trader.id;
        req.side = Side::Sell;
        req.amount = sell_btc;
        req.limit_price = 0.0;  // miners always sell at market
        req.expiry_step = kNoExpiry;
        req.reserve = sell_btc;
        result.sell_order = req;
    }
    return result;
}

}  // namespace btcsim
