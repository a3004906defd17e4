#pragma once

#include <optional>
#include <vector>

#include "btcsim/agents.hpp"
#include "btcsim/calibration.hpp"
#include "btcsim/price_history.hpp"
#include "btcsim/rng.hpp"
#include "btcsim/trader.hpp"

namespace btcsim {

//! Active hash rate of one miner at step t (H/s).
double miner_hash(const Trader& trader, int step);

//! Sum of active hash over every trader (H/s).
double network_hash(const std::vector<Trader>& traders, int step);

//! Today's electricity bill: sum over active units of price * power * 24h.
//! Power was frozen when each unit was bought.
double daily_electricity_cost(const Trader& trader, const CalibrationSet& calib);

//! Credit each miner their proportional share of today's block rewards.
//! Returns the BTC actually distributed (0 when no hash is active).
double distribute_rewards(std::vector<Trader>& traders, const CalibrationSet& calib, int step);

//! Would the candidate unit pay for itself? Its daily electricity cost must be
//! below the daily mining value of its share of the grown network.
bool evaluate_buy_constraint(const HardwareUnit& candidate, double network_hash_excl,
                             double price, int step, const CalibrationSet& calib);

//! Should a working unit be switched off? Divest when its daily electricity cost
//! exceeds divest_margin times its share of the daily mining value. The network
//! hash passed in includes the unit itself.
bool evaluate_divest(const HardwareUnit& unit, double network_hash_total, double price, int step,
                     const CalibrationSet& calib);

//! Was the trailing price rise steep enough to wake extra miners? Uses daily
//! closes; false until the window is fully populated.
bool trigger_check(const PriceHistory& history, const CalibrationSet& calib);

struct MinerDecisionResult {
    std::optional<OrderRequest> sell_order;
    double hardware_cash_spent = 0.0;  // cash deducted now for the new unit
    double hash_added = 0.0;
    double hash_removed = 0.0;  // divested units
};

//! One full miner decision: reschedule, divest pass, then either buy hardware
//! (funded half by gamma1 * cash now, half by the proceeds of a gamma * btc
//! market sell) or — when broke or uneconomical — only sell. Mutates the trader;
//! the caller inserts the returned sell order and updates the network hash.
MinerDecisionResult miner_decision(Trader& trader, double network_hash_now, double price,
                                   const CalibrationSet& calib, int step, Rng& rng);

}  // namespace btcsim
