#pragma once

#include <vector>

namespace btcsim {

enum class Population { Miner, RandomTrader, Chartist, Gox };

enum class Scenario { Base, Gox };

//! One purchased (or endowed) mining rig. Power is frozen at purchase time;
//! divested units stay in the list but never reactivate.
struct HardwareUnit {
    int purchase_step = 0;
    double hash_rate = 0.0;  // H/s
    double power = 0.0;      // W
    bool active = true;
};

struct Trader {
    int id = 0;
    Population population = Population::RandomTrader;
    double cash = 0.0;      // $
    double bitcoins = 0.0;  // BTC
    int entry_step = 1;

    // Funds committed to open orders. Always reserved_cash <= cash and
    // reserved_btc <= bitcoins; order generation sizes against the free part.
    double reserved_cash = 0.0;
    double reserved_btc = 0.0;

    int volatility_window = 20;  // trailing days used for the adaptive limit spread
    bool contrarian = false;     // chartists only: inverts the trend signal

    std::vector<HardwareUnit> hardware;  // miners only
    int next_decision_step = 0;          // miners only
    bool trigger_sensitive = false;      // miners only: re-decides on price surges

    // Entry endowment, kept for wealth-ratio reporting.
    double entry_cash = 0.0;
    double entry_bitcoins = 0.0;

    // Mean drawn hardware-spend propensity, for the wealth/propensity scatter.
    double gamma1_sum = 0.0;
    int gamma1_draws = 0;

    double available_cash() const { return cash - reserved_cash; }
    double available_btc() const { return bitcoins - reserved_btc; }
    double wealth(double price) const { return cash + bitcoins * price; }
};

}  // namespace btcsim
