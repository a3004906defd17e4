#include "btcsim/population.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace btcsim {

namespace {

Population draw_base_population(const PopulationShares& shares, Rng& rng) {
    const double u = rng.uniform();
    if (u < shares.miner) return Population::Miner;
    if (u < shares.miner + shares.random_trader) return Population::RandomTrader;
    return Population::Chartist;
}

}  // namespace

void init_chartist_fields(Trader& trader, const CalibrationSet& calib, Rng& rng) {
    const double w = std::round(rng.normal(calib.chartist_window_mean, calib.chartist_window_sd));
    trader.volatility_window = w < 1.0 ? 1 : static_cast<int>(w);
    trader.contrarian = rng.bernoulli(calib.contrarian_fraction);
}

std::vector<Trader> generate_initial_traders(const CalibrationSet& calib, Rng& rng) {
    const int n = calib.initial_traders;
    std::vector<int> ranks(n);
    std::iota(ranks.begin(), ranks.end(), 1);
    rng.shuffle(ranks);

    const PopulationShares shares = calib.population_shares(1.0);
    const int default_window = static_cast<int>(std::lround(calib.chartist_window_mean));

    std::vector<Trader> traders;
    traders.reserve(n);
    for (int i = 0; i < n; ++i) {
        Trader t;
        t.id = i;
        t.entry_step = 1;
        t.bitcoins = calib.richest_bitcoins / ranks[i];
        t.cash = calib.richest_cash / ranks[i];
        t.entry_cash = t.cash;
        t.entry_bitcoins = t.bitcoins;
        t.volatility_window = default_window;
        t.population = draw_base_population(shares, rng);
        if (t.population == Population::Miner) {
            t.hardware.push_back({1, calib.initial_miner_hash, calib.initial_miner_power, true});
            t.next_decision_step =
                rng.uniform_int(1, static_cast<int>(std::lround(calib.decision_period)));
            t.trigger_sensitive = rng.bernoulli(calib.trigger_fraction);
        } else if (t.population == Population::Chartist) {
            init_chartist_fields(t, calib, rng);
        }
        traders.push_back(std::move(t));
    }
    return traders;
}

std::size_t default_pool_size(const CalibrationSet& calib) {
    const double target_end =
        std::max(calib.final_traders, calib.traders_target(calib.horizon));
    const double expected = std::max(0.0, std::round(target_end) - calib.initial_traders);
    const double with_slack = std::ceil(expected * (1.0 + calib.pool_slack));
    return static_cast<std::size_t>(std::max(16.0, with_slack));
}

std::vector<PoolEntrant> generate_entrant_pool(const CalibrationSet& calib, std::size_t size,
                                               Rng& rng) {
    std::vector<PoolEntrant> pool(size);
    for (std::size_t i = 0; i < size; ++i)
        pool[i].cash =
            calib.entrant_cash_scale / std::pow(static_cast<double>(i + 1), calib.entrant_alpha);
    rng.shuffle(pool);
    return pool;
}

int EntrantSchedule::entrants_for_step(int t) {
    const double target = std::round(calib_->traders_target(t) - calib_->initial_traders);
    long due = static_cast<long>(target) - admitted_;
    if (due < 0) due = 0;
    admitted_ += due;
    return static_cast<int>(due);
}

Population assign_population(int t, Scenario scenario, const CalibrationSet& calib, Rng& rng) {
    Population p = draw_base_population(calib.population_shares(t), rng);
    if (scenario == Scenario::Gox && p == Population::RandomTrader && t < calib.gox_entry_stop &&
        rng.bernoulli(calib.gox_entry_fraction)) {
        p = Population::Gox;
    }
    return p;
}

}  // namespace btcsim
