#include "btcsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>

#include "btcsim/agents.hpp"
#include "btcsim/csv.hpp"
#include "btcsim/mining.hpp"
#include "btcsim/population.hpp"
#include "btcsim/price_history.hpp"
#include "btcsim/stylized.hpp"

namespace btcsim {

const std::vector<std::string>& daily_record_fields() {
    static const std::vector<std::string> fields = {
        "close",          "volume",          "trade_count",      "network_hash",
        "total_power",    "electricity_spend", "hardware_spend",
        "miner_count",    "miner_cash",      "miner_btc",        "miner_wealth",
        "random_count",   "random_cash",     "random_btc",       "random_wealth",
        "chartist_count", "chartist_cash",   "chartist_btc",     "chartist_wealth",
        "gox_count",      "gox_cash",        "gox_btc",          "gox_wealth"};
    return fields;
}

std::vector<double> daily_record_values(const DailyRecord& r) {
    return {r.close,
            r.volume,
            static_cast<double>(r.trade_count),
            r.network_hash,
            r.total_power,
            r.electricity_spend,
            r.hardware_spend,
            static_cast<double>(r.miners.count),
            r.miners.cash,
            r.miners.bitcoins,
            r.miners.wealth,
            static_cast<double>(r.randoms.count),
            r.randoms.cash,
            r.randoms.bitcoins,
            r.randoms.wealth,
            static_cast<double>(r.chartists.count),
            r.chartists.cash,
            r.chartists.bitcoins,
            r.chartists.wealth,
            static_cast<double>(r.gox.count),
            r.gox.cash,
            r.gox.bitcoins,
            r.gox.wealth};
}

namespace {

//! One simulation run: owns all mutable state and executes the daily phases in
//! a fixed order so a (config, seed) pair is fully reproducible.
class Simulation {
public:
    Simulation(const RunConfig& config, std::uint64_t seed)
        : config_(config),
          calib_(config.calibration),
          rng_(seed),
          book_(calib_.initial_price),
          history_(calib_.initial_price),
          schedule_(calib_) {
        result_.seed = seed;
        traders_ = generate_initial_traders(calib_, rng_);
        pool_ = generate_entrant_pool(calib_, default_pool_size(calib_), rng_);
        network_hash_ = network_hash(traders_, 1);
        long double btc = 0.0L;
        for (const auto& t : traders_) btc += t.bitcoins;
        result_.initial_bitcoins_total = static_cast<double>(btc);
    }

    RunResult run() {
        result_.records.reserve(calib_.horizon);
        for (int t = 1; t <= calib_.horizon; ++t) step(t);
        result_.final_traders = std::move(traders_);
        return std::move(result_);
    }

private:
    MarketView market_view(int step) const { return {book_.last_price(), &history_, step}; }

    void step(int t) {
        issue_seq_ = 0;
        volume_ = 0.0;
        trade_count_ = 0;
        electricity_paid_ = 0.0;
        hardware_spent_ = 0.0;
        injected_cash_ = 0.0;

        long double cash_before = 0.0L;
        for (const auto& tr : traders_) cash_before += tr.cash;

        // Periodic fresh sum kills any incremental drift in the hash cache.
        network_hash_ = network_hash(traders_, t);

        admit_entrants(t);
        run_miner_decisions(t);
        run_active_traders(t);
        for (const auto& rel : book_.expire(t)) release(rel);
        result_.minted_total += distribute_rewards(traders_, calib_, t);
        if (!(network_hash(traders_, t) > 0.0)) result_.audit.zero_hash_steps += 1;
        bill_electricity();
        close_day(t, cash_before);
    }

    void admit_entrants(int t) {
        if (t < 2) return;
        const int n = schedule_.entrants_for_step(t);
        for (int k = 0; k < n; ++k) {
            if (pool_cursor_ >= pool_.size())
                throw std::runtime_error("entrant pool exhausted; raise pool_slack");
            Trader tr;
            tr.id = static_cast<int>(traders_.size());
            tr.entry_step = t;
            tr.cash = pool_[pool_cursor_++].cash;
            tr.entry_cash = tr.cash;
            tr.population = assign_population(t, config_.scenario, calib_, rng_);
            if (tr.population == Population::Chartist) init_chartist_fields(tr, calib_, rng_);
            if (tr.population == Population::Miner)
                tr.trigger_sensitive = rng_.bernoulli(calib_.trigger_fraction);
            injected_cash_ += tr.cash;
            traders_.push_back(std::move(tr));
            Trader& admitted = traders_.back();
            if (admitted.population == Population::Miner) {
                apply_miner_decision(admitted, t);
            } else {
                auto req = entry_order(admitted, market_view(t), calib_, rng_);
                if (req) place_order(*req, t);
            }
        }
    }

    void apply_miner_decision(Trader& miner, int t) {
        auto res = miner_decision(miner, network_hash_, book_.last_price(), calib_, t, rng_);
        network_hash_ += res.hash_added - res.hash_removed;
        hardware_spent_ += res.hardware_cash_spent;
        if (res.sell_order) place_order(*res.sell_order, t);
    }

    void run_miner_decisions(int t) {
        const bool woken = trigger_check(history_, calib_);
        // Ascending-id pass; a price surge additionally wakes the standing
        // trigger-sensitive cohort (roughly 10% of miners, fixed at creation).
        for (auto& tr : traders_) {
            if (tr.population != Population::Miner || tr.entry_step == t) continue;
            const bool decide = tr.next_decision_step <= t || (woken && tr.trigger_sensitive);
            if (decide) apply_miner_decision(tr, t);
        }
    }

    void run_active_traders(int t) {
        std::vector<int> active;
        for (const auto& tr : traders_) {
            if (tr.population == Population::Miner || tr.entry_step == t) continue;
            double p = 0.0;
            switch (tr.population) {
                case Population::RandomTrader: p = calib_.p_active_random; break;
                case Population::Chartist: p = calib_.p_active_chartist; break;
                case Population::Gox: p = calib_.gox_p_active; break;
                case Population::Miner: break;
            }
            if (p > 0.0 && rng_.bernoulli(p)) active.push_back(tr.id);
        }
        rng_.shuffle(active);
        // Each trader acts on the book as it stands when their turn comes up,
        // so trades made earlier in the day move the reference price for
        // everyone queued after them.
        for (const int id : active) {
            const Trader& tr = traders_[id];
            std::optional<OrderRequest> req;
            switch (tr.population) {
                case Population::RandomTrader:
                    req = random_trader_action(tr, market_view(t), calib_, rng_);
                    break;
                case Population::Chartist:
                    req = chartist_action(tr, market_view(t), calib_, rng_);
                    break;
                case Population::Gox:
                    req = gox_action(tr, market_view(t), calib_, rng_);
                    break;
                case Population::Miner:
                    break;
            }
            if (req) place_order(*req, t);
        }
    }

    void place_order(const OrderRequest& req, int t) {
        if (req.amount <= kMinQuantity) return;
        Trader& tr = traders_[req.trader_id];

        Order order;
        order.id = next_order_id_++;
        order.trader_id = req.trader_id;
        order.side = req.side;
        order.residual = req.amount;
        order.limit_price = req.limit_price;
        order.issue_step = t;
        order.issue_seq = issue_seq_++;
        order.expiry_step = req.expiry_step;

        if (req.side == Side::Buy) {
            order.escrow = req.reserve;
            tr.reserved_cash += req.reserve;
        } else {
            tr.reserved_btc += req.reserve;
        }

        const InsertOutcome outcome = book_.insert(order, t);
        for (const auto& fill : outcome.fills) settle(fill);
        for (const auto& rel : outcome.released) release(rel);
    }

    void settle(const Fill& fill) {
        Trader& buyer = traders_[fill.buy_trader_id];
        Trader& seller = traders_[fill.sell_trader_id];
        buyer.cash -= fill.payment;
        buyer.reserved_cash -= fill.buy_escrow_released;
        buyer.bitcoins += fill.trade.quantity;
        seller.cash += fill.payment;
        seller.bitcoins -= fill.trade.quantity;
        seller.reserved_btc -= fill.trade.quantity;

        volume_ += fill.trade.quantity;
        trade_count_ += 1;
        if (config_.emit_trades) result_.trades.push_back(fill.trade);

        const double nominal = fill.trade.price * fill.trade.quantity;
        const double err = std::abs(fill.payment - nominal) / std::max(nominal, 1e-300);
        result_.audit.max_trade_transfer_error =
            std::max(result_.audit.max_trade_transfer_error, err);
    }

    void release(const ReleasedOrder& rel) {
        Trader& tr = traders_[rel.trader_id];
        if (rel.side == Side::Buy) {
            tr.reserved_cash -= rel.escrow;
        } else {
            tr.reserved_btc -= rel.residual;
        }
        if (rel.unfunded) result_.audit.unfunded_cancellations += 1;
    }

    void bill_electricity() {
        for (auto& tr : traders_) {
            if (tr.hardware.empty()) continue;
            const double bill = daily_electricity_cost(tr, calib_);
            if (bill <= 0.0) continue;
            const double paid = std::min(tr.cash, bill);
            tr.cash -= paid;
            electricity_paid_ += paid;
            result_.audit.electricity_shortfall += bill - paid;
        }
    }

    void close_day(int t, long double cash_before) {
        DailyRecord rec;
        rec.step = t;
        rec.close = book_.last_price();
        rec.volume = volume_;
        rec.trade_count = trade_count_;
        rec.network_hash = network_hash(traders_, t);
        rec.electricity_spend = electricity_paid_;
        rec.hardware_spend = hardware_spent_;

        double power = 0.0;
        long double cash_after = 0.0L, btc_after = 0.0L;
        long double reserved_cash = 0.0L, reserved_btc = 0.0L;
        double ledger_violation = 0.0;
        for (const auto& tr : traders_) {
            for (const auto& u : tr.hardware)
                if (u.active) power += u.power;
            cash_after += tr.cash;
            btc_after += tr.bitcoins;
            reserved_cash += tr.reserved_cash;
            reserved_btc += tr.reserved_btc;
            ledger_violation = std::max({ledger_violation, -tr.cash, -tr.bitcoins,
                                         tr.reserved_cash - tr.cash,
                                         tr.reserved_btc - tr.bitcoins});

            PopulationSlice* slice = nullptr;
            switch (tr.population) {
                case Population::Miner: slice = &rec.miners; break;
                case Population::RandomTrader: slice = &rec.randoms; break;
                case Population::Chartist: slice = &rec.chartists; break;
                case Population::Gox: slice = &rec.gox; break;
            }
            slice->count += 1;
            slice->cash += tr.cash;
            slice->bitcoins += tr.bitcoins;
            slice->wealth += tr.cash + tr.bitcoins * rec.close;
        }
        rec.total_power = power;

        // Conservation audits. Bitcoins only enter through mining; cash only
        // enters with entrants and only leaves through bills and hardware.
        const double expected_btc = result_.initial_bitcoins_total + result_.minted_total;
        const double btc_err =
            std::abs(static_cast<double>(btc_after) - expected_btc) / expected_btc;
        result_.audit.max_btc_error = std::max(result_.audit.max_btc_error, btc_err);

        const double expected_delta = injected_cash_ - electricity_paid_ - hardware_spent_;
        const double cash_err =
            std::abs(static_cast<double>(cash_after - cash_before) - expected_delta) /
            std::max(1.0, static_cast<double>(cash_after));
        result_.audit.max_cash_flow_error = std::max(result_.audit.max_cash_flow_error, cash_err);

        const double res_err = std::max(
            std::abs(static_cast<double>(reserved_cash) - book_.total_buy_escrow()),
            std::abs(static_cast<double>(reserved_btc) - book_.total_sell_residual()));
        result_.audit.max_reservation_error =
            std::max({result_.audit.max_reservation_error, res_err, ledger_violation});

        result_.injected_cash_total += injected_cash_;
        history_.record(rec.close);
        result_.records.push_back(rec);
    }

    const RunConfig& config_;
    const CalibrationSet& calib_;
    Rng rng_;
    std::vector<Trader> traders_;
    std::vector<PoolEntrant> pool_;
    std::size_t pool_cursor_ = 0;
    OrderBook book_;
    PriceHistory history_;
    EntrantSchedule schedule_;
    RunResult result_;

    double network_hash_ = 0.0;
    std::int64_t next_order_id_ = 1;
    int issue_seq_ = 0;
    double volume_ = 0.0;
    long trade_count_ = 0;
    double electricity_paid_ = 0.0;
    double hardware_spent_ = 0.0;
    double injected_cash_ = 0.0;
};

}  // namespace

RunResult run_simulation(const RunConfig& config, std::uint64_t seed) {
    config.validate();
    return Simulation(config, seed).run();
}

std::vector<double> EnsembleStats::mean_series(const std::string& field) const {
    const auto& fields = daily_record_fields();
    const auto it = std::find(fields.begin(), fields.end(), field);
    if (it == fields.end()) throw std::invalid_argument("unknown ensemble field: " + field);
    const std::size_t idx = static_cast<std::size_t>(it - fields.begin());
    std::vector<double> series(mean.size());
    for (std::size_t s = 0; s < mean.size(); ++s) series[s] = mean[s][idx];
    return series;
}

namespace {

RunSummary summarize(RunResult&& result, const RunConfig& config) {
    RunSummary s;
    s.seed = result.seed;
    s.audit = result.audit;
    s.final_trader_count = static_cast<long>(result.final_traders.size());
    s.initial_bitcoins_total = result.initial_bitcoins_total;
    s.minted_total = result.minted_total;
    long double btc = 0.0L;
    for (const auto& t : result.final_traders) btc += t.bitcoins;
    s.final_bitcoins_total = static_cast<double>(btc);
    s.wealth = compute_wealth_summary(result, config.calibration);
    s.records = std::move(result.records);
    return s;
}

EnsembleStats aggregate(const std::vector<RunSummary>& runs) {
    EnsembleStats stats;
    if (runs.empty()) return stats;
    const std::size_t steps = runs.front().records.size();
    const std::size_t nfields = daily_record_fields().size();
    stats.mean.assign(steps, std::vector<double>(nfields, 0.0));
    stats.stddev.assign(steps, std::vector<double>(nfields, 0.0));
    const double n = static_cast<double>(runs.size());
    for (std::size_t s = 0; s < steps; ++s) {
        std::vector<long double> sum(nfields, 0.0L), sum2(nfields, 0.0L);
        for (const auto& run : runs) {
            const auto values = daily_record_values(run.records.at(s));
            for (std::size_t f = 0; f < nfields; ++f) {
                sum[f] += values[f];
                sum2[f] += static_cast<long double>(values[f]) * values[f];
            }
        }
        for (std::size_t f = 0; f < nfields; ++f) {
            const double m = static_cast<double>(sum[f] / n);
            const double var = static_cast<double>(sum2[f] / n) - m * m;
            stats.mean[s][f] = m;
            stats.stddev[s][f] = var > 0.0 ? std::sqrt(var) : 0.0;
        }
    }
    return stats;
}

}  // namespace

MonteCarloResult monte_carlo(const RunConfig& config, const MonteCarloOptions& options) {
    config.validate();
    const std::vector<std::uint64_t> seeds = config.effective_seeds();

    unsigned jobs = options.jobs ? options.jobs : std::thread::hardware_concurrency();
    if (jobs == 0) jobs = 1;

    auto worker = [&](std::uint64_t seed) {
        RunResult result = run_simulation(config, seed);
        if (options.write_files) {
            write_run_csv(options.output_dir + "/run_" + std::to_string(seed) + ".csv",
                          result.records);
            if (config.emit_trades)
                write_trades_csv(options.output_dir + "/trades_" + std::to_string(seed) + ".csv",
                                 result.trades);
        }
        return summarize(std::move(result), config);
    };

    MonteCarloResult out;
    out.runs.reserve(seeds.size());
    if (jobs <= 1) {
        for (const auto seed : seeds) out.runs.push_back(worker(seed));
    } else {
        for (std::size_t base = 0; base < seeds.size(); base += jobs) {
            const std::size_t end = std::min(seeds.size(), base + jobs);
            std::vector<std::future<RunSummary>> batch;
            for (std::size_t i = base; i < end; ++i)
                batch.push_back(std::async(std::launch::async, worker, seeds[i]));
            for (auto& f : batch) out.runs.push_back(f.get());
        }
    }

    out.ensemble = aggregate(out.runs);
    if (options.write_files)
        write_ensemble_csv(options.output_dir + "/ensemble.csv", out.ensemble);
    return out;
}

}  // namespace btcsim
