#include "btcsim/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "btcsim/csv.hpp"
#include "btcsim/engine.hpp"
#include "btcsim/orderbook.hpp"
#include "btcsim/reference_book.hpp"
#include "btcsim/rng.hpp"
#include "btcsim/stylized.hpp"

namespace btcsim {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

bool fills_equal(const Fill& a, const Fill& b) {
    return a.trade.buy_order_id == b.trade.buy_order_id &&
           a.trade.sell_order_id == b.trade.sell_order_id && a.trade.price == b.trade.price &&
           a.trade.quantity == b.trade.quantity && a.trade.step == b.trade.step &&
           a.buy_trader_id == b.buy_trader_id && a.sell_trader_id == b.sell_trader_id &&
           a.payment == b.payment && a.buy_escrow_released == b.buy_escrow_released;
}

bool releases_equal(const ReleasedOrder& a, const ReleasedOrder& b) {
    return a.order_id == b.order_id && a.trader_id == b.trader_id && a.side == b.side &&
           a.residual == b.residual && a.escrow == b.escrow && a.unfunded == b.unfunded;
}

std::string compare_outcomes(const InsertOutcome& a, const InsertOutcome& b) {
    if (a.fills.size() != b.fills.size())
        return "fill count " + std::to_string(a.fills.size()) + " vs " +
               std::to_string(b.fills.size());
    for (std::size_t i = 0; i < a.fills.size(); ++i)
        if (!fills_equal(a.fills[i], b.fills[i])) return "fill " + std::to_string(i) + " differs";
    if (a.released.size() != b.released.size())
        return "release count " + std::to_string(a.released.size()) + " vs " +
               std::to_string(b.released.size());
    for (std::size_t i = 0; i < a.released.size(); ++i)
        if (!releases_equal(a.released[i], b.released[i]))
            return "release " + std::to_string(i) + " differs";
    return "";
}

std::string compare_releases(const std::vector<ReleasedOrder>& a,
                             const std::vector<ReleasedOrder>& b) {
    if (a.size() != b.size())
        return "expiry count " + std::to_string(a.size()) + " vs " + std::to_string(b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!releases_equal(a[i], b[i])) return "expiry " + std::to_string(i) + " differs";
    return "";
}

//! Distribution summary of one simulated price path.
struct SeriesStats {
    double kurtosis = 0.0;
    double acf_abs_mean = 0.0;  // mean ACF of |returns|, lags 1..10
    double acf_raw_mean = 0.0;  // mean |ACF| of raw returns, lags 1..10
    double adf = 0.0;
    std::size_t n_returns = 0;
};

std::optional<SeriesStats> series_stats(const std::vector<double>& closes) {
    try {
        SeriesStats s;
        const auto returns = log_returns(closes);
        s.n_returns = returns.size();
        s.kurtosis = excess_kurtosis(returns);
        std::vector<double> abs_returns(returns.size());
        for (std::size_t i = 0; i < returns.size(); ++i) abs_returns[i] = std::abs(returns[i]);
        const auto a_abs = acf(abs_returns, 10);
        const auto a_raw = acf(returns, 10);
        double sum_abs = 0.0, sum_raw = 0.0;
        for (double v : a_abs) sum_abs += v;
        for (double v : a_raw) sum_raw += std::abs(v);
        s.acf_abs_mean = sum_abs / static_cast<double>(a_abs.size());
        s.acf_raw_mean = sum_raw / static_cast<double>(a_raw.size());
        std::vector<double> logp(closes.size());
        for (std::size_t i = 0; i < closes.size(); ++i) logp[i] = std::log(closes[i]);
        s.adf = adf_statistic(logp, 1);
        return s;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::vector<double> closes_of(const RunSummary& run) {
    std::vector<double> closes(run.records.size());
    for (std::size_t i = 0; i < closes.size(); ++i) closes[i] = run.records[i].close;
    return closes;
}

int at_least(double fraction, int runs) {
    return static_cast<int>(std::ceil(fraction * runs - 1e-9));
}

double mean_of(const std::vector<double>& xs) {
    double sum = 0.0;
    for (double x : xs) sum += x;
    return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
}

}  // namespace

std::string matcher_differential(int streams, int max_orders) {
    for (int s = 0; s < streams; ++s) {
        Rng rng(0x5eed0000u + static_cast<std::uint64_t>(s));
        const double p0 = 0.05 + rng.uniform() * 10.0;
        OrderBook fast(p0);
        ReferenceBook ref(p0);
        int step = 1;
        int seq = 0;
        std::int64_t next_id = 1;
        const int n_orders = 1 + rng.uniform_int(0, max_orders - 1);

        const auto where = [&](int order_index) {
            return "stream " + std::to_string(s) + " order " + std::to_string(order_index);
        };

        for (int k = 0; k < n_orders; ++k) {
            if (rng.bernoulli(0.08)) {
                step += 1 + rng.uniform_int(0, 2);
                seq = 0;
                const std::string diff = compare_releases(fast.expire(step), ref.expire(step));
                if (!diff.empty()) return where(k) + ": " + diff;
            }

            Order o;
            o.id = next_id++;
            o.trader_id = static_cast<int>(o.id % 97);
            o.side = rng.bernoulli(0.5) ? Side::Buy : Side::Sell;
            o.residual = 0.001 + rng.uniform() * 5.0;
            const bool market = rng.bernoulli(0.35);
            const double anchor = fast.last_price();
            o.limit_price = market ? 0.0 : anchor * (0.5 + rng.uniform());
            o.issue_step = step;
            o.issue_seq = seq++;
            o.expiry_step = rng.bernoulli(0.3) ? kNoExpiry : step + rng.uniform_int(0, 3);
            if (o.side == Side::Buy) {
                const double per_unit = market ? anchor : o.limit_price;
                // Occasionally under-fund to exercise the capped/unfunded paths.
                const double funding = rng.bernoulli(0.15) ? 0.05 + 0.9 * rng.uniform() : 1.0;
                o.escrow = o.residual * per_unit * funding;
            }

            const InsertOutcome a = fast.insert(o, step);
            const InsertOutcome b = ref.insert(o, step);
            const std::string diff = compare_outcomes(a, b);
            if (!diff.empty()) return where(k) + ": " + diff;
            if (fast.last_price() != ref.last_price())
                return where(k) + ": last price " + num(fast.last_price()) + " vs " +
                       num(ref.last_price());
            if (fast.open_orders() != ref.open_orders())
                return where(k) + ": open orders " + std::to_string(fast.open_orders()) +
                       " vs " + std::to_string(ref.open_orders());
        }

        const std::string diff = compare_releases(fast.expire(step + 10), ref.expire(step + 10));
        if (!diff.empty()) return "stream " + std::to_string(s) + " final expiry: " + diff;
    }
    return "";
}

AcceptanceReport run_acceptance(const RunConfig& base_config, std::ostream& log) {
    AcceptanceReport report;
    const auto add = [&](int number, const std::string& name, bool passed,
                         const std::string& detail) {
        log << (passed ? "PASS" : "FAIL") << "  [" << std::to_string(number) << "] " << name
            << " — " << detail << std::endl;
        report.criteria.push_back({number, name, passed, detail});
    };

    RunConfig base = base_config;
    base.scenario = Scenario::Base;
    base.seeds.clear();
    if (base.runs < 1) base.runs = 10;
    base.emit_trades = false;
    const CalibrationSet& calib = base.calibration;
    const int runs = base.runs;

    // [1] Deterministic calibration anchors.
    {
        const double t1 = calib.traders_target(1);
        const double tN = calib.traders_target(calib.horizon);
        const double watts_per_ghs = calib.power_per_hash(calib.horizon) * 1e9;
        long double reward_sum = 0.0L;
        for (int t = 1; t <= calib.horizon; ++t) reward_sum += calib.block_reward(t);
        const double expected_reward = 853.0 * 72.0 + 1003.0 * 36.0;
        const bool ok = std::abs(t1 - 160.0) <= 1.0 && std::abs(tN - 39649.0) <= 40.0 &&
                        watts_per_ghs >= 0.24 && watts_per_ghs <= 0.30 &&
                        static_cast<double>(reward_sum) == expected_reward;
        add(1, "calibration-anchors", ok,
            "head-count start " + num(t1) + " (160±1), end " + num(tN) +
                " (39649±40); hardware efficiency " + num(watts_per_ghs) +
                " W/GH/s ([0.24,0.30]); reward total " + num(static_cast<double>(reward_sum)) +
                " (expect " + num(expected_reward) + ")");
    }

    // [2] Incremental matcher vs brute-force reference.
    {
        const std::string diff = matcher_differential(1000, 200);
        add(2, "matcher-equivalence", diff.empty(),
            diff.empty() ? "1000 random order streams, trade-for-trade identical" : diff);
    }

    log << "running base ensemble (" << runs << " seeds, horizon " << calib.horizon << ")..."
        << std::endl;
    const MonteCarloResult mc = monte_carlo(base, {});

    // [3] Conservation ledgers.
    {
        double worst_btc = 0.0, worst_trade = 0.0, worst_endow = 0.0;
        for (const auto& run : mc.runs) {
            worst_btc = std::max(worst_btc, run.audit.max_btc_error);
            worst_trade = std::max(worst_trade, run.audit.max_trade_transfer_error);
            worst_endow = std::max(worst_endow,
                                   std::abs(run.initial_bitcoins_total - calib.initial_bitcoins) /
                                       calib.initial_bitcoins);
        }
        const bool ok = worst_btc <= 1e-9 && worst_trade <= 1e-9 && worst_endow <= 1e-3;
        add(3, "conservation", ok,
            "worst BTC ledger error " + num(worst_btc) + ", worst per-trade cash error " +
                num(worst_trade) + " (both <=1e-9); endowment total within " + num(worst_endow) +
                " of " + num(calib.initial_bitcoins) + " (<=1e-3)");
    }

    std::vector<std::optional<SeriesStats>> stats;
    stats.reserve(mc.runs.size());
    for (const auto& run : mc.runs) stats.push_back(series_stats(closes_of(run)));

    // [4] Fat tails.
    {
        int hits = 0;
        double worst = std::numeric_limits<double>::infinity();
        for (const auto& s : stats) {
            if (s && s->kurtosis > 0.0) ++hits;
            if (s) worst = std::min(worst, s->kurtosis);
        }
        const int need = at_least(0.9, runs);
        add(4, "fat-tails", hits >= need,
            "excess kurtosis > 0 in " + std::to_string(hits) + "/" + std::to_string(runs) +
                " seeds (need " + std::to_string(need) + "); smallest " + num(worst));
    }

    // [5] Volatility clustering without raw-return memory.
    {
        int cluster_hits = 0, raw_hits = 0;
        double band = 0.0;
        for (const auto& s : stats) {
            if (!s) continue;
            band = 2.0 / std::sqrt(static_cast<double>(s->n_returns));
            if (s->acf_abs_mean > band) ++cluster_hits;
            if (s->acf_raw_mean < 0.1) ++raw_hits;
        }
        const int need = at_least(0.8, runs);
        const bool ok = cluster_hits >= need && raw_hits >= need;
        add(5, "volatility-clustering", ok,
            "mean ACF|r| lags 1-10 > " + num(band) + " in " + std::to_string(cluster_hits) + "/" +
                std::to_string(runs) + "; mean |ACF r| < 0.1 in " + std::to_string(raw_hits) +
                "/" + std::to_string(runs) + " (need " + std::to_string(need) + " each)");
    }

    // [6] Unit root in log prices.
    {
        int hits = 0;
        double worst = std::numeric_limits<double>::infinity();
        for (const auto& s : stats) {
            if (s && s->adf > -2.86) ++hits;
            if (s) worst = std::min(worst, s->adf);
        }
        const int need = at_least(0.9, runs);
        add(6, "unit-root", hits >= need,
            "ADF > -2.86 in " + std::to_string(hits) + "/" + std::to_string(runs) +
                " seeds (need " + std::to_string(need) + "); smallest " + num(worst));
    }

    // [7] Founding-miner economics at the configured hardware-spend propensity.
    {
        std::vector<double> starts, ends, corrs;
        for (const auto& run : mc.runs) {
            starts.push_back(run.wealth.cohort_start_per_capita);
            ends.push_back(run.wealth.cohort_end_per_capita);
            corrs.push_back(run.wealth.corr_wealth_hash);
        }
        const double start = mean_of(starts), end = mean_of(ends), corr = mean_of(corrs);
        const bool ok = start >= 500.0 && start <= 2000.0 && end >= 14000.0 / 3.0 &&
                        end <= 42000.0 && corr > 0.5;
        add(7, "miner-wealth", ok,
            "founding-miner per-capita wealth: start $" + num(start) +
                " ([500,2000]), end $" + num(end) + " ([4667,42000]); corr(wealth,hash) " +
                num(corr) + " (>0.5)");
    }

    // [8] More cash ploughed into hardware must mean less final wealth.
    {
        const auto sweep_mean = [&](double gamma1) -> double {
            if (calib.gamma1_mean == gamma1) {
                std::vector<double> ends;
                for (const auto& run : mc.runs) ends.push_back(run.wealth.cohort_end_per_capita);
                return mean_of(ends);
            }
            RunConfig cfg = base;
            cfg.calibration.gamma1_mean = gamma1;
            log << "running hardware-spend sweep at " << num(gamma1) << " (" << runs
                << " seeds)..." << std::endl;
            const MonteCarloResult swept = monte_carlo(cfg, {});
            std::vector<double> ends;
            for (const auto& run : swept.runs) ends.push_back(run.wealth.cohort_end_per_capita);
            return mean_of(ends);
        };
        const double m15 = sweep_mean(0.15);
        const double m25 = sweep_mean(0.25);
        const double m35 = sweep_mean(0.35);
        const bool ok = m15 > m25 && m25 > m35;
        add(8, "hardware-spend-sweep", ok,
            "mean founding-miner final wealth per capita: $" + num(m15) + " (0.15) > $" +
                num(m25) + " (0.25) > $" + num(m35) + " (0.35)");
    }

    // [9] Network power consumption at the end of the run.
    {
        std::vector<double> final_power;
        for (const auto& run : mc.runs)
            final_power.push_back(run.records.back().total_power * calib.scale);
        const double watts = mean_of(final_power);
        const bool ok = watts >= 5e7 && watts <= 5e8;
        add(9, "power-consumption", ok,
            "mean unscaled network power at the final step " + num(watts / 1e6) +
                " MW ([50,500])");
    }

    // [10] Hoarding-scenario bubble and crash.
    {
        bool ok = false;
        std::string detail;
        if (calib.horizon < 1450) {
            detail = "horizon " + std::to_string(calib.horizon) + " too short for the window";
        } else {
            RunConfig gox = base;
            gox.scenario = Scenario::Gox;
            log << "running hoarding-scenario ensemble (" << runs << " seeds)..." << std::endl;
            const MonteCarloResult gmc = monte_carlo(gox, {});
            const std::vector<double> series = gmc.ensemble.mean_series("close");
            const double before = series[999];
            double peak = 0.0, trough = std::numeric_limits<double>::infinity();
            for (std::size_t i = 1099; i <= 1299; ++i) peak = std::max(peak, series[i]);
            for (std::size_t i = 1299; i <= 1449; ++i) trough = std::min(trough, series[i]);
            ok = peak >= 2.0 * before && trough <= 0.8 * peak;
            detail = "mean price: step-1000 $" + num(before) + ", peak(1100-1300) $" +
                     num(peak) + " (need >= " + num(2.0 * before) + "), trough(1300-1450) $" +
                     num(trough) + " (need <= " + num(0.8 * peak) + ")";
        }
        add(10, "bubble-scenario", ok, detail);
    }

    // [11] Byte-identical reruns.
    {
        const std::uint64_t seed = mc.runs.front().seed;
        const std::string first = render_run_csv(mc.runs.front().records);
        const RunResult again = run_simulation(base, seed);
        const std::string second = render_run_csv(again.records);
        const bool ok = first == second;
        add(11, "determinism", ok,
            ok ? "seed " + std::to_string(seed) + " rerun byte-identical (" +
                     std::to_string(first.size()) + " bytes)"
               : "seed " + std::to_string(seed) + " rerun differs");
    }

    return report;
}

std::string verdict_json(const AcceptanceReport& report) {
    nlohmann::ordered_json criteria = nlohmann::ordered_json::array();
    for (const auto& c : report.criteria) {
        criteria.push_back({{"number", c.number},
                            {"name", c.name},
                            {"passed", c.passed},
                            {"detail", c.detail}});
    }
    nlohmann::ordered_json j;
    j["all_passed"] = report.all_passed();
    j["criteria"] = criteria;
    return j.dump(2) + "\n";
}

void write_verdict(const std::string& path, const AcceptanceReport& report) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << verdict_json(report);
}

}  // namespace btcsim
