#include <doctest.h>

#include <filesystem>
#include <numeric>
#include <vector>

#include "btcsim/csv.hpp"
#include "btcsim/engine.hpp"

using namespace btcsim;
namespace fs = std::filesystem;

namespace {

RunConfig short_config(int horizon) {
    RunConfig cfg;
    cfg.calibration.horizon = horizon;
    return cfg;
}

}  // namespace

TEST_CASE("a short run produces one clean record per day") {
    const RunConfig cfg = short_config(40);
    const RunResult result = run_simulation(cfg, 1);

    REQUIRE(result.records.size() == 40);
    for (std::size_t i = 0; i < result.records.size(); ++i) {
        const auto& rec = result.records[i];
        CHECK(rec.step == static_cast<int>(i) + 1);
        CHECK(rec.close > 0.0);
        CHECK(rec.network_hash > 0.0);
        CHECK(rec.total_power > 0.0);
    }

    INFO("btc error ", result.audit.max_btc_error, " cash error ",
         result.audit.max_cash_flow_error, " reservation ", result.audit.max_reservation_error);
    CHECK(result.audit.clean());
    CHECK(result.audit.zero_hash_steps == 0);
    // 40 days before the halving at 72 BTC/day.
    CHECK(result.minted_total == doctest::Approx(40 * 72.0).epsilon(1e-9));
    CHECK(result.initial_bitcoins_total == doctest::Approx(23283.739713076924).epsilon(1e-12));
}

TEST_CASE("identical seed and config reproduce byte-identical output") {
    const RunConfig cfg = short_config(60);
    const RunResult a = run_simulation(cfg, 7);
    const RunResult b = run_simulation(cfg, 7);
    CHECK(render_run_csv(a.records) == render_run_csv(b.records));
    CHECK(a.final_traders.size() == b.final_traders.size());

    const RunResult c = run_simulation(cfg, 8);
    CHECK(render_run_csv(a.records) != render_run_csv(c.records));
}

TEST_CASE("emitted trades reconcile with recorded volume") {
    RunConfig cfg = short_config(50);
    cfg.emit_trades = true;
    const RunResult result = run_simulation(cfg, 3);

    REQUIRE(!result.trades.empty());
    const double traded = std::accumulate(
        result.trades.begin(), result.trades.end(), 0.0,
        [](double acc, const Trade& t) { return acc + t.quantity; });
    const double recorded = std::accumulate(
        result.records.begin(), result.records.end(), 0.0,
        [](double acc, const DailyRecord& r) { return acc + r.volume; });
    CHECK(traded == doctest::Approx(recorded).epsilon(1e-12));

    const long counted = std::accumulate(
        result.records.begin(), result.records.end(), 0L,
        [](long acc, const DailyRecord& r) { return acc + r.trade_count; });
    CHECK(counted == static_cast<long>(result.trades.size()));
}

TEST_CASE("population growth follows the target curve") {
    const RunConfig cfg = short_config(100);
    const RunResult result = run_simulation(cfg, 5);
    // 160 initial traders plus the cumulative entrant schedule through day 100.
    CHECK(result.final_traders.size() == 160 + 55);
    const auto& last = result.records.back();
    CHECK(last.miners.count + last.randoms.count + last.chartists.count + last.gox.count ==
          static_cast<long>(result.final_traders.size()));
}

TEST_CASE("bubble scenario converts part of the inflow") {
    RunConfig cfg = short_config(150);
    cfg.scenario = Scenario::Gox;
    const RunResult result = run_simulation(cfg, 11);
    long gox = 0;
    for (const auto& tr : result.final_traders)
        if (tr.population == Population::Gox) ++gox;
    CHECK(gox > 0);
    CHECK(result.records.back().gox.count == gox);

    const RunConfig base = short_config(150);
    const RunResult plain = run_simulation(base, 11);
    for (const auto& tr : plain.final_traders) CHECK(tr.population != Population::Gox);
}

TEST_CASE("monte carlo aggregates every seed") {
    RunConfig cfg = short_config(30);
    cfg.seeds = {1, 2, 3};
    const fs::path dir = fs::temp_directory_path() / "btcsim_engine_tests" / "mc";
    fs::remove_all(dir);

    MonteCarloOptions opts;
    opts.write_files = true;
    opts.output_dir = dir.string();
    opts.jobs = 1;
    const MonteCarloResult mc = monte_carlo(cfg, opts);

    REQUIRE(mc.runs.size() == 3);
    CHECK(mc.runs[0].seed == 1);
    CHECK(mc.runs[2].seed == 3);
    for (const auto& run : mc.runs) {
        CHECK(run.records.size() == 30);
        CHECK(run.audit.clean());
        CHECK(run.final_trader_count >= 160);
    }

    REQUIRE(mc.ensemble.mean.size() == 30);
    REQUIRE(mc.ensemble.mean[0].size() == daily_record_fields().size());
    const auto closes = mc.ensemble.mean_series("close");
    REQUIRE(closes.size() == 30);
    const double by_hand =
        (mc.runs[0].records[4].close + mc.runs[1].records[4].close + mc.runs[2].records[4].close) /
        3.0;
    CHECK(closes[4] == doctest::Approx(by_hand).epsilon(1e-12));
    CHECK_THROWS(mc.ensemble.mean_series("no_such_field"));

    CHECK(fs::exists(dir / "run_1.csv"));
    CHECK(fs::exists(dir / "run_3.csv"));
    CHECK(fs::exists(dir / "ensemble.csv"));
    const auto file_closes = read_csv_column((dir / "run_2.csv").string(), "close");
    REQUIRE(file_closes.size() == 30);
    CHECK(file_closes[29] == doctest::Approx(mc.runs[1].records[29].close).epsilon(1e-12));
}

TEST_CASE("single-run ensembles have zero dispersion") {
    RunConfig cfg = short_config(20);
    cfg.seeds = {9};
    const MonteCarloResult mc = monte_carlo(cfg);
    REQUIRE(mc.runs.size() == 1);
    for (const auto& row : mc.ensemble.stddev)
        for (double v : row) CHECK(v == 0.0);
}

TEST_CASE("invalid configs are rejected before running") {
    RunConfig cfg = short_config(0);
    CHECK_THROWS_AS(run_simulation(cfg, 1), ConfigError);
}
