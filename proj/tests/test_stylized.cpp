#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "btcsim/rng.hpp"
#include "btcsim/stylized.hpp"

using namespace btcsim;

TEST_CASE("log returns of a positive price path") {
    const std::vector<double> prices = {1.0, 2.0, 1.0, 4.0};
    const auto r = log_returns(prices);
    REQUIRE(r.size() == 3);
    CHECK(r[0] == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(r[1] == doctest::Approx(-std::log(2.0)).epsilon(1e-15));
    CHECK(r[2] == doctest::Approx(std::log(4.0)).epsilon(1e-15));
    CHECK(log_returns({1.0}).empty());
    CHECK_THROWS_AS(log_returns({1.0, 0.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(log_returns({1.0, -1.0}), std::invalid_argument);
}

TEST_CASE("excess kurtosis matches the hand-computed moments") {
    // {1..5}: m2 = 2, m4 = 6.8, kurtosis = 6.8/4 - 3 = -1.3.
    CHECK(excess_kurtosis({1.0, 2.0, 3.0, 4.0, 5.0}) == doctest::Approx(-1.3).epsilon(1e-12));
    CHECK_THROWS_AS(excess_kurtosis({1.0, 2.0, 3.0}), std::invalid_argument);
    CHECK_THROWS_AS(excess_kurtosis({2.0, 2.0, 2.0, 2.0}), std::invalid_argument);
}

TEST_CASE("kurtosis separates heavy from light tails") {
    Rng rng(101);
    std::vector<double> normal(20000);
    for (auto& x : normal) x = rng.normal(0.0, 1.0);
    CHECK(excess_kurtosis(normal) == doctest::Approx(0.0).epsilon(0.15));

    // Mixture with occasional huge draws: strongly leptokurtic.
    std::vector<double> heavy(20000);
    for (auto& x : heavy) x = rng.bernoulli(0.02) ? rng.normal(0.0, 10.0) : rng.normal(0.0, 1.0);
    CHECK(excess_kurtosis(heavy) > 3.0);
}

TEST_CASE("autocorrelation matches hand-computed values") {
    const auto r = acf({1.0, 2.0, 3.0, 4.0}, 3);
    REQUIRE(r.size() == 3);
    CHECK(r[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(r[1] == doctest::Approx(-0.3).epsilon(1e-12));
    CHECK(r[2] == doctest::Approx(-0.45).epsilon(1e-12));
    CHECK_THROWS_AS(acf({1.0, 2.0}, 5), std::invalid_argument);
    CHECK_THROWS_AS(acf({1.0, 1.0, 1.0, 1.0}, 1), std::invalid_argument);
}

TEST_CASE("autocorrelation recovers an AR(1) coefficient") {
    Rng rng(102);
    std::vector<double> xs(30000);
    double x = 0.0;
    for (auto& v : xs) {
        x = 0.8 * x + rng.normal(0.0, 1.0);
        v = x;
    }
    const auto r = acf(xs, 2);
    CHECK(r[0] == doctest::Approx(0.8).epsilon(0.03));
    CHECK(r[1] == doctest::Approx(0.64).epsilon(0.05));
}

TEST_CASE("unit-root statistic reproduces an externally computed value") {
    const std::vector<double> series = {
        10.486222812999134, 10.887523865395547, 11.171435935505077, 10.687463257176454,
        10.482976476587982, 10.964856596483063, 10.711811428273853, 11.099833450298776,
        11.155756578660643, 11.405455296179943, 10.973471879542059, 11.4393489491161,
        11.228262696804634, 11.700126939304646, 11.328511482447583, 11.372309796673033,
        11.7070587901066,   11.974167771003096, 12.002310392117133, 12.420241415430805,
        12.483968561165511, 12.636226327227645, 12.371499884455858, 11.91587275934801,
        12.263570637510892, 11.94685337636971,  11.85977953806549,  12.102930645582193,
        12.066367198471529, 12.01188269612581,  11.975379214325454, 12.268836392823339,
        11.847760325805357, 11.47829001618187,  11.054592346176268, 11.07672328845456,
        11.526036178741649, 11.285209433734456, 11.665711572716184, 11.584235383404435};
    CHECK(adf_statistic(series, 1) == doctest::Approx(-1.7611341844812276).epsilon(1e-9));
    CHECK(adf_statistic(series, 2) == doctest::Approx(-1.4657673747401536).epsilon(1e-9));
}

TEST_CASE("unit-root statistic separates random walks from stationary series") {
    Rng rng(103);
    std::vector<double> walk(2000);
    double x = 100.0;
    for (auto& v : walk) {
        x += rng.normal(0.0, 1.0);
        v = x;
    }
    CHECK(adf_statistic(walk, 1) > -2.86);

    std::vector<double> reverting(2000);
    double y = 0.0;
    for (auto& v : reverting) {
        y = 0.2 * y + rng.normal(0.0, 1.0);
        v = y;
    }
    CHECK(adf_statistic(reverting, 1) < -2.86);
}

TEST_CASE("unit-root statistic rejects degenerate inputs") {
    CHECK_THROWS_AS(adf_statistic({1.0, 2.0, 3.0}, 1), std::invalid_argument);
    const std::vector<double> constant(50, 3.0);
    CHECK_THROWS(adf_statistic(constant, 1));
}

TEST_CASE("pearson correlation on frozen examples") {
    CHECK(pearson({1.0, 2.0, 3.0}, {2.0, 4.0, 6.0}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pearson({1.0, 2.0, 3.0}, {6.0, 4.0, 2.0}) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(pearson({1.0, 2.0, 4.0, 5.0, 7.0}, {2.0, 3.0, 3.0, 6.0, 8.0}) ==
          doctest::Approx(0.9345021920672831).epsilon(1e-12));
    CHECK(pearson({1.0, 1.0, 1.0}, {1.0, 2.0, 3.0}) == 0.0);  // constant side
    CHECK_THROWS_AS(pearson({1.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("wealth summary aggregates the founding miner cohort") {
    RunResult result;
    DailyRecord rec;
    rec.step = 100;
    rec.close = 2.0;
    result.records.push_back(rec);

    Trader founder1;
    founder1.id = 0;
    founder1.population = Population::Miner;
    founder1.entry_step = 1;
    founder1.entry_cash = 100.0;
    founder1.entry_bitcoins = 50.0;
    founder1.cash = 300.0;
    founder1.bitcoins = 100.0;  // wealth 500 at close 2.0
    founder1.hardware.push_back({1, 1000.0, 5.0, true});
    founder1.gamma1_sum = 0.3;
    founder1.gamma1_draws = 2;

    Trader founder2 = founder1;
    founder2.id = 1;
    founder2.entry_cash = 200.0;
    founder2.cash = 100.0;
    founder2.bitcoins = 50.0;  // wealth 200
    founder2.hardware[0].hash_rate = 400.0;

    Trader late_miner = founder1;
    late_miner.id = 2;
    late_miner.entry_step = 50;
    late_miner.cash = 1000.0;
    late_miner.bitcoins = 0.0;  // wealth 1000

    Trader chartist;
    chartist.id = 3;
    chartist.population = Population::Chartist;
    chartist.cash = 1e9;  // must not contaminate miner aggregates

    result.final_traders = {founder1, founder2, late_miner, chartist};

    CalibrationSet calib;
    calib.initial_price = 0.5;
    const WealthSummary w = compute_wealth_summary(result, calib);

    CHECK(w.cohort_size == 2);
    CHECK(w.final_miner_count == 3);
    // Starts: 100 + 50*0.5 = 125 and 200 + 50*0.5 = 225 -> mean 175.
    CHECK(w.cohort_start_per_capita == doctest::Approx(175.0).epsilon(1e-12));
    // Ends: 500 and 200 -> mean 350.
    CHECK(w.cohort_end_per_capita == doctest::Approx(350.0).epsilon(1e-12));
    CHECK(w.all_miner_end_per_capita == doctest::Approx((500.0 + 200.0 + 1000.0) / 3).epsilon(1e-12));
    // Wealth {500,200} against hash {1000,400}: perfectly aligned.
    CHECK(w.corr_wealth_hash == doctest::Approx(1.0).epsilon(1e-12));
}
