#include <doctest.h>

#include <stdexcept>

#include "btcsim/calibration.hpp"

using btcsim::CalibrationSet;

namespace {
const CalibrationSet kDefault{};
}

TEST_CASE("hash rate per dollar follows the fitted growth curve") {
    CHECK(kDefault.hash_rate_per_dollar(1) == doctest::Approx(86897.28635709514).epsilon(1e-12));
    CHECK(kDefault.hash_rate_per_dollar(1667) ==
          doctest::Approx(3238156695.0569873).epsilon(1e-12));
    CHECK(kDefault.hash_rate_per_dollar(1856) ==
          doctest::Approx(10687835724.92958).epsilon(1e-12));
}

TEST_CASE("power per hash decays to roughly a quarter watt per GH/s") {
    CHECK(kDefault.power_per_hash(1) == doctest::Approx(4.630186475200795e-07).epsilon(1e-12));
    CHECK(kDefault.power_per_hash(1856) ==
          doctest::Approx(2.5050969131947975e-10).epsilon(1e-12));
    const double watts_per_ghs = kDefault.power_per_hash(1856) * 1e9;
    CHECK(watts_per_ghs > 0.24);
    CHECK(watts_per_ghs < 0.30);
}

TEST_CASE("scaled trader head-count targets") {
    CHECK(kDefault.traders_target(1) == doctest::Approx(160.23219213061415).epsilon(1e-12));
    CHECK(kDefault.traders_target(1856) == doctest::Approx(39649.315528469284).epsilon(1e-12));
}

TEST_CASE("miner entry probability decays from near one to under a percent") {
    CHECK(kDefault.miner_probability(1) == doctest::Approx(0.9400019214165931).epsilon(1e-12));
    CHECK(kDefault.miner_probability(1856) ==
          doctest::Approx(0.006839481463439888).epsilon(1e-12));
}

TEST_CASE("population shares split the non-miner remainder 70/30 and sum to one") {
    const auto shares = kDefault.population_shares(1.0);
    CHECK(shares.miner == doctest::Approx(0.9400019214165931).epsilon(1e-12));
    CHECK(shares.random_trader == doctest::Approx(0.041998655008384816).epsilon(1e-12));
    CHECK(shares.chartist == doctest::Approx(0.017999423575022065).epsilon(1e-12));
    for (double t : {1.0, 500.0, 1856.0}) {
        const auto s = kDefault.population_shares(t);
        CHECK(s.miner + s.random_trader + s.chartist == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("block reward halves after the halving step and totals exactly") {
    CHECK(kDefault.block_reward(1) == 72.0);
    CHECK(kDefault.block_reward(853) == 72.0);
    CHECK(kDefault.block_reward(854) == 36.0);
    CHECK(kDefault.block_reward(1856) == 36.0);
    long double total = 0.0L;
    for (int t = 1; t <= kDefault.horizon; ++t) total += kDefault.block_reward(t);
    CHECK(static_cast<double>(total) == 853.0 * 72.0 + 1003.0 * 36.0);
    CHECK(static_cast<double>(total) == 97524.0);
}

TEST_CASE("default calibration validates") {
    CHECK_NOTHROW(kDefault.validate());
}

TEST_CASE("validation names the broken field") {
    CalibrationSet c;
    c.initial_price = 0.0;
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("initial_price"),
                         std::invalid_argument);

    c = CalibrationSet{};
    c.sigma_lo = 0.02;  // above sigma_hi
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);

    c = CalibrationSet{};
    c.random_share = 0.9;  // shares no longer sum to one
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);

    c = CalibrationSet{};
    c.horizon = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);

    c = CalibrationSet{};
    c.trigger_fraction = 1.5;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}
