#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "btcsim/population.hpp"

using namespace btcsim;

namespace {
const CalibrationSet kCalib{};
}

TEST_CASE("initial traders carry the rank-based endowments, shuffled") {
    Rng rng(5);
    const auto traders = generate_initial_traders(kCalib, rng);
    REQUIRE(traders.size() == 160);

    long double btc = 0.0L, cash = 0.0L;
    std::multiset<double> btc_values;
    for (const auto& t : traders) {
        CHECK(t.entry_step == 1);
        CHECK(t.entry_bitcoins == t.bitcoins);
        CHECK(t.entry_cash == t.cash);
        btc += t.bitcoins;
        cash += t.cash;
        btc_values.insert(t.bitcoins);
    }
    // Totals are the endowment scales times the 160th harmonic number.
    CHECK(static_cast<double>(btc) == doctest::Approx(23283.739713076924).epsilon(1e-12));
    CHECK(static_cast<double>(cash) == doctest::Approx(116430.0095878345).epsilon(1e-12));
    // The multiset of endowments is exactly {4117/rank}.
    std::multiset<double> expected;
    for (int rank = 1; rank <= 160; ++rank) expected.insert(4117.0 / rank);
    CHECK(btc_values == expected);
    // Shuffled: the richest trader is rarely trader 0. Two seeds differ.
    Rng rng2(6);
    const auto traders2 = generate_initial_traders(kCalib, rng2);
    bool same_order = true;
    for (std::size_t i = 0; i < traders.size(); ++i)
        same_order = same_order && traders[i].bitcoins == traders2[i].bitcoins;
    CHECK_FALSE(same_order);
}

TEST_CASE("initial population is dominated by miners with an endowed rig") {
    Rng rng(17);
    const auto traders = generate_initial_traders(kCalib, rng);
    int miners = 0;
    for (const auto& t : traders) {
        if (t.population != Population::Miner) {
            CHECK(t.hardware.empty());
            continue;
        }
        ++miners;
        REQUIRE(t.hardware.size() == 1);
        CHECK(t.hardware[0].hash_rate == 1.73e7);
        CHECK(t.hardware[0].power == 75.0);
        CHECK(t.hardware[0].purchase_step == 1);
        CHECK(t.hardware[0].active);
        CHECK(t.next_decision_step >= 1);
        CHECK(t.next_decision_step <= 60);
    }
    // Day-one miner share is 0.94; 160 draws stay well inside [0.85, 1.0].
    CHECK(miners >= 136);
    CHECK(miners <= 160);
}

TEST_CASE("entrant pool size covers the whole run plus slack") {
    CHECK(default_pool_size(kCalib) == 41464);
}

TEST_CASE("entrant pool holds the power-law cash ladder, shuffled") {
    Rng rng(3);
    const std::size_t size = 1000;
    const auto pool = generate_entrant_pool(kCalib, size, rng);
    REQUIRE(pool.size() == size);
    std::multiset<double> values;
    for (const auto& e : pool) values.insert(e.cash);
    CHECK(*values.rbegin() == 200000.0);  // rank 1
    // Rank 32: 200000 / 32^0.6
    const double rank32 = 200000.0 / std::pow(32.0, 0.6);
    CHECK(values.count(rank32) == 1);
    CHECK(rank32 == doctest::Approx(25000.0).epsilon(1e-12));
    // Shuffled: not sorted descending.
    bool sorted = true;
    for (std::size_t i = 1; i < pool.size(); ++i)
        sorted = sorted && pool[i - 1].cash >= pool[i].cash;
    CHECK_FALSE(sorted);
}

TEST_CASE("entrant schedule tracks the head-count curve cumulatively") {
    EntrantSchedule schedule(kCalib);
    long cumulative = 0;
    const auto expected_cumulative = [&](int t) {
        return std::lround(kCalib.traders_target(t) - kCalib.initial_traders);
    };
    for (int t = 2; t <= 1856; ++t) {
        const int due = schedule.entrants_for_step(t);
        CHECK(due >= 0);
        cumulative += due;
        CHECK(cumulative == expected_cumulative(t));
    }
    CHECK(cumulative == 39489);
    CHECK(160 + cumulative == 39649);
}

TEST_CASE("entrants on the final day match the frozen count") {
    EntrantSchedule schedule(kCalib);
    for (int t = 2; t <= 1855; ++t) schedule.entrants_for_step(t);
    CHECK(schedule.entrants_for_step(1856) == 117);
}

TEST_CASE("population assignment follows the declining miner share") {
    Rng rng(9);
    int miners = 0, gox = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const auto p = assign_population(1, Scenario::Base, kCalib, rng);
        if (p == Population::Miner) ++miners;
        if (p == Population::Gox) ++gox;
    }
    CHECK(gox == 0);  // base scenario never creates hoarding accounts
    CHECK(static_cast<double>(miners) / n == doctest::Approx(0.94).epsilon(0.02));

    miners = 0;
    for (int i = 0; i < n; ++i)
        if (assign_population(1856, Scenario::Base, kCalib, rng) == Population::Miner) ++miners;
    CHECK(static_cast<double>(miners) / n == doctest::Approx(0.00684).epsilon(0.35));
}

TEST_CASE("hoarding accounts absorb forty percent of early random entrants") {
    Rng rng(21);
    const int n = 40000;
    int randoms = 0, gox = 0;
    for (int i = 0; i < n; ++i) {
        const auto p = assign_population(1000, Scenario::Gox, kCalib, rng);
        if (p == Population::RandomTrader) ++randoms;
        if (p == Population::Gox) ++gox;
    }
    CHECK(gox > 0);
    const double converted = static_cast<double>(gox) / (gox + randoms);
    CHECK(converted == doctest::Approx(0.40).epsilon(0.05));

    // After the entry cutoff no more hoarding accounts appear.
    for (int i = 0; i < 5000; ++i)
        CHECK(assign_population(1249, Scenario::Gox, kCalib, rng) != Population::Gox);
}

TEST_CASE("chartist initialization draws a personal window and rare contrarians") {
    Rng rng(33);
    int contrarians = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        Trader t;
        init_chartist_fields(t, kCalib, rng);
        CHECK(t.volatility_window >= 13);
        CHECK(t.volatility_window <= 27);
        if (t.contrarian) ++contrarians;
    }
    CHECK(static_cast<double>(contrarians) / n == doctest::Approx(0.10).epsilon(0.10));
}
