#pragma once

#include <cstddef>
#include <vector>

#include "btcsim/calibration.hpp"
#include "btcsim/rng.hpp"
#include "btcsim/trader.hpp"

namespace btcsim {

//! The 160 day-one traders. Bitcoin endowments follow richest_bitcoins / rank and
//! cash follows richest_cash / rank, with ranks shuffled across traders; each is
//! assigned a population from the day-one shares. Miners start with one endowed
//! rig and a first decision day uniform in [1, decision_period].
std::vector<Trader> generate_initial_traders(const CalibrationSet& calib, Rng& rng);

//! A not-yet-admitted entrant: cash only, everything else set at entry.
struct PoolEntrant {
    double cash = 0.0;
};

//! Entrants expected for the whole run plus slack.
std::size_t default_pool_size(const CalibrationSet& calib);

//! Pre-generated entrant cash endowments, entrant_cash_scale / rank^entrant_alpha,
//! shuffled so admission order is unrelated to wealth. Immutable once built.
std::vector<PoolEntrant> generate_entrant_pool(const CalibrationSet& calib, std::size_t size,
                                               Rng& rng);

//! Paces admissions so that the cumulative entrant count through step t equals
//! round(traders_target(t) - initial_traders), never negative.
class EntrantSchedule {
public:
    explicit EntrantSchedule(const CalibrationSet& calib) : calib_(&calib) {}

    //! Entrants to admit at step t (call once per step, ascending t).
    int entrants_for_step(int t);

    long admitted() const { return admitted_; }

private:
    const CalibrationSet* calib_;
    long admitted_ = 0;
};

//! Population of a trader entering at step t. In the Gox scenario a Random draw
//! converts to a Gox account with probability gox_entry_fraction while
//! t < gox_entry_stop.
Population assign_population(int t, Scenario scenario, const CalibrationSet& calib, Rng& rng);

//! Chartist window/contrarian draws shared by initial traders and entrants.
void init_chartist_fields(Trader& trader, const CalibrationSet& calib, Rng& rng);

}  // namespace btcsim
