#pragma once

#include <string>
#include <vector>

#include "btcsim/engine.hpp"
#include "btcsim/orderbook.hpp"

namespace btcsim {

//! Render a run's daily records as CSV text (header + one row per step).
//! Numbers use %.12g so equal doubles always render to equal bytes.
std::string render_run_csv(const std::vector<DailyRecord>& records);

//! Write render_run_csv output to `path`, creating parent directories.
void write_run_csv(const std::string& path, const std::vector<DailyRecord>& records);

//! One row per executed trade: step, order ids, price, quantity.
void write_trades_csv(const std::string& path, const std::vector<Trade>& trades);

//! Cross-run mean/std per step: step, then <field>_mean,<field>_std pairs.
void write_ensemble_csv(const std::string& path, const EnsembleStats& stats);

//! Read one named column from a CSV written by this module.
std::vector<double> read_csv_column(const std::string& path, const std::string& column);

//! Read a price series from an arbitrary CSV: the last field of every row that
//! parses as a number (non-numeric header and date columns are skipped).
std::vector<double> read_price_series(const std::string& path);

}  // namespace btcsim
