#pragma once

#include <vector>

#include "btcsim/calibration.hpp"
#include "btcsim/engine.hpp"

namespace btcsim {

//! Log returns of a strictly positive price series: r_t = ln(p_t / p_{t-1}).
std::vector<double> log_returns(const std::vector<double>& prices);

//! Excess kurtosis m4/m2^2 - 3. Throws if fewer than 4 points or zero variance.
double excess_kurtosis(const std::vector<double>& xs);

//! Autocorrelation of xs at lags 1..max_lag (biased estimator, n denominator).
std::vector<double> acf(const std::vector<double>& xs, int max_lag);

//! Augmented Dickey-Fuller t-statistic with constant and `lags` lagged
//! differences. Values above the 5% critical point (-2.86) mean the unit-root
//! hypothesis is not rejected.
double adf_statistic(const std::vector<double>& xs, int lags = 1);

//! Pearson correlation coefficient. Returns 0 when either side is constant.
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

//! Wealth accounting for the founding miner cohort of a finished run.
WealthSummary compute_wealth_summary(const RunResult& result, const CalibrationSet& calib);

}  // namespace btcsim
