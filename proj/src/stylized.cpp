#include "btcsim/stylized.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "btcsim/mining.hpp"

namespace btcsim {

std::vector<double> log_returns(const std::vector<double>& prices) {
    std::vector<double> out;
    if (prices.size() < 2) return out;
    out.reserve(prices.size() - 1);
    for (std::size_t i = 1; i < prices.size(); ++i) {
        if (!(prices[i] > 0.0) || !(prices[i - 1] > 0.0))
            throw std::invalid_argument("log_returns: non-positive price");
        out.push_back(std::log(prices[i] / prices[i - 1]));
    }
    return out;
}

double excess_kurtosis(const std::vector<double>& xs) {
    const std::size_t n = xs.size();
    if (n < 4) throw std::invalid_argument("excess_kurtosis: need at least 4 points");
    long double mean = 0.0L;
    for (double x : xs) mean += x;
    mean /= static_cast<long double>(n);
    long double m2 = 0.0L, m4 = 0.0L;
    for (double x : xs) {
        const long double d = x - mean;
        const long double d2 = d * d;
        m2 += d2;
        m4 += d2 * d2;
    }
    m2 /= static_cast<long double>(n);
    m4 /= static_cast<long double>(n);
    if (!(m2 > 0.0L)) throw std::invalid_argument("excess_kurtosis: zero variance");
    return static_cast<double>(m4 / (m2 * m2) - 3.0L);
}

std::vector<double> acf(const std::vector<double>& xs, int max_lag) {
    const std::size_t n = xs.size();
    if (max_lag < 1) throw std::invalid_argument("acf: max_lag must be positive");
    if (n <= static_cast<std::size_t>(max_lag))
        throw std::invalid_argument("acf: series shorter than max_lag");
    long double mean = 0.0L;
    for (double x : xs) mean += x;
    mean /= static_cast<long double>(n);
    long double denom = 0.0L;
    for (double x : xs) denom += (x - mean) * (x - mean);
    if (!(denom > 0.0L)) throw std::invalid_argument("acf: zero variance");
    std::vector<double> out(static_cast<std::size_t>(max_lag));
    for (int k = 1; k <= max_lag; ++k) {
        long double num = 0.0L;
        for (std::size_t t = static_cast<std::size_t>(k); t < n; ++t)
            num += (xs[t] - mean) * (xs[t - static_cast<std::size_t>(k)] - mean);
        out[static_cast<std::size_t>(k - 1)] = static_cast<double>(num / denom);
    }
    return out;
}

double adf_statistic(const std::vector<double>& xs, int lags) {
    if (lags < 0) throw std::invalid_argument("adf: negative lag count");
    const long n = static_cast<long>(xs.size());
    const long rows = n - 1 - lags;  // usable observations of the difference series
    const long cols = 2 + lags;      // constant, level, lagged differences
    if (rows <= cols) throw std::invalid_argument("adf: series too short");

    std::vector<double> diff(static_cast<std::size_t>(n - 1));
    for (long t = 1; t < n; ++t)
        diff[static_cast<std::size_t>(t - 1)] = xs[static_cast<std::size_t>(t)] -
                                                xs[static_cast<std::size_t>(t - 1)];

    Eigen::MatrixXd X(rows, cols);
    Eigen::VectorXd y(rows);
    for (long r = 0; r < rows; ++r) {
        const long t = r + lags;  // index into diff; response is diff[t]
        y(r) = diff[static_cast<std::size_t>(t)];
        X(r, 0) = 1.0;
        X(r, 1) = xs[static_cast<std::size_t>(t)];  // level x_{t-1} for this response
        for (int j = 1; j <= lags; ++j) X(r, 1 + j) = diff[static_cast<std::size_t>(t - j)];
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < cols) throw std::runtime_error("adf: rank-deficient regression");
    const Eigen::VectorXd beta = qr.solve(y);
    const Eigen::VectorXd resid = y - X * beta;
    const double s2 = resid.squaredNorm() / static_cast<double>(rows - cols);
    const Eigen::MatrixXd cov = s2 * (X.transpose() * X).inverse();
    const double se = std::sqrt(cov(1, 1));
    if (!(se > 0.0)) throw std::runtime_error("adf: degenerate standard error");
    return beta(1) / se;
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("pearson: length mismatch");
    const std::size_t n = xs.size();
    if (n < 2) return 0.0;
    long double mx = 0.0L, my = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<long double>(n);
    my /= static_cast<long double>(n);
    long double sxx = 0.0L, syy = 0.0L, sxy = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        const long double dx = xs[i] - mx;
        const long double dy = ys[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (!(sxx > 0.0L) || !(syy > 0.0L)) return 0.0;
    return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

WealthSummary compute_wealth_summary(const RunResult& result, const CalibrationSet& calib) {
    WealthSummary out;
    if (result.records.empty()) return out;
    const double close = result.records.back().close;
    const int horizon = result.records.back().step;

    long double cohort_start = 0.0L, cohort_end = 0.0L, all_miner_end = 0.0L;
    std::vector<double> wealth, hash, ratio, mean_gamma;
    for (const auto& tr : result.final_traders) {
        if (tr.population != Population::Miner) continue;
        out.final_miner_count += 1;
        all_miner_end += tr.wealth(close);
        if (tr.entry_step != 1) continue;
        out.cohort_size += 1;
        const double start = tr.entry_cash + tr.entry_bitcoins * calib.initial_price;
        const double end = tr.wealth(close);
        cohort_start += start;
        cohort_end += end;
        wealth.push_back(end);
        hash.push_back(miner_hash(tr, horizon));
        if (tr.gamma1_draws > 0 && start > 0.0) {
            ratio.push_back(end / start);
            mean_gamma.push_back(tr.gamma1_sum / tr.gamma1_draws);
        }
    }
    if (out.cohort_size > 0) {
        out.cohort_start_per_capita = static_cast<double>(cohort_start) / out.cohort_size;
        out.cohort_end_per_capita = static_cast<double>(cohort_end) / out.cohort_size;
    }
    if (out.final_miner_count > 0)
        out.all_miner_end_per_capita = static_cast<double>(all_miner_end) / out.final_miner_count;
    out.corr_wealth_hash = pearson(wealth, hash);
    out.corr_ratio_gamma = pearson(ratio, mean_gamma);
    return out;
}

}  // namespace btcsim
