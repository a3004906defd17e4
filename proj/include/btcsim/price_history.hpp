#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace btcsim {

//! Daily closing prices. Index 0 holds the pre-simulation price; the close of
//! day t is appended when day t finishes, so while day t runs the latest entry
//! is day t-1's close. Trend and volatility windows read these closes only;
//! intra-day formulas use the live trade price instead.
class PriceHistory {
public:
    explicit PriceHistory(double initial_price) { closes_.push_back(initial_price); }

    void record(double close) { closes_.push_back(close); }

    std::size_t size() const { return closes_.size(); }
    double latest() const { return closes_.back(); }
    double at(std::size_t i) const { return closes_[i]; }
    std::span<const double> closes() const { return closes_; }

    //! Relative change of the latest close versus the close `window` entries back.
    //! When the series is shorter and clamp_to_oldest is set, the first close is
    //! used as the base; otherwise nullopt signals "not enough history".
    std::optional<double> relative_variation(int window, bool clamp_to_oldest) const {
        if (window < 1) return std::nullopt;
        const std::size_t n = closes_.size();
        std::size_t base;
        if (n > static_cast<std::size_t>(window)) {
            base = n - 1 - static_cast<std::size_t>(window);
        } else if (clamp_to_oldest && n >= 2) {
            base = 0;
        } else {
            return std::nullopt;
        }
        const double ref = closes_[base];
        if (ref <= 0.0) return std::nullopt;
        return (closes_.back() - ref) / ref;
    }

    //! Sample standard deviation of |relative daily returns| over the trailing
    //! `window` returns (all available when fewer). Returns 0 with under two returns.
    double abs_return_volatility(int window) const {
        const std::size_t n = closes_.size();
        if (n < 3 || window < 2) return 0.0;
        std::size_t count = n - 1;
        if (count > static_cast<std::size_t>(window)) count = static_cast<std::size_t>(window);
        double sum = 0.0, sum2 = 0.0;
        for (std::size_t k = n - count; k < n; ++k) {
            const double prev = closes_[k - 1];
            if (prev <= 0.0) return 0.0;
            const double r = std::abs((closes_[k] - prev) / prev);
            sum += r;
            sum2 += r * r;
        }
        const double m = static_cast<double>(count);
        const double var = (sum2 - sum * sum / m) / (m - 1.0);
        return var > 0.0 ? std::sqrt(var) : 0.0;
    }

private:
    std::vector<double> closes_;
};

}  // namespace btcsim
