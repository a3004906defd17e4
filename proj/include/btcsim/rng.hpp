#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

namespace btcsim {

//! Single per-run random source. Every stochastic draw of a simulation run goes
//! through one instance, so a (config, seed) pair fixes the whole trajectory.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(gen_); }

    bool bernoulli(double p) { return uniform() < p; }

    int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

    double normal(double mean, double sd) {
        return std::normal_distribution<double>(mean, sd)(gen_);
    }

    //! Lognormal parameterized by the mean and standard deviation of the variable
    //! itself (not of the underlying normal).
    double lognormal_ms(double mean, double sd) {
        const double s2 = std::log(1.0 + (sd / mean) * (sd / mean));
        const double mu = std::log(mean) - 0.5 * s2;
        return std::exp(normal(mu, std::sqrt(s2)));
    }

    template <typename Vec>
    void shuffle(Vec& v) {
        std::shuffle(v.begin(), v.end(), gen_);
    }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

}  // namespace btcsim
