#include "btcsim/agents.hpp"

#include <algorithm>
#include <cmath>

namespace btcsim {

double draw_beta(double mean, double sd, Rng& rng) {
    return std::min(1.0, rng.lognormal_ms(mean, sd));
}

double buy_amount(double available_cash, double beta, double price) {
    if (available_cash <= 0.0 || price <= 0.0) return 0.0;
    return available_cash * beta / price;
}

double sell_amount(double available_btc, double beta) {
    if (available_btc <= 0.0) return 0.0;
    return available_btc * beta;
}

double adaptive_sigma(const PriceHistory& history, const CalibrationSet& calib, int window) {
    const double sigma = calib.volatility_gain * history.abs_return_volatility(window);
    return std::clamp(sigma, calib.sigma_lo, calib.sigma_hi);
}

double limit_price_from_draw(Side side, double current, double draw) {
    const double d = std::max(draw, 0.5);
    return side == Side::Buy ? current * d : current / d;
}

double draw_limit_price(Side side, double current, double sigma, const CalibrationSet& calib,
                        Rng& rng) {
    return limit_price_from_draw(side, current, rng.normal(calib.limit_mu, sigma));
}

namespace {

//! Shared sizing/pricing once the side is known. Expiry is decided by the caller.
std::optional<OrderRequest> build_order(const Trader& trader, const MarketView& market,
                                        const CalibrationSet& calib, Rng& rng, Side side,
                                        double beta_mean, double beta_sd, double p_market) {
    const double beta = draw_beta(beta_mean, beta_sd, rng);
    double amount = side == Side::Buy ? buy_amount(trader.available_cash(), beta, market.price)
                                      : sell_amount(trader.available_btc(), beta);
    if (amount <= kMinQuantity) return std::nullopt;

    OrderRequest req;
    req.trader_id = trader.id;
    req.side = side;
    req.limit_price = 0.0;
    if (!rng.bernoulli(p_market)) {
        const double sigma = adaptive_sigma(*market.history, calib, trader.volatility_window);
        req.limit_price = draw_limit_price(side, market.price, sigma, calib, rng);
    }

    if (side == Side::Buy) {
        if (req.limit_price > 0.0) {
            // Committing amount * limit may not exceed the free cash the amount
            // was sized against; reduce the amount rather than over-reserve.
            amount = std::min(amount, trader.available_cash() / req.limit_price);
            if (amount <= kMinQuantity) return std::nullopt;
            req.reserve = amount * req.limit_price;
        } else {
            req.reserve = amount * market.price;
        }
    } else {
        req.reserve = amount;
    }
    req.amount = amount;
    return req;
}

int draw_random_expiry(const MarketView& market, const CalibrationSet& calib, Rng& rng) {
    const double days =
        std::round(rng.lognormal_ms(calib.expiry_random_mean, calib.expiry_random_sd));
    return market.step + std::max(1, static_cast<int>(days));
}

}  // namespace

std::optional<OrderRequest> random_trader_action(const Trader& trader, const MarketView& market,
                                                 const CalibrationSet& calib, Rng& rng,
                                                 std::optional<Side> forced_side) {
    const Side side = forced_side ? *forced_side : (rng.bernoulli(0.5) ? Side::Buy : Side::Sell);
    auto req = build_order(trader, market, calib, rng, side, calib.beta_random_mean,
                           calib.beta_random_sd, calib.p_market_random);
    if (req) req->expiry_step = draw_random_expiry(market, calib, rng);
    return req;
}

std::optional<OrderRequest> chartist_action(const Trader& trader, const MarketView& market,
                                            const CalibrationSet& calib, Rng& rng,
                                            std::optional<Side> forced_side) {
    Side side;
    if (forced_side) {
        side = *forced_side;
    } else {
        const auto v = market.history->relative_variation(trader.volatility_window, true);
        if (!v) return std::nullopt;
        if (*v > calib.chartist_threshold) {
            side = Side::Buy;
        } else if (*v < -calib.chartist_threshold) {
            side = Side::Sell;
        } else {
            return std::nullopt;
        }
        if (trader.contrarian) side = side == Side::Buy ? Side::Sell : Side::Buy;
    }
    auto req = build_order(trader, market, calib, rng, side, calib.beta_chartist_mean,
                           calib.beta_chartist_sd, calib.p_market_chartist);
    if (req) req->expiry_step = market.step;  // end of the current day
    return req;
}

std::optional<OrderRequest> gox_action(const Trader& trader, const MarketView& market,
                                       const CalibrationSet& calib, Rng& rng) {
    if (market.step < calib.gox_buy_start) return random_trader_action(trader, market, calib, rng);
    const Side side = market.step < calib.gox_sell_start ? Side::Buy : Side::Sell;
    return random_trader_action(trader, market, calib, rng, side);
}

std::optional<OrderRequest> entry_order(const Trader& trader, const MarketView& market,
                                        const CalibrationSet& calib, Rng& rng) {
    switch (trader.population) {
        case Population::Chartist:
            return chartist_action(trader, market, calib, rng, Side::Buy);
        case Population::RandomTrader:
        case Population::Gox:
            return random_trader_action(trader, market, calib, rng, Side::Buy);
        case Population::Miner:
            return std::nullopt;  // miners enter through their first decision
    }
    return std::nullopt;
}

}  // namespace btcsim
