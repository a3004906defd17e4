#pragma once

#include <optional>

#include "btcsim/calibration.hpp"
#include "btcsim/orderbook.hpp"
#include "btcsim/price_history.hpp"
#include "btcsim/rng.hpp"
#include "btcsim/trader.hpp"

namespace btcsim {

//! An order as generated by an agent, before it is assigned a book id.
//! `reserve` is the commitment made at issue: dollars for buys (amount * limit,
//! or amount * issue price for market orders), BTC (= amount) for sells.
struct OrderRequest {
    int trader_id = 0;
    Side side = Side::Buy;
    double amount = 0.0;       // BTC
    double limit_price = 0.0;  // 0 = market order
    int expiry_step = kNoExpiry;
    double reserve = 0.0;
};

//! Live market data an agent sees while deciding.
struct MarketView {
    double price = 0.0;  // latest trade price (intra-day)
    const PriceHistory* history = nullptr;
    int step = 0;
};

//! Trade-size fraction: lognormal with the given mean/sd, clamped to at most 1.
double draw_beta(double mean, double sd, Rng& rng);

//! BTC bought when spending `beta` of the available cash at `price`.
double buy_amount(double available_cash, double beta, double price);

//! BTC sold when parting with `beta` of the available holding.
double sell_amount(double available_btc, double beta);

//! Limit-price dispersion: volatility_gain * stdev of |returns| over the trader's
//! trailing window, clamped to [sigma_lo, sigma_hi].
double adaptive_sigma(const PriceHistory& history, const CalibrationSet& calib, int window);

//! Deterministic part of the limit-price rule: the multiplier draw is applied
//! above the current price for buys and below it for sells (buy * sell == p^2
//! for equal draws). The draw is truncated below at 0.5.
double limit_price_from_draw(Side side, double current, double draw);

//! Draw the multiplier ~ N(limit_mu, sigma) and apply it.
double draw_limit_price(Side side, double current, double sigma, const CalibrationSet& calib,
                        Rng& rng);

//! Random trader: coin-flip side (unless forced), beta-sized amount against the
//! free balance, market order with p_market_random, lognormal expiry of at least
//! one day. Returns nothing when the computed amount is zero.
std::optional<OrderRequest> random_trader_action(const Trader& trader, const MarketView& market,
                                                 const CalibrationSet& calib, Rng& rng,
                                                 std::optional<Side> forced_side = std::nullopt);

//! Chartist: acts on the relative price variation over their own window; buys
//! above +chartist_threshold, sells below -chartist_threshold, nothing inside
//! the band. Contrarians invert the side. Orders die at the end of the day.
std::optional<OrderRequest> chartist_action(const Trader& trader, const MarketView& market,
                                            const CalibrationSet& calib, Rng& rng,
                                            std::optional<Side> forced_side = std::nullopt);

//! Hoarding account: behaves like a random trader before gox_buy_start, buys
//! only in [gox_buy_start, gox_sell_start), sells only afterwards.
std::optional<OrderRequest> gox_action(const Trader& trader, const MarketView& market,
                                       const CalibrationSet& calib, Rng& rng);

//! First order of a newly admitted non-miner: the population's usual rules with
//! the side forced to buy.
std::optional<OrderRequest> entry_order(const Trader& trader, const MarketView& market,
                                        const CalibrationSet& calib, Rng& rng);

}  // namespace btcsim
