#include "btcsim/orderbook.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace btcsim {

double transaction_price(double buy_limit, double sell_limit, double current) {
    const bool buy_market = buy_limit == 0.0;
    const bool sell_market = sell_limit == 0.0;
    if (buy_market && sell_market) return current;
    if (sell_market) return std::min(buy_limit, current);
    if (buy_market) return std::max(sell_limit, current);
    return 0.5 * (buy_limit + sell_limit);
}

OrderBook::OrderBook(double initial_price) : last_price_(initial_price) {
    if (!(initial_price > 0.0)) throw std::invalid_argument("order book needs a positive price");
}

OrderBook::QueueKey OrderBook::key_for(const Order& o) const {
    // Buys descending by limit, sells ascending, both FIFO within a price.
    // The ordering is purely by limit price, so market sells (limit 0) lead
    // their queue while market buys trail theirs: a market buy only reaches
    // the top once every limit buy above it is gone.
    const double rank = o.side == Side::Buy ? -o.limit_price : o.limit_price;
    return {rank, o.issue_step, o.issue_seq, o.id};
}

void OrderBook::enqueue(const Order& o) {
    (o.side == Side::Buy ? buys_ : sells_).insert(key_for(o));
    if (o.expiry_step != kNoExpiry) expiry_buckets_[o.expiry_step].push_back(o.id);
}

void OrderBook::remove(const Order& o) {
    (o.side == Side::Buy ? buys_ : sells_).erase(key_for(o));
    orders_.erase(o.id);
    // A matching expiry-bucket entry may remain; expire() skips dead ids.
}

const Order* OrderBook::best_buy() const {
    if (buys_.empty()) return nullptr;
    return &orders_.at(buys_.begin()->id);
}

const Order* OrderBook::best_sell() const {
    if (sells_.empty()) return nullptr;
    return &orders_.at(sells_.begin()->id);
}

const Order* OrderBook::find(std::int64_t id) const {
    auto it = orders_.find(id);
    return it == orders_.end() ? nullptr : &it->second;
}

double OrderBook::total_buy_escrow() const {
    double total = 0.0;
    for (const auto& [id, o] : orders_)
        if (o.side == Side::Buy) total += o.escrow;
    return total;
}

double OrderBook::total_sell_residual() const {
    double total = 0.0;
    for (const auto& [id, o] : orders_)
        if (o.side == Side::Sell) total += o.residual;
    return total;
}

InsertOutcome OrderBook::insert(Order order, int step) {
    if (!(order.residual > kMinQuantity))
        throw std::invalid_argument("order amount must be positive");
    if (order.limit_price < 0.0) throw std::invalid_argument("negative limit price");
    if (order.side == Side::Sell) order.escrow = 0.0;
    if (orders_.count(order.id)) throw std::invalid_argument("duplicate order id");

    orders_.emplace(order.id, order);
    enqueue(order);

    InsertOutcome out;
    match(out, step);
    return out;
}

void OrderBook::match(InsertOutcome& out, int step) {
    while (!buys_.empty() && !sells_.empty()) {
        Order& buy = orders_.at(buys_.begin()->id);
        Order& sell = orders_.at(sells_.begin()->id);

        const bool crosses = buy.limit_price == 0.0 || sell.limit_price == 0.0 ||
                             sell.limit_price <= buy.limit_price;
        if (!crosses) break;

        const double price = transaction_price(buy.limit_price, sell.limit_price, last_price_);
        double quantity = std::min(buy.residual, sell.residual);

        // The buyer can never owe more than the order's committed dollars.
        bool capped = false;
        const double affordable = buy.escrow / price;
        if (affordable < quantity) {
            quantity = affordable;
            capped = true;
        }
        if (quantity <= kMinQuantity) {
            out.released.push_back(
                {buy.id, buy.trader_id, Side::Buy, buy.residual, buy.escrow, true});
            remove(buy);
            continue;
        }

        // Escrow release: proportional when filling at or below the committed
        // per-unit price (the surplus returns to free cash), the payment itself
        // when filling above it, everything on a full or escrow-exhausting fill.
        // The payment is clamped to the release so settling keeps cash >= reserved
        // exact at the rounding-unit level.
        const bool full = quantity >= buy.residual;
        const double per_unit = buy.escrow / buy.residual;
        double released;
        if (full || capped) {
            released = buy.escrow;
        } else if (price <= per_unit) {
            released = quantity * per_unit;
        } else {
            released = quantity * price;
        }
        const double payment = std::min(quantity * price, released);

        buy.escrow -= released;
        buy.residual -= quantity;
        sell.residual -= quantity;
        last_price_ = price;

        out.fills.push_back({{buy.id, sell.id, price, quantity, step},
                             buy.trader_id,
                             sell.trader_id,
                             payment,
                             released});

        if (sell.residual <= kMinQuantity) remove(sell);

        if (buy.residual <= kMinQuantity) {
            if (buy.escrow > 0.0)
                out.released.push_back({buy.id, buy.trader_id, Side::Buy, 0.0, buy.escrow, false});
            remove(buy);
        } else if (capped || buy.escrow <= 0.0) {
            // Unfunded remainder: the committed dollars ran out at this price.
            out.released.push_back(
                {buy.id, buy.trader_id, Side::Buy, buy.residual, buy.escrow, true});
            remove(buy);
        }
    }
}

std::vector<ReleasedOrder> OrderBook::expire(int step) {
    std::vector<ReleasedOrder> released;
    while (!expiry_buckets_.empty() && expiry_buckets_.begin()->first <= step) {
        for (std::int64_t id : expiry_buckets_.begin()->second) {
            auto it = orders_.find(id);
            if (it == orders_.end()) continue;  // already filled or cancelled
            const Order& o = it->second;
            released.push_back({o.id, o.trader_id, o.side, o.residual, o.escrow, false});
            remove(o);
        }
        expiry_buckets_.erase(expiry_buckets_.begin());
    }
    return released;
}

}  // namespace btcsim
