#include "btcsim/reference_book.hpp"

#include <algorithm>
#include <stdexcept>

namespace btcsim {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

//! Does `a` queue ahead of `b` on the same side? Purely by limit price —
//! higher first for buys, lower first for sells, so market sells (limit 0)
//! lead their queue and market buys trail theirs — then by arrival order.
bool queues_ahead(const Order& a, const Order& b) {
    if (a.limit_price != b.limit_price) {
        if (a.side == Side::Buy) return a.limit_price > b.limit_price;
        return a.limit_price < b.limit_price;
    }
    if (a.issue_step != b.issue_step) return a.issue_step < b.issue_step;
    if (a.issue_seq != b.issue_seq) return a.issue_seq < b.issue_seq;
    return a.id < b.id;
}

}  // namespace

std::size_t ReferenceBook::best(Side side) const {
    std::size_t found = npos;
    for (std::size_t i = 0; i < open_.size(); ++i) {
        if (open_[i].side != side) continue;
        if (found == npos || queues_ahead(open_[i], open_[found])) found = i;
    }
    return found;
}

InsertOutcome ReferenceBook::insert(Order order, int step) {
    if (!(order.residual > kMinQuantity))
        throw std::invalid_argument("order amount must be positive");
    if (order.limit_price < 0.0) throw std::invalid_argument("negative limit price");
    if (order.side == Side::Sell) order.escrow = 0.0;
    for (const auto& o : open_)
        if (o.id == order.id) throw std::invalid_argument("duplicate order id");

    open_.push_back(order);
    InsertOutcome out;
    match(out, step);
    return out;
}

void ReferenceBook::match(InsertOutcome& out, int step) {
    for (;;) {
        const std::size_t bi = best(Side::Buy);
        const std::size_t si = best(Side::Sell);
        if (bi == npos || si == npos) return;
        Order& buy = open_[bi];
        Order& sell = open_[si];

        const bool crosses = buy.limit_price == 0.0 || sell.limit_price == 0.0 ||
                             sell.limit_price <= buy.limit_price;
        if (!crosses) return;

        const double price = transaction_price(buy.limit_price, sell.limit_price, last_price_);
        double quantity = std::min(buy.residual, sell.residual);
        bool capped = false;
        const double affordable = buy.escrow / price;
        if (affordable < quantity) {
            quantity = affordable;
            capped = true;
        }
        if (quantity <= kMinQuantity) {
            out.released.push_back(
                {buy.id, buy.trader_id, Side::Buy, buy.residual, buy.escrow, true});
            open_.erase(open_.begin() + static_cast<std::ptrdiff_t>(bi));
            continue;
        }

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

        // Rebuild the removal set from ids: erasing by index twice is fragile.
        const bool drop_sell = sell.residual <= kMinQuantity;
        bool drop_buy = false;
        if (buy.residual <= kMinQuantity) {
            if (buy.escrow > 0.0)
                out.released.push_back({buy.id, buy.trader_id, Side::Buy, 0.0, buy.escrow, false});
            drop_buy = true;
        } else if (capped || buy.escrow <= 0.0) {
            out.released.push_back(
                {buy.id, buy.trader_id, Side::Buy, buy.residual, buy.escrow, true});
            drop_buy = true;
        }
        const std::int64_t buy_id = buy.id;
        const std::int64_t sell_id = sell.id;
        if (drop_sell)
            std::erase_if(open_, [&](const Order& o) { return o.id == sell_id; });
        if (drop_buy)
            std::erase_if(open_, [&](const Order& o) { return o.id == buy_id; });
    }
}

std::vector<ReleasedOrder> ReferenceBook::expire(int step) {
    std::vector<Order> lapsed;
    for (const auto& o : open_)
        if (o.expiry_step != kNoExpiry && o.expiry_step <= step) lapsed.push_back(o);
    std::sort(lapsed.begin(), lapsed.end(), [](const Order& a, const Order& b) {
        if (a.expiry_step != b.expiry_step) return a.expiry_step < b.expiry_step;
        return a.id < b.id;
    });
    std::vector<ReleasedOrder> released;
    released.reserve(lapsed.size());
    for (const auto& o : lapsed) {
        released.push_back({o.id, o.trader_id, o.side, o.residual, o.escrow, false});
        const std::int64_t id = o.id;
        std::erase_if(open_, [&](const Order& x) { return x.id == id; });
    }
    return released;
}

}  // namespace btcsim
