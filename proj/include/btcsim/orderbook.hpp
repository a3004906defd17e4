#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>
#include <vector>

namespace btcsim {

enum class Side { Buy, Sell };

//! Orders at or below this residual are treated as exhausted.
inline constexpr double kMinQuantity = 1e-12;

//! Sentinel expiry for orders that never lapse.
inline constexpr int kNoExpiry = std::numeric_limits<int>::max();

struct Order {
    std::int64_t id = 0;
    int trader_id = 0;
    Side side = Side::Buy;
    double residual = 0.0;     // unfilled BTC
    double limit_price = 0.0;  // $/BTC; 0 = market order
    int issue_step = 0;
    int issue_seq = 0;  // within-step arrival sequence, breaks price ties
    int expiry_step = kNoExpiry;

    // Buys only: remaining committed dollars. Set at issue to amount * limit
    // (limit orders) or amount * current price (market orders); fills can never
    // draw more than this, so the owner's free cash is untouchable by the book.
    double escrow = 0.0;
};

struct Trade {
    std::int64_t buy_order_id = 0;
    std::int64_t sell_order_id = 0;
    double price = 0.0;
    double quantity = 0.0;
    int step = 0;
};

//! A trade plus the settlement data the engine needs to move balances.
//! `payment` is the cash actually transferred; it equals price * quantity up to
//! one rounding unit and never exceeds `buy_escrow_released`, so settling can
//! never push the buyer's cash below their remaining reservations.
struct Fill {
    Trade trade;
    int buy_trader_id = 0;
    int sell_trader_id = 0;
    double payment = 0.0;
    double buy_escrow_released = 0.0;  // drop in the buyer's reserved cash
};

//! An order leaving the book unfilled (expiry, rejection of the unfunded
//! remainder, or residual escrow on a completed fill). The caller releases the
//! matching reservations.
struct ReleasedOrder {
    std::int64_t order_id = 0;
    int trader_id = 0;
    Side side = Side::Buy;
    double residual = 0.0;  // BTC still open when removed
    double escrow = 0.0;    // committed $ still held when removed
    bool unfunded = false;  // true when removal was forced by an exhausted escrow
};

struct InsertOutcome {
    std::vector<Fill> fills;
    std::vector<ReleasedOrder> released;
};

//! Price of a match between the two limits given the current market price:
//! both zero -> current; market buy -> max(sell_limit, current); market sell ->
//! min(buy_limit, current); both set -> midpoint.
double transaction_price(double buy_limit, double sell_limit, double current);

//! Continuous double auction book. Buys queue by descending limit, sells by
//! ascending limit, ties by (issue_step, issue_seq). The ordering is purely by
//! limit price, so market sells (limit 0) lead the sell queue while market buys
//! trail the buy queue. Insertion matches top-of-book pairs until they no
//! longer cross; a pair crosses when sell_limit <= buy_limit or either side is
//! a market order.
class OrderBook {
public:
    explicit OrderBook(double initial_price);

    //! Enqueue and match. Throws std::invalid_argument on a non-positive amount
    //! or negative limit. Trades carry `step`.
    InsertOutcome insert(Order order, int step);

    //! Remove every order with expiry_step <= step, in bucket order.
    std::vector<ReleasedOrder> expire(int step);

    double last_price() const { return last_price_; }
    std::size_t open_orders() const { return orders_.size(); }

    const Order* best_buy() const;
    const Order* best_sell() const;
    const Order* find(std::int64_t id) const;

    //! Audit helpers: totals over all resting orders.
    double total_buy_escrow() const;
    double total_sell_residual() const;

    template <typename Fn>
    void for_each_order(Fn&& fn) const {
        for (const auto& [id, o] : orders_) fn(o);
    }

private:
    struct QueueKey {
        double rank;  // buys: -limit; sells: limit
        int issue_step;
        int issue_seq;
        std::int64_t id;
        bool operator<(const QueueKey& other) const {
            if (rank != other.rank) return rank < other.rank;
            if (issue_step != other.issue_step) return issue_step < other.issue_step;
            if (issue_seq != other.issue_seq) return issue_seq < other.issue_seq;
            return id < other.id;
        }
    };

    QueueKey key_for(const Order& o) const;
    void enqueue(const Order& o);
    void remove(const Order& o);
    void match(InsertOutcome& out, int step);

    double last_price_;
    std::unordered_map<std::int64_t, Order> orders_;
    std::set<QueueKey> buys_;
    std::set<QueueKey> sells_;
    std::map<int, std::vector<std::int64_t>> expiry_buckets_;
};

}  // namespace btcsim
