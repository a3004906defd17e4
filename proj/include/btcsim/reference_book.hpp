#pragma once

#include <vector>

#include "btcsim/orderbook.hpp"

namespace btcsim {

//! Deliberately naive re-implementation of the order book used only to
//! cross-check OrderBook: open orders live in one flat list that is rescanned
//! from scratch for the best pair after every event. Same documented matching
//! and settlement semantics, none of the shared code or data structures.
class ReferenceBook {
public:
    explicit ReferenceBook(double initial_price) : last_price_(initial_price) {}

    InsertOutcome insert(Order order, int step);
    std::vector<ReleasedOrder> expire(int step);

    double last_price() const { return last_price_; }
    std::size_t open_orders() const { return open_.size(); }

private:
    std::size_t best(Side side) const;  // index into open_, or npos
    void match(InsertOutcome& out, int step);

    std::vector<Order> open_;  // arrival order
    double last_price_;
};

}  // namespace btcsim
