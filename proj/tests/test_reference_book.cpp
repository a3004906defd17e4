#include <doctest.h>

#include "btcsim/acceptance.hpp"
#include "btcsim/orderbook.hpp"
#include "btcsim/reference_book.hpp"

using namespace btcsim;

namespace {

Order make_order(std::uint64_t id, Side side, double amount, double limit, int step,
                 double escrow = 0.0) {
    Order o;
    o.id = id;
    o.trader_id = id;
    o.side = side;
    o.residual = amount;
    o.limit_price = limit;
    o.issue_step = step;
    o.issue_seq = id;
    o.expiry_step = kNoExpiry;
    o.escrow = escrow;
    return o;
}

}  // namespace

TEST_CASE("reference book crosses compatible limits at the midpoint") {
    ReferenceBook book(1.0);
    auto r1 = book.insert(make_order(1, Side::Sell, 5.0, 1.0, 1), 1);
    CHECK(r1.fills.empty());
    auto r2 = book.insert(make_order(2, Side::Buy, 2.0, 1.1, 1, 2.0 * 1.1), 1);
    REQUIRE(r2.fills.size() == 1);
    CHECK(r2.fills[0].trade.price == doctest::Approx(1.05).epsilon(1e-12));
    CHECK(r2.fills[0].trade.quantity == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(book.last_price() == doctest::Approx(1.05).epsilon(1e-12));
    CHECK(book.open_orders() == 1);  // sell residual rests
}

TEST_CASE("reference book prefers better-priced and older orders") {
    ReferenceBook book(1.0);
    book.insert(make_order(1, Side::Sell, 1.0, 1.02, 1), 1);
    book.insert(make_order(2, Side::Sell, 1.0, 1.01, 1), 1);
    book.insert(make_order(3, Side::Sell, 1.0, 1.01, 1), 1);
    auto out = book.insert(make_order(4, Side::Buy, 2.5, 1.05, 1, 2.5 * 1.05), 1);
    REQUIRE(out.fills.size() == 3);
    CHECK(out.fills[0].trade.sell_order_id == 2);  // best price, earliest arrival
    CHECK(out.fills[1].trade.sell_order_id == 3);
    CHECK(out.fills[2].trade.sell_order_id == 1);
    CHECK(out.fills[2].trade.quantity == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("reference book expires lapsed orders with their escrow") {
    ReferenceBook book(1.0);
    Order buy = make_order(1, Side::Buy, 2.0, 0.9, 1, 1.8);
    buy.expiry_step = 3;
    Order sell = make_order(2, Side::Sell, 1.0, 1.5, 1);
    sell.expiry_step = 5;
    book.insert(buy, 1);
    book.insert(sell, 1);

    CHECK(book.expire(2).empty());
    auto lapsed = book.expire(3);
    REQUIRE(lapsed.size() == 1);
    CHECK(lapsed[0].order_id == 1);
    CHECK(lapsed[0].escrow == doctest::Approx(1.8).epsilon(1e-12));
    CHECK(lapsed[0].unfunded == false);
    CHECK(book.open_orders() == 1);
}

TEST_CASE("incremental and reference matchers agree on random streams") {
    CHECK(matcher_differential(200, 200) == "");
}
