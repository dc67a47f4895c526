#include "doctest.h"

#include <cmath>
#include <set>

#include "shockline/rng.hpp"

using namespace shockline;

TEST_SUITE("fast") {

TEST_CASE("clock streams are strictly increasing and reproducible") {
    ClockField f(42, 100.0);
    auto a = f.materialize(7);
    REQUIRE(a.size() > 50);
    for (std::size_t i = 1; i < a.size(); ++i)
        CHECK(a[i].time > a[i - 1].time);

    ClockField g(42, 100.0);
    auto b = g.materialize(7);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].time == b[i].time);
        CHECK(a[i].mark == b[i].mark);
    }
}

TEST_CASE("distinct labels and seeds give distinct streams") {
    ClockField f(42, 50.0);
    auto a = f.materialize(1);
    auto b = f.materialize(2);
    auto c = ClockField(43, 50.0).materialize(1);
    CHECK(a[0].time != b[0].time);
    CHECK(a[0].time != c[0].time);
    CHECK(a[0].mark != b[0].mark);
}

TEST_CASE("cursor walk matches materialize") {
    ClockField f(99, 25.0);
    auto all = f.materialize(-3);
    auto cur = f.first(-3);
    for (const auto& ev : all) {
        CHECK(cur.time == ev.time);
        CHECK(cur.mark == ev.mark);
        f.next(cur);
    }
    CHECK(cur.time > 25.0);
}

TEST_CASE("marks are uniform and gaps exponential, roughly") {
    ClockField f(7, 20000.0);
    double sum_mark = 0.0, sum_gap = 0.0, prev = 0.0;
    int n = 0;
    for (auto c = f.first(0); c.time <= 20000.0; f.next(c)) {
        sum_mark += c.mark;
        sum_gap += c.time - prev;
        prev = c.time;
        ++n;
    }
    REQUIRE(n > 15000);
    CHECK(std::abs(sum_mark / n - 0.5) < 4.0 / std::sqrt(12.0 * n));
    CHECK(std::abs(sum_gap / n - 1.0) < 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("scripted clocks replay exactly and validate ordering") {
    std::map<std::int64_t, std::vector<ClockEvent>> ev;
    ev[1] = {{0.4, 0.2}, {0.9, 0.7}};
    auto f = ClockField::scripted(10.0, ev);
    auto c = f.first(1);
    CHECK(c.time == 0.4);
    CHECK(c.mark == 0.2);
    f.next(c);
    CHECK(c.time == 0.9);
    f.next(c);
    CHECK(std::isinf(c.time));
    auto none = f.first(2);
    CHECK(std::isinf(none.time));

    std::map<std::int64_t, std::vector<ClockEvent>> bad;
    bad[0] = {{0.5, 0.1}, {0.5, 0.2}};
    CHECK_THROWS_AS(ClockField::scripted(1.0, bad), std::invalid_argument);
}

TEST_CASE("counter rng basic moments") {
    CounterRng rng(2024);
    double s = 0.0, s2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        double u = rng.uniform();
        s += u;
        s2 += u * u;
    }
    CHECK(std::abs(s / n - 0.5) < 0.005);
    CHECK(std::abs(s2 / n - 1.0 / 3.0) < 0.005);
}

} // TEST_SUITE
