#include "doctest.h"

#include <cmath>

#include "shockline/engine.hpp"
#include "shockline/scaling.hpp"
#include "shockline/system.hpp"

using namespace shockline;

TEST_SUITE("fast") {

TEST_CASE("shock initial data") {
    auto s = make_initial(InitKind::Shock, 2, 0.3, 5, 10.0);
    CHECK(s.label_lo() == -1);
    CHECK(s.position(-1) == 1);
    CHECK(s.position(0) == 0);
    CHECK(s.position(1) == -2);
    CHECK(s.position(2) == -4);
    CHECK(s.rate(-1) == 0.3);
    CHECK(s.rate(0) == 0.3);
    CHECK(s.rate(1) == 1.0);
}

TEST_CASE("step initial data") {
    auto s = make_initial(InitKind::Step, 0, 0.0, 3, 5.0);
    CHECK(s.label_lo() == 1);
    CHECK(s.position(1) == 0);
    CHECK(s.position(2) == -1);
    CHECK(s.position(3) == -2);
}

TEST_CASE("slow-step B and half-flat A initial data") {
    auto b = make_initial(InitKind::SlowStepB, 1, 0.25, 3, 5.0);
    CHECK(b.position(0) == 0);
    CHECK(b.position(1) == -1);
    CHECK(b.rate(0) == 0.25);
    CHECK(b.rate(1) == 1.0);
    auto a = make_initial(InitKind::HalfFlatA, 0, 0.0, 3, 5.0);
    CHECK(a.position(1) == -2);
    CHECK(a.position(3) == -6);
}

TEST_CASE("make_initial rejects bad input") {
    CHECK_THROWS_AS(make_initial(InitKind::Step, 0, 0.0, 3, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_initial(InitKind::Step, 0, 0.0, 0, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(make_initial(InitKind::Shock, 1, 1.5, 3, 5.0), std::invalid_argument);
    auto flat = make_initial(InitKind::Flat, 0, 0.0, 100, 50.0);
    CHECK_THROWS_AS(flat.position(100 - light_cone_pad(50.0) - 1), std::out_of_range);
}

TEST_CASE("advancing zero time is a no-op") {
    auto init = make_initial(InitKind::Shock, 1, 0.3, 10, 20.0);
    CoupledRun run(ClockField(5, 20.0), {init});
    run.advance_to(5.0);
    auto snap = run.system(0);
    run.advance_to(5.0);
    CHECK(run.system(0).identical_to(snap));
}

TEST_CASE("hand trace: blocked jump is suppressed, slow jump fires") {
    std::map<std::int64_t, std::vector<ClockEvent>> ev;
    ev[1] = {{0.4, 0.2}};
    ev[0] = {{0.9, 0.5}};
    auto clock = ClockField::scripted(2.0, ev);
    // label 0 at site 1 with rate 0.7, label 1 at site 0
    SystemState sys(0, {1, 0}, {0.7, 1.0});
    sys.set_record_suppressions(true);
    CoupledRun run(clock, {sys});
    run.advance_to(2.0);
    const auto& out = run.system(0);
    CHECK(out.position(0) == 2);
    CHECK(out.position(1) == 0);
    REQUIRE(out.suppression_log().size() == 1);
    CHECK(out.suppression_log()[0].label == 1);
    CHECK(out.suppression_log()[0].time == 0.4);
}

TEST_CASE("mark at or above the rate is a thinned non-event") {
    std::map<std::int64_t, std::vector<ClockEvent>> ev;
    ev[0] = {{0.5, 0.8}};
    auto clock = ClockField::scripted(2.0, ev);
    SystemState sys(0, {0}, {0.7});
    CoupledRun run(clock, {sys});
    run.advance_to(2.0);
    CHECK(run.system(0).position(0) == 0);
}

TEST_CASE("determinism: same seed means identical states") {
    auto init = make_initial(InitKind::Shock, 2, 0.25, 60, 80.0);
    CoupledRun r1(ClockField(321, 80.0), {init});
    CoupledRun r2(ClockField(321, 80.0), {init});
    r1.advance_to(80.0);
    r2.advance_to(37.5);
    r2.advance_to(80.0);
    CHECK(r1.system(0).identical_to(r2.system(0)));
}

TEST_CASE("exclusion order holds across a million events") {
    auto init = make_initial(InitKind::Shock, 3, 0.2, 1200, 900.0);
    CoupledRun run(ClockField(17, 900.0), {init});
    run.set_validate(true);
    CHECK_NOTHROW(run.advance_to(900.0));
    // roughly labels * horizon attempts
    CHECK(1203 * 900 > 1000000);
}

TEST_CASE("label insulation: particles behind never matter") {
    auto big = make_initial(InitKind::Shock, 1, 0.4, 40, 60.0);
    auto small = make_initial(InitKind::Shock, 1, 0.4, 25, 60.0);
    CoupledRun rb(ClockField(88, 60.0), {big});
    CoupledRun rs(ClockField(88, 60.0), {small});
    for (double t : {10.0, 30.0, 60.0}) {
        rb.advance_to(t);
        rs.advance_to(t);
        for (std::int64_t n = 0; n <= 25; ++n)
            CHECK(rb.system(0).position(n) == rs.system(0).position(n));
    }
}

TEST_CASE("light cone: doubling the flat pad does not change the tracked path") {
    const double t = 50.0;
    auto narrow = make_initial(InitKind::Flat, 0, 0.0, 100, t);
    std::int64_t lo2 = 100 - 2 * light_cone_pad(t);
    std::vector<std::int64_t> pos;
    std::vector<double> rate;
    for (std::int64_t n = lo2; n <= 100; ++n) {
        pos.push_back(-2 * n);
        rate.push_back(1.0);
    }
    SystemState wide(lo2, pos, rate);
    CoupledRun rn(ClockField(4242, t), {narrow});
    CoupledRun rw(ClockField(4242, t), {wide});
    for (double s : {12.5, 25.0, 50.0}) {
        rn.advance_to(s);
        rw.advance_to(s);
        CHECK(rn.system(0).position(100) == rw.system(0).position(100));
    }
}

TEST_CASE("coupled min identity at small scale") {
    const double t = 100.0;
    auto shock = make_initial(InitKind::Shock, 1, 0.25, 40, t);
    auto a = make_initial(InitKind::HalfFlatA, 0, 0.0, 40, t);
    auto b = make_initial(InitKind::SlowStepB, 1, 0.25, 40, t);
    CoupledRun run(ClockField(7, t), {shock, a, b});
    for (double s : {0.0, 20.0, 55.0, 100.0}) {
        run.advance_to(s);
        for (std::int64_t n = 1; n <= 40; ++n) {
            std::int64_t x = run.system(0).position(n);
            std::int64_t xa = run.system(1).position(n);
            std::int64_t xb = run.system(2).position(n);
            CHECK(x == std::min(xa, xb));
            CHECK(x <= xa);
            CHECK(x <= xb);
        }
    }
}

TEST_CASE("degenerate alpha=1 keeps the identity pathwise") {
    const double t = 50.0;
    auto shock = make_initial(InitKind::Shock, 2, 1.0, 20, t);
    auto a = make_initial(InitKind::HalfFlatA, 0, 0.0, 20, t);
    auto b = make_initial(InitKind::SlowStepB, 2, 1.0, 20, t);
    CoupledRun run(ClockField(11, t), {shock, a, b});
    run.advance_to(t);
    for (std::int64_t n = 1; n <= 20; ++n)
        CHECK(run.system(0).position(n) ==
              std::min(run.system(1).position(n), run.system(2).position(n)));
}

TEST_CASE("shock constants") {
    auto s = shock_constants(0.25, 1, 1.0, 500.0);
    CHECK(s.shock_speed == doctest::Approx(-0.25));
    CHECK(s.sigma == doctest::Approx(0.2886751345948129).epsilon(1e-12));
    CHECK(s.xi_c == doctest::Approx(2.3094010767585034).epsilon(1e-12));
    CHECK(shock_constants(0.25, 1, 0.0, 500.0).n_of_t() == 187);
    CHECK_THROWS_AS(shock_constants(0.5, 1, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(shock_constants(0.7, 1, 0.0, 1.0), std::invalid_argument);
}

} // TEST_SUITE

TEST_SUITE("statistical") {

TEST_CASE("free particle displacement is Poisson(t)") {
    const double t = 5.0;
    const int trials = 100000;
    double sum = 0.0;
    for (int k = 0; k < trials; ++k) {
        auto init = make_initial(InitKind::Step, 0, 0.0, 1, t);
        CoupledRun run(ClockField(1000 + static_cast<std::uint64_t>(k), t), {init});
        run.advance_to(t);
        sum += static_cast<double>(run.system(0).position(1));
    }
    double mean = sum / trials;
    CHECK(std::abs(mean - t) < 3.0 * std::sqrt(t / trials));
}

} // TEST_SUITE
