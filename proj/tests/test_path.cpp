#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "phasekick/path.hpp"

using namespace phasekick;

TEST_CASE("square_schedule lays out four quarter-turn segments") {
    const PhiSchedule s = square_schedule(1.0, 1.0);
    REQUIRE(s.segments.size() == 4);
    for (const auto& seg : s.segments) CHECK(seg.duration == 1.0);
    CHECK(s.segments[0].phi == doctest::Approx(0.0));
    CHECK(s.segments[1].phi == doctest::Approx(M_PI / 2));
    CHECK(s.segments[2].phi == doctest::Approx(M_PI));
    CHECK(s.segments[3].phi == doctest::Approx(1.5 * M_PI));

    CHECK_THROWS_AS(square_schedule(0.0, 1.0), invariant_error);
    CHECK_THROWS_AS(square_schedule(-1.0, 1.0), invariant_error);
}

TEST_CASE("LoopSpec factories validate durations") {
    const LoopSpec sq = LoopSpec::unitary_square(0.5);
    CHECK(sq.kind == LoopSpec::Kind::UnitarySquare);
    CHECK(sq.T == 0.5);

    const LoopSpec tl = LoopSpec::dissipative_two_leg(2.0);
    CHECK(tl.kind == LoopSpec::Kind::DissipativeTwoLeg);
    CHECK(tl.T1 == 2.0);

    CHECK_THROWS_AS(LoopSpec::unitary_square(0.0), invariant_error);
    CHECK_THROWS_AS(LoopSpec::dissipative_two_leg(-1.0), invariant_error);
}

TEST_CASE("enclosed_area of the standard square equals eta^2 T^2") {
    CHECK(enclosed_area(square_schedule(1.0, 1.0), 1.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(enclosed_area(square_schedule(0.5, 1.0), 1.0) ==
          doctest::Approx(0.25).epsilon(1e-12));
    CHECK(enclosed_area(square_schedule(0.5, 2.0), 2.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("enclosed_area signs, degenerate paths and closure check") {
    PhiSchedule cw;
    cw.segments = {{1.0, 0.0}, {1.0, 1.5 * M_PI}, {1.0, M_PI}, {1.0, 0.5 * M_PI}};
    CHECK(enclosed_area(cw, 1.0) == doctest::Approx(-1.0).epsilon(1e-12));

    PhiSchedule line;
    line.segments = {{0.7, 0.0}, {0.7, M_PI}};
    CHECK(enclosed_area(line, 1.0) == doctest::Approx(0.0));

    PhiSchedule open;
    open.segments = {{1.0, 0.0}};
    CHECK_THROWS_AS(enclosed_area(open, 1.0), invariant_error);
}

TEST_CASE("enclosed_area is parametrization invariant and additive") {
    const PhiSchedule coarse = square_schedule(1.0, 1.0);

    // Same polygon traced with every leg split in two.
    PhiSchedule fine;
    for (const auto& seg : coarse.segments) {
        fine.segments.push_back({0.5 * seg.duration, seg.phi});
        fine.segments.push_back({0.5 * seg.duration, seg.phi});
    }
    CHECK(std::abs(enclosed_area(fine, 1.0) - enclosed_area(coarse, 1.0)) <
          1e-9);

    // Two loops concatenated at the shared start vertex.
    PhiSchedule twice = coarse;
    twice.segments.insert(twice.segments.end(), coarse.segments.begin(),
                          coarse.segments.end());
    CHECK(enclosed_area(twice, 1.0) ==
          doctest::Approx(2.0 * enclosed_area(coarse, 1.0)).epsilon(1e-12));
}

TEST_CASE("solve_closing_time matches the closed form and the bisection root") {
    CHECK(solve_closing_time(1.0, 1.0) ==
          doctest::Approx(std::log(2.0 - std::exp(-1.0))).epsilon(1e-15));
    CHECK(solve_closing_time(1.0, 1.0) ==
          doctest::Approx(0.4898801256).epsilon(1e-9));

    for (double gamma : {0.3, 1.0, 4.0}) {
        for (double T1 : {0.2, 1.0, 7.0}) {
            const double a = solve_closing_time(gamma, T1);
            const double b = solve_closing_time_bisect(gamma, T1);
            CHECK(std::abs(a - b) < 1e-10 * (1.0 + a));
        }
    }

    CHECK_THROWS_AS(solve_closing_time(0.0, 1.0), invariant_error);
    CHECK_THROWS_AS(solve_closing_time(1.0, 0.0), invariant_error);
}

TEST_CASE("solve_closing_time limits: monotone in T1, capped at ln2/gamma") {
    const double gamma = 2.0;
    double prev = 0.0;
    for (double T1 : {0.1, 0.5, 1.0, 3.0, 10.0}) {
        const double t2 = solve_closing_time(gamma, T1);
        CHECK(t2 > prev);
        CHECK(t2 < std::log(2.0) / gamma + 1e-15);
        prev = t2;
    }

    CHECK(solve_closing_time(1.0, 50.0) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));

    const double tiny = 1e-6;
    CHECK(std::abs(solve_closing_time(1.0, tiny) / tiny - 1.0) < 2e-6);
}

TEST_CASE("two_leg_schedule closes the loop by construction") {
    const double gamma = 1.3, T1 = 0.8;
    const PhiSchedule s = two_leg_schedule(T1, gamma);
    REQUIRE(s.segments.size() == 2);
    CHECK(s.segments[0].duration == T1);
    CHECK(s.segments[0].phi == doctest::Approx(0.0));
    CHECK(s.segments[1].duration ==
          doctest::Approx(solve_closing_time(gamma, T1)).epsilon(1e-15));
    CHECK(s.segments[1].phi == doctest::Approx(M_PI));
}
