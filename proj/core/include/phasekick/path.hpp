#pragma once

#include "phasekick/types.hpp"

namespace phasekick {

// The two loop families the experiments run: a closed square traced with four
// phase quarter-turns at gamma = 0, and a two-leg drive whose second leg lets
// damping close the loop.
struct LoopSpec {
    enum class Kind { UnitarySquare, DissipativeTwoLeg };

    Kind kind;
    double T = 0.0;    // leg duration of the square
    double T1 = 0.0;   // first-leg duration of the two-leg loop; T2 is derived

    static LoopSpec unitary_square(double T);
    static LoopSpec dissipative_two_leg(double T1);
};

// Four segments of duration T with phases 0, pi/2, pi, 3pi/2.
PhiSchedule square_schedule(double T, double eta);

// Two segments: (T1, phi=0) then (T2, phi=pi) with T2 = solve_closing_time.
PhiSchedule two_leg_schedule(double T1, double gamma);

// Signed area enclosed by the polygon of accumulated displacement increments
// delta_zeta = -i*eta*duration*exp(-i*phi), for a schedule that closes at
// gamma = 0. The square with phases 0, pi/2, pi, 3pi/2 is positive. Throws
// invariant_error if the net displacement exceeds closure_rtol * eta * tau.
double enclosed_area(const PhiSchedule& schedule, double eta,
                     double closure_rtol = 1e-9);

// Second-leg duration T2 = ln(2 - exp(-gamma*T1)) / gamma that makes the
// branch separation accumulated during T1 decay to closure.
double solve_closing_time(double gamma, double T1);

// Same root found by bisection on the cancellation condition
// (1 - e^{-gamma*T1}) e^{-gamma*T2} = 1 - e^{-gamma*T2}; cross-check only.
double solve_closing_time_bisect(double gamma, double T1);

}  // namespace phasekick
