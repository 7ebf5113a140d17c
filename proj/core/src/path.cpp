#include "phasekick/path.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

namespace phasekick {

namespace {
constexpr double kPi = std::numbers::pi;
}

LoopSpec LoopSpec::unitary_square(double T) {
    require_finite(T, "LoopSpec.T");
    if (T <= 0.0) throw invariant_error("LoopSpec: square leg duration must be > 0");
    return LoopSpec{Kind::UnitarySquare, T, 0.0};
}

LoopSpec LoopSpec::dissipative_two_leg(double T1) {
    require_finite(T1, "LoopSpec.T1");
    if (T1 <= 0.0) throw invariant_error("LoopSpec: first-leg duration must be > 0");
    return LoopSpec{Kind::DissipativeTwoLeg, 0.0, T1};
}

PhiSchedule square_schedule(double T, double eta) {
    require_finite(T, "square_schedule.T");
    require_finite(eta, "square_schedule.eta");
    if (T <= 0.0) throw invariant_error("square_schedule: T must be > 0");
    if (eta <= 0.0) throw invariant_error("square_schedule: eta must be > 0");
    PhiSchedule s;
    s.segments = {{T, 0.0}, {T, 0.5 * kPi}, {T, kPi}, {T, 1.5 * kPi}};
    return s;
}

PhiSchedule two_leg_schedule(double T1, double gamma) {
    const double T2 = solve_closing_time(gamma, T1);
    PhiSchedule s;
    s.segments = {{T1, 0.0}, {T2, kPi}};
    return s;
}

double enclosed_area(const PhiSchedule& schedule, double eta,
                     double closure_rtol) {
    schedule.validate();
    require_finite(eta, "enclosed_area.eta");
    if (eta <= 0.0) throw invariant_error("enclosed_area: eta must be > 0");

    // Polygon of accumulated displacement increments, starting at the origin.
    std::vector<std::complex<double>> vertices;
    vertices.reserve(schedule.segments.size() + 1);
    std::complex<double> z{0.0, 0.0};
    vertices.push_back(z);
    for (const auto& seg : schedule.segments) {
        const std::complex<double> dz =
            std::complex<double>{0.0, -eta * seg.duration} *
            std::exp(std::complex<double>{0.0, -seg.phi});
        z += dz;
        vertices.push_back(z);
    }

    const double tau = schedule.total_duration();
    const double closure = std::abs(z);
    if (closure > closure_rtol * eta * tau) {
        throw invariant_error(
            "enclosed_area: open path, net displacement " +
            std::to_string(closure) + " exceeds tolerance " +
            std::to_string(closure_rtol * eta * tau));
    }

    // Shoelace over the closed polygon, oriented so the 0, pi/2, pi, 3pi/2
    // square comes out positive.
    double twice_area = 0.0;
    for (std::size_t k = 0; k + 1 < vertices.size(); ++k) {
        twice_area += std::imag(vertices[k] * std::conj(vertices[k + 1]));
    }
    return 0.5 * twice_area;
}

double solve_closing_time(double gamma, double T1) {
    require_finite(gamma, "solve_closing_time.gamma");
    require_finite(T1, "solve_closing_time.T1");
    if (gamma <= 0.0) {
        throw invariant_error(
            "solve_closing_time: gamma must be > 0 (a loop cannot close by "
            "decay at gamma = 0; use the unitary square instead)");
    }
    if (T1 <= 0.0) throw invariant_error("solve_closing_time: T1 must be > 0");
    // T2 = ln(2 - e^{-gamma T1}) / gamma, written through log1p/expm1 so the
    // gamma*T1 -> 0 regime keeps full precision.
    return std::log1p(-std::expm1(-gamma * T1)) / gamma;
}

double solve_closing_time_bisect(double gamma, double T1) {
    require_finite(gamma, "solve_closing_time_bisect.gamma");
    require_finite(T1, "solve_closing_time_bisect.T1");
    if (gamma <= 0.0 || T1 <= 0.0) {
        throw invariant_error("solve_closing_time_bisect: gamma and T1 must be > 0");
    }
    const double b = -std::expm1(-gamma * T1);   // 1 - e^{-gamma T1}
    // Residual of the cancellation condition b*e^{-g T2} - (1 - e^{-g T2}).
    const auto residual = [&](double T2) {
        const double x = std::exp(-gamma * T2);
        return b * x - (1.0 - x);
    };
    double lo = 0.0;
    double hi = 10.0 / gamma;
    if (residual(lo) <= 0.0 || residual(hi) >= 0.0) {
        throw invariant_error("solve_closing_time_bisect: bracket does not straddle the root");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (residual(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace phasekick
