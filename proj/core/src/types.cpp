#include "phasekick/types.hpp"

#include <cmath>
#include <string>

namespace phasekick {

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw invariant_error(std::string("non-finite value in ") + what);
    }
}

void require_finite(ComplexAmplitude z, const char* what) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw invariant_error(std::string("non-finite value in ") + what);
    }
}

void ModelParams::validate() const {
    require_finite(eta, "ModelParams.eta");
    require_finite(gamma, "ModelParams.gamma");
    require_finite(dt, "ModelParams.dt");
    if (eta < 0.0) {
        throw invariant_error("ModelParams: eta must be >= 0");
    }
    if (gamma < 0.0) {
        throw invariant_error("ModelParams: gamma must be >= 0");
    }
    if (dt <= 0.0) {
        throw invariant_error("ModelParams: dt must be > 0");
    }
    if (dt * gamma > step_bound) {
        throw invariant_error("ModelParams: dt*gamma = " +
                              std::to_string(dt * gamma) +
                              " exceeds the step bound " +
                              std::to_string(step_bound));
    }
}

double PhiSchedule::total_duration() const {
    double total = 0.0;
    for (const auto& seg : segments) total += seg.duration;
    return total;
}

void PhiSchedule::validate() const {
    if (segments.empty()) {
        throw invariant_error("PhiSchedule: no segments");
    }
    for (const auto& seg : segments) {
        require_finite(seg.duration, "PhiSchedule segment duration");
        require_finite(seg.phi, "PhiSchedule segment phase");
        if (seg.duration <= 0.0) {
            throw invariant_error("PhiSchedule: segment durations must be > 0");
        }
    }
}

QubitReadout QubitReadout::from_phase(double theta, double gamma_damp) {
    require_finite(theta, "QubitReadout.theta");
    require_finite(gamma_damp, "QubitReadout.gamma_damp");
    if (gamma_damp < 0.0) {
        throw invariant_error("QubitReadout: gamma_damp must be >= 0");
    }
    QubitReadout r;
    r.theta = theta;
    r.gamma_damp = gamma_damp;
    r.p_plus = 0.5 * (1.0 + std::exp(-gamma_damp) * std::cos(theta));
    r.p_minus = 1.0 - r.p_plus;
    return r;
}

}  // namespace phasekick
