#pragma once

#include <complex>
#include <vector>

#include "phasekick/errors.hpp"

namespace phasekick {

// Phase-space amplitudes and coherence factors are plain complex numbers.
using ComplexAmplitude = std::complex<double>;

void require_finite(double x, const char* what);
void require_finite(ComplexAmplitude z, const char* what);

// Coupling and damping rates share one arbitrary inverse-time unit; dt is the
// Trotter step in the matching time unit.
struct ModelParams {
    double eta = 1.0;           // conditional-displacement coupling, >= 0
    double gamma = 0.0;         // oscillator amplitude-decay rate, >= 0
    double dt = 1e-3;           // Trotter step, > 0
    double step_bound = 1e-3;   // maximum allowed dt*gamma

    void validate() const;
};

// One piecewise-constant stretch of the drive phase phi(t).
struct PhiSegment {
    double duration;   // > 0
    double phi;        // radians
};

struct PhiSchedule {
    std::vector<PhiSegment> segments;

    double total_duration() const;
    void validate() const;
};

// Interferometric readout in the |+>/|-> qubit basis.
struct QubitReadout {
    double p_plus;
    double p_minus;
    double theta;        // accumulated coherence phase, radians, not wrapped
    double gamma_damp;   // damping exponent Gamma >= 0, visibility = exp(-Gamma)

    // p_plus = (1 + exp(-gamma_damp) cos(theta)) / 2, p_minus = 1 - p_plus.
    static QubitReadout from_phase(double theta, double gamma_damp);
};

}  // namespace phasekick
