#include "phasekick/algebra.hpp"

#include <cmath>

namespace phasekick {

ComplexAmplitude log_coherent_overlap(ComplexAmplitude l1, ComplexAmplitude l2) {
    require_finite(l1, "coherent_overlap");
    require_finite(l2, "coherent_overlap");
    return std::conj(l2) * l1 - 0.5 * std::norm(l1) - 0.5 * std::norm(l2);
}

ComplexAmplitude coherent_overlap(ComplexAmplitude l1, ComplexAmplitude l2) {
    return std::exp(log_coherent_overlap(l1, l2));
}

double displacement_phase(ComplexAmplitude a, ComplexAmplitude b) {
    require_finite(a, "displacement_phase");
    require_finite(b, "displacement_phase");
    return std::imag(a * std::conj(b));
}

}  // namespace phasekick
