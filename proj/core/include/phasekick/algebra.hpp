#pragma once

#include "phasekick/types.hpp"

namespace phasekick {

// Overlap <l2|l1> of two normalized coherent states:
// exp(-|l1|^2/2 - |l2|^2/2 + conj(l2)*l1).
ComplexAmplitude coherent_overlap(ComplexAmplitude l1, ComplexAmplitude l2);

// log of coherent_overlap, safe for large amplitudes.
ComplexAmplitude log_coherent_overlap(ComplexAmplitude l1, ComplexAmplitude l2);

// Phase picked up when composing displacements, D(a)D(b) = e^{i Im(a conj(b))} D(a+b).
double displacement_phase(ComplexAmplitude a, ComplexAmplitude b);

}  // namespace phasekick
