#pragma once

#include <stdexcept>

namespace phasekick {

// A numerical invariant was violated: non-finite value, broken positivity,
// an open path where a closed one is required, and the like.
struct invariant_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The Fock-space cutoff is too small for the requested state or trajectory.
struct truncation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace phasekick
