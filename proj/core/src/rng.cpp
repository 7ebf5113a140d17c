#include "phasekick/rng.hpp"

#include <cmath>

namespace phasekick {

double NormalSampler::uniform_open0() {
    // 53-bit mantissa in (0, 1]; never 0, so log() below stays finite.
    const std::uint64_t r = gen_() >> 11;
    return (static_cast<double>(r) + 1.0) * 0x1.0p-53;
}

double NormalSampler::operator()() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = uniform_open0();
    const double u2 = uniform_open0();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

}  // namespace phasekick
