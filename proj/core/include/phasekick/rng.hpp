#pragma once

#include <cstdint>
#include <random>

namespace phasekick {

// Standard-normal sampler built from mt19937_64 with an explicit Box-Muller
// transform. Every stage is fully specified, so a seed gives the same stream
// on every platform (std::normal_distribution does not promise that).
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : gen_(seed) {}

    double operator()();

private:
    double uniform_open0();   // uniform on (0, 1]

    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace phasekick
