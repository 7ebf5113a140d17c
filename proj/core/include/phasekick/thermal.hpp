#pragma once

#include <cstdint>
#include <variant>

#include "phasekick/branch.hpp"
#include "phasekick/path.hpp"
#include "phasekick/types.hpp"

namespace phasekick {

// Displaced thermal oscillator state: center alpha0 and variance V >= 1
// (V = 1 is the pure coherent state).
struct ThermalSpec {
    ComplexAmplitude alpha0{0.0, 0.0};
    double V = 1.0;

    void validate() const;
};

// Interference factor Lambda = v Int d^2a P(a, a0, V) e^{i theta(a)}.
struct LambdaResult {
    ComplexAmplitude lambda;
    double theta_tilde;   // arg(Lambda)
    double visibility;    // |Lambda|, <= 1
};

// Estimate plus Monte Carlo standard errors (zero for quadrature).
struct LambdaEstimate {
    LambdaResult value;
    double se_re = 0.0;
    double se_im = 0.0;
};

struct GaussHermiteMethod {
    int n = 64;   // nodes per axis
};

struct MonteCarloMethod {
    int samples = 100000;
    std::uint64_t seed = 12345;
};

using LambdaMethod = std::variant<GaussHermiteMethod, MonteCarloMethod>;

// V(beta) = (e^beta + 1)/(e^beta - 1); beta must be positive.
double variance_from_temperature(double beta);

// Gaussian weight P(alpha, alpha0, V) = 2/(pi (V-1)) e^{-2|alpha-alpha0|^2/(V-1)}.
// Throws for V <= 1; callers short-circuit the pure case themselves.
double p_weight(ComplexAmplitude alpha, const ThermalSpec& spec);

// Thermal average of the loop phase factor. theta(alpha) at every node comes
// from a branch-engine propagation; Gamma (hence v = e^{-Gamma}) is evaluated
// once since it is amplitude-independent. V = 1 short-circuits to the pure
// result v e^{i theta(alpha0)}.
LambdaEstimate lambda_integral_estimate(const ThermalSpec& spec,
                                        const LoopSpec& loop,
                                        const ModelParams& p,
                                        const LambdaMethod& method);

LambdaResult lambda_integral(const ThermalSpec& spec, const LoopSpec& loop,
                             const ModelParams& p, const LambdaMethod& method);

// P_pm = (1 +- |Lambda| cos(theta_tilde)) / 2.
QubitReadout thermal_readout(const LambdaResult& r);

// gamma = 0 square loop on a displaced thermal state: the phase equals the
// enclosed area for every (alpha0, V) and the visibility stays 1.
QubitReadout unitary_thermal_phase(const ThermalSpec& spec, double T,
                                   const ModelParams& p);

}  // namespace phasekick
