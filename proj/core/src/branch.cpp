#include "phasekick/branch.hpp"

#include <cmath>
#include <complex>

#include "phasekick/algebra.hpp"

namespace phasekick {

namespace {

// One step with precomputed segment constants; callers validate around the
// hot loop, not inside it.
inline void step_unchecked(BranchState& s, const std::complex<double>& dz,
                           double decay /* e^{-gamma dt} */) {
    // Composition phase of the conditional displacement, taken against the
    // mean of the pre-step branch amplitudes.
    const std::complex<double> pivot = s.lambda0 + s.lambda1;
    s.log_coherence += std::complex<double>(
        0.0, 0.5 * std::imag(dz * std::conj(pivot)));
    s.lambda0 += dz;

    if (decay != 1.0) {
        // Damping: the coherence picks up the exact finite-step exponent
        // (1 - e^{-gamma dt}) * log <lambda0|lambda1>, then both amplitudes
        // shrink toward the vacuum.
        const std::complex<double> log_ov =
            std::conj(s.lambda0) * s.lambda1 - 0.5 * std::norm(s.lambda0) -
            0.5 * std::norm(s.lambda1);
        s.log_coherence += (1.0 - decay) * log_ov;
        s.lambda0 *= decay;
        s.lambda1 *= decay;
    }
}

// -expm1(-x)/x, continuous through x = 0.
inline double f1(double x) {
    if (x == 0.0) return 1.0;
    return -std::expm1(-x) / x;
}

// g(u) = u + (1 - e^{-2u})/2 - 2(1 - e^{-u}); the first-leg damping exponent
// is (eta^2 / 2 gamma^2) g(gamma T1). Series below u = 1e-3 avoids the
// catastrophic cancellation of the O(u) terms.
inline double leg1_bracket(double u) {
    if (u < 1e-3) {
        return u * u * u * (1.0 / 3.0 + u * (-0.25 + u * (7.0 / 60.0 - u / 24.0)));
    }
    return u - 0.5 * std::expm1(-2.0 * u) + 2.0 * std::expm1(-u);
}

// h(w) = ln(1 + w) - w + w^2/2 with w = 1 - e^{-gamma T1}; the second-leg
// damping exponent is (eta^2 / 2 gamma^2) h(w).
inline double leg2_bracket(double w) {
    if (w < 1e-3) {
        return w * w * w * (1.0 / 3.0 + w * (-0.25 + w * (0.2 - w / 6.0)));
    }
    return std::log1p(w) - w + 0.5 * w * w;
}

}  // namespace

BranchState BranchState::plus_coherent(ComplexAmplitude alpha) {
    require_finite(alpha, "BranchState.plus_coherent");
    BranchState s;
    s.lambda0 = alpha;
    s.lambda1 = alpha;
    return s;
}

void BranchState::validate() const {
    require_finite(lambda0, "BranchState.lambda0");
    require_finite(lambda1, "BranchState.lambda1");
    require_finite(log_coherence, "BranchState.log_coherence");
    if (gamma_damp() < -1e-12) {
        throw invariant_error("BranchState: negative damping exponent");
    }
}

BranchState trotter_step(const BranchState& s, const ModelParams& p, double phi) {
    p.validate();
    require_finite(phi, "trotter_step.phi");
    s.validate();

    const std::complex<double> dz =
        std::complex<double>(0.0, -p.eta * p.dt) *
        std::exp(std::complex<double>(0.0, -phi));
    BranchState out = s;
    step_unchecked(out, dz, std::exp(-p.gamma * p.dt));
    out.validate();
    return out;
}

BranchState propagate(const BranchState& s0, const PhiSchedule& schedule,
                      const ModelParams& p) {
    p.validate();
    schedule.validate();
    s0.validate();

    BranchState s = s0;
    for (const auto& seg : schedule.segments) {
        const auto n_full = static_cast<long long>(
            std::floor(seg.duration / p.dt + 1e-12));
        const double remainder = seg.duration - static_cast<double>(n_full) * p.dt;

        const std::complex<double> phase_factor =
            std::exp(std::complex<double>(0.0, -seg.phi));
        const std::complex<double> dz =
            std::complex<double>(0.0, -p.eta * p.dt) * phase_factor;
        const double decay = std::exp(-p.gamma * p.dt);

        for (long long k = 0; k < n_full; ++k) {
            step_unchecked(s, dz, decay);
        }
        if (remainder > 1e-12 * seg.duration) {
            const std::complex<double> dz_rem =
                std::complex<double>(0.0, -p.eta * remainder) * phase_factor;
            step_unchecked(s, dz_rem, std::exp(-p.gamma * remainder));
        }
        s.validate();
    }
    return s;
}

ClosedFormT1 closed_form_t1(double alpha, const ModelParams& p, double T1) {
    require_finite(alpha, "closed_form_t1.alpha");
    require_finite(T1, "closed_form_t1.T1");
    require_finite(p.eta, "closed_form_t1.eta");
    require_finite(p.gamma, "closed_form_t1.gamma");
    if (T1 <= 0.0) throw invariant_error("closed_form_t1: T1 must be > 0");
    if (p.eta < 0.0) throw invariant_error("closed_form_t1: eta must be >= 0");
    if (p.gamma < 0.0) throw invariant_error("closed_form_t1: gamma must be >= 0");

    const double u = p.gamma * T1;
    ClosedFormT1 r;
    r.theta1 = p.eta * alpha * T1 * f1(2.0 * u);
    r.beta1 = p.eta * T1 * f1(u);
    r.alpha1 = alpha * std::exp(-u);
    r.gamma1 = (p.gamma == 0.0)
                   ? 0.0
                   : 0.5 * p.eta * p.eta * leg1_bracket(u) / (p.gamma * p.gamma);
    return r;
}

LoopClosedForm closed_form_loop(double alpha, const ModelParams& p, double T1) {
    require_finite(alpha, "closed_form_loop.alpha");
    require_finite(T1, "closed_form_loop.T1");
    require_finite(p.eta, "closed_form_loop.eta");
    require_finite(p.gamma, "closed_form_loop.gamma");
    if (p.eta < 0.0) throw invariant_error("closed_form_loop: eta must be >= 0");
    if (p.gamma <= 0.0) {
        throw invariant_error("closed_form_loop: gamma must be > 0");
    }
    if (T1 <= 0.0) throw invariant_error("closed_form_loop: T1 must be > 0");

    const double u = p.gamma * T1;
    const double w = -std::expm1(-u);   // 1 - e^{-gamma T1}

    LoopClosedForm r;
    // theta = eta*alpha*w^2 / (gamma*(1 + w)); note 2 - e^{-gamma T1} = 1 + w.
    r.theta = p.eta * alpha * w * w / (p.gamma * (1.0 + w));
    const double scale = 0.5 * p.eta * p.eta / (p.gamma * p.gamma);
    r.gamma_damp = scale * (leg1_bracket(u) + leg2_bracket(w));
    return r;
}

QubitReadout readout(const BranchState& s) {
    s.validate();
    return QubitReadout::from_phase(s.theta(), s.gamma_damp());
}

}  // namespace phasekick
