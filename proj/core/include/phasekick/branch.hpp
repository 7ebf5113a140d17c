#pragma once

#include "phasekick/path.hpp"
#include "phasekick/types.hpp"

namespace phasekick {

// Exact system description for the conditional-displacement model: coherent
// amplitudes lambda0/lambda1 conditioned on the qubit state, and the complex
// coherence attached to |0><1| stored in log form,
// log_coherence = -Gamma - i*theta.
struct BranchState {
    ComplexAmplitude lambda0;
    ComplexAmplitude lambda1;
    std::complex<double> log_coherence{0.0, 0.0};
    double w0 = 0.5;   // qubit populations; 1/2 each for the |+> preparation
    double w1 = 0.5;

    double theta() const { return -log_coherence.imag(); }
    double gamma_damp() const { return -log_coherence.real(); }

    // |+> qubit with the oscillator in |alpha>.
    static BranchState plus_coherent(ComplexAmplitude alpha);

    void validate() const;
};

// One Trotter step at drive phase phi: conditional displacement of lambda0
// with its composition phase, then the damping update of both amplitudes and
// the coherence. Throws on a dt*gamma bound violation or non-finite state.
BranchState trotter_step(const BranchState& s, const ModelParams& p, double phi);

// Sequential trotter_step over every segment; a trailing partial step absorbs
// durations that are not integer multiples of p.dt.
BranchState propagate(const BranchState& s0, const PhiSchedule& schedule,
                      const ModelParams& p);

// State after the first leg (duration T1, phi = 0) starting from |+>|alpha>,
// alpha real: phase theta1, displacement beta1, decayed amplitude alpha1 and
// damping exponent gamma1.
struct ClosedFormT1 {
    double theta1;
    double beta1;
    double alpha1;
    double gamma1;
};

ClosedFormT1 closed_form_t1(double alpha, const ModelParams& p, double T1);

// Phase and damping exponent of the full two-leg loop (T2 from
// solve_closing_time), alpha real:
//   theta = eta*alpha*(1 - e^{-gamma*T1})^2 / (gamma*(2 - e^{-gamma*T1}))
//   gamma_damp = (gamma/2) Int |lambda0 - lambda1|^2 dt, per-segment analytic.
struct LoopClosedForm {
    double theta;
    double gamma_damp;
};

LoopClosedForm closed_form_loop(double alpha, const ModelParams& p, double T1);

// P_pm = [1 +- e^{-Gamma} cos(theta)] / 2.
QubitReadout readout(const BranchState& s);

}  // namespace phasekick
