#pragma once

#include <Eigen/Dense>

#include "phasekick/types.hpp"

namespace phasekick {

// Qubit (x) truncated-oscillator density operator. Basis is qubit-major:
// index q*dim_fock + n for qubit level q in {0,1} and Fock level n.
struct DensityMatrix {
    int dim_fock = 0;
    Eigen::MatrixXcd data;   // (2*dim_fock) x (2*dim_fock)

    // |+><+| (x) |alpha><alpha|
    static DensityMatrix plus_coherent(ComplexAmplitude alpha, int d_F);

    // (|0>|l1> + |1>|l2>)/sqrt(2) as a density matrix; its 01 block is
    // |l1><l2| / 2, which lets the damping channel act on a bare dyad while
    // the evolved state stays physical.
    static DensityMatrix dyad_superposition(ComplexAmplitude l1,
                                            ComplexAmplitude l2, int d_F);
};

// Population of the top ceil(d_F/10) Fock levels; ok iff below 1e-8.
struct TruncationReport {
    double top_band_population;
    bool ok;
};

TruncationReport truncation_report(const DensityMatrix& rho);

enum class EvolveMethod { TrotterSplit, DirectRK4 };

// Smallest cutoff satisfying d_F >= |a|^2 + 6|a| + 10 for trajectory bound a.
int required_fock_dim(double alpha_max);

// H = eta |0><0| (x) (b^dag e^{-i phi} + b e^{i phi}), zero block on |1>.
Eigen::MatrixXcd build_hamiltonian(const ModelParams& p, double phi, int d_F);

// Truncated coherent state, renormalized; the dropped-tail norm defect is
// written to *norm_defect when given. Throws truncation_error when d_F is
// below required_fock_dim(|alpha|).
Eigen::VectorXcd coherent_state_vector(ComplexAmplitude alpha, int d_F,
                                       double* norm_defect = nullptr);

// Master-equation right-hand side
//   drho/dt = -i[H, rho] + kappa (b rho b^dag - {b^dag b, rho}/2)
// with kappa = 2*gamma so coherent amplitudes decay at rate gamma, matching
// the branch representation and the dyadic damping rule.
DensityMatrix lindblad_rhs(const DensityMatrix& rho, const ModelParams& p,
                           double phi);

// Propagates rho0 through the schedule. TrotterSplit alternates the exact
// segment unitary with the exact photon-loss channel per dt step; DirectRK4
// integrates lindblad_rhs with fixed step dt/10. The truncation report is
// checked after every segment.
DensityMatrix evolve(const DensityMatrix& rho0, const PhiSchedule& schedule,
                     const ModelParams& p, EvolveMethod method);

// Damping-channel action on a coherent dyad over time t:
//   |l1><l2|  ->  <l2|l1>^(1 - e^{-2 gamma t}) |l1 e^{-gamma t}><l2 e^{-gamma t}|
// Returned as a d_F x d_F oscillator-only matrix.
Eigen::MatrixXcd dissipative_dyadic(ComplexAmplitude l1, ComplexAmplitude l2,
                                    double gamma, double t, int d_F);

// Tr_osc <0|rho|1>; equals w0*w1-weighted coherence, 1/2 e^{-Gamma-i theta}
// for the |+> preparation.
ComplexAmplitude extract_qubit_coherence(const DensityMatrix& rho);

struct InvariantStats {
    double trace_defect;     // |tr(rho) - 1|
    double hermiticity;      // max |rho - rho^dag|
    double min_eigenvalue;
};

InvariantStats density_invariants(const DensityMatrix& rho);

// Throws invariant_error unless trace defect < 1e-8, hermiticity defect
// < 1e-10 and min eigenvalue > -1e-8.
void check_invariants(const DensityMatrix& rho);

}  // namespace phasekick
