#include "phasekick/fock.hpp"

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "phasekick/algebra.hpp"

namespace phasekick {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

void check_shape(const DensityMatrix& rho, const char* what) {
    if (rho.dim_fock < 2) {
        throw invariant_error(std::string(what) + ": dim_fock must be >= 2");
    }
    const auto n = static_cast<Eigen::Index>(2 * rho.dim_fock);
    if (rho.data.rows() != n || rho.data.cols() != n) {
        throw invariant_error(std::string(what) +
                              ": data shape does not match 2*dim_fock");
    }
}

// eta (b^dag e^{-i phi} + b e^{i phi}) on the bare oscillator space.
Eigen::MatrixXcd osc_hamiltonian(double eta, double phi, int d) {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
    const std::complex<double> up = eta * std::exp(-kI * phi);
    for (int n = 1; n < d; ++n) {
        const double r = std::sqrt(static_cast<double>(n));
        h(n, n - 1) = up * r;           // b^dag
        h(n - 1, n) = std::conj(up) * r;   // b
    }
    return h;
}

// kappa (b X b^dag - {b^dag b, X}/2) on one oscillator block.
void add_dissipator(const Eigen::MatrixXcd& x, double kappa,
                    Eigen::MatrixXcd& out) {
    const auto d = x.rows();
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) {
            std::complex<double> v =
                -0.5 * static_cast<double>(i + j) * x(i, j);
            if (i + 1 < d && j + 1 < d) {
                v += std::sqrt(static_cast<double>((i + 1) * (j + 1))) *
                     x(i + 1, j + 1);
            }
            out(i, j) += kappa * v;
        }
    }
}

// Exact photon-loss channel over one step, tabulated once per segment.
// Kraus operators A_k |m> = c_{m,k} |m-k> with
//   c_{m,k} = sqrt(binom(m, k)) e^{-kappa h (m-k)/2} (1 - e^{-kappa h})^{k/2},
// so sum_k A_k^dag A_k = 1 holds exactly on the truncated space (A_k only
// lowers). Terms whose largest coefficient is below 1e-15 are dropped once
// the coefficient peak has passed.
class LossChannel {
public:
    LossChannel(double kappa_h, int d) : d_(d) {
        if (kappa_h < 0.0 || !std::isfinite(kappa_h)) {
            throw invariant_error("LossChannel: bad kappa*h");
        }
        if (kappa_h == 0.0) return;   // identity
        const double log_q2 = -kappa_h;              // ln e^{-kappa h}
        const double p = -std::expm1(-kappa_h);      // 1 - e^{-kappa h}
        const double log_p = std::log(p);
        double prev_max = 0.0;
        for (int k = 0; k < d; ++k) {
            Term t;
            t.k = k;
            t.c = Eigen::VectorXd::Zero(d);
            double cmax = 0.0;
            for (int m = k; m < d; ++m) {
                const double lc =
                    0.5 * (std::lgamma(m + 1.0) - std::lgamma(k + 1.0) -
                           std::lgamma(m - k + 1.0)) +
                    0.5 * ((m - k) * log_q2 + k * log_p);
                t.c(m) = std::exp(lc);
                cmax = std::max(cmax, t.c(m));
            }
            if (cmax < 1e-15 && cmax < prev_max) break;
            prev_max = cmax;
            if (cmax >= 1e-15) terms_.push_back(std::move(t));
        }
    }

    bool identity() const { return terms_.empty(); }

    void apply(Eigen::MatrixXcd& x, Eigen::MatrixXcd& scratch) const {
        if (identity()) return;
        scratch.setZero();
        for (const auto& t : terms_) {
            const int k = t.k;
            const int n = d_ - k;
            for (int j = 0; j < n; ++j) {
                const double cj = t.c(j + k);
                for (int i = 0; i < n; ++i) {
                    scratch(i, j) += (cj * t.c(i + k)) * x(i + k, j + k);
                }
            }
        }
        x.swap(scratch);
    }

private:
    struct Term {
        int k;
        Eigen::VectorXd c;
    };
    int d_;
    std::vector<Term> terms_;
};

double band_population(const Eigen::MatrixXcd& r00, const Eigen::MatrixXcd& r11,
                       int d) {
    const int band = (d + 9) / 10;
    double pop = 0.0;
    for (int n = d - band; n < d; ++n) {
        pop += r00(n, n).real() + r11(n, n).real();
    }
    return pop;
}

void require_truncation_ok(double pop, std::size_t segment) {
    if (!(pop < 1e-8)) {
        throw truncation_error(
            "evolve: top Fock band holds population " + std::to_string(pop) +
            " after segment " + std::to_string(segment) +
            "; raise dim_fock");
    }
}

struct Blocks {
    Eigen::MatrixXcd r00, r01, r11;
};

// Blockwise master equation for H supported on the |0> qubit block only.
Blocks blocks_rhs(const Blocks& x, const Eigen::MatrixXcd& h, double kappa) {
    Blocks out;
    out.r00.noalias() = -kI * (h * x.r00 - x.r00 * h);
    out.r01.noalias() = -kI * (h * x.r01);
    out.r11 = Eigen::MatrixXcd::Zero(x.r11.rows(), x.r11.cols());
    if (kappa != 0.0) {
        add_dissipator(x.r00, kappa, out.r00);
        add_dissipator(x.r01, kappa, out.r01);
        add_dissipator(x.r11, kappa, out.r11);
    }
    return out;
}

void rk4_step(Blocks& x, const Eigen::MatrixXcd& h, double kappa, double dt) {
    const Blocks k1 = blocks_rhs(x, h, kappa);
    Blocks y{x.r00 + 0.5 * dt * k1.r00, x.r01 + 0.5 * dt * k1.r01,
             x.r11 + 0.5 * dt * k1.r11};
    const Blocks k2 = blocks_rhs(y, h, kappa);
    y = Blocks{x.r00 + 0.5 * dt * k2.r00, x.r01 + 0.5 * dt * k2.r01,
               x.r11 + 0.5 * dt * k2.r11};
    const Blocks k3 = blocks_rhs(y, h, kappa);
    y = Blocks{x.r00 + dt * k3.r00, x.r01 + dt * k3.r01, x.r11 + dt * k3.r11};
    const Blocks k4 = blocks_rhs(y, h, kappa);
    const double w = dt / 6.0;
    x.r00 += w * (k1.r00 + 2.0 * k2.r00 + 2.0 * k3.r00 + k4.r00);
    x.r01 += w * (k1.r01 + 2.0 * k2.r01 + 2.0 * k3.r01 + k4.r01);
    x.r11 += w * (k1.r11 + 2.0 * k2.r11 + 2.0 * k3.r11 + k4.r11);
}

}  // namespace

int required_fock_dim(double alpha_max) {
    require_finite(alpha_max, "required_fock_dim.alpha_max");
    const double a = std::abs(alpha_max);
    return static_cast<int>(std::ceil(a * a + 6.0 * a + 10.0 - 1e-12));
}

Eigen::VectorXcd coherent_state_vector(ComplexAmplitude alpha, int d_F,
                                       double* norm_defect) {
    require_finite(alpha, "coherent_state_vector.alpha");
    if (d_F < required_fock_dim(std::abs(alpha))) {
        throw truncation_error(
            "coherent_state_vector: dim_fock " + std::to_string(d_F) +
            " is below the required cutoff " +
            std::to_string(required_fock_dim(std::abs(alpha))) +
            " for |alpha| = " + std::to_string(std::abs(alpha)));
    }
    Eigen::VectorXcd v(d_F);
    v(0) = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n < d_F; ++n) {
        v(n) = v(n - 1) * alpha / std::sqrt(static_cast<double>(n));
    }
    const double norm2 = v.squaredNorm();
    if (norm_defect != nullptr) *norm_defect = 1.0 - norm2;
    v /= std::sqrt(norm2);
    return v;
}

DensityMatrix DensityMatrix::plus_coherent(ComplexAmplitude alpha, int d_F) {
    const Eigen::VectorXcd v = coherent_state_vector(alpha, d_F);
    const Eigen::MatrixXcd dyad = 0.5 * (v * v.adjoint());
    DensityMatrix rho;
    rho.dim_fock = d_F;
    rho.data = Eigen::MatrixXcd::Zero(2 * d_F, 2 * d_F);
    rho.data.topLeftCorner(d_F, d_F) = dyad;
    rho.data.topRightCorner(d_F, d_F) = dyad;
    rho.data.bottomLeftCorner(d_F, d_F) = dyad;
    rho.data.bottomRightCorner(d_F, d_F) = dyad;
    return rho;
}

DensityMatrix DensityMatrix::dyad_superposition(ComplexAmplitude l1,
                                                ComplexAmplitude l2, int d_F) {
    const Eigen::VectorXcd v1 = coherent_state_vector(l1, d_F);
    const Eigen::VectorXcd v2 = coherent_state_vector(l2, d_F);
    DensityMatrix rho;
    rho.dim_fock = d_F;
    rho.data = Eigen::MatrixXcd::Zero(2 * d_F, 2 * d_F);
    rho.data.topLeftCorner(d_F, d_F) = 0.5 * (v1 * v1.adjoint());
    rho.data.topRightCorner(d_F, d_F) = 0.5 * (v1 * v2.adjoint());
    rho.data.bottomLeftCorner(d_F, d_F) = 0.5 * (v2 * v1.adjoint());
    rho.data.bottomRightCorner(d_F, d_F) = 0.5 * (v2 * v2.adjoint());
    return rho;
}

TruncationReport truncation_report(const DensityMatrix& rho) {
    check_shape(rho, "truncation_report");
    const int d = rho.dim_fock;
    const double pop = band_population(rho.data.topLeftCorner(d, d),
                                       rho.data.bottomRightCorner(d, d), d);
    return TruncationReport{pop, pop < 1e-8};
}

Eigen::MatrixXcd build_hamiltonian(const ModelParams& p, double phi, int d_F) {
    require_finite(phi, "build_hamiltonian.phi");
    require_finite(p.eta, "build_hamiltonian.eta");
    if (p.eta < 0.0) throw invariant_error("build_hamiltonian: eta must be >= 0");
    if (d_F < 2) throw invariant_error("build_hamiltonian: dim_fock must be >= 2");
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2 * d_F, 2 * d_F);
    h.topLeftCorner(d_F, d_F) = osc_hamiltonian(p.eta, phi, d_F);
    return h;
}

DensityMatrix lindblad_rhs(const DensityMatrix& rho, const ModelParams& p,
                           double phi) {
    check_shape(rho, "lindblad_rhs");
    p.validate();
    require_finite(phi, "lindblad_rhs.phi");
    const int d = rho.dim_fock;
    const double kappa = 2.0 * p.gamma;
    const Eigen::MatrixXcd h = osc_hamiltonian(p.eta, phi, d);

    DensityMatrix out;
    out.dim_fock = d;
    out.data.resize(2 * d, 2 * d);
    const auto r00 = rho.data.topLeftCorner(d, d);
    const auto r01 = rho.data.topRightCorner(d, d);
    const auto r10 = rho.data.bottomLeftCorner(d, d);
    const auto r11 = rho.data.bottomRightCorner(d, d);

    Eigen::MatrixXcd o00 = -kI * (h * r00 - r00 * h);
    Eigen::MatrixXcd o01 = -kI * (h * r01);
    Eigen::MatrixXcd o10 = kI * (r10 * h);
    Eigen::MatrixXcd o11 = Eigen::MatrixXcd::Zero(d, d);
    if (kappa != 0.0) {
        add_dissipator(r00, kappa, o00);
        add_dissipator(r01, kappa, o01);
        add_dissipator(r10, kappa, o10);
        add_dissipator(r11, kappa, o11);
    }
    out.data.topLeftCorner(d, d) = o00;
    out.data.topRightCorner(d, d) = o01;
    out.data.bottomLeftCorner(d, d) = o10;
    out.data.bottomRightCorner(d, d) = o11;
    return out;
}

DensityMatrix evolve(const DensityMatrix& rho0, const PhiSchedule& schedule,
                     const ModelParams& p, EvolveMethod method) {
    check_shape(rho0, "evolve");
    p.validate();
    schedule.validate();
    const int d = rho0.dim_fock;
    if ((rho0.data - rho0.data.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw invariant_error("evolve: input density matrix is not Hermitian");
    }

    Blocks b{rho0.data.topLeftCorner(d, d), rho0.data.topRightCorner(d, d),
             rho0.data.bottomRightCorner(d, d)};
    const double kappa = 2.0 * p.gamma;

    if (method == EvolveMethod::TrotterSplit) {
        Eigen::MatrixXcd scratch(d, d), tmp(d, d);
        for (std::size_t si = 0; si < schedule.segments.size(); ++si) {
            const auto& seg = schedule.segments[si];
            const auto n_full = static_cast<long long>(
                std::floor(seg.duration / p.dt + 1e-12));
            const double rem =
                seg.duration - static_cast<double>(n_full) * p.dt;
            const bool has_rem = rem > 1e-12 * seg.duration;

            Eigen::MatrixXcd u, u_adj, u_rem, u_rem_adj;
            const bool drive = p.eta > 0.0;
            if (drive) {
                // One eigendecomposition per segment gives the exact
                // displacement unitary at any step length.
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
                    osc_hamiltonian(1.0, seg.phi, d));
                const auto& vecs = es.eigenvectors();
                const auto& vals = es.eigenvalues();
                const auto make_u = [&](double t) -> Eigen::MatrixXcd {
                    const Eigen::VectorXcd ph =
                        ((-kI * p.eta * t) *
                         vals.cast<std::complex<double>>().array())
                            .exp();
                    return vecs * ph.asDiagonal() * vecs.adjoint();
                };
                u = make_u(p.dt);
                u_adj = u.adjoint();
                if (has_rem) {
                    u_rem = make_u(rem);
                    u_rem_adj = u_rem.adjoint();
                }
            }
            const LossChannel loss(kappa * p.dt, d);
            const LossChannel loss_rem(has_rem ? kappa * rem : 0.0, d);

            const auto step = [&](const Eigen::MatrixXcd& uu,
                                  const Eigen::MatrixXcd& uu_adj,
                                  const LossChannel& ch) {
                if (drive) {
                    tmp.noalias() = uu * b.r00;
                    b.r00.noalias() = tmp * uu_adj;
                    tmp.noalias() = uu * b.r01;
                    b.r01.swap(tmp);
                }
                ch.apply(b.r00, scratch);
                ch.apply(b.r01, scratch);
                ch.apply(b.r11, scratch);
            };
            for (long long k = 0; k < n_full; ++k) step(u, u_adj, loss);
            if (has_rem) step(u_rem, u_rem_adj, loss_rem);

            require_truncation_ok(band_population(b.r00, b.r11, d), si);
        }
    } else {
        const double h_step = p.dt / 10.0;
        for (std::size_t si = 0; si < schedule.segments.size(); ++si) {
            const auto& seg = schedule.segments[si];
            const Eigen::MatrixXcd h = osc_hamiltonian(p.eta, seg.phi, d);
            const auto n_full = static_cast<long long>(
                std::floor(seg.duration / h_step + 1e-12));
            const double rem =
                seg.duration - static_cast<double>(n_full) * h_step;
            for (long long k = 0; k < n_full; ++k) rk4_step(b, h, kappa, h_step);
            if (rem > 1e-12 * seg.duration) rk4_step(b, h, kappa, rem);

            require_truncation_ok(band_population(b.r00, b.r11, d), si);
        }
    }

    DensityMatrix out;
    out.dim_fock = d;
    out.data.resize(2 * d, 2 * d);
    out.data.topLeftCorner(d, d) = b.r00;
    out.data.topRightCorner(d, d) = b.r01;
    out.data.bottomLeftCorner(d, d) = b.r01.adjoint();
    out.data.bottomRightCorner(d, d) = b.r11;
    return out;
}

Eigen::MatrixXcd dissipative_dyadic(ComplexAmplitude l1, ComplexAmplitude l2,
                                    double gamma, double t, int d_F) {
    require_finite(l1, "dissipative_dyadic.l1");
    require_finite(l2, "dissipative_dyadic.l2");
    require_finite(gamma, "dissipative_dyadic.gamma");
    require_finite(t, "dissipative_dyadic.t");
    if (gamma < 0.0) throw invariant_error("dissipative_dyadic: gamma must be >= 0");
    if (t < 0.0) throw invariant_error("dissipative_dyadic: t must be >= 0");

    const double decay = std::exp(-gamma * t);
    const double w = -std::expm1(-2.0 * gamma * t);   // 1 - e^{-2 gamma t}
    const ComplexAmplitude pref = std::exp(w * log_coherent_overlap(l1, l2));
    const Eigen::VectorXcd v1 = coherent_state_vector(l1 * decay, d_F);
    const Eigen::VectorXcd v2 = coherent_state_vector(l2 * decay, d_F);
    return pref * (v1 * v2.adjoint());
}

ComplexAmplitude extract_qubit_coherence(const DensityMatrix& rho) {
    check_shape(rho, "extract_qubit_coherence");
    const int d = rho.dim_fock;
    return rho.data.topRightCorner(d, d).trace();
}

InvariantStats density_invariants(const DensityMatrix& rho) {
    check_shape(rho, "density_invariants");
    InvariantStats s;
    s.trace_defect = std::abs(rho.data.trace() - 1.0);
    s.hermiticity = (rho.data - rho.data.adjoint()).cwiseAbs().maxCoeff();
    const Eigen::MatrixXcd herm = 0.5 * (rho.data + rho.data.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm,
                                                       Eigen::EigenvaluesOnly);
    s.min_eigenvalue = es.eigenvalues().minCoeff();
    return s;
}

void check_invariants(const DensityMatrix& rho) {
    const InvariantStats s = density_invariants(rho);
    if (s.trace_defect >= 1e-8) {
        throw invariant_error("density matrix trace defect " +
                              std::to_string(s.trace_defect));
    }
    if (s.hermiticity >= 1e-10) {
        throw invariant_error("density matrix hermiticity defect " +
                              std::to_string(s.hermiticity));
    }
    if (s.min_eigenvalue <= -1e-8) {
        throw invariant_error("density matrix eigenvalue " +
                              std::to_string(s.min_eigenvalue));
    }
}

}  // namespace phasekick
