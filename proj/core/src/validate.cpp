#include "phasekick/validate.hpp"

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "phasekick/branch.hpp"
#include "phasekick/fock.hpp"
#include "phasekick/path.hpp"
#include "phasekick/thermal.hpp"

namespace phasekick {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

double elapsed_s(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

CriterionResult make(const char* id, const char* title, bool pass,
                     std::string detail) {
    return {id, title, pass ? CriterionStatus::Pass : CriterionStatus::Fail,
            std::move(detail)};
}

CriterionResult make_skip(const char* id, const char* title) {
    return {id, title, CriterionStatus::Skip,
            "skipped: the loop never closes at gamma = 0"};
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    return ls_slope(lx, ly);
}

struct FockReadout {
    double theta;
    double gamma_damp;
};

// theta/Gamma convention of the |+> preparation: 2 Tr<0|rho|1> = e^{-G-i th}.
FockReadout fock_readout(const DensityMatrix& rho) {
    const std::complex<double> c = 2.0 * extract_qubit_coherence(rho);
    return {-std::arg(c), -std::log(std::abs(c))};
}

BranchState run_branch_loop(ComplexAmplitude alpha, double eta, double gamma,
                            double T1, double dt) {
    ModelParams p;
    p.eta = eta;
    p.gamma = gamma;
    p.dt = dt;
    return propagate(BranchState::plus_coherent(alpha),
                     two_leg_schedule(T1, gamma), p);
}

}  // namespace

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results) {
        if (r.status == CriterionStatus::Fail) return false;
    }
    return true;
}

CriterionResult criterion_unitary_phase_branch() {
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (const double T : {0.25, 0.5, 1.0}) {
        const auto theta_at = [T](double dt) {
            ModelParams p;
            p.eta = 1.0;
            p.gamma = 0.0;
            p.dt = dt;
            return propagate(BranchState::plus_coherent(0.0),
                             square_schedule(T, 1.0), p)
                .theta();
        };
        const double rich = 2.0 * theta_at(5e-4) - theta_at(1e-3);
        worst = std::max(worst, std::abs(rich - T * T));
    }
    const double secs = elapsed_s(t0);
    return make("1a", "unitary loop phase (branch)",
                worst < 1e-6 && secs < 60.0,
                "max |theta - eta^2 T^2| = " + fmt(worst) +
                    " after Richardson over dt in {1e-3, 5e-4}; runtime " +
                    fmt(secs) + " s (limit 60)");
}

CriterionResult criterion_unitary_phase_fock() {
    const auto t0 = Clock::now();
    ModelParams p;
    p.eta = 1.0;
    p.gamma = 0.0;
    p.dt = 1e-3;
    double worst = 0.0;
    std::string ratios;
    for (const double T : {0.25, 0.5, 1.0}) {
        const DensityMatrix rho0 = DensityMatrix::plus_coherent(0.5, 40);
        const DensityMatrix out =
            evolve(rho0, square_schedule(T, 1.0), p, EvolveMethod::TrotterSplit);
        const double theta_f = fock_readout(out).theta;
        worst = std::max(worst, std::abs(theta_f - T * T));
        if (!ratios.empty()) ratios += ", ";
        ratios += fmt(theta_f / (T * T));
    }
    const double secs = elapsed_s(t0);
    return make("1b", "unitary loop phase (fock)", worst < 1e-4 && secs < 60.0,
                "max |theta_fock - eta^2 T^2| = " + fmt(worst) +
                    " (alpha = 0.5, d_F = 40); theta_fock / (eta^2 T^2) = {" +
                    ratios + "}; runtime " + fmt(secs) + " s (limit 60)");
}

CriterionResult criterion_theta_alpha_independence() {
    ModelParams p;
    p.eta = 1.0;
    p.gamma = 0.0;
    p.dt = 1e-3;
    const PhiSchedule sched = square_schedule(1.0, 1.0);
    const std::array<ComplexAmplitude, 3> alphas = {
        ComplexAmplitude(0.0, 0.0), ComplexAmplitude(1.0, 0.0),
        ComplexAmplitude(2.0, 3.0)};
    double theta0 = 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        const double th =
            propagate(BranchState::plus_coherent(alphas[i]), sched, p).theta();
        if (i == 0) {
            theta0 = th;
        } else {
            worst = std::max(worst, std::abs(th - theta0));
        }
    }
    return make("2", "theta amplitude independence", worst < 1e-9,
                "max |theta(alpha) - theta(0)| = " + fmt(worst) +
                    " over alpha in {0, 1, 2+3i}");
}

CriterionResult criterion_first_leg_closed_forms() {
    ModelParams p;
    p.eta = 1.0;
    p.gamma = 1.0;
    p.dt = 1e-5;
    PhiSchedule first_leg;
    first_leg.segments.push_back({1.0, 0.0});
    const BranchState s =
        propagate(BranchState::plus_coherent(1.0), first_leg, p);

    const double theta1 = s.theta();
    const double beta1 = std::abs(s.lambda0 - s.lambda1);
    const double alpha1 = std::abs(s.lambda1);
    const double gamma1 = s.gamma_damp();

    // Reference values at (alpha, eta, gamma, T1) = (1, 1, 1, 1).
    const ClosedFormT1 cf = closed_form_t1(1.0, p, 1.0);
    const std::array<std::array<double, 3>, 4> rows = {{
        {theta1, cf.theta1, 0.432332},
        {beta1, cf.beta1, 0.632121},
        {alpha1, cf.alpha1, 0.367879},
        {gamma1, cf.gamma1, 0.084046},
    }};
    double worst = 0.0;
    for (const auto& r : rows) {
        worst = std::max(worst, std::abs(r[0] - r[1]) / std::abs(r[1]));
        worst = std::max(worst, std::abs(r[0] - r[2]) / std::abs(r[2]));
    }
    return make("3", "first-leg closed forms", worst < 1e-4,
                "theta1 = " + fmt(theta1) + ", beta1 = " + fmt(beta1) +
                    ", alpha1 = " + fmt(alpha1) + ", gamma1 = " + fmt(gamma1) +
                    "; worst relative deviation " + fmt(worst));
}

CriterionResult criterion_loop_closure() {
    double worst = 0.0;
    for (const double u : {0.5, 1.0, 5.0, 20.0}) {
        const BranchState s = run_branch_loop(1.0, 1.0, 1.0, u, 1e-4);
        worst = std::max(worst, std::abs(s.lambda0 - s.lambda1));
    }
    return make("4", "loop closure", worst < 1e-6,
                "max final |lambda0 - lambda1| = " + fmt(worst) +
                    " over gamma*T1 in {0.5, 1, 5, 20} (bound 1e-6 * eta/gamma)");
}

CriterionResult criterion_loop_phase_closed_form() {
    ModelParams p;
    p.eta = 1.0;
    p.gamma = 1.0;
    p.dt = 1e-5;
    double worst = 0.0;
    for (const double u : {0.5, 1.0, 5.0, 20.0}) {
        const BranchState s = run_branch_loop(1.0, 1.0, 1.0, u, 1e-5);
        const LoopClosedForm cf = closed_form_loop(1.0, p, u);
        worst = std::max(worst, std::abs(s.theta() - cf.theta) /
                                    std::abs(cf.theta));
    }
    return make("5", "loop phase closed form", worst < 1e-4,
                "max relative |theta - closed form| = " + fmt(worst) +
                    " over gamma*T1 in {0.5, 1, 5, 20}");
}

CriterionResult criterion_damping_alpha_independence() {
    const std::array<ComplexAmplitude, 4> alphas = {
        ComplexAmplitude(0.0, 0.0), ComplexAmplitude(1.0, 0.0),
        ComplexAmplitude(5.0, 0.0), ComplexAmplitude(0.0, 3.0)};
    double g0 = 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        const double g = run_branch_loop(alphas[i], 1.0, 1.0, 1.0, 1e-4)
                             .gamma_damp();
        if (i == 0) {
            g0 = g;
        } else {
            worst = std::max(worst, std::abs(g - g0));
        }
    }
    return make("6a", "damping amplitude independence", worst < 1e-9,
                "max |Gamma(alpha) - Gamma(0)| = " + fmt(worst) +
                    " over alpha in {0, 1, 5, 3i}");
}

CriterionResult criterion_damping_cubic_scaling() {
    // The damping exponent factorizes as Gamma = eta^2 G~ / (2 gamma^2) with
    // G~ dimensionless; G~ is the quantity with the cubic small-gamma law.
    // Raw Gamma itself scales linearly (the 1/gamma^2 prefactor), reported
    // alongside as a diagnostic.
    std::vector<double> gammas = {1e-2, 1e-3, 1e-4};
    std::vector<double> scaled, raw;
    for (const double g : gammas) {
        ModelParams p;
        p.eta = 1.0;
        p.gamma = g;
        p.dt = 1e-3;
        const LoopClosedForm cf = closed_form_loop(1.0, p, 1.0);
        raw.push_back(cf.gamma_damp);
        scaled.push_back(2.0 * g * g * cf.gamma_damp);
    }
    const double slope = loglog_slope(gammas, scaled);
    const double raw_slope = loglog_slope(gammas, raw);
    return make("6b", "damping cubic scaling in gamma",
                std::abs(slope - 3.0) <= 0.1,
                "log-log slope of 2 gamma^2 Gamma / eta^2 = " + fmt(slope) +
                    " (target 3.0 +- 0.1); raw Gamma slope = " +
                    fmt(raw_slope) + " over gamma in {1e-2, 1e-3, 1e-4}");
}

std::pair<CriterionResult, CriterionResult> criterion_engine_lattice() {
    const auto t0 = Clock::now();
    const int d_F = 60;
    double max_dth = 0.0, max_dgam = 0.0, max_dp = 0.0;
    double max_trace = 0.0, max_herm = 0.0;
    double min_eig = 1.0;
    std::vector<double> theta_ratios, gamma_ratios;
    int runs = 0;

    for (const double eta : {0.1, 0.5}) {
        for (const double u : {0.5, 2.0}) {
            const PhiSchedule sched = two_leg_schedule(u, 1.0);
            for (const double alpha : {0.0, 0.5, 1.0}) {
                ModelParams p;
                p.eta = eta;
                p.gamma = 1.0;
                p.dt = 1e-4;

                const BranchState s =
                    propagate(BranchState::plus_coherent(alpha), sched, p);
                const QubitReadout rb = readout(s);

                const DensityMatrix out =
                    evolve(DensityMatrix::plus_coherent(alpha, d_F), sched, p,
                           EvolveMethod::TrotterSplit);
                const FockReadout rf = fock_readout(out);
                const QubitReadout rfq =
                    QubitReadout::from_phase(rf.theta, rf.gamma_damp);

                max_dth = std::max(max_dth, std::abs(rf.theta - s.theta()));
                max_dgam =
                    std::max(max_dgam, std::abs(rf.gamma_damp - s.gamma_damp()));
                max_dp = std::max(max_dp, std::abs(rfq.p_plus - rb.p_plus));
                if (std::abs(s.theta()) > 1e-12) {
                    theta_ratios.push_back(rf.theta / s.theta());
                }
                gamma_ratios.push_back(rf.gamma_damp / s.gamma_damp());

                const InvariantStats st = density_invariants(out);
                max_trace = std::max(max_trace, st.trace_defect);
                max_herm = std::max(max_herm, st.hermiticity);
                min_eig = std::min(min_eig, st.min_eigenvalue);
                ++runs;
            }
        }
    }
    const double secs = elapsed_s(t0);

    double th_ratio = 0.0;
    for (const double r : theta_ratios) th_ratio += r;
    th_ratio /= static_cast<double>(theta_ratios.size());
    double g_ratio = 0.0;
    for (const double r : gamma_ratios) g_ratio += r;
    g_ratio /= static_cast<double>(gamma_ratios.size());

    const bool eq_pass =
        max_dth <= 1e-4 && max_dgam <= 1e-4 && max_dp <= 1e-4 && secs < 600.0;
    CriterionResult eq = make(
        "7", "engine equivalence (dissipative lattice)", eq_pass,
        "max |dtheta| = " + fmt(max_dth) + ", max |dGamma| = " + fmt(max_dgam) +
            ", max |dP+| = " + fmt(max_dp) +
            "; mean theta_fock/theta_branch = " + fmt(th_ratio) +
            ", mean Gamma_fock/Gamma_branch = " + fmt(g_ratio) + "; " +
            std::to_string(runs) + " runs, d_F = 60, dt = 1e-4/gamma; runtime " +
            fmt(secs) + " s (limit 600)");

    const bool inv_pass =
        max_trace < 1e-8 && max_herm < 1e-10 && min_eig > -1e-8;
    CriterionResult inv = make(
        "9", "density-matrix invariants", inv_pass,
        "across the lattice runs: max trace defect = " + fmt(max_trace) +
            ", max hermiticity defect = " + fmt(max_herm) +
            ", min eigenvalue = " + fmt(min_eig));
    return {eq, inv};
}

CriterionResult criterion_dyadic_identity() {
    const std::array<ComplexAmplitude, 3> pool = {ComplexAmplitude(-1.0, 0.0),
                                                  ComplexAmplitude(0.0, 0.7),
                                                  ComplexAmplitude(1.2, 0.9)};
    const int d_F = 32;
    ModelParams p;
    p.eta = 0.0;
    p.gamma = 1.0;
    p.dt = 1e-3;
    PhiSchedule sched;
    sched.segments.push_back({0.3, 0.0});

    double worst = 0.0;
    for (const auto& l1 : pool) {
        for (const auto& l2 : pool) {
            const DensityMatrix out =
                evolve(DensityMatrix::dyad_superposition(l1, l2, d_F), sched, p,
                       EvolveMethod::TrotterSplit);
            const Eigen::MatrixXcd lhs =
                2.0 * out.data.topRightCorner(d_F, d_F);
            const Eigen::MatrixXcd rhs =
                dissipative_dyadic(l1, l2, 1.0, 0.3, d_F);
            worst = std::max(worst, (lhs - rhs).norm());
        }
    }
    return make("8", "dyadic damping identity", worst < 1e-6,
                "max Frobenius |evolved dyad - closed form| = " + fmt(worst) +
                    " over 9 pairs, gamma*t = 0.3, d_F = 32");
}

CriterionResult criterion_thermal_cross_check() {
    ModelParams p;
    p.eta = 0.05;
    p.gamma = 1.0;
    p.dt = 1e-3;
    const LoopSpec loop = LoopSpec::dissipative_two_leg(20.0);

    ThermalSpec spec;
    spec.alpha0 = ComplexAmplitude(40.0, 0.0);
    spec.V = 20.0;
    const LambdaEstimate gh =
        lambda_integral_estimate(spec, loop, p, GaussHermiteMethod{64});
    const LambdaEstimate mc = lambda_integral_estimate(
        spec, loop, p, MonteCarloMethod{100000, 20260814});
    const double dre = std::abs(gh.value.lambda.real() - mc.value.lambda.real());
    const double dim = std::abs(gh.value.lambda.imag() - mc.value.lambda.imag());
    const bool agree = dre <= 3.0 * mc.se_re && dim <= 3.0 * mc.se_im;

    // Pure-state reduction at the same center.
    ThermalSpec pure = spec;
    pure.V = 1.0;
    const LambdaResult lp = lambda_integral(pure, loop, p, GaussHermiteMethod{64});
    const BranchState s = run_branch_loop(spec.alpha0, 0.05, 1.0, 20.0, 1e-3);
    const std::complex<double> ref = std::exp(std::conj(s.log_coherence));
    const double dpure = std::abs(lp.lambda - ref);

    return make("10", "thermal quadrature cross-check",
                agree && dpure < 1e-6,
                "|GH - MC| = (" + fmt(dre) + ", " + fmt(dim) + ") vs 3*SE = (" +
                    fmt(3.0 * mc.se_re) + ", " + fmt(3.0 * mc.se_im) +
                    "); V=1 reduction |Lambda - v e^{i theta}| = " + fmt(dpure));
}

CriterionResult criterion_variance_monotonicity() {
    ModelParams p;
    p.eta = 0.05;
    p.gamma = 1.0;
    p.dt = 1e-3;
    const LoopSpec loop = LoopSpec::dissipative_two_leg(20.0);
    ThermalSpec spec;
    spec.alpha0 = ComplexAmplitude(0.0, 0.0);

    bool monotone = true;
    double prev_plus = 2.0, prev_minus = -1.0;
    for (int V = 1; V <= 60; ++V) {
        spec.V = static_cast<double>(V);
        const QubitReadout r = thermal_readout(
            lambda_integral(spec, loop, p, GaussHermiteMethod{16}));
        if (V > 1 && !(r.p_plus < prev_plus && r.p_minus > prev_minus)) {
            monotone = false;
        }
        prev_plus = r.p_plus;
        prev_minus = r.p_minus;
    }
    return make("11a", "variance sweep monotonicity", monotone,
                std::string("P+ strictly decreasing and P- strictly increasing "
                            "over V in [1, 60] at alpha0 = 0: ") +
                    (monotone ? "holds" : "violated"));
}

CriterionResult criterion_fringe_pattern() {
    ModelParams p;
    p.eta = 0.05;
    p.gamma = 1.0;
    p.dt = 1e-3;
    const LoopSpec loop = LoopSpec::dissipative_two_leg(20.0);

    std::string envs;
    bool fringe_ok = true, env_ok = true;
    double prev_env = 2.0;
    for (const double V : {1.0, 20.0, 60.0}) {
        int sign_changes = 0;
        double env = 0.0;
        double prev = 0.0;
        bool have_prev = false;
        for (int a0 = 0; a0 <= 260; a0 += 10) {
            ThermalSpec spec;
            spec.alpha0 = ComplexAmplitude(static_cast<double>(a0), 0.0);
            spec.V = V;
            const QubitReadout r = thermal_readout(
                lambda_integral(spec, loop, p, GaussHermiteMethod{16}));
            const double dev = r.p_plus - 0.5;
            env = std::max(env, std::abs(dev));
            if (have_prev && dev * prev < 0.0) ++sign_changes;
            prev = dev;
            have_prev = true;
        }
        if (sign_changes < 2) fringe_ok = false;
        if (!(env < prev_env)) env_ok = false;
        prev_env = env;
        if (!envs.empty()) envs += ", ";
        envs += fmt(env);
    }
    return make("11b", "fringe pattern and envelope", fringe_ok && env_ok,
                "P+ oscillates along alpha0 (>= 2 sign changes per row) with "
                "envelope max|P+ - 1/2| = {" +
                    envs + "} decreasing over V in {1, 20, 60}");
}

CriterionResult criterion_pure_state_inversion() {
    ModelParams p;
    p.eta = 0.05;
    p.gamma = 1.0;
    p.dt = 1e-3;
    const LoopSpec loop = LoopSpec::dissipative_two_leg(20.0);

    int inversions = 0;
    bool ok = true;
    for (int a0 = 0; a0 <= 260; a0 += 10) {
        ThermalSpec spec;
        spec.alpha0 = ComplexAmplitude(static_cast<double>(a0), 0.0);
        spec.V = 1.0;
        const LambdaResult r = lambda_integral(spec, loop, p, GaussHermiteMethod{16});
        const QubitReadout q = thermal_readout(r);
        if (std::cos(r.theta_tilde) < 0.0) {
            ++inversions;
            if (!(q.p_plus < q.p_minus)) ok = false;
        }
    }
    return make("11c", "pure-state inversion", ok && inversions > 0,
                "P+ < P- at each of the " + std::to_string(inversions) +
                    " pure-state grid points with cos(theta) < 0");
}

CriterionResult criterion_trotter_convergence() {
    const std::vector<double> dts = {1e-3, 5e-4, 2.5e-4, 1.25e-4};

    // Branch engine against the analytic loop coherence.
    ModelParams pc;
    pc.eta = 1.0;
    pc.gamma = 1.0;
    pc.dt = 1e-3;
    const LoopClosedForm cf = closed_form_loop(1.0, pc, 1.0);
    const std::complex<double> c_exact =
        std::exp(std::complex<double>(-cf.gamma_damp, -cf.theta));
    std::vector<double> errs_b, errs_th;
    for (const double dt : dts) {
        const BranchState s = run_branch_loop(1.0, 1.0, 1.0, 1.0, dt);
        errs_b.push_back(std::abs(std::exp(s.log_coherence) - c_exact));
        errs_th.push_back(std::abs(s.theta() - cf.theta));
    }
    const double slope_b = loglog_slope(dts, errs_b);
    const double slope_th = loglog_slope(dts, errs_th);

    // Fock engine against a DirectRK4 reference (inner step dt/10).
    const int d_F = 30;
    const PhiSchedule sched = two_leg_schedule(1.0, 1.0);
    ModelParams pref;
    pref.eta = 1.0;
    pref.gamma = 1.0;
    pref.dt = 1e-3;
    const DensityMatrix rho0 = DensityMatrix::plus_coherent(1.0, d_F);
    const DensityMatrix ref = evolve(rho0, sched, pref, EvolveMethod::DirectRK4);
    std::vector<double> errs_f;
    for (const double dt : dts) {
        ModelParams p = pref;
        p.dt = dt;
        const DensityMatrix out =
            evolve(rho0, sched, p, EvolveMethod::TrotterSplit);
        errs_f.push_back((out.data - ref.data).norm());
    }
    const double slope_f = loglog_slope(dts, errs_f);

    const bool pass = std::abs(slope_b - 1.0) <= 0.1 &&
                      std::abs(slope_f - 1.0) <= 0.1;
    return make("12", "trotter convergence slopes", pass,
                "coherence-error slope: branch = " + fmt(slope_b) +
                    ", fock (vs RK4) = " + fmt(slope_f) +
                    " (target 1.0 +- 0.1); branch theta error superconverges "
                    "at slope " +
                    fmt(slope_th));
}

CriterionResult criterion_determinism(const std::string& cli_path,
                                      const std::string& scratch_dir) {
    if (cli_path.empty() || !fs::exists(cli_path)) {
        return make("13", "determinism of reruns", false,
                    "cli binary not found at '" + cli_path + "'");
    }
    fs::path scratch = scratch_dir.empty()
                           ? fs::temp_directory_path()
                           : fs::path(scratch_dir);
    scratch /= "phasekick-determinism";
    std::error_code ec;
    fs::create_directories(scratch, ec);
    if (ec) {
        return make("13", "determinism of reruns", false,
                    "cannot create scratch directory " + scratch.string());
    }

    const std::array<std::pair<const char*, const char*>, 3> experiments = {{
        {"unitary-loop",
         "unitary-loop --set T_min=0.25 --set T_max=1.0 --set T_step=0.25 "
         "--set d_F=24 --format csv"},
        {"dissipative-loop",
         "dissipative-loop --set gamma_T1_min=0.5 --set gamma_T1_max=1.0 "
         "--set gamma_T1_step=0.5 --format csv"},
        {"thermal-sweep",
         "thermal-sweep --set gamma_T1=1 --set alpha0_min=0 --set "
         "alpha0_max=20 --set alpha0_step=10 --set V_min=1 --set V_max=9 "
         "--set V_step=8 --set mc_samples=2000 --set seed=7 --format json"},
    }};

    const auto slurp = [](const fs::path& f) {
        std::ifstream in(f, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };

    std::string checked;
    for (const auto& [name, args] : experiments) {
        std::array<fs::path, 2> outs;
        for (int pass = 0; pass < 2; ++pass) {
            outs[pass] = scratch / (std::string(name) + "." +
                                    std::to_string(pass) + ".out");
            const std::string cmd =
                "\"" + cli_path + "\" " + args + " --out \"" +
                outs[pass].string() + "\" 2>\"" +
                (scratch / "stderr.log").string() + "\"";
            const int rc = std::system(cmd.c_str());
            const int code =
                (rc != -1 && WIFEXITED(rc)) ? WEXITSTATUS(rc) : -1;
            if (code != 0) {
                return make("13", "determinism of reruns", false,
                            std::string(name) + " exited with code " +
                                std::to_string(code));
            }
        }
        const std::string a = slurp(outs[0]);
        const std::string b = slurp(outs[1]);
        if (a.empty() || a != b) {
            return make("13", "determinism of reruns", false,
                        std::string(name) + " reruns differ (" +
                            std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()) + " bytes)");
        }
        if (!checked.empty()) checked += ", ";
        checked += name;
    }
    fs::remove_all(scratch, ec);
    return make("13", "determinism of reruns", true,
                "byte-identical reruns for " + checked);
}

std::vector<CriterionResult> run_criteria(const ValidateOptions& opt) {
    std::vector<CriterionResult> out;
    const bool dissipative = opt.gamma != 0.0;

    out.push_back(criterion_unitary_phase_branch());
    out.push_back(criterion_unitary_phase_fock());
    out.push_back(criterion_theta_alpha_independence());
    if (dissipative) {
        out.push_back(criterion_first_leg_closed_forms());
        out.push_back(criterion_loop_closure());
        out.push_back(criterion_loop_phase_closed_form());
        out.push_back(criterion_damping_alpha_independence());
        out.push_back(criterion_damping_cubic_scaling());
        auto [eq, inv] = criterion_engine_lattice();
        out.push_back(eq);
        out.push_back(criterion_dyadic_identity());
        out.push_back(inv);
        out.push_back(criterion_thermal_cross_check());
        out.push_back(criterion_variance_monotonicity());
        out.push_back(criterion_fringe_pattern());
        out.push_back(criterion_pure_state_inversion());
        out.push_back(criterion_trotter_convergence());
    } else {
        out.push_back(make_skip("3", "first-leg closed forms"));
        out.push_back(make_skip("4", "loop closure"));
        out.push_back(make_skip("5", "loop phase closed form"));
        out.push_back(make_skip("6a", "damping amplitude independence"));
        out.push_back(make_skip("6b", "damping cubic scaling in gamma"));
        out.push_back(make_skip("7", "engine equivalence (dissipative lattice)"));
        out.push_back(criterion_dyadic_identity());
        out.push_back(make_skip("9", "density-matrix invariants"));
        out.push_back(make_skip("10", "thermal quadrature cross-check"));
        out.push_back(make_skip("11a", "variance sweep monotonicity"));
        out.push_back(make_skip("11b", "fringe pattern and envelope"));
        out.push_back(make_skip("11c", "pure-state inversion"));
        out.push_back(make_skip("12", "trotter convergence slopes"));
    }
    out.push_back(criterion_determinism(opt.cli_path, opt.scratch_dir));
    return out;
}

}  // namespace phasekick
