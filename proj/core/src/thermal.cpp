#include "phasekick/thermal.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "phasekick/quadrature.hpp"
#include "phasekick/rng.hpp"

namespace phasekick {

namespace {

PhiSchedule loop_schedule(const LoopSpec& loop, const ModelParams& p) {
    if (loop.kind == LoopSpec::Kind::UnitarySquare) {
        if (p.gamma != 0.0) {
            throw invariant_error(
                "lambda_integral: the square loop only closes at gamma = 0");
        }
        return square_schedule(loop.T, p.eta);
    }
    return two_leg_schedule(loop.T1, p.gamma);
}

// theta at one phase-space point, plus a cross-node check that the damping
// exponent really is amplitude-independent before it is factored out of the
// integral.
struct NodeEvaluator {
    const PhiSchedule& schedule;
    const ModelParams& p;
    double gamma_ref = -1.0;

    double theta_at(ComplexAmplitude alpha) {
        const BranchState s =
            propagate(BranchState::plus_coherent(alpha), schedule, p);
        const double g = s.gamma_damp();
        if (gamma_ref < 0.0) {
            gamma_ref = g;
        } else if (std::abs(g - gamma_ref) > 1e-7 * (1.0 + gamma_ref)) {
            throw invariant_error(
                "lambda_integral: damping exponent varies across nodes, "
                "factoring v = e^{-Gamma} out of the integral is invalid");
        }
        return s.theta();
    }
};

LambdaEstimate finish(ComplexAmplitude mean_phase, double v, double se_re,
                      double se_im) {
    LambdaEstimate est;
    est.value.lambda = v * mean_phase;
    est.value.theta_tilde = std::arg(est.value.lambda);
    est.value.visibility = std::abs(est.value.lambda);
    est.se_re = v * se_re;
    est.se_im = v * se_im;
    return est;
}

}  // namespace

void ThermalSpec::validate() const {
    require_finite(alpha0, "ThermalSpec.alpha0");
    require_finite(V, "ThermalSpec.V");
    if (V < 1.0) {
        throw invariant_error("ThermalSpec: variance V must be >= 1");
    }
}

double variance_from_temperature(double beta) {
    require_finite(beta, "variance_from_temperature.beta");
    if (beta <= 0.0) {
        throw invariant_error("variance_from_temperature: beta must be > 0");
    }
    return 1.0 + 2.0 / std::expm1(beta);
}

double p_weight(ComplexAmplitude alpha, const ThermalSpec& spec) {
    spec.validate();
    require_finite(alpha, "p_weight.alpha");
    if (spec.V <= 1.0) {
        throw invariant_error("p_weight: V must be > 1");
    }
    const double s = spec.V - 1.0;
    return 2.0 / (M_PI * s) * std::exp(-2.0 * std::norm(alpha - spec.alpha0) / s);
}

LambdaEstimate lambda_integral_estimate(const ThermalSpec& spec,
                                        const LoopSpec& loop,
                                        const ModelParams& p,
                                        const LambdaMethod& method) {
    spec.validate();
    p.validate();
    if (const auto* gh = std::get_if<GaussHermiteMethod>(&method)) {
        if (gh->n < 2) {
            throw invariant_error("lambda_integral: quadrature order below 2");
        }
    } else {
        const auto& mc = std::get<MonteCarloMethod>(method);
        if (mc.samples < 1000) {
            throw invariant_error(
                "lambda_integral: fewer than 1000 Monte Carlo samples");
        }
    }

    const PhiSchedule schedule = loop_schedule(loop, p);
    NodeEvaluator eval{schedule, p};

    if (spec.V == 1.0) {
        const double theta0 = eval.theta_at(spec.alpha0);
        return finish(std::exp(std::complex<double>(0.0, theta0)),
                      std::exp(-eval.gamma_ref), 0.0, 0.0);
    }

    const double sigma = 0.5 * std::sqrt(spec.V - 1.0);
    if (const auto* gh = std::get_if<GaussHermiteMethod>(&method)) {
        const GaussHermiteRule rule = gauss_hermite(gh->n);
        const double scale = std::sqrt(2.0) * sigma;
        std::vector<std::complex<double>> terms;
        terms.reserve(static_cast<std::size_t>(gh->n) * gh->n);
        for (int i = 0; i < gh->n; ++i) {
            for (int j = 0; j < gh->n; ++j) {
                const ComplexAmplitude alpha =
                    spec.alpha0 + scale * ComplexAmplitude(rule.nodes(i),
                                                           rule.nodes(j));
                const double th = eval.theta_at(alpha);
                terms.push_back(rule.weights(i) * rule.weights(j) *
                                std::exp(std::complex<double>(0.0, th)));
            }
        }
        // Both Gauss-Hermite weight sums carry a sqrt(pi); the Gaussian
        // normalization absorbs them as 1/pi.
        const std::complex<double> mean = pairwise_sum(terms) / M_PI;
        return finish(mean, std::exp(-eval.gamma_ref), 0.0, 0.0);
    }

    const auto& mc = std::get<MonteCarloMethod>(method);
    NormalSampler normal(mc.seed);
    std::vector<std::complex<double>> phases;
    phases.reserve(static_cast<std::size_t>(mc.samples));
    for (int k = 0; k < mc.samples; ++k) {
        const double x = sigma * normal();
        const double y = sigma * normal();
        const ComplexAmplitude alpha = spec.alpha0 + ComplexAmplitude(x, y);
        phases.push_back(
            std::exp(std::complex<double>(0.0, eval.theta_at(alpha))));
    }
    const double m = static_cast<double>(mc.samples);
    const std::complex<double> mean = pairwise_sum(phases) / m;
    double var_re = 0.0;
    double var_im = 0.0;
    for (const auto& z : phases) {
        const double dr = z.real() - mean.real();
        const double di = z.imag() - mean.imag();
        var_re += dr * dr;
        var_im += di * di;
    }
    const double denom = m * (m - 1.0);
    return finish(mean, std::exp(-eval.gamma_ref), std::sqrt(var_re / denom),
                  std::sqrt(var_im / denom));
}

LambdaResult lambda_integral(const ThermalSpec& spec, const LoopSpec& loop,
                             const ModelParams& p, const LambdaMethod& method) {
    return lambda_integral_estimate(spec, loop, p, method).value;
}

QubitReadout thermal_readout(const LambdaResult& r) {
    require_finite(r.lambda, "thermal_readout.lambda");
    require_finite(r.theta_tilde, "thermal_readout.theta_tilde");
    if (r.visibility < 0.0 || r.visibility > 1.0 + 1e-12) {
        throw invariant_error("thermal_readout: visibility outside [0, 1]");
    }
    QubitReadout out;
    out.theta = r.theta_tilde;
    out.gamma_damp = (r.visibility > 0.0)
                         ? -std::log(r.visibility)
                         : std::numeric_limits<double>::infinity();
    out.p_plus = 0.5 * (1.0 + r.visibility * std::cos(r.theta_tilde));
    out.p_minus = 1.0 - out.p_plus;
    return out;
}

QubitReadout unitary_thermal_phase(const ThermalSpec& spec, double T,
                                   const ModelParams& p) {
    spec.validate();
    p.validate();
    require_finite(T, "unitary_thermal_phase.T");
    if (p.gamma != 0.0) {
        throw invariant_error("unitary_thermal_phase: gamma must be 0");
    }
    if (T < 0.0) {
        throw invariant_error("unitary_thermal_phase: T must be >= 0");
    }
    if (T == 0.0) {
        return QubitReadout::from_phase(0.0, 0.0);
    }
    const BranchState s =
        propagate(BranchState::plus_coherent(spec.alpha0),
                  square_schedule(T, p.eta), p);
    return QubitReadout::from_phase(s.theta(), s.gamma_damp());
}

}  // namespace phasekick
