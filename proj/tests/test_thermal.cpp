#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "phasekick/branch.hpp"
#include "phasekick/path.hpp"
#include "phasekick/thermal.hpp"

using namespace phasekick;

namespace {

ModelParams fig2_params(double dt = 1e-3) {
    ModelParams p;
    p.eta = 0.05;
    p.gamma = 1.0;
    p.dt = dt;
    return p;
}

}  // namespace

TEST_CASE("variance_from_temperature hits the printed points and limits") {
    CHECK(variance_from_temperature(std::log(3.0)) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(variance_from_temperature(0.01) ==
          doctest::Approx((std::exp(0.01) + 1.0) / (std::exp(0.01) - 1.0))
              .epsilon(1e-12));
    CHECK(variance_from_temperature(0.01) ==
          doctest::Approx(200.0017).epsilon(1e-5));
    CHECK(variance_from_temperature(50.0) == doctest::Approx(1.0));

    double prev = variance_from_temperature(0.1);
    for (double beta : {0.5, 1.0, 2.0, 5.0}) {
        const double v = variance_from_temperature(beta);
        CHECK(v < prev);
        CHECK(v > 1.0);
        prev = v;
    }

    CHECK_THROWS_AS(variance_from_temperature(0.0), invariant_error);
    CHECK_THROWS_AS(variance_from_temperature(-1.0), invariant_error);
}

TEST_CASE("ThermalSpec validation") {
    ThermalSpec spec;
    spec.V = 1.0;
    CHECK_NOTHROW(spec.validate());
    spec.V = 0.99;
    CHECK_THROWS_AS(spec.validate(), invariant_error);
}

TEST_CASE("p_weight: peak height, positivity, 6-sigma normalization") {
    ThermalSpec spec;
    spec.alpha0 = ComplexAmplitude(1.0, 0.5);
    spec.V = 3.0;

    CHECK(p_weight(spec.alpha0, spec) ==
          doctest::Approx(2.0 / (M_PI * (spec.V - 1.0))).epsilon(1e-12));

    // Trapezoid over a 6-sigma box per axis.
    const double sigma = 0.5 * std::sqrt(spec.V - 1.0);
    const int n = 301;
    const double h = 12.0 * sigma / (n - 1);
    double mass = 0.0;
    for (int i = 0; i < n; ++i) {
        const double wx = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        for (int j = 0; j < n; ++j) {
            const double wy = (j == 0 || j == n - 1) ? 0.5 : 1.0;
            const ComplexAmplitude a =
                spec.alpha0 + ComplexAmplitude(-6.0 * sigma + i * h,
                                               -6.0 * sigma + j * h);
            const double w = p_weight(a, spec);
            CHECK(w >= 0.0);
            mass += wx * wy * w;
        }
    }
    mass *= h * h;
    CHECK(std::abs(mass - 1.0) < 1e-6);

    ThermalSpec pure = spec;
    pure.V = 1.0;
    CHECK_THROWS_AS(p_weight(spec.alpha0, pure), invariant_error);
}

TEST_CASE("lambda_integral validates its method parameters") {
    ThermalSpec spec;
    spec.V = 2.0;
    const LoopSpec loop = LoopSpec::dissipative_two_leg(1.0);
    ModelParams p = fig2_params();

    CHECK_THROWS_AS(lambda_integral(spec, loop, p, GaussHermiteMethod{1}),
                    invariant_error);
    CHECK_THROWS_AS(lambda_integral(spec, loop, p, MonteCarloMethod{999, 1}),
                    invariant_error);
}

TEST_CASE("pure case reduces to the branch propagation") {
    ThermalSpec spec;
    spec.alpha0 = ComplexAmplitude(3.0, 0.0);
    spec.V = 1.0;
    const LoopSpec loop = LoopSpec::dissipative_two_leg(1.0);
    ModelParams p;
    p.eta = 0.5;
    p.gamma = 1.0;
    p.dt = 1e-3;

    const LambdaResult r = lambda_integral(spec, loop, p, GaussHermiteMethod{16});
    const BranchState s = propagate(BranchState::plus_coherent(spec.alpha0),
                                    two_leg_schedule(1.0, p.gamma), p);
    CHECK(std::abs(r.lambda - std::exp(std::conj(s.log_coherence))) < 1e-12);
    CHECK(r.theta_tilde == doctest::Approx(s.theta()).epsilon(1e-10));
    CHECK(r.visibility ==
          doctest::Approx(std::exp(-s.gamma_damp())).epsilon(1e-10));

    ThermalSpec centered;
    centered.V = 1.0;
    const LambdaResult o = lambda_integral(centered, loop, p, GaussHermiteMethod{16});
    CHECK(o.theta_tilde == doctest::Approx(0.0));
}

TEST_CASE("lambda_integral is continuous across the pure-state boundary") {
    ThermalSpec spec;
    spec.alpha0 = ComplexAmplitude(1.0, 0.0);
    const LoopSpec loop = LoopSpec::dissipative_two_leg(1.0);
    ModelParams p = fig2_params();

    spec.V = 1.0;
    const LambdaResult pure = lambda_integral(spec, loop, p, GaussHermiteMethod{16});
    spec.V = 1.0 + 1e-3;
    const LambdaResult near = lambda_integral(spec, loop, p, GaussHermiteMethod{16});
    CHECK(std::abs(pure.lambda - near.lambda) < 1e-5);
}

TEST_CASE("Gauss-Hermite estimate converges at the working parameters") {
    ThermalSpec spec;
    spec.alpha0 = ComplexAmplitude(50.0, 0.0);
    spec.V = 9.0;
    const LoopSpec loop = LoopSpec::dissipative_two_leg(20.0);
    ModelParams p = fig2_params();

    const LambdaResult a = lambda_integral(spec, loop, p, GaussHermiteMethod{40});
    const LambdaResult b = lambda_integral(spec, loop, p, GaussHermiteMethod{80});
    CHECK(std::abs(a.lambda - b.lambda) < 1e-8);
}

TEST_CASE("Monte Carlo is seed-reproducible and agrees with quadrature") {
    ThermalSpec spec;
    spec.alpha0 = ComplexAmplitude(5.0, 0.0);
    spec.V = 5.0;
    const LoopSpec loop = LoopSpec::dissipative_two_leg(1.0);
    ModelParams p;
    p.eta = 0.5;
    p.gamma = 1.0;
    p.dt = 1e-3;

    const LambdaEstimate m1 =
        lambda_integral_estimate(spec, loop, p, MonteCarloMethod{20000, 99});
    const LambdaEstimate m2 =
        lambda_integral_estimate(spec, loop, p, MonteCarloMethod{20000, 99});
    CHECK(m1.value.lambda == m2.value.lambda);
    CHECK(m1.se_re == m2.se_re);
    CHECK(m1.se_re > 0.0);
    CHECK(m1.se_im > 0.0);

    const LambdaResult gh = lambda_integral(spec, loop, p, GaussHermiteMethod{32});
    CHECK(std::abs(gh.lambda.real() - m1.value.lambda.real()) <
          3.0 * m1.se_re);
    CHECK(std::abs(gh.lambda.imag() - m1.value.lambda.imag()) <
          3.0 * m1.se_im);
}

TEST_CASE("visibility is bounded by the damping prefactor") {
    const LoopSpec loop = LoopSpec::dissipative_two_leg(1.0);
    ModelParams p;
    p.eta = 0.5;
    p.gamma = 1.0;
    p.dt = 1e-3;
    const double v =
        std::exp(-propagate(BranchState::plus_coherent(0.0),
                            two_leg_schedule(1.0, p.gamma), p)
                      .gamma_damp());

    for (double V : {1.0, 4.0, 25.0}) {
        ThermalSpec spec;
        spec.alpha0 = ComplexAmplitude(2.0, 0.0);
        spec.V = V;
        const LambdaResult r = lambda_integral(spec, loop, p, GaussHermiteMethod{24});
        CHECK(r.visibility <= v + 1e-12);
        CHECK(r.visibility >= 0.0);
    }
}

TEST_CASE("readout probabilities from Lambda") {
    LambdaResult unit;
    unit.lambda = ComplexAmplitude(1.0, 0.0);
    unit.theta_tilde = 0.0;
    unit.visibility = 1.0;
    QubitReadout r = thermal_readout(unit);
    CHECK(r.p_plus == doctest::Approx(1.0));
    CHECK(r.p_minus == doctest::Approx(0.0));

    LambdaResult dead;
    dead.lambda = ComplexAmplitude(0.0, 0.0);
    dead.theta_tilde = 0.0;
    dead.visibility = 0.0;
    r = thermal_readout(dead);
    CHECK(r.p_plus == doctest::Approx(0.5));
    CHECK(r.p_minus == doctest::Approx(0.5));

    const double v = 0.8;
    LambdaResult flipped;
    flipped.lambda = ComplexAmplitude(-v, 0.0);
    flipped.theta_tilde = M_PI;
    flipped.visibility = v;
    r = thermal_readout(flipped);
    CHECK(r.p_plus == doctest::Approx(0.5 * (1.0 - v)));
    CHECK(r.p_minus == doctest::Approx(0.5 * (1.0 + v)));
    CHECK(r.p_plus + r.p_minus == 1.0);
}

TEST_CASE("larger variance empties p_plus into p_minus at alpha0 = 0") {
    const LoopSpec loop = LoopSpec::dissipative_two_leg(20.0);
    ModelParams p = fig2_params();

    double prev_plus = 2.0, prev_minus = -1.0;
    for (double V : {1.0, 5.0, 10.0}) {
        ThermalSpec spec;
        spec.V = V;
        const QubitReadout r =
            thermal_readout(lambda_integral(spec, loop, p, GaussHermiteMethod{16}));
        CHECK(r.p_plus < prev_plus);
        CHECK(r.p_minus > prev_minus);
        prev_plus = r.p_plus;
        prev_minus = r.p_minus;
    }
}

TEST_CASE("phase averaging at alpha0 = 0 acts purely on the visibility") {
    // theta(alpha) is linear in Re(alpha), so the centered Gaussian average
    // of e^{i theta} stays real positive: the probability shift with V comes
    // entirely from |Lambda| shrinking, not from a rotated theta_tilde.
    const LoopSpec loop = LoopSpec::dissipative_two_leg(20.0);
    ModelParams p = fig2_params();

    ThermalSpec spec;
    spec.V = 30.0;
    const LambdaResult r = lambda_integral(spec, loop, p, GaussHermiteMethod{32});
    CHECK(std::abs(r.theta_tilde) < 1e-10);
    CHECK(r.lambda.real() > 0.0);

    spec.V = 1.0;
    const LambdaResult pure = lambda_integral(spec, loop, p, GaussHermiteMethod{32});
    CHECK(r.visibility < pure.visibility);
}

TEST_CASE("unitary square loop ignores the thermal spread entirely") {
    ModelParams p;
    p.eta = 1.0;
    p.gamma = 0.0;
    p.dt = 1e-3;
    const double T = 0.5;

    ThermalSpec hot;
    hot.alpha0 = ComplexAmplitude(3.0, 0.0);
    hot.V = 50.0;
    ThermalSpec cold;   // V = 1, alpha0 = 0

    const QubitReadout a = unitary_thermal_phase(hot, T, p);
    const QubitReadout b = unitary_thermal_phase(cold, T, p);
    CHECK(std::abs(a.theta - b.theta) < 1e-12);
    CHECK(std::abs(a.theta - p.eta * p.eta * T * T) < 1e-12);
    CHECK(a.gamma_damp == doctest::Approx(0.0));
    CHECK(std::abs(a.p_plus - b.p_plus) < 1e-12);

    const QubitReadout still = unitary_thermal_phase(hot, 0.0, p);
    CHECK(still.p_plus == doctest::Approx(1.0));
    CHECK(still.theta == doctest::Approx(0.0));

    ModelParams damped = p;
    damped.gamma = 0.5;
    CHECK_THROWS_AS(unitary_thermal_phase(hot, T, damped), invariant_error);
}
