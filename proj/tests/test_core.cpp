#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <vector>

#include "phasekick/algebra.hpp"
#include "phasekick/quadrature.hpp"
#include "phasekick/rng.hpp"
#include "phasekick/types.hpp"

using namespace phasekick;

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();
const double kSqrtPi = std::sqrt(M_PI);
}  // namespace

TEST_CASE("require_finite rejects NaN and infinity") {
    CHECK_THROWS_AS(require_finite(kNan, "x"), invariant_error);
    CHECK_THROWS_AS(require_finite(kInf, "x"), invariant_error);
    CHECK_THROWS_AS(require_finite(-kInf, "x"), invariant_error);
    CHECK_THROWS_AS(require_finite(ComplexAmplitude(0.0, kNan), "z"),
                    invariant_error);
    CHECK_NOTHROW(require_finite(0.0, "x"));
    CHECK_NOTHROW(require_finite(ComplexAmplitude(1.0, -2.0), "z"));
}

TEST_CASE("ModelParams::validate enforces signs and the step bound") {
    ModelParams p;
    CHECK_NOTHROW(p.validate());

    ModelParams bad = p;
    bad.eta = -1.0;
    CHECK_THROWS_AS(bad.validate(), invariant_error);

    bad = p;
    bad.gamma = -0.5;
    CHECK_THROWS_AS(bad.validate(), invariant_error);

    bad = p;
    bad.dt = 0.0;
    CHECK_THROWS_AS(bad.validate(), invariant_error);

    bad = p;
    bad.gamma = 1.0;
    bad.dt = 1e-2;   // dt*gamma = 1e-2 > default bound 1e-3
    CHECK_THROWS_AS(bad.validate(), invariant_error);
    bad.step_bound = 0.1;
    CHECK_NOTHROW(bad.validate());
}

TEST_CASE("PhiSchedule::validate rejects empty and non-positive segments") {
    PhiSchedule s;
    CHECK_THROWS_AS(s.validate(), invariant_error);

    s.segments = {{1.0, 0.0}, {0.5, 1.0}};
    CHECK_NOTHROW(s.validate());
    CHECK(s.total_duration() == doctest::Approx(1.5));

    s.segments.push_back({0.0, 0.0});
    CHECK_THROWS_AS(s.validate(), invariant_error);
}

TEST_CASE("QubitReadout::from_phase reproduces the fringe formula") {
    const QubitReadout id = QubitReadout::from_phase(0.0, 0.0);
    CHECK(id.p_plus == doctest::Approx(1.0));
    CHECK(id.p_minus == doctest::Approx(0.0));

    const QubitReadout inv = QubitReadout::from_phase(M_PI, 0.0);
    CHECK(inv.p_plus == doctest::Approx(0.0));
    CHECK(inv.p_minus == doctest::Approx(1.0));

    const QubitReadout half = QubitReadout::from_phase(0.0, std::log(2.0));
    CHECK(half.p_plus == doctest::Approx(0.75));
    CHECK(half.p_minus == doctest::Approx(0.25));

    for (double theta : {0.0, 0.3, 2.0, -1.7, 9.4}) {
        for (double g : {0.0, 0.1, 2.5}) {
            const QubitReadout r = QubitReadout::from_phase(theta, g);
            CHECK(std::abs(r.p_plus + r.p_minus - 1.0) < 1e-12);
            CHECK(r.p_plus ==
                  doctest::Approx(0.5 * (1.0 + std::exp(-g) * std::cos(theta))));
        }
    }

    CHECK_THROWS_AS(QubitReadout::from_phase(0.0, -0.1), invariant_error);
}

TEST_CASE("coherent_overlap matches the closed form and its identities") {
    for (ComplexAmplitude l : {ComplexAmplitude(0.0, 0.0),
                               ComplexAmplitude(1.3, -0.4),
                               ComplexAmplitude(-2.0, 2.0)}) {
        CHECK(std::abs(coherent_overlap(l, l) - 1.0) < 1e-14);
    }

    CHECK(std::abs(coherent_overlap(1.0, 0.0) - std::exp(-0.5)) < 1e-12);
    CHECK(std::exp(-0.5) == doctest::Approx(0.606531).epsilon(1e-5));

    const ComplexAmplitude a(1.0, 1.0);
    const ComplexAmplitude b(1.0, -1.0);
    CHECK(std::abs(std::abs(coherent_overlap(a, b)) - std::exp(-2.0)) < 1e-13);

    for (ComplexAmplitude x : {ComplexAmplitude(0.3, 0.7),
                               ComplexAmplitude(-1.5, 0.2)}) {
        for (ComplexAmplitude y : {ComplexAmplitude(0.0, 0.0),
                                   ComplexAmplitude(2.0, -0.9)}) {
            CHECK(std::abs(coherent_overlap(x, y) -
                           std::conj(coherent_overlap(y, x))) < 1e-14);
            CHECK(std::abs(std::abs(coherent_overlap(x, y)) -
                           std::exp(-0.5 * std::norm(x - y))) < 1e-12);
            CHECK(std::abs(std::exp(log_coherent_overlap(x, y)) -
                           coherent_overlap(x, y)) < 1e-13);
        }
    }
}

TEST_CASE("log_coherent_overlap stays finite where the overlap underflows") {
    const ComplexAmplitude big(30.0, 0.0);
    const ComplexAmplitude z = log_coherent_overlap(big, -big);
    CHECK(std::isfinite(z.real()));
    CHECK(z.real() == doctest::Approx(-2.0 * 900.0));
}

TEST_CASE("displacement_phase evaluates Im(a*conj(b)) and is antisymmetric") {
    CHECK(displacement_phase({2.0, 0.5}, {2.0, 0.5}) == doctest::Approx(0.0));
    CHECK(displacement_phase({0.0, 1.0}, {1.0, 0.0}) == doctest::Approx(1.0));
    CHECK(displacement_phase({2.0, 1.0}, {1.0, -1.0}) == doctest::Approx(3.0));

    const ComplexAmplitude a(0.7, -1.2);
    const ComplexAmplitude b(-0.4, 0.9);
    CHECK(std::abs(displacement_phase(a, b) + displacement_phase(b, a)) <
          1e-15);
}

TEST_CASE("gauss_hermite integrates low moments exactly") {
    CHECK_THROWS_AS(gauss_hermite(1), invariant_error);
    CHECK_THROWS_AS(gauss_hermite(0), invariant_error);

    for (int n : {2, 8, 31, 64}) {
        const GaussHermiteRule rule = gauss_hermite(n);
        REQUIRE(rule.nodes.size() == n);
        REQUIRE(rule.weights.size() == n);

        for (int i = 1; i < n; ++i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
        for (int i = 0; i < n; ++i) {
            CHECK(rule.weights[i] > 0.0);
            CHECK(std::abs(rule.nodes[i] + rule.nodes[n - 1 - i]) < 1e-12);
        }

        double m0 = 0.0, m2 = 0.0, m6 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x = rule.nodes[i];
            m0 += rule.weights[i];
            m2 += rule.weights[i] * x * x;
            m6 += rule.weights[i] * std::pow(x, 6);
        }
        CHECK(std::abs(m0 - kSqrtPi) < 1e-13 * kSqrtPi);
        if (n >= 2) CHECK(std::abs(m2 - 0.5 * kSqrtPi) < 1e-12);
        if (n >= 4) CHECK(std::abs(m6 - 15.0 / 8.0 * kSqrtPi) < 1e-11);
    }
}

TEST_CASE("pairwise_sum agrees with sequential summation and is deterministic") {
    std::vector<double> v;
    double x = 0.1;
    for (int i = 0; i < 1000; ++i) {
        v.push_back(std::sin(x) / (1.0 + x));
        x += 0.013;
    }
    const double seq = std::accumulate(v.begin(), v.end(), 0.0);
    const double tree = pairwise_sum(v);
    CHECK(std::abs(tree - seq) < 1e-12 * std::abs(seq) + 1e-15);
    CHECK(pairwise_sum(v) == tree);

    CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
    CHECK(pairwise_sum(std::vector<double>{3.5}) == 3.5);

    std::vector<std::complex<double>> c;
    for (int i = 0; i < 100; ++i) {
        c.emplace_back(std::cos(0.1 * i), std::sin(0.1 * i));
    }
    std::complex<double> cseq{0.0, 0.0};
    for (const auto& z : c) cseq += z;
    CHECK(std::abs(pairwise_sum(c) - cseq) < 1e-12);
}

TEST_CASE("NormalSampler streams are seed-reproducible with sane moments") {
    NormalSampler a(42), b(42), c(43);
    bool all_equal = true;
    bool any_differ = false;
    for (int i = 0; i < 64; ++i) {
        const double xa = a();
        all_equal = all_equal && (xa == b());
        any_differ = any_differ || (xa != c());
    }
    CHECK(all_equal);
    CHECK(any_differ);

    NormalSampler s(7);
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = s();
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(var - 1.0) < 0.02);
}
