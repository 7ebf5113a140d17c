#include "phasekick/quadrature.hpp"

#include <cmath>
#include <cstddef>

#include <Eigen/Eigenvalues>

#include "phasekick/errors.hpp"

namespace phasekick {

namespace {

template <typename T>
T pairwise_impl(const T* v, std::size_t n) {
    if (n <= 8) {
        T s{};
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_impl(v, half) + pairwise_impl(v + half, n - half);
}

}  // namespace

GaussHermiteRule gauss_hermite(int n) {
    if (n < 2) {
        throw invariant_error("gauss_hermite: need at least 2 nodes");
    }
    // Jacobi matrix of the (physicists') Hermite recurrence; eigenvalues are
    // the nodes and sqrt(pi) * (first eigenvector component)^2 the weights.
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = std::sqrt(0.5 * k);
        jac(k, k - 1) = b;
        jac(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    GaussHermiteRule rule;
    rule.nodes = es.eigenvalues();
    rule.weights =
        std::sqrt(M_PI) * es.eigenvectors().row(0).transpose().array().square();
    return rule;
}

double pairwise_sum(const std::vector<double>& v) {
    return pairwise_impl(v.data(), v.size());
}

std::complex<double> pairwise_sum(const std::vector<std::complex<double>>& v) {
    return pairwise_impl(v.data(), v.size());
}

}  // namespace phasekick
