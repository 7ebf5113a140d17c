#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace phasekick {

// Nodes and weights for integral f(x) e^{-x^2} dx = sum w_i f(x_i),
// computed by the Golub-Welsch eigenvalue method. Nodes ascend.
struct GaussHermiteRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};

GaussHermiteRule gauss_hermite(int n);

// Fixed-shape pairwise (tree) reduction: deterministic for a given input
// order and accurate to ~eps*log2(n).
double pairwise_sum(const std::vector<double>& v);
std::complex<double> pairwise_sum(const std::vector<std::complex<double>>& v);

}  // namespace phasekick
