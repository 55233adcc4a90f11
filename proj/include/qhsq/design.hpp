// design.hpp
// Design matrices for the low-rank quadrature: Phi, the spectral weights
// Lambda_jj = S(sqrt(lambda_j)), X = Phi sqrt(Lambda), the weight-integrated
// vector X_mu, and the SVD form the quantum estimator consumes.

#pragma once

#include <Eigen/Dense>

#include "qhsq/quadrature.hpp"

namespace qhsq {

struct DesignMatrices {
    Eigen::MatrixXd Phi;         // N x M, Phi_ij = phi_j(x_i)
    Eigen::VectorXd lambda_diag; // M, S(sqrt(lambda_j))
    Eigen::MatrixXd X;           // N x M, Phi * sqrt(Lambda)
    Eigen::VectorXd X_mu;        // M, sqrt(Lambda) * Phi_mu
    Eigen::VectorXd Phi_mu;      // M, integral of phi_j against the weight
};

struct SvdForm {
    Eigen::MatrixXd U;              // N x R
    Eigen::MatrixXd V;              // M x R
    Eigen::VectorXd singular_values; // R, descending
    int rank = 0;
};

DesignMatrices build_design(const QuadratureProblem& problem, const HilbertBasis& basis,
                            const KernelSpec& spec);

/// Thin SVD with deterministic signs (largest-|entry| component of each right
/// singular vector made positive) and rank cut at 1e-12 * lambda_max.
SvdForm svd_of(const Eigen::MatrixXd& X);

/// Rank-R truncation of the SVD-form quadrature; R = rank reproduces hsq's
/// mean exactly, and its variance as well when X has full column rank.
QuadratureEstimate svd_quadrature(const DesignMatrices& design, const Eigen::VectorXd& y,
                                  const KernelSpec& spec, int R);

/// Same, reusing a precomputed SVD.
QuadratureEstimate svd_quadrature(const SvdForm& svd, const Eigen::VectorXd& X_mu,
                                  const Eigen::VectorXd& y, const KernelSpec& spec, int R);

} // namespace qhsq
