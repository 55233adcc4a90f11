// quadrature.hpp
// Classical quadrature layer: full-rank Gaussian process quadrature and the
// low-rank Hilbert-space variant.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "qhsq/hilbert_basis.hpp"
#include "qhsq/kernels.hpp"

namespace qhsq {

/// Weight function mu(x) of the integral. Only the constant weight ships a
/// closed-form path; arbitrary weights fall back to numeric integration.
struct Weight {
    std::function<double(double)> fn = [](double) { return 1.0; };
    bool is_constant_one = true;
};

struct QuadratureProblem {
    Eigen::VectorXd points;       // evaluation inputs x_i
    Eigen::VectorXd observations; // y_i = f(x_i) + eps_i
    double domain_lo = 0.0;       // integration domain Omega = [lo, hi]
    double domain_hi = 0.0;
    Weight weight{};

    void validate() const;
};

struct QuadratureEstimate {
    double mean = 0.0;
    double variance = 0.0;
    std::string method;
    // provenance, filled where meaningful
    int rank = 0;
    double delta = 0.0;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    bool clamped = false; // variance clamped at zero (sampling noise)
};

/// Truncated kernel expansion sum_{j<=M} S(sqrt(lambda_j)) phi_j(x) phi_j(x2).
double kernel_approx(double x, double x2, const HilbertBasis& basis, const KernelSpec& spec);

/// Closed form of int_a^b k(x_i, x) dx for the SE kernel (constant weight).
double se_kernel_weight_integral(double xi, double a, double b, const KernelSpec& spec);

/// Closed form of the double integral of the SE kernel over [a,b]^2.
double se_kernel_double_integral(double a, double b, const KernelSpec& spec);

/// Full-rank Gaussian process quadrature.
QuadratureEstimate gpq_full(const QuadratureProblem& problem, const KernelSpec& spec);

/// Low-rank Hilbert-space quadrature (basis-function form).
QuadratureEstimate hsq(const QuadratureProblem& problem, const HilbertBasis& basis,
                       const KernelSpec& spec);

/// Posterior regression mean at x_star; support routine for the weighted
/// kernel-integral machinery.
double gpr_mean(const QuadratureProblem& problem, const KernelSpec& spec, double x_star);

} // namespace qhsq
