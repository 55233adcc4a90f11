// kernels.hpp
// Squared-exponential covariance function and its spectral density.

#pragma once

#include <cmath>

#include "qhsq/errors.hpp"

namespace qhsq {

/// Hyperparameters of the squared-exponential kernel plus the observation
/// noise standard deviation sigma.
struct KernelSpec {
    double sigma_f = 1.0;
    double ell = 1.0;
    double sigma = 0.05;

    void validate() const {
        if (!(sigma_f > 0.0)) throw ConfigError("KernelSpec: sigma_f must be > 0");
        if (!(ell > 0.0)) throw ConfigError("KernelSpec: ell must be > 0");
        if (!(sigma >= 0.0)) throw ConfigError("KernelSpec: sigma must be >= 0");
    }
};

/// k(x, x') = sigma_f^2 exp(-(x-x')^2 / (2 ell^2))
inline double se_kernel(double x, double x2, const KernelSpec& spec) {
    const double d = x - x2;
    return spec.sigma_f * spec.sigma_f * std::exp(-d * d / (2.0 * spec.ell * spec.ell));
}

/// Spectral density of the SE kernel: S(w) = sigma_f^2 sqrt(2 pi) ell exp(-ell^2 w^2 / 2).
inline double spectral_density(double omega, const KernelSpec& spec) {
    constexpr double sqrt_2pi = 2.5066282746310002;
    return spec.sigma_f * spec.sigma_f * sqrt_2pi * spec.ell *
           std::exp(-spec.ell * spec.ell * omega * omega / 2.0);
}

} // namespace qhsq
