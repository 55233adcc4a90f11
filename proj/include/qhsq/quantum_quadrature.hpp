// quantum_quadrature.hpp
// The quantum low-rank quadrature: phase estimation over the data density
// matrix, eigenvalue-conditioned ancilla rotations, and the Hadamard/SWAP
// test read-outs with their denormalization back to physical units.

#pragma once

#include <cstdint>

#include "qhsq/circuits.hpp"
#include "qhsq/encoding.hpp"
#include "qhsq/measure.hpp"

namespace qhsq {

struct QpeConfig {
    int tau = 0;                // eigenvalue-register width
    double delta = 0.0;         // phase scaling, t = 2 pi / delta
    double c1 = 0.0;            // mean-rotation constant
    double c2 = 0.0;            // variance-rotation constant
    double sigma_tilde_sq = 0.0; // sigma^2 / c_X^2
};

/// delta = lambda_max~^2 + epsilon; c1 and c2 are 0.999 times the minimum of
/// the rotation denominators over the represented eigenvalue bins (each
/// lambda~^2 quantized to its floor bin of width delta/2^tau), which keeps the
/// arcsine arguments strictly in-domain under tau-bit rounding.
QpeConfig choose_constants(const EncodingResult& enc, double sigma, int tau, double epsilon);

enum class AngleRule { Mean, Variance };

/// The filter value sin(theta(l)/2) applied at eigenvalue-register bin l.
/// Bin 0 rotates by zero; bins whose ratio exceeds one (below the least
/// retained eigenvalue, populated only by phase-estimation leakage) are
/// clamped to a full flip.
double rotation_sine(AngleRule rule, std::uint64_t bin, const QpeConfig& cfg);

/// Builds psi_1 over registers (a, tau, m, n): phase estimation on the
/// m-register density matrix, the conditioned ancilla rotation, and the
/// uncompute of the phase-estimation block.
sim::StateVector prepare_psi1(const EncodingResult& enc, const QpeConfig& cfg, AngleRule rule);

/// psi_2 = |1>_a |0>_tau |X_mu^>_m |y^>_n with recorded norms.
struct Psi2 {
    sim::StateVector state;
    double norm_x_mu = 0.0;
    double norm_y = 0.0;
};
Psi2 prepare_psi2(const DesignMatrices& design, const Eigen::VectorXd& y, int tau);

/// Mean read-out: Q = (2 p0 - 1) |X_mu| |y| / (c1 c_X).
QuadratureEstimate estimate_mean(const DesignMatrices& design, const Eigen::VectorXd& y,
                                 const EncodingResult& enc, const QpeConfig& cfg,
                                 std::uint64_t shots, std::uint64_t seed);

/// Variance read-out from the SWAP-test circuit:
/// V = sigma^2 (|X_mu|^2 / c_X^2) (sum_r 1/(lambda~_r^2 + sigma~^2) - 2 p11 / c2^2),
/// clamped at zero if sampling noise drives it negative.
QuadratureEstimate estimate_variance(const DesignMatrices& design, const EncodingResult& enc,
                                     const QpeConfig& cfg, std::uint64_t shots,
                                     std::uint64_t seed);

} // namespace qhsq
