// circuits.hpp
// Circuit-level primitives: QFT in product form, phase estimation, and the
// Hadamard/SWAP inner-product tests.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "qhsq/gates.hpp"

namespace qhsq::sim {

/// QFT on a named register: |j> -> 2^{-w/2} sum_k exp(+2 pi i jk / 2^w) |k>,
/// built from Hadamards, controlled phase rotations and the final swap
/// reversal.
void qft(StateVector& state, const std::string& reg);
void inverse_qft(StateVector& state, const std::string& reg);

/// U^(2^k) family for the phase-estimation ladder; k = 0 .. tau-1.
using PowerUnitary = std::function<Eigen::MatrixXcd(int k)>;

/// Phase estimation: Hadamards on the eigen register, the controlled-U^(2^k)
/// ladder on the target register, inverse QFT. For U|phi> = e^{2 pi i phi}|phi>
/// with phi an exact tau-bit fraction l/2^tau, the eigen register ends in |l>.
void qpe(StateVector& state, const std::string& eigen_reg, const std::string& target_reg,
         const PowerUnitary& powers);

struct TestOutcome {
    double p0 = 0.0;       // exact ancilla-zero probability
    double estimate = 0.0; // 2 p0 - 1 (Re<psi1|psi2> resp. |<psi1|psi2>|^2)
    std::optional<double> p0_sampled; // present when shots > 0
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;

    double sampled_estimate() const { return 2.0 * p0_sampled.value_or(p0) - 1.0; }
};

/// Hadamard test on (|0>|psi1> + |1>|psi2>)/sqrt(2): 2 p0 - 1 = Re<psi1|psi2>.
TestOutcome hadamard_test(const StateVector& psi1, const StateVector& psi2,
                          std::uint64_t shots = 0, std::uint64_t seed = 0);

/// SWAP test: 2 p0 - 1 = |<psi1|psi2>|^2.
TestOutcome swap_test(const StateVector& psi1, const StateVector& psi2,
                      std::uint64_t shots = 0, std::uint64_t seed = 0);

/// Deterministic binomial draw used for shot-sampled test outcomes.
std::uint64_t binomial_draw(std::uint64_t shots, double p, std::uint64_t seed);

} // namespace qhsq::sim
