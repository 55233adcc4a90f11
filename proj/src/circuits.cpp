#include "qhsq/circuits.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace qhsq::sim {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

void qft(StateVector& state, const std::string& reg) {
    const int off = state.register_offset(reg);
    const int w = state.register_width(reg);
    for (int i = 0; i < w; ++i) {
        apply_1q(state, off + i, hadamard());
        for (int k = 2; k <= w - i; ++k) {
            // controlled R_k: phase e^{2 pi i / 2^k} when control and target are 1
            const std::uint64_t cond =
                state.qubit_mask(off + i) | state.qubit_mask(off + i + k - 1);
            apply_phase(state, cond, std::polar(1.0, kTwoPi / static_cast<double>(1ull << k)));
        }
    }
    for (int i = 0; i < w / 2; ++i) apply_swap(state, off + i, off + w - 1 - i);
}

void inverse_qft(StateVector& state, const std::string& reg) {
    const int off = state.register_offset(reg);
    const int w = state.register_width(reg);
    for (int i = 0; i < w / 2; ++i) apply_swap(state, off + i, off + w - 1 - i);
    for (int i = w - 1; i >= 0; --i) {
        for (int k = w - i; k >= 2; --k) {
            const std::uint64_t cond =
                state.qubit_mask(off + i) | state.qubit_mask(off + i + k - 1);
            apply_phase(state, cond, std::polar(1.0, -kTwoPi / static_cast<double>(1ull << k)));
        }
        apply_1q(state, off + i, hadamard());
    }
}

void qpe(StateVector& state, const std::string& eigen_reg, const std::string& target_reg,
         const PowerUnitary& powers) {
    const int off = state.register_offset(eigen_reg);
    const int tau = state.register_width(eigen_reg);
    if (tau < 1) throw ConfigError("qpe: eigenvalue register must have at least one qubit");
    const int toff = state.register_offset(target_reg);
    const int tw = state.register_width(target_reg);
    std::vector<int> targets(static_cast<std::size_t>(tw));
    for (int i = 0; i < tw; ++i) targets[static_cast<std::size_t>(i)] = toff + i;

    for (int i = 0; i < tau; ++i) apply_1q(state, off + i, hadamard());
    // eigen-register qubit of significance 2^k controls U^(2^k)
    for (int k = 0; k < tau; ++k) {
        apply_unitary(state, targets, powers(k), {off + tau - 1 - k});
    }
    inverse_qft(state, eigen_reg);
}

std::uint64_t binomial_draw(std::uint64_t shots, double p, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::binomial_distribution<std::uint64_t> dist(shots, std::clamp(p, 0.0, 1.0));
    return dist(gen);
}

namespace {

TestOutcome finish(double p0, std::uint64_t shots, std::uint64_t seed) {
    TestOutcome out;
    out.p0 = p0;
    out.estimate = 2.0 * p0 - 1.0;
    out.shots = shots;
    out.seed = seed;
    if (shots > 0) {
        out.p0_sampled = static_cast<double>(binomial_draw(shots, p0, seed)) /
                         static_cast<double>(shots);
    }
    return out;
}

} // namespace

TestOutcome hadamard_test(const StateVector& psi1, const StateVector& psi2,
                          std::uint64_t shots, std::uint64_t seed) {
    if (psi1.dim() != psi2.dim()) throw ConfigError("hadamard_test: dimension mismatch");
    // (|0>|psi1> + |1>|psi2>)/sqrt(2), H on the ancilla; p0 falls out in closed
    // form as the norm of (psi1 + psi2)/2.
    const auto& a1 = psi1.amplitudes();
    const auto& a2 = psi2.amplitudes();
    double p0 = 0.0;
    for (std::uint64_t i = 0; i < psi1.dim(); ++i) {
        p0 += std::norm(0.5 * (a1[i] + a2[i]));
    }
    return finish(p0, shots, seed);
}

TestOutcome swap_test(const StateVector& psi1, const StateVector& psi2,
                      std::uint64_t shots, std::uint64_t seed) {
    if (psi1.dim() != psi2.dim()) throw ConfigError("swap_test: dimension mismatch");
    const int n = psi1.num_qubits();
    if (n + psi2.num_qubits() + 1 > StateVector::kMaxQubits) {
        throw ResourceLimitError("swap_test: combined state exceeds the simulator limit");
    }
    Eigen::VectorXcd v1(static_cast<Eigen::Index>(psi1.dim()));
    Eigen::VectorXcd v2(static_cast<Eigen::Index>(psi2.dim()));
    for (std::uint64_t i = 0; i < psi1.dim(); ++i) {
        v1[static_cast<Eigen::Index>(i)] = psi1.amplitudes()[i];
        v2[static_cast<Eigen::Index>(i)] = psi2.amplitudes()[i];
    }
    StateVector s = StateVector::compose({{Register{"anc", 1}, Eigen::Vector2cd(1.0, 0.0)},
                                          {Register{"s1", n}, v1},
                                          {Register{"s2", n}, v2}});
    apply_1q(s, 0, hadamard());
    for (int i = 0; i < n; ++i) apply_swap(s, 1 + i, 1 + n + i, {0});
    apply_1q(s, 0, hadamard());
    double p0 = 0.0;
    const auto& a = s.amplitudes();
    for (std::uint64_t i = 0; i < s.dim() / 2; ++i) p0 += std::norm(a[i]);
    return finish(p0, shots, seed);
}

} // namespace qhsq::sim
