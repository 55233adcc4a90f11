#include "qhsq/gates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qhsq::sim {

namespace {

constexpr cdouble kI{0.0, 1.0};

std::uint64_t control_mask(const StateVector& s, const std::vector<int>& controls) {
    std::uint64_t m = 0;
    for (int c : controls) {
        if (c < 0 || c >= s.num_qubits()) throw ConfigError("gate: control qubit out of range");
        m |= s.qubit_mask(c);
    }
    return m;
}

void check_disjoint(const std::vector<int>& targets, const std::vector<int>& controls) {
    for (int t : targets) {
        if (std::count(targets.begin(), targets.end(), t) > 1) {
            throw ConfigError("gate: duplicate target qubit");
        }
        for (int c : controls) {
            if (t == c) throw ConfigError("gate: target and control qubits overlap");
        }
    }
}

} // namespace

Eigen::Matrix2cd pauli_x() {
    Eigen::Matrix2cd m;
    m << 0, 1, 1, 0;
    return m;
}

Eigen::Matrix2cd pauli_y() {
    Eigen::Matrix2cd m;
    m << 0, -kI, kI, 0;
    return m;
}

Eigen::Matrix2cd pauli_z() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, -1;
    return m;
}

Eigen::Matrix2cd hadamard() {
    Eigen::Matrix2cd m;
    const double s = 1.0 / std::numbers::sqrt2;
    m << s, s, s, -s;
    return m;
}

Eigen::Matrix2cd rx(double theta) {
    Eigen::Matrix2cd m;
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    m << c, -kI * s, -kI * s, c;
    return m;
}

Eigen::Matrix2cd ry(double theta) {
    Eigen::Matrix2cd m;
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    m << c, -s, s, c;
    return m;
}

Eigen::Matrix2cd rz(double theta) {
    Eigen::Matrix2cd m;
    m << std::exp(-kI * (theta / 2)), 0, 0, std::exp(kI * (theta / 2));
    return m;
}

Eigen::Matrix2cd u_gate(double theta, double phi, double lambda) {
    Eigen::Matrix2cd m;
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    m << c, -std::exp(kI * lambda) * s, std::exp(kI * phi) * s, std::exp(kI * (phi + lambda)) * c;
    return m;
}

Eigen::Matrix2cd u_gate_decomposed(double theta, double phi, double lambda) {
    const double hp = std::numbers::pi / 2;
    return rz(phi) * rx(-hp) * rz(theta) * rx(hp) * rz(lambda);
}

bool is_unitary(const Eigen::MatrixXcd& u, double tol) {
    if (u.rows() != u.cols()) return false;
    return (u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

void apply_1q(StateVector& state, int qubit, const Eigen::Matrix2cd& u,
              const std::vector<int>& controls) {
    if (qubit < 0 || qubit >= state.num_qubits()) throw ConfigError("gate: qubit out of range");
    check_disjoint({qubit}, controls);
    const std::uint64_t cmask = control_mask(state, controls);
    const std::uint64_t step = state.qubit_mask(qubit);
    const std::uint64_t dim = state.dim();
    auto* a = state.amplitudes().data();
    const cdouble u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);

    const std::int64_t nblocks = static_cast<std::int64_t>(dim / (2 * step));
#pragma omp parallel for schedule(static) if (dim >= (1u << 16))
    for (std::int64_t blk = 0; blk < nblocks; ++blk) {
        const std::uint64_t base = static_cast<std::uint64_t>(blk) * 2 * step;
        for (std::uint64_t off = 0; off < step; ++off) {
            const std::uint64_t i0 = base + off;
            if ((i0 & cmask) != cmask) continue;
            const cdouble a0 = a[i0], a1 = a[i0 + step];
            a[i0] = u00 * a0 + u01 * a1;
            a[i0 + step] = u10 * a0 + u11 * a1;
        }
    }
}

void apply_unitary(StateVector& state, const std::vector<int>& targets, const Eigen::MatrixXcd& u,
                   const std::vector<int>& controls) {
    const int k = static_cast<int>(targets.size());
    if (k == 0) throw ConfigError("gate: no target qubits");
    if (u.rows() != (Eigen::Index{1} << k) || u.cols() != u.rows()) {
        throw ConfigError("gate: matrix size does not match target count");
    }
    if (!is_unitary(u)) throw ConfigError("gate: attached matrix is not unitary");
    check_disjoint(targets, controls);
    if (k == 1) {
        apply_1q(state, targets[0], u, controls);
        return;
    }

    const std::uint64_t cmask = control_mask(state, controls);
    std::uint64_t tmask = 0;
    for (int t : targets) {
        if (t < 0 || t >= state.num_qubits()) throw ConfigError("gate: target qubit out of range");
        tmask |= state.qubit_mask(t);
    }
    // scatter[v]: index bits for matrix row v (targets MSB-first)
    const std::uint64_t sub = std::uint64_t{1} << k;
    std::vector<std::uint64_t> scatter(sub, 0);
    for (std::uint64_t v = 0; v < sub; ++v) {
        for (int j = 0; j < k; ++j) {
            if ((v >> (k - 1 - j)) & 1) scatter[v] |= state.qubit_mask(targets[static_cast<std::size_t>(j)]);
        }
    }

    const std::uint64_t dim = state.dim();
    auto* a = state.amplitudes().data();
#pragma omp parallel if (dim >= (1u << 16))
    {
        std::vector<cdouble> buf(sub), out(sub);
#pragma omp for schedule(static)
        for (std::int64_t ii = 0; ii < static_cast<std::int64_t>(dim); ++ii) {
            const std::uint64_t i = static_cast<std::uint64_t>(ii);
            if ((i & tmask) != 0 || (i & cmask) != cmask) continue;
            for (std::uint64_t v = 0; v < sub; ++v) buf[v] = a[i | scatter[v]];
            for (std::uint64_t r = 0; r < sub; ++r) {
                cdouble acc{0.0, 0.0};
                for (std::uint64_t c = 0; c < sub; ++c) acc += u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * buf[c];
                out[r] = acc;
            }
            for (std::uint64_t v = 0; v < sub; ++v) a[i | scatter[v]] = out[v];
        }
    }
}

void apply_register_unitary(StateVector& state, const std::string& reg, const Eigen::MatrixXcd& u,
                            const std::vector<int>& controls) {
    const int off = state.register_offset(reg);
    const int w = state.register_width(reg);
    std::vector<int> targets(static_cast<std::size_t>(w));
    for (int i = 0; i < w; ++i) targets[static_cast<std::size_t>(i)] = off + i;
    apply_unitary(state, targets, u, controls);
}

void apply_swap(StateVector& state, int q1, int q2, const std::vector<int>& controls) {
    if (q1 == q2) throw ConfigError("gate: swap targets overlap");
    check_disjoint({q1, q2}, controls);
    const std::uint64_t m1 = state.qubit_mask(q1);
    const std::uint64_t m2 = state.qubit_mask(q2);
    const std::uint64_t cmask = control_mask(state, controls);
    const std::uint64_t dim = state.dim();
    auto* a = state.amplitudes().data();
#pragma omp parallel for schedule(static) if (dim >= (1u << 16))
    for (std::int64_t ii = 0; ii < static_cast<std::int64_t>(dim); ++ii) {
        const std::uint64_t i = static_cast<std::uint64_t>(ii);
        if ((i & m1) == 0 || (i & m2) != 0 || (i & cmask) != cmask) continue;
        std::swap(a[i], a[(i ^ m1) | m2]);
    }
}

void apply_phase(StateVector& state, std::uint64_t cond_mask, cdouble phase) {
    const std::uint64_t dim = state.dim();
    auto* a = state.amplitudes().data();
#pragma omp parallel for schedule(static) if (dim >= (1u << 16))
    for (std::int64_t ii = 0; ii < static_cast<std::int64_t>(dim); ++ii) {
        const std::uint64_t i = static_cast<std::uint64_t>(ii);
        if ((i & cond_mask) == cond_mask) a[i] *= phase;
    }
}

void apply_gate(StateVector& state, const GateOp& g) {
    using Kind = GateOp::Kind;
    switch (g.kind) {
        case Kind::X: apply_1q(state, g.targets.at(0), pauli_x(), g.controls); return;
        case Kind::Y: apply_1q(state, g.targets.at(0), pauli_y(), g.controls); return;
        case Kind::Z: apply_1q(state, g.targets.at(0), pauli_z(), g.controls); return;
        case Kind::H: apply_1q(state, g.targets.at(0), hadamard(), g.controls); return;
        case Kind::Rx: apply_1q(state, g.targets.at(0), rx(g.params.at(0)), g.controls); return;
        case Kind::Ry: apply_1q(state, g.targets.at(0), ry(g.params.at(0)), g.controls); return;
        case Kind::Rz: apply_1q(state, g.targets.at(0), rz(g.params.at(0)), g.controls); return;
        case Kind::U:
            apply_1q(state, g.targets.at(0),
                     u_gate(g.params.at(0), g.params.at(1), g.params.at(2)), g.controls);
            return;
        case Kind::Cnot: apply_1q(state, g.targets.at(0), pauli_x(), g.controls); return;
        case Kind::ControlledU:
        case Kind::Unitary: apply_unitary(state, g.targets, g.matrix, g.controls); return;
        case Kind::Swap: apply_swap(state, g.targets.at(0), g.targets.at(1), g.controls); return;
        case Kind::ControlledSwap:
            apply_swap(state, g.targets.at(0), g.targets.at(1), g.controls);
            return;
    }
    throw ConfigError("apply_gate: unknown gate kind");
}

} // namespace qhsq::sim
