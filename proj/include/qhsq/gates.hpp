// gates.hpp
// Gate matrices, the GateOp description, and statevector gate application.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qhsq/state_vector.hpp"

namespace qhsq::sim {

Eigen::Matrix2cd pauli_x();
Eigen::Matrix2cd pauli_y();
Eigen::Matrix2cd pauli_z();
Eigen::Matrix2cd hadamard();
Eigen::Matrix2cd rx(double theta);
Eigen::Matrix2cd ry(double theta);
Eigen::Matrix2cd rz(double theta);

/// General single-qubit rotation U(theta, phi, lambda). Equals the
/// composition Rz(phi) Rx(-pi/2) Rz(theta) Rx(pi/2) Rz(lambda) up to a
/// global phase.
Eigen::Matrix2cd u_gate(double theta, double phi, double lambda);

/// The same gate assembled from the five-rotation decomposition (carries the
/// global phase of the composition).
Eigen::Matrix2cd u_gate_decomposed(double theta, double phi, double lambda);

struct GateOp {
    enum class Kind { X, Y, Z, H, Rx, Ry, Rz, U, Cnot, ControlledU, Swap, ControlledSwap, Unitary };
    Kind kind = Kind::X;
    std::vector<int> targets;  // global qubit indices; MSB-first for matrix kinds
    std::vector<int> controls;
    std::vector<double> params;
    Eigen::MatrixXcd matrix;   // used by U / ControlledU / Unitary

    static GateOp x(int q) { return {Kind::X, {q}, {}, {}, {}}; }
    static GateOp y(int q) { return {Kind::Y, {q}, {}, {}, {}}; }
    static GateOp z(int q) { return {Kind::Z, {q}, {}, {}, {}}; }
    static GateOp h(int q) { return {Kind::H, {q}, {}, {}, {}}; }
    static GateOp rx(int q, double t) { return {Kind::Rx, {q}, {}, {t}, {}}; }
    static GateOp ry(int q, double t) { return {Kind::Ry, {q}, {}, {t}, {}}; }
    static GateOp rz(int q, double t) { return {Kind::Rz, {q}, {}, {t}, {}}; }
    static GateOp u(int q, double theta, double phi, double lambda) {
        return {Kind::U, {q}, {}, {theta, phi, lambda}, {}};
    }
    static GateOp cnot(int control, int target) { return {Kind::Cnot, {target}, {control}, {}, {}}; }
    static GateOp controlled_u(std::vector<int> controls, std::vector<int> targets,
                               Eigen::MatrixXcd m) {
        return {Kind::ControlledU, std::move(targets), std::move(controls), {}, std::move(m)};
    }
    static GateOp swap(int q1, int q2) { return {Kind::Swap, {q1, q2}, {}, {}, {}}; }
    static GateOp controlled_swap(int control, int q1, int q2) {
        return {Kind::ControlledSwap, {q1, q2}, {control}, {}, {}};
    }
    static GateOp unitary(std::vector<int> targets, Eigen::MatrixXcd m) {
        return {Kind::Unitary, std::move(targets), {}, {}, std::move(m)};
    }
};

/// Applies the gate; validates index ranges, target/control disjointness and
/// (for attached matrices) unitarity to 1e-10.
void apply_gate(StateVector& state, const GateOp& gate);

// Lower-level building blocks used by the circuit layer.
void apply_1q(StateVector& state, int qubit, const Eigen::Matrix2cd& u,
              const std::vector<int>& controls = {});
void apply_unitary(StateVector& state, const std::vector<int>& targets, const Eigen::MatrixXcd& u,
                   const std::vector<int>& controls = {});
void apply_register_unitary(StateVector& state, const std::string& reg, const Eigen::MatrixXcd& u,
                            const std::vector<int>& controls = {});
void apply_swap(StateVector& state, int q1, int q2, const std::vector<int>& controls = {});
/// Multiplies amplitudes whose index has all bits of cond_mask set.
void apply_phase(StateVector& state, std::uint64_t cond_mask, cdouble phase);

bool is_unitary(const Eigen::MatrixXcd& u, double tol = 1e-10);

} // namespace qhsq::sim
