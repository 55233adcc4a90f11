#include <doctest.h>

#include <numbers>
#include <random>
#include <unsupported/Eigen/KroneckerProduct>

#include "qhsq/gates.hpp"

using namespace qhsq;
using namespace qhsq::sim;

namespace {

StateVector basis_state(int n, std::uint64_t index) {
    StateVector s({{"q", n}});
    s.amplitudes()[0] = 0.0;
    s.amplitudes()[index] = 1.0;
    return s;
}

Eigen::VectorXcd as_vector(const StateVector& s) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(s.dim()));
    for (std::uint64_t i = 0; i < s.dim(); ++i) v[static_cast<Eigen::Index>(i)] = s.amplitudes()[i];
    return v;
}

StateVector random_state(int n, std::mt19937_64& gen) {
    std::normal_distribution<double> nd;
    Eigen::VectorXcd v(Eigen::Index{1} << n);
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = cdouble{nd(gen), nd(gen)};
    return amplitude_encode(v, {{"q", n}}).state;
}

} // namespace

TEST_SUITE("state_gates") {

TEST_CASE("register layout and index conventions") {
    StateVector s({{"a", 1}, {"t", 2}, {"m", 1}});
    CHECK(s.num_qubits() == 4);
    CHECK(s.register_offset("a") == 0);
    CHECK(s.register_offset("t") == 1);
    CHECK(s.register_offset("m") == 3);
    // index 0b1011: a=1, t=01, m=1
    CHECK(s.register_value(0b1011, "a") == 1);
    CHECK(s.register_value(0b1011, "t") == 1);
    CHECK(s.register_value(0b1011, "m") == 1);
    CHECK_THROWS_AS(s.register_offset("zz"), ConfigError);
    CHECK_THROWS_AS(StateVector({{"a", 1}, {"a", 2}}), ConfigError);
    CHECK_THROWS_AS(StateVector({{"a", 30}}), ResourceLimitError);
}

TEST_CASE("pauli X flips |0> to |1>") {
    StateVector s = basis_state(1, 0);
    apply_gate(s, GateOp::x(0));
    CHECK(std::abs(s.amplitudes()[1] - cdouble{1.0, 0.0}) < 1e-15);
}

TEST_CASE("hadamard creates the balanced superposition") {
    StateVector s = basis_state(1, 0);
    apply_gate(s, GateOp::h(0));
    const double r = 1.0 / std::numbers::sqrt2;
    CHECK(std::abs(s.amplitudes()[0] - cdouble{r, 0.0}) < 1e-15);
    CHECK(std::abs(s.amplitudes()[1] - cdouble{r, 0.0}) < 1e-15);
}

TEST_CASE("CNOT maps |10> to |11>") {
    StateVector s = basis_state(2, 0b10);
    apply_gate(s, GateOp::cnot(0, 1));
    CHECK(std::abs(s.amplitudes()[0b11] - cdouble{1.0, 0.0}) < 1e-15);
    // and the full truth table
    for (std::uint64_t in : {0b00ull, 0b01ull, 0b10ull, 0b11ull}) {
        StateVector t = basis_state(2, in);
        apply_gate(t, GateOp::cnot(0, 1));
        const std::uint64_t want = (in & 0b10) ? in ^ 0b01 : in;
        CHECK(std::abs(t.amplitudes()[want] - cdouble{1.0, 0.0}) < 1e-15);
    }
}

TEST_CASE("controlled unitary equals its dense embedding") {
    std::mt19937_64 gen(3);
    StateVector s = random_state(3, gen);
    const Eigen::VectorXcd before = as_vector(s);
    const Eigen::Matrix2cd u = u_gate(0.7, 0.3, -1.1);
    apply_gate(s, GateOp::controlled_u({0}, {2}, u));
    // dense oracle: |0><0| (x) I4 + |1><1| (x) I2 (x) U
    Eigen::MatrixXcd p0 = Eigen::MatrixXcd::Zero(2, 2), p1 = Eigen::MatrixXcd::Zero(2, 2);
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    const Eigen::MatrixXcd eye2 = Eigen::MatrixXcd::Identity(2, 2);
    const Eigen::MatrixXcd big =
        Eigen::kroneckerProduct(p0, Eigen::MatrixXcd(Eigen::kroneckerProduct(eye2, eye2))) +
        Eigen::kroneckerProduct(p1, Eigen::MatrixXcd(Eigen::kroneckerProduct(eye2, u)));
    CHECK((as_vector(s) - big * before).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("two-qubit register unitary equals its dense embedding") {
    std::mt19937_64 gen(5);
    StateVector s({{"hi", 1}, {"lo", 2}});
    s = StateVector::compose({{Register{"hi", 1}, Eigen::Vector2cd(0.6, 0.8)},
                              {Register{"lo", 2}, Eigen::Vector4cd(0.5, 0.5, 0.5, 0.5)}});
    const Eigen::VectorXcd before = as_vector(s);
    Eigen::MatrixXcd u(4, 4);
    // permutation unitary on the low register
    u.setZero();
    u(0, 1) = u(1, 2) = u(2, 3) = u(3, 0) = 1.0;
    apply_register_unitary(s, "lo", u);
    const Eigen::MatrixXcd big =
        Eigen::kroneckerProduct(Eigen::MatrixXcd::Identity(2, 2), u);
    CHECK((as_vector(s) - big * before).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("swap and controlled swap") {
    StateVector s = basis_state(2, 0b10);
    apply_gate(s, GateOp::swap(0, 1));
    CHECK(std::abs(s.amplitudes()[0b01] - cdouble{1.0, 0.0}) < 1e-15);

    StateVector c = basis_state(3, 0b010); // control 0 clear: no swap
    apply_gate(c, GateOp::controlled_swap(0, 1, 2));
    CHECK(std::abs(c.amplitudes()[0b010] - cdouble{1.0, 0.0}) < 1e-15);
    StateVector c2 = basis_state(3, 0b110);
    apply_gate(c2, GateOp::controlled_swap(0, 1, 2));
    CHECK(std::abs(c2.amplitudes()[0b101] - cdouble{1.0, 0.0}) < 1e-15);
}

TEST_CASE("norm is preserved through a long random circuit") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    StateVector s = random_state(6, gen);
    double prev = s.norm_sq();
    CHECK(std::abs(prev - 1.0) < 1e-12);
    for (int step = 0; step < 1000; ++step) {
        const int q = static_cast<int>(gen() % 6);
        switch (gen() % 4) {
            case 0: apply_gate(s, GateOp::h(q)); break;
            case 1: apply_gate(s, GateOp::ry(q, angle(gen))); break;
            case 2: apply_gate(s, GateOp::rz(q, angle(gen))); break;
            default: {
                const int c = static_cast<int>(gen() % 6);
                if (c != q) apply_gate(s, GateOp::cnot(c, q));
                break;
            }
        }
    }
    CHECK(std::abs(s.norm_sq() - 1.0) < 1e-9);
}

TEST_CASE("general rotation equals its five-rotation decomposition up to global phase") {
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    for (int trial = 0; trial < 20; ++trial) {
        const double th = angle(gen), ph = angle(gen), lm = angle(gen);
        const Eigen::Matrix2cd direct = u_gate(th, ph, lm);
        const Eigen::Matrix2cd dec = u_gate_decomposed(th, ph, lm);
        const cdouble phase = dec(0, 0) / direct(0, 0);
        CHECK(std::abs(std::abs(phase) - 1.0) < 1e-12);
        CHECK((dec - phase * direct).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(is_unitary(direct));
        CHECK(is_unitary(dec));
    }
}

TEST_CASE("invalid gate usage is rejected") {
    StateVector s = basis_state(2, 0);
    CHECK_THROWS_AS(apply_gate(s, GateOp::cnot(1, 1)), ConfigError);
    CHECK_THROWS_AS(apply_gate(s, GateOp::x(5)), ConfigError);
    Eigen::MatrixXcd not_unitary = Eigen::MatrixXcd::Ones(2, 2);
    CHECK_THROWS_AS(apply_gate(s, GateOp::unitary({0}, not_unitary)), ConfigError);
    CHECK_THROWS_AS(apply_gate(s, GateOp::controlled_u({0}, {0}, pauli_x())), ConfigError);
}

TEST_CASE("amplitude encoding") {
    // basis state
    const auto basis = amplitude_encode(Eigen::Vector4d(1, 0, 0, 0), {{"q", 2}});
    CHECK(std::abs(basis.state.amplitudes()[0] - cdouble{1.0, 0.0}) < 1e-15);
    CHECK(basis.norm == doctest::Approx(1.0));
    // uniform
    const auto unif = amplitude_encode(Eigen::Vector4d(1, 1, 1, 1), {{"q", 2}});
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(unif.state.amplitudes()[static_cast<std::size_t>(i)] - cdouble{0.5, 0.0}) <
              1e-15);
    }
    // pythagorean normalization
    const auto pyth = amplitude_encode(Eigen::Vector2d(3, 4), {{"q", 1}});
    CHECK(pyth.norm == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(std::abs(pyth.state.amplitudes()[0] - cdouble{0.6, 0.0}) < 1e-14);
    CHECK(std::abs(pyth.state.amplitudes()[1] - cdouble{0.8, 0.0}) < 1e-14);
    // shorter vectors pad with zeros; zero vectors are rejected
    const auto padded = amplitude_encode(Eigen::Vector3d(1, 1, 1), {{"q", 2}});
    CHECK(std::abs(padded.state.amplitudes()[3]) == 0.0);
    CHECK_THROWS_AS(amplitude_encode(Eigen::Vector4d::Zero(), {{"q", 2}}), ConfigError);
    CHECK_THROWS_AS(amplitude_encode(Eigen::VectorXd::Ones(5), {{"q", 2}}), ConfigError);
}

} // TEST_SUITE
