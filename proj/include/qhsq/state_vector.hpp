// state_vector.hpp
// Dense statevector over named qubit registers.
//
// Register convention (fixed for the whole library): registers are listed
// most-significant first, and qubit 0 is the most significant qubit within a
// register. A basis index therefore reads as the concatenation of the
// registers' binary values in layout order. Global qubit q occupies bit
// position (num_qubits - 1 - q) of the amplitude index.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qhsq/errors.hpp"

namespace qhsq::sim {

using cdouble = std::complex<double>;

struct Register {
    std::string name;
    int width = 0;
};

class StateVector {
  public:
    static constexpr int kMaxQubits = 26;

    /// |0...0> over the given layout.
    explicit StateVector(std::vector<Register> layout);

    /// Product state from per-register amplitude vectors (each vector length
    /// 2^width, unit norm not required; the result is left as the literal
    /// Kronecker product in layout order).
    static StateVector compose(const std::vector<std::pair<Register, Eigen::VectorXcd>>& parts);

    int num_qubits() const { return n_; }
    std::uint64_t dim() const { return std::uint64_t{1} << n_; }
    const std::vector<Register>& layout() const { return layout_; }

    std::vector<cdouble>& amplitudes() { return amps_; }
    const std::vector<cdouble>& amplitudes() const { return amps_; }

    bool has_register(const std::string& name) const;
    int register_offset(const std::string& name) const; // global index of the register's MSB qubit
    int register_width(const std::string& name) const;

    std::uint64_t qubit_mask(int qubit) const {
        return std::uint64_t{1} << (n_ - 1 - qubit);
    }
    std::uint64_t register_value(std::uint64_t index, const std::string& name) const;

    double norm_sq() const;
    cdouble inner(const StateVector& other) const; // <this|other>

  private:
    std::vector<Register> layout_;
    std::vector<cdouble> amps_;
    int n_ = 0;

    void init_layout(std::vector<Register> layout);
    const Register& find(const std::string& name, int* offset) const;
};

struct EncodedVector {
    StateVector state;
    double norm; // Euclidean norm of the input, the normalization constant used
};

/// Amplitude encoding of a real or complex vector into the given layout, in
/// index order, padded with zeros. Throws on a zero vector or if the vector
/// does not fit.
EncodedVector amplitude_encode(const Eigen::VectorXcd& values, std::vector<Register> layout);

template <typename Derived>
EncodedVector amplitude_encode(const Eigen::MatrixBase<Derived>& values,
                               std::vector<Register> layout) {
    return amplitude_encode(Eigen::VectorXcd(values.template cast<cdouble>()), std::move(layout));
}

} // namespace qhsq::sim
