// density.hpp
// Density matrices, partial trace, and density-matrix exponentiation.

#pragma once

#include <Eigen/Dense>
#include <string>

#include "qhsq/state_vector.hpp"

namespace qhsq::sim {

class DensityMatrix {
  public:
    explicit DensityMatrix(Eigen::MatrixXcd m, bool validate = true);

    const Eigen::MatrixXcd& matrix() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }
    Eigen::VectorXd eigenvalues() const;

  private:
    Eigen::MatrixXcd m_;
};

/// Partial trace of |psi><psi| over one named register; the remaining qubits
/// keep their layout order.
DensityMatrix reduced_density(const StateVector& state, const std::string& traced_register);

/// exp(-i rho t), computed exactly through the eigendecomposition of rho.
Eigen::MatrixXcd density_exponential(const DensityMatrix& rho, double t);

/// U^(2^k) by k repeated squarings.
Eigen::MatrixXcd unitary_power(const Eigen::MatrixXcd& u, int k);

/// The literal SWAP-conjugation route tr_2{e^{-iS dt} (sigma (x) rho) e^{+iS dt}};
/// deviates from e^{-i rho dt} sigma e^{+i rho dt} at O(dt^2).
DensityMatrix swap_fidelity_check(const DensityMatrix& rho, const DensityMatrix& sigma, double dt);

} // namespace qhsq::sim
