// hilbert_basis.hpp
// Laplace-operator eigenbasis on the interval [-L, L] with Dirichlet
// boundary conditions: phi_j(x) = L^{-1/2} sin(pi j (x+L) / (2L)),
// lambda_j = (pi j / 2L)^2, j = 1..M.

#pragma once

#include <vector>

#include "qhsq/errors.hpp"

namespace qhsq {

struct HilbertBasis {
    double L = 0.0; // domain half-width, basis lives on [-L, L]
    int M = 0;      // number of eigenpairs

    HilbertBasis(double half_width, int size);

    double eigenvalue(int j) const;          // j in 1..M
    double eigenfunction(int j, double x) const;
    std::vector<double> eigenvalues() const;

    /// Closed-form integral of phi_j over [a, b] (antiderivative of the sine).
    double eigenfunction_integral(int j, double a, double b) const;

  private:
    void check_index(int j) const;
};

} // namespace qhsq
