// encoding.hpp
// Amplitude encoding of the (rank-truncated) design matrix into the
// two-register state used by the quantum quadrature circuits.

#pragma once

#include <Eigen/Dense>

#include "qhsq/design.hpp"
#include "qhsq/state_vector.hpp"

namespace qhsq {

/// State over registers ("m", log2 Mp) and ("n", log2 Np) holding the
/// normalized rank-R truncation of X; amplitude (m*Np + n) = X_R(n, m)/c_X.
struct EncodingResult {
    sim::StateVector state;
    double c_x = 0.0;                 // Frobenius norm of the truncated X
    int rank = 0;                     // retained rank R
    bool truncated = false;           // R < rank(X)
    Eigen::VectorXd lambdas_tilde;    // normalized singular values, R entries
    Eigen::MatrixXd u;                // left singular vectors, N x R
    Eigen::MatrixXd v;                // right singular vectors, M x R
};

int padded_width(Eigen::Index count); // qubits needed to index `count` items (min 1)

EncodingResult encode_psi_x(const DesignMatrices& design, int R);

} // namespace qhsq
