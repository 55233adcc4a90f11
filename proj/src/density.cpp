#include "qhsq/density.hpp"

#include <cmath>

namespace qhsq::sim {

DensityMatrix::DensityMatrix(Eigen::MatrixXcd m, bool validate) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw ConfigError("DensityMatrix: matrix must be square");
    if (!validate) return;
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw ConfigError("DensityMatrix: matrix is not Hermitian");
    }
    if (std::abs(m_.trace().real() - 1.0) > 1e-10 || std::abs(m_.trace().imag()) > 1e-10) {
        throw ConfigError("DensityMatrix: trace must be 1");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10) {
        throw ConfigError("DensityMatrix: matrix is not positive semidefinite");
    }
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

DensityMatrix reduced_density(const StateVector& state, const std::string& traced_register) {
    const int n = state.num_qubits();
    const int off = state.register_offset(traced_register);
    const int w = state.register_width(traced_register);
    const int kept = n - w;
    if (kept < 1) throw ConfigError("reduced_density: nothing left after tracing");

    // kept-index r = index bits with the traced register removed, order preserved
    const std::uint64_t dim = state.dim();
    const std::uint64_t kdim = std::uint64_t{1} << kept;
    const std::uint64_t tdim = std::uint64_t{1} << w;
    const int low_bits = n - off - w; // kept bits below the traced register

    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(kdim),
                                                  static_cast<Eigen::Index>(kdim));
    const auto& a = state.amplitudes();
    Eigen::VectorXcd col(static_cast<Eigen::Index>(kdim));
    for (std::uint64_t s = 0; s < tdim; ++s) {
        for (std::uint64_t r = 0; r < kdim; ++r) {
            const std::uint64_t hi = r >> low_bits;
            const std::uint64_t lo = r & ((std::uint64_t{1} << low_bits) - 1);
            const std::uint64_t idx = (hi << (low_bits + w)) | (s << low_bits) | lo;
            col[static_cast<Eigen::Index>(r)] = a[idx];
        }
        rho.noalias() += col * col.adjoint();
    }
    (void)dim;
    return DensityMatrix(std::move(rho));
}

Eigen::MatrixXcd density_exponential(const DensityMatrix& rho, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix());
    if (es.info() != Eigen::Success) throw SolverError("density_exponential: eigensolver failed");
    const Eigen::VectorXd& w = es.eigenvalues();
    Eigen::VectorXcd phases(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        phases[i] = std::polar(1.0, -w[i] * t);
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd unitary_power(const Eigen::MatrixXcd& u, int k) {
    Eigen::MatrixXcd out = u;
    for (int i = 0; i < k; ++i) out = out * out;
    return out;
}

DensityMatrix swap_fidelity_check(const DensityMatrix& rho, const DensityMatrix& sigma, double dt) {
    const Eigen::Index d = rho.dim();
    if (sigma.dim() != d) throw ConfigError("swap_fidelity_check: dimension mismatch");
    const Eigen::Index dd = d * d;
    Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(dd, dd);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) swap(j * d + i, i * d + j) = 1.0;
    }
    // S^2 = I, so e^{-iS dt} = cos(dt) I - i sin(dt) S
    const Eigen::MatrixXcd exp_s = std::cos(dt) * Eigen::MatrixXcd::Identity(dd, dd) -
                                   cdouble{0.0, 1.0} * std::sin(dt) * swap;
    Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(dd, dd);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            for (Eigen::Index k = 0; k < d; ++k) {
                for (Eigen::Index l = 0; l < d; ++l) {
                    big(i * d + k, j * d + l) = sigma.matrix()(i, j) * rho.matrix()(k, l);
                }
            }
        }
    }
    big = exp_s * big * exp_s.adjoint();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            for (Eigen::Index k = 0; k < d; ++k) out(i, j) += big(i * d + k, j * d + k);
        }
    }
    return DensityMatrix(std::move(out));
}

} // namespace qhsq::sim
