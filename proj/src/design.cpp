#include "qhsq/design.hpp"

#include <cmath>

#include "qhsq/integrate.hpp"

namespace qhsq {

DesignMatrices build_design(const QuadratureProblem& problem, const HilbertBasis& basis,
                            const KernelSpec& spec) {
    problem.validate();
    spec.validate();
    const auto n = problem.points.size();
    const int M = basis.M;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (problem.points[i] < -basis.L || problem.points[i] > basis.L) {
            throw ConfigError("build_design: evaluation point outside [-L, L]");
        }
    }

    DesignMatrices d;
    d.Phi.resize(n, M);
    d.lambda_diag.resize(M);
    d.Phi_mu.resize(M);
    for (int j = 1; j <= M; ++j) {
        d.lambda_diag[j - 1] = spectral_density(std::sqrt(basis.eigenvalue(j)), spec);
        for (Eigen::Index i = 0; i < n; ++i) {
            d.Phi(i, j - 1) = basis.eigenfunction(j, problem.points[i]);
        }
        if (problem.weight.is_constant_one) {
            d.Phi_mu[j - 1] = basis.eigenfunction_integral(j, problem.domain_lo, problem.domain_hi);
        } else {
            d.Phi_mu[j - 1] = integrate(
                [&](double x) { return basis.eigenfunction(j, x) * problem.weight.fn(x); },
                problem.domain_lo, problem.domain_hi);
        }
    }
    const Eigen::VectorXd sqrt_lambda = d.lambda_diag.cwiseSqrt();
    d.X = d.Phi * sqrt_lambda.asDiagonal();
    d.X_mu = sqrt_lambda.cwiseProduct(d.Phi_mu);
    return d;
}

SvdForm svd_of(const Eigen::MatrixXd& X) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& s = svd.singularValues();
    const double cut = s.size() > 0 ? 1e-12 * s[0] : 0.0;
    int rank = 0;
    for (Eigen::Index r = 0; r < s.size(); ++r) {
        if (s[r] > cut) ++rank;
    }
    SvdForm out;
    out.rank = rank;
    out.U = svd.matrixU().leftCols(rank);
    out.V = svd.matrixV().leftCols(rank);
    out.singular_values = s.head(rank);
    // deterministic signs: largest-|entry| component of each v_r positive
    for (int r = 0; r < rank; ++r) {
        Eigen::Index imax = 0;
        out.V.col(r).cwiseAbs().maxCoeff(&imax);
        if (out.V(imax, r) < 0.0) {
            out.V.col(r) *= -1.0;
            out.U.col(r) *= -1.0;
        }
    }
    return out;
}

QuadratureEstimate svd_quadrature(const SvdForm& svd, const Eigen::VectorXd& X_mu,
                                  const Eigen::VectorXd& y, const KernelSpec& spec, int R) {
    if (R < 1 || R > svd.rank) {
        throw ConfigError("svd_quadrature: R out of range [1, rank(X)]");
    }
    const double s2 = spec.sigma * spec.sigma;
    QuadratureEstimate est;
    est.method = "svd";
    est.rank = R;
    for (int r = 0; r < R; ++r) {
        const double lam = svd.singular_values[r];
        const double xv = X_mu.dot(svd.V.col(r));
        est.mean += lam / (lam * lam + s2) * xv * svd.U.col(r).dot(y);
        est.variance += s2 * xv * xv / (lam * lam + s2);
    }
    return est;
}

QuadratureEstimate svd_quadrature(const DesignMatrices& design, const Eigen::VectorXd& y,
                                  const KernelSpec& spec, int R) {
    return svd_quadrature(svd_of(design.X), design.X_mu, y, spec, R);
}

} // namespace qhsq
