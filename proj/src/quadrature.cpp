#include "qhsq/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "qhsq/integrate.hpp"

namespace qhsq {

namespace {
constexpr double kSqrtPiHalf = 1.2533141373155003; // sqrt(pi/2)
constexpr double kSqrt2Pi = 2.5066282746310002;
} // namespace

void QuadratureProblem::validate() const {
    if (points.size() < 1) throw ConfigError("QuadratureProblem: need at least one point");
    if (points.size() != observations.size()) {
        throw ConfigError("QuadratureProblem: points/observations size mismatch");
    }
    if (!(domain_hi > domain_lo)) {
        throw ConfigError("QuadratureProblem: empty integration domain");
    }
}

double kernel_approx(double x, double x2, const HilbertBasis& basis, const KernelSpec& spec) {
    double sum = 0.0;
    for (int j = 1; j <= basis.M; ++j) {
        // grouping the eigenfunction product keeps the sum bitwise symmetric
        const double pair = basis.eigenfunction(j, x) * basis.eigenfunction(j, x2);
        sum += spectral_density(std::sqrt(basis.eigenvalue(j)), spec) * pair;
    }
    return sum;
}

double se_kernel_weight_integral(double xi, double a, double b, const KernelSpec& spec) {
    const double s2 = spec.ell * std::numbers::sqrt2;
    return spec.sigma_f * spec.sigma_f * spec.ell * kSqrtPiHalf *
           (std::erf((b - xi) / s2) - std::erf((a - xi) / s2));
}

double se_kernel_double_integral(double a, double b, const KernelSpec& spec) {
    const double T = b - a;
    const double l = spec.ell;
    return spec.sigma_f * spec.sigma_f *
           (kSqrt2Pi * l * T * std::erf(T / (std::numbers::sqrt2 * l)) +
            2.0 * l * l * (std::exp(-T * T / (2.0 * l * l)) - 1.0));
}

namespace {

// k_mu(x_i) = int k(x_i, x) mu(x) dx; closed form for the constant weight.
Eigen::VectorXd weighted_kernel_integrals(const QuadratureProblem& p, const KernelSpec& spec) {
    const auto n = p.points.size();
    Eigen::VectorXd kmu(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double xi = p.points[i];
        if (p.weight.is_constant_one) {
            kmu[i] = se_kernel_weight_integral(xi, p.domain_lo, p.domain_hi, spec);
        } else {
            kmu[i] = integrate(
                [&](double x) { return se_kernel(xi, x, spec) * p.weight.fn(x); },
                p.domain_lo, p.domain_hi);
        }
    }
    return kmu;
}

Eigen::VectorXd solve_spd(const Eigen::MatrixXd& A, const Eigen::VectorXd& rhs,
                          const char* what) {
    Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() != Eigen::Success) {
        throw SolverError(std::string(what) + ": system matrix is not positive definite");
    }
    Eigen::VectorXd x = llt.solve(rhs);
    const double resid = (A * x - rhs).norm();
    if (!(resid <= 1e-8 * (1.0 + rhs.norm()))) {
        throw SolverError(std::string(what) + ": solve failed (singular system)");
    }
    return x;
}

} // namespace

QuadratureEstimate gpq_full(const QuadratureProblem& problem, const KernelSpec& spec) {
    problem.validate();
    spec.validate();
    const auto n = problem.points.size();
    Eigen::MatrixXd K(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            K(i, j) = K(j, i) = se_kernel(problem.points[i], problem.points[j], spec);
        }
    }
    K.diagonal().array() += spec.sigma * spec.sigma;

    const Eigen::VectorXd kmu = weighted_kernel_integrals(problem, spec);
    const Eigen::VectorXd alpha = solve_spd(K, problem.observations, "gpq_full");
    const Eigen::VectorXd beta = solve_spd(K, kmu, "gpq_full");

    double mu_kmu;
    if (problem.weight.is_constant_one) {
        mu_kmu = se_kernel_double_integral(problem.domain_lo, problem.domain_hi, spec);
    } else {
        mu_kmu = integrate2d(
            [&](double x, double x2) {
                return se_kernel(x, x2, spec) * problem.weight.fn(x) * problem.weight.fn(x2);
            },
            problem.domain_lo, problem.domain_hi, problem.domain_lo, problem.domain_hi);
    }

    QuadratureEstimate est;
    est.mean = kmu.dot(alpha);
    est.variance = mu_kmu - kmu.dot(beta);
    est.method = "gpq";
    return est;
}

double gpr_mean(const QuadratureProblem& problem, const KernelSpec& spec, double x_star) {
    problem.validate();
    const auto n = problem.points.size();
    Eigen::MatrixXd K(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            K(i, j) = se_kernel(problem.points[i], problem.points[j], spec);
        }
    }
    K.diagonal().array() += spec.sigma * spec.sigma;
    Eigen::VectorXd kstar(n);
    for (Eigen::Index i = 0; i < n; ++i) kstar[i] = se_kernel(x_star, problem.points[i], spec);
    return kstar.dot(solve_spd(K, problem.observations, "gpr_mean"));
}

QuadratureEstimate hsq(const QuadratureProblem& problem, const HilbertBasis& basis,
                       const KernelSpec& spec) {
    problem.validate();
    spec.validate();
    const auto n = problem.points.size();
    const int M = basis.M;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (problem.points[i] < -basis.L || problem.points[i] > basis.L) {
            throw ConfigError("hsq: evaluation point outside the basis domain [-L, L]");
        }
    }

    Eigen::MatrixXd Phi(n, M);
    Eigen::VectorXd S(M), Phi_mu(M);
    for (int j = 1; j <= M; ++j) {
        S[j - 1] = spectral_density(std::sqrt(basis.eigenvalue(j)), spec);
        for (Eigen::Index i = 0; i < n; ++i) Phi(i, j - 1) = basis.eigenfunction(j, problem.points[i]);
        if (problem.weight.is_constant_one) {
            Phi_mu[j - 1] = basis.eigenfunction_integral(j, problem.domain_lo, problem.domain_hi);
        } else {
            Phi_mu[j - 1] = integrate(
                [&](double x) { return basis.eigenfunction(j, x) * problem.weight.fn(x); },
                problem.domain_lo, problem.domain_hi);
        }
    }

    Eigen::MatrixXd A = Phi.transpose() * Phi;
    A.diagonal() += (spec.sigma * spec.sigma) * S.cwiseInverse();

    const Eigen::VectorXd rhs = Phi.transpose() * problem.observations;
    QuadratureEstimate est;
    est.mean = Phi_mu.dot(solve_spd(A, rhs, "hsq"));
    est.variance = spec.sigma * spec.sigma * Phi_mu.dot(solve_spd(A, Phi_mu, "hsq"));
    est.method = "hsq";
    est.rank = M;
    return est;
}

} // namespace qhsq
