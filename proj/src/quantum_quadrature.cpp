#include "qhsq/quantum_quadrature.hpp"

#include <cmath>
#include <iostream>
#include <numbers>

#include "qhsq/density.hpp"

namespace qhsq {

using sim::Register;
using sim::StateVector;

namespace {

constexpr double kSafety = 0.999;

double bin_value(std::uint64_t bin, const QpeConfig& cfg) {
    return cfg.delta * static_cast<double>(bin) / std::ldexp(1.0, cfg.tau);
}

double mean_denominator(double lam_sq, double sigma_tilde_sq) {
    return lam_sq + sigma_tilde_sq;
}

double variance_denominator(double lam_sq, double sigma_tilde_sq) {
    return std::sqrt(lam_sq) * std::sqrt(lam_sq + sigma_tilde_sq);
}

// An eigenvalue's scaled phase lt^2 / delta * 2^tau either hits a bin exactly
// (up to roundoff) or straddles two neighbouring bins.
std::vector<std::uint64_t> eigenvalue_bins(double pos, int tau) {
    const std::uint64_t top = (std::uint64_t{1} << tau) - 1;
    const double r = std::round(pos);
    if (std::abs(pos - r) < 1e-6) {
        return {std::min<std::uint64_t>(static_cast<std::uint64_t>(std::max(r, 1.0)), top)};
    }
    const auto lf = static_cast<std::uint64_t>(std::max(1.0, std::floor(pos)));
    return {std::min(lf, top), std::min<std::uint64_t>(lf + 1, top)};
}

// Bins carrying the weight of the retained eigenvalues; the rotation
// constants must keep these in the arcsine domain.
std::vector<std::uint64_t> represented_bins(const EncodingResult& enc, const QpeConfig& cfg) {
    const double dd = std::ldexp(1.0, cfg.tau);
    std::vector<std::uint64_t> bins;
    for (Eigen::Index r = 0; r < enc.lambdas_tilde.size(); ++r) {
        const double lt2 = enc.lambdas_tilde[r] * enc.lambdas_tilde[r];
        for (std::uint64_t b : eigenvalue_bins(lt2 / cfg.delta * dd, cfg.tau)) bins.push_back(b);
    }
    return bins;
}

void validate_rotation(const EncodingResult& enc, const QpeConfig& cfg, AngleRule rule) {
    if (cfg.tau < 1) throw ConfigError("QpeConfig: tau must be >= 1");
    if (!(cfg.delta > 0.0)) throw ConfigError("QpeConfig: delta must be > 0");
    const double lt2_max = enc.lambdas_tilde.maxCoeff();
    if (!(cfg.delta > lt2_max * lt2_max)) {
        throw ConfigError("QpeConfig: delta must exceed the largest normalized eigenvalue^2");
    }
    const double c = rule == AngleRule::Mean ? cfg.c1 : cfg.c2;
    if (!(c > 0.0) && !(c == 0.0)) throw ConfigError("QpeConfig: rotation constant must be >= 0");
    for (std::uint64_t bin : represented_bins(enc, cfg)) {
        const double lam_sq = bin_value(bin, cfg);
        const double den = rule == AngleRule::Mean
                               ? mean_denominator(lam_sq, cfg.sigma_tilde_sq)
                               : variance_denominator(lam_sq, cfg.sigma_tilde_sq);
        if (c > den * (1.0 + 1e-9)) {
            throw ConfigError(rule == AngleRule::Mean
                                  ? "QpeConfig: c1 exceeds the arcsine domain at a populated bin"
                                  : "QpeConfig: c2 exceeds the arcsine domain at a populated bin");
        }
    }
}

// H^tau -> controlled exp(-i rho 2^k t) ladder -> Fourier close, oriented so
// that an eigenvalue lambda~^2 of rho lands in bin l = lambda~^2 * 2^tau / delta.
// (The ladder phases are e^{-2 pi i k lambda~^2/delta}; closing with the
// forward transform of circuits.hpp inverts that sign.)
void phase_block(StateVector& s, const Eigen::MatrixXcd& rho_m, double t, bool inverse) {
    const int off = s.register_offset("tau");
    const int tau = s.register_width("tau");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_m);
    if (es.info() != Eigen::Success) throw SolverError("phase_block: eigensolver failed");
    auto power = [&](int k, double sign) {
        Eigen::VectorXcd phases(es.eigenvalues().size());
        for (Eigen::Index i = 0; i < phases.size(); ++i) {
            phases[i] = std::polar(1.0, sign * es.eigenvalues()[i] * std::ldexp(t, k));
        }
        return Eigen::MatrixXcd(es.eigenvectors() * phases.asDiagonal() *
                                es.eigenvectors().adjoint());
    };
    if (!inverse) {
        for (int i = 0; i < tau; ++i) sim::apply_1q(s, off + i, sim::hadamard());
        for (int k = 0; k < tau; ++k) {
            sim::apply_register_unitary(s, "m", power(k, -1.0), {off + tau - 1 - k});
        }
        sim::qft(s, "tau");
    } else {
        sim::inverse_qft(s, "tau");
        for (int k = tau - 1; k >= 0; --k) {
            sim::apply_register_unitary(s, "m", power(k, +1.0), {off + tau - 1 - k});
        }
        for (int i = 0; i < tau; ++i) sim::apply_1q(s, off + i, sim::hadamard());
    }
}

// Multiplexed R_y on the "a" ancilla, angle theta(l) from the tau-register value l.
void conditioned_rotation(StateVector& s, const QpeConfig& cfg, AngleRule rule) {
    const std::uint64_t dbins = std::uint64_t{1} << cfg.tau;
    std::vector<double> sin_half(dbins), cos_half(dbins);
    for (std::uint64_t l = 0; l < dbins; ++l) {
        const double sh = rotation_sine(rule, l, cfg);
        sin_half[l] = sh;
        cos_half[l] = std::sqrt(std::max(0.0, 1.0 - sh * sh));
    }
    const std::uint64_t amask = s.qubit_mask(s.register_offset("a"));
    const int tshift = s.num_qubits() - s.register_offset("tau") - cfg.tau;
    const std::uint64_t tmask = dbins - 1;
    auto* a = s.amplitudes().data();
    const std::uint64_t dim = s.dim();
#pragma omp parallel for schedule(static) if (dim >= (1u << 16))
    for (std::int64_t ii = 0; ii < static_cast<std::int64_t>(dim); ++ii) {
        const std::uint64_t i = static_cast<std::uint64_t>(ii);
        if (i & amask) continue;
        const std::uint64_t l = (i >> tshift) & tmask;
        const auto a0 = a[i];
        const auto a1 = a[i | amask];
        a[i] = cos_half[l] * a0 - sin_half[l] * a1;
        a[i | amask] = sin_half[l] * a0 + cos_half[l] * a1;
    }
}

Eigen::MatrixXcd m_register_density(const EncodingResult& enc) {
    return sim::reduced_density(enc.state, "n").matrix();
}

} // namespace

double rotation_sine(AngleRule rule, std::uint64_t bin, const QpeConfig& cfg) {
    if (bin == 0) return 0.0;
    const double lam_sq = bin_value(bin, cfg);
    const double den = rule == AngleRule::Mean ? mean_denominator(lam_sq, cfg.sigma_tilde_sq)
                                               : variance_denominator(lam_sq, cfg.sigma_tilde_sq);
    const double c = rule == AngleRule::Mean ? cfg.c1 : cfg.c2;
    return std::min(1.0, c / den);
}

QpeConfig choose_constants(const EncodingResult& enc, double sigma, int tau, double epsilon) {
    if (enc.lambdas_tilde.size() == 0) throw ConfigError("choose_constants: no retained eigenvalues");
    if (!(epsilon > 0.0)) throw ConfigError("choose_constants: epsilon must be > 0");
    if (tau < 1) throw ConfigError("choose_constants: tau must be >= 1");

    QpeConfig cfg;
    cfg.tau = tau;
    cfg.sigma_tilde_sq = sigma * sigma / (enc.c_x * enc.c_x);
    const double lt_max = enc.lambdas_tilde.maxCoeff();
    cfg.delta = lt_max * lt_max + epsilon;

    const double dd = std::ldexp(1.0, tau);
    double min_mean = std::numeric_limits<double>::infinity();
    double min_var = std::numeric_limits<double>::infinity();
    for (Eigen::Index r = 0; r < enc.lambdas_tilde.size(); ++r) {
        const double lt2 = enc.lambdas_tilde[r] * enc.lambdas_tilde[r];
        for (std::uint64_t b : eigenvalue_bins(lt2 / cfg.delta * dd, tau)) {
            const double lam_sq = cfg.delta * static_cast<double>(b) / dd;
            min_mean = std::min(min_mean, mean_denominator(lam_sq, cfg.sigma_tilde_sq));
            min_var = std::min(min_var, variance_denominator(lam_sq, cfg.sigma_tilde_sq));
        }
    }
    cfg.c1 = kSafety * min_mean;
    cfg.c2 = kSafety * min_var;
    return cfg;
}

namespace {

StateVector make_circuit_state(std::vector<Register> layout, int tau) {
    try {
        return StateVector(std::move(layout));
    } catch (const ResourceLimitError& e) {
        throw ResourceLimitError(std::string(e.what()) + " (tau=" + std::to_string(tau) +
                                 "; reduce tau to shrink the eigenvalue register)");
    }
}

} // namespace

StateVector prepare_psi1(const EncodingResult& enc, const QpeConfig& cfg, AngleRule rule) {
    validate_rotation(enc, cfg, rule);
    const int mw = enc.state.register_width("m");
    const int nw = enc.state.register_width("n");
    StateVector s = make_circuit_state({Register{"a", 1}, Register{"tau", cfg.tau},
                                        Register{"m", mw}, Register{"n", nw}},
                                       cfg.tau);
    // a = |0>, tau = |0>, (m, n) = psi_X
    auto& amps = s.amplitudes();
    const auto& src = enc.state.amplitudes();
    std::fill(amps.begin(), amps.end(), sim::cdouble{0.0, 0.0});
    std::copy(src.begin(), src.end(), amps.begin());

    const double t = 2.0 * std::numbers::pi / cfg.delta;
    const Eigen::MatrixXcd rho = m_register_density(enc);
    phase_block(s, rho, t, false);
    conditioned_rotation(s, cfg, rule);
    phase_block(s, rho, t, true);
    return s;
}

Psi2 prepare_psi2(const DesignMatrices& design, const Eigen::VectorXd& y, int tau) {
    if (tau < 1) throw ConfigError("prepare_psi2: tau must be >= 1");
    const double norm_x_mu = design.X_mu.norm();
    const double norm_y = y.norm();
    if (!(norm_x_mu > 0.0)) throw ConfigError("prepare_psi2: X_mu is the zero vector");
    if (!(norm_y > 0.0)) throw ConfigError("prepare_psi2: y is the zero vector");

    const int mw = padded_width(design.X_mu.size());
    const int nw = padded_width(y.size());
    Eigen::VectorXcd xm = Eigen::VectorXcd::Zero(Eigen::Index{1} << mw);
    Eigen::VectorXcd yv = Eigen::VectorXcd::Zero(Eigen::Index{1} << nw);
    xm.head(design.X_mu.size()) = (design.X_mu / norm_x_mu).cast<sim::cdouble>();
    yv.head(y.size()) = (y / norm_y).cast<sim::cdouble>();

    Psi2 out{StateVector::compose(
                 {{Register{"a", 1}, Eigen::Vector2cd(0.0, 1.0)},
                  {Register{"tau", tau},
                   Eigen::VectorXcd(Eigen::VectorXcd::Unit(Eigen::Index{1} << tau, 0))},
                  {Register{"m", mw}, xm},
                  {Register{"n", nw}, yv}}),
             norm_x_mu, norm_y};
    return out;
}

QuadratureEstimate estimate_mean(const DesignMatrices& design, const Eigen::VectorXd& y,
                                 const EncodingResult& enc, const QpeConfig& cfg,
                                 std::uint64_t shots, std::uint64_t seed) {
    const StateVector psi1 = prepare_psi1(enc, cfg, AngleRule::Mean);
    const Psi2 psi2 = prepare_psi2(design, y, cfg.tau);
    const sim::TestOutcome ht = sim::hadamard_test(psi1, psi2.state, shots, seed);
    const double p0 = shots > 0 ? *ht.p0_sampled : ht.p0;

    QuadratureEstimate est;
    est.method = "qhsq";
    est.rank = enc.rank;
    est.delta = cfg.delta;
    est.shots = shots;
    est.seed = seed;
    est.mean = (2.0 * p0 - 1.0) * psi2.norm_x_mu * psi2.norm_y / (cfg.c1 * enc.c_x);
    return est;
}

QuadratureEstimate estimate_variance(const DesignMatrices& design, const EncodingResult& enc,
                                     const QpeConfig& cfg, std::uint64_t shots,
                                     std::uint64_t seed) {
    validate_rotation(enc, cfg, AngleRule::Variance);
    const double norm_x_mu = design.X_mu.norm();
    if (!(norm_x_mu > 0.0)) throw ConfigError("estimate_variance: X_mu is the zero vector");

    const int mw = enc.state.register_width("m");
    const int nw = enc.state.register_width("n");
    StateVector s = make_circuit_state({Register{"a", 1}, Register{"tau", cfg.tau},
                                        Register{"m", mw}, Register{"n", nw},
                                        Register{"mu", mw}, Register{"b", 1}},
                                       cfg.tau);

    // |0>_a |0>_tau psi_X(m,n) |X_mu^>_mu |0>_b
    const Eigen::Index mp = Eigen::Index{1} << mw;
    const Eigen::Index np = Eigen::Index{1} << nw;
    Eigen::VectorXd xmu_hat = Eigen::VectorXd::Zero(mp);
    xmu_hat.head(design.X_mu.size()) = design.X_mu / norm_x_mu;
    {
        auto& amps = s.amplitudes();
        std::fill(amps.begin(), amps.end(), sim::cdouble{0.0, 0.0});
        const auto& psix = enc.state.amplitudes();
        for (Eigen::Index m = 0; m < mp; ++m) {
            for (Eigen::Index n = 0; n < np; ++n) {
                const auto amp = psix[static_cast<std::size_t>(m * np + n)];
                if (amp == sim::cdouble{0.0, 0.0}) continue;
                for (Eigen::Index u = 0; u < mp; ++u) {
                    if (xmu_hat[u] == 0.0) continue;
                    const std::uint64_t idx =
                        ((static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(np) +
                          static_cast<std::uint64_t>(n))
                             << (mw + 1)) |
                        (static_cast<std::uint64_t>(u) << 1);
                    amps[idx] = amp * xmu_hat[u];
                }
            }
        }
    }

    const double t = 2.0 * std::numbers::pi / cfg.delta;
    phase_block(s, m_register_density(enc), t, false);
    conditioned_rotation(s, cfg, AngleRule::Variance);

    // SWAP test between the mu register and the m register, ancilla b
    const int b = s.num_qubits() - 1;
    const int m_off = s.register_offset("m");
    const int mu_off = s.register_offset("mu");
    sim::apply_1q(s, b, sim::hadamard());
    for (int i = 0; i < mw; ++i) sim::apply_swap(s, mu_off + i, m_off + i, {b});
    sim::apply_1q(s, b, sim::hadamard());

    const sim::MeasurementResult mr = sim::measure(s, {"a", "b"}, shots, seed);
    const double p11 = mr.sampled_probability(3);

    const double sigma_sq = cfg.sigma_tilde_sq * enc.c_x * enc.c_x;
    double filter_sum = 0.0;
    for (Eigen::Index r = 0; r < enc.lambdas_tilde.size(); ++r) {
        const double lt2 = enc.lambdas_tilde[r] * enc.lambdas_tilde[r];
        filter_sum += 1.0 / (lt2 + cfg.sigma_tilde_sq);
    }

    QuadratureEstimate est;
    est.method = "qhsq";
    est.rank = enc.rank;
    est.delta = cfg.delta;
    est.shots = shots;
    est.seed = seed;
    est.variance = sigma_sq * (norm_x_mu * norm_x_mu / (enc.c_x * enc.c_x)) *
                   (filter_sum - 2.0 * p11 / (cfg.c2 * cfg.c2));
    if (est.variance < 0.0) {
        std::cerr << "estimate_variance: sampled variance " << est.variance
                  << " clamped to 0 (shot noise)\n";
        est.variance = 0.0;
        est.clamped = true;
    }
    return est;
}

} // namespace qhsq
