// experiment.hpp
// Experiment driver for the sinusoid-integration study: single estimates,
// the quadrature-distribution figure, and the N-sweep figure.

#pragma once

#include <string>
#include <vector>

#include "qhsq/experiment_config.hpp"
#include "qhsq/quadrature.hpp"

namespace qhsq::harness {

enum class Method { GPQ, HSQ, QHSQ };

Method method_from_string(const std::string& s);
std::string to_string(Method m);

struct ResultRow {
    std::string method;
    int R = 0; // 0 for the classical methods
    int N = 0;
    double delta = 0.0; // 0 for the classical methods
    std::uint64_t seed = 0;
    double mean = 0.0;
    double variance = 0.0;
    double wall_ms = 0.0;
};

/// Midpoint layout: N points equally spaced on (-L, L), symmetric about 0.
Eigen::VectorXd evaluation_points(int N, double L);

/// The study integrand f(x) = 1 + sin(x).
double integrand(double x);

/// Observations y_i = f(x_i) + eps_i with one seeded noise vector per (seed, N).
Eigen::VectorXd observations(const ExperimentConfig& cfg);

/// One estimate. For QHSQ, `eps_index` selects the entry of cfg.epsilons
/// (default 0) and R is clamped to rank(X).
ResultRow run_single(const ExperimentConfig& cfg, Method method, int R, int eps_index = 0);

struct ExperimentOutput {
    std::vector<ResultRow> rows;
    std::vector<std::string> files; // paths written
};

/// Quadrature distributions at fixed N: GPQ, HSQ, QHSQ for each configured
/// rank (one row per epsilon; plots aggregate QHSQ by the median).
ExperimentOutput run_figure4(const ExperimentConfig& cfg);

/// Mean/variance against the number of evaluation points.
ExperimentOutput run_figure5(const ExperimentConfig& cfg, const std::vector<int>& n_values);

// Result-table persistence (CSV) and the pure-view plot builders.
std::string rows_to_csv(const std::vector<ResultRow>& rows);
std::vector<ResultRow> rows_from_csv(const std::string& csv);
std::string figure4_svg(const std::vector<ResultRow>& rows);
std::string figure5_svg(const std::vector<ResultRow>& rows, bool variance_panel);

/// Oracle-equivalence self-checks (used by the `selftest` CLI command);
/// returns the number of failed checks and prints one line per check.
int selftest();

} // namespace qhsq::harness
