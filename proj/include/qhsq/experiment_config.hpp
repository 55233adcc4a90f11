// experiment_config.hpp
// Experiment configuration: file parsing, CLI overrides, serialization.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qhsq::harness {

/// Configuration of the sinusoid-integration study. Field defaults are the
/// paper-scale values; the CLI applies the lighter test profile unless
/// --paper is given.
struct ExperimentConfig {
    double L = 3.14159265358979323846; // basis half-width; Omega = [-L, L]
    int M = 4;
    int N = 8;
    double sigma_f = 1.0;
    double ell = 1.0;
    double sigma = 0.05;
    int tau = 16;
    std::uint64_t shots = 1000000;
    std::vector<int> ranks{1, 2, 3, 4};
    std::vector<double> epsilons{0.01, 0.009, 0.008, 0.007, 0.006};
    std::uint64_t seed = 123;
    std::string out_dir = "out";
    bool exact = false; // exact probabilities instead of shot sampling
    int workers = 0;    // 0 = automatic

    void validate() const;

    /// tau=10, shots=1e5 profile for quick runs.
    void apply_test_scale();
};

/// Optional CLI-side overrides; anything set here wins over the file value.
struct ConfigOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> tau;
    std::optional<std::uint64_t> shots;
    std::optional<std::vector<int>> ranks;
    std::optional<bool> exact;
    std::optional<std::string> out_dir;
    std::optional<int> N;
    std::optional<double> sigma;
};

ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);
std::string serialize_config(const ExperimentConfig& cfg);
void apply_overrides(ExperimentConfig& cfg, const ConfigOverrides& ov);

} // namespace qhsq::harness
