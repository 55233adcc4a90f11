// measure.hpp
// Born-rule read-out: exact marginal probabilities over named registers,
// optionally with seeded multinomial shot sampling.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "qhsq/state_vector.hpp"

namespace qhsq::sim {

struct MeasurementResult {
    Eigen::VectorXd probabilities;     // exact marginals, indexed by the
                                       // concatenated register values
    std::vector<std::uint64_t> counts; // empty when shots == 0
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;

    double sampled_probability(std::uint64_t outcome) const {
        if (shots == 0) return probabilities[static_cast<Eigen::Index>(outcome)];
        return static_cast<double>(counts[outcome]) / static_cast<double>(shots);
    }
};

/// Measures the listed registers (outcome index = their values concatenated
/// in list order, most significant first). shots == 0 returns exact
/// probabilities only; shots > 0 adds a seeded multinomial sample.
MeasurementResult measure(const StateVector& state, const std::vector<std::string>& registers,
                          std::uint64_t shots = 0, std::uint64_t seed = 0);

} // namespace qhsq::sim
