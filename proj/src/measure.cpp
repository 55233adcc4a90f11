#include "qhsq/measure.hpp"

#include <random>

namespace qhsq::sim {

MeasurementResult measure(const StateVector& state, const std::vector<std::string>& registers,
                          std::uint64_t shots, std::uint64_t seed) {
    if (registers.empty()) throw ConfigError("measure: no registers given");
    int total_width = 0;
    struct Extract {
        int shift;
        std::uint64_t mask;
        int out_shift;
    };
    std::vector<Extract> parts;
    for (const auto& name : registers) {
        const int off = state.register_offset(name); // throws on unknown register
        const int w = state.register_width(name);
        parts.push_back({state.num_qubits() - off - w, (std::uint64_t{1} << w) - 1, 0});
        total_width += w;
    }
    {
        int acc = total_width;
        std::size_t i = 0;
        for (const auto& name : registers) {
            acc -= state.register_width(name);
            parts[i++].out_shift = acc;
        }
    }

    const std::uint64_t outcomes = std::uint64_t{1} << total_width;
    Eigen::VectorXd probs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(outcomes));
    const auto& a = state.amplitudes();
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        std::uint64_t out = 0;
        for (const auto& p : parts) {
            out |= ((i >> p.shift) & p.mask) << p.out_shift;
        }
        probs[static_cast<Eigen::Index>(out)] += std::norm(a[i]);
    }

    MeasurementResult res;
    res.probabilities = std::move(probs);
    res.shots = shots;
    res.seed = seed;
    if (shots > 0) {
        res.counts.assign(outcomes, 0);
        std::mt19937_64 gen(seed);
        std::discrete_distribution<std::uint64_t> dist(res.probabilities.data(),
                                                       res.probabilities.data() + outcomes);
        for (std::uint64_t s = 0; s < shots; ++s) ++res.counts[dist(gen)];
    }
    return res;
}

} // namespace qhsq::sim
