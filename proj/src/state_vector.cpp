#include "qhsq/state_vector.hpp"

#include <numeric>

namespace qhsq::sim {

void StateVector::init_layout(std::vector<Register> layout) {
    layout_ = std::move(layout);
    n_ = 0;
    for (const auto& r : layout_) {
        if (r.width < 1) throw ConfigError("StateVector: register '" + r.name + "' needs width >= 1");
        for (const auto& o : layout_) {
            if (&o != &r && o.name == r.name) {
                throw ConfigError("StateVector: duplicate register name '" + r.name + "'");
            }
        }
        n_ += r.width;
    }
    if (n_ < 1) throw ConfigError("StateVector: empty layout");
    if (n_ > kMaxQubits) {
        throw ResourceLimitError("StateVector: " + std::to_string(n_) + " qubits exceeds the " +
                                 std::to_string(kMaxQubits) + "-qubit simulator limit");
    }
}

StateVector::StateVector(std::vector<Register> layout) {
    init_layout(std::move(layout));
    amps_.assign(dim(), cdouble{0.0, 0.0});
    amps_[0] = cdouble{1.0, 0.0};
}

StateVector StateVector::compose(const std::vector<std::pair<Register, Eigen::VectorXcd>>& parts) {
    std::vector<Register> layout;
    layout.reserve(parts.size());
    for (const auto& [reg, vec] : parts) {
        if (vec.size() != (Eigen::Index{1} << reg.width)) {
            throw ConfigError("StateVector::compose: vector for '" + reg.name +
                              "' must have length 2^width");
        }
        layout.push_back(reg);
    }
    StateVector s(std::move(layout));
    std::vector<cdouble> acc{cdouble{1.0, 0.0}};
    for (const auto& [reg, vec] : parts) {
        std::vector<cdouble> next(acc.size() * static_cast<std::size_t>(vec.size()));
        for (std::size_t i = 0; i < acc.size(); ++i) {
            for (Eigen::Index j = 0; j < vec.size(); ++j) {
                next[i * static_cast<std::size_t>(vec.size()) + static_cast<std::size_t>(j)] =
                    acc[i] * vec[j];
            }
        }
        acc = std::move(next);
    }
    s.amps_ = std::move(acc);
    return s;
}

bool StateVector::has_register(const std::string& name) const {
    for (const auto& r : layout_) {
        if (r.name == name) return true;
    }
    return false;
}

const Register& StateVector::find(const std::string& name, int* offset) const {
    int off = 0;
    for (const auto& r : layout_) {
        if (r.name == name) {
            if (offset) *offset = off;
            return r;
        }
        off += r.width;
    }
    throw ConfigError("StateVector: unknown register '" + name + "'");
}

int StateVector::register_offset(const std::string& name) const {
    int off = 0;
    find(name, &off);
    return off;
}

int StateVector::register_width(const std::string& name) const {
    return find(name, nullptr).width;
}

std::uint64_t StateVector::register_value(std::uint64_t index, const std::string& name) const {
    int off = 0;
    const Register& r = find(name, &off);
    const int shift = n_ - off - r.width;
    return (index >> shift) & ((std::uint64_t{1} << r.width) - 1);
}

double StateVector::norm_sq() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
}

cdouble StateVector::inner(const StateVector& other) const {
    if (dim() != other.dim()) {
        throw ConfigError("StateVector::inner: dimension mismatch");
    }
    cdouble acc{0.0, 0.0};
    for (std::uint64_t i = 0; i < dim(); ++i) {
        acc += std::conj(amps_[i]) * other.amps_[i];
    }
    return acc;
}

EncodedVector amplitude_encode(const Eigen::VectorXcd& values, std::vector<Register> layout) {
    StateVector s(std::move(layout));
    if (static_cast<std::uint64_t>(values.size()) > s.dim()) {
        throw ConfigError("amplitude_encode: vector longer than 2^n");
    }
    const double norm = values.norm();
    if (!(norm > 0.0)) throw ConfigError("amplitude_encode: zero vector");
    auto& amps = s.amplitudes();
    std::fill(amps.begin(), amps.end(), cdouble{0.0, 0.0});
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        amps[static_cast<std::size_t>(i)] = values[i] / norm;
    }
    return EncodedVector{std::move(s), norm};
}

} // namespace qhsq::sim
