#include "qhsq/hilbert_basis.hpp"

#include <cmath>
#include <numbers>

namespace qhsq {

namespace {
constexpr double kPi = std::numbers::pi;
}

HilbertBasis::HilbertBasis(double half_width, int size) : L(half_width), M(size) {
    if (!(L > 0.0)) throw ConfigError("HilbertBasis: half-width must be > 0");
    if (M < 1) throw ConfigError("HilbertBasis: basis size must be >= 1");
}

void HilbertBasis::check_index(int j) const {
    if (j < 1 || j > M) {
        throw ConfigError("HilbertBasis: eigenfunction index out of range [1, M]");
    }
}

double HilbertBasis::eigenvalue(int j) const {
    check_index(j);
    const double w = kPi * j / (2.0 * L);
    return w * w;
}

double HilbertBasis::eigenfunction(int j, double x) const {
    check_index(j);
    return std::sin(kPi * j * (x + L) / (2.0 * L)) / std::sqrt(L);
}

std::vector<double> HilbertBasis::eigenvalues() const {
    std::vector<double> out(static_cast<std::size_t>(M));
    for (int j = 1; j <= M; ++j) out[static_cast<std::size_t>(j - 1)] = eigenvalue(j);
    return out;
}

double HilbertBasis::eigenfunction_integral(int j, double a, double b) const {
    check_index(j);
    // int phi_j = -(2L / pi j) L^{-1/2} cos(pi j (x+L)/(2L)) evaluated a..b
    const double c = 2.0 * L / (kPi * j) / std::sqrt(L);
    const double arg_a = kPi * j * (a + L) / (2.0 * L);
    const double arg_b = kPi * j * (b + L) / (2.0 * L);
    return c * (std::cos(arg_a) - std::cos(arg_b));
}

} // namespace qhsq
