#include <doctest.h>

#include <cmath>
#include <random>

#include "qhsq/kernels.hpp"

using namespace qhsq;

TEST_SUITE("kernels") {

TEST_CASE("se kernel at zero lag equals the signal variance") {
    KernelSpec spec{1.0, 1.0, 0.0};
    CHECK(se_kernel(0.0, 0.0, spec) == doctest::Approx(1.0).epsilon(1e-14));
    KernelSpec spec2{1.5, 0.8, 0.0};
    CHECK(se_kernel(0.4, 0.4, spec2) == doctest::Approx(2.25).epsilon(1e-14));
}

TEST_CASE("se kernel at lag ell*sqrt(2) gives exp(-1)") {
    KernelSpec spec{1.0, 1.0, 0.0};
    CHECK(se_kernel(0.0, std::sqrt(2.0), spec) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("se kernel matches direct formula evaluation") {
    KernelSpec spec{1.5, 0.8, 0.0};
    CHECK(se_kernel(0.3, -0.7, spec) == doctest::Approx(1.0301250639861321).epsilon(1e-14));
}

TEST_CASE("se kernel is symmetric") {
    KernelSpec spec{1.3, 0.6, 0.0};
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 50; ++i) {
        const double a = u(gen), b = u(gen);
        CHECK(se_kernel(a, b, spec) == se_kernel(b, a, spec));
    }
}

TEST_CASE("spectral density at zero frequency") {
    KernelSpec spec{1.0, 1.0, 0.0};
    CHECK(spectral_density(0.0, spec) == doctest::Approx(2.5066282746310002).epsilon(1e-14));
}

TEST_CASE("spectral density is even and positive") {
    KernelSpec spec{0.9, 1.7, 0.0};
    std::mt19937_64 gen(13);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    for (int i = 0; i < 50; ++i) {
        const double w = u(gen);
        CHECK(spectral_density(w, spec) == spectral_density(-w, spec));
        CHECK(spectral_density(w, spec) > 0.0);
    }
}

TEST_CASE("spectral density matches direct formula evaluation") {
    KernelSpec spec{1.0, 0.5, 0.0};
    CHECK(spectral_density(2.0, spec) == doctest::Approx(0.7601734505331403).epsilon(1e-14));
}

TEST_CASE("invalid hyperparameters are rejected") {
    CHECK_THROWS_AS((KernelSpec{0.0, 1.0, 0.0}.validate()), ConfigError);
    CHECK_THROWS_AS((KernelSpec{1.0, -1.0, 0.0}.validate()), ConfigError);
    CHECK_THROWS_AS((KernelSpec{1.0, 1.0, -0.1}.validate()), ConfigError);
    CHECK_NOTHROW((KernelSpec{1.0, 1.0, 0.0}.validate()));
}

} // TEST_SUITE
