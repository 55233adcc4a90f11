#include "qhsq/encoding.hpp"

#include <cmath>

namespace qhsq {

int padded_width(Eigen::Index count) {
    int w = 1;
    while ((Eigen::Index{1} << w) < count) ++w;
    return w;
}

EncodingResult encode_psi_x(const DesignMatrices& design, int R) {
    const SvdForm svd = svd_of(design.X);
    if (svd.rank == 0) throw ConfigError("encode_psi_x: zero design matrix");
    if (R < 1 || R > svd.rank) throw ConfigError("encode_psi_x: R out of range [1, rank(X)]");

    const Eigen::Index N = design.X.rows();
    const Eigen::Index M = design.X.cols();
    Eigen::MatrixXd xr = svd.U.leftCols(R) * svd.singular_values.head(R).asDiagonal() *
                         svd.V.leftCols(R).transpose();
    const double c_x = xr.norm();

    const int nw = padded_width(N);
    const int mw = padded_width(M);
    const Eigen::Index np = Eigen::Index{1} << nw;
    const Eigen::Index mp = Eigen::Index{1} << mw;

    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(mp * np);
    for (Eigen::Index m = 0; m < M; ++m) {
        for (Eigen::Index n = 0; n < N; ++n) {
            amps[m * np + n] = xr(n, m) / c_x;
        }
    }

    EncodingResult enc{
        sim::StateVector::compose({{sim::Register{"m", mw},
                                    Eigen::VectorXcd(Eigen::VectorXcd::Unit(mp, 0))},
                                   {sim::Register{"n", nw},
                                    Eigen::VectorXcd(Eigen::VectorXcd::Unit(np, 0))}}),
        c_x,
        R,
        R < svd.rank,
        svd.singular_values.head(R) / c_x,
        svd.U.leftCols(R),
        svd.V.leftCols(R)};
    auto& a = enc.state.amplitudes();
    for (Eigen::Index i = 0; i < amps.size(); ++i) a[static_cast<std::size_t>(i)] = amps[i];
    return enc;
}

} // namespace qhsq
