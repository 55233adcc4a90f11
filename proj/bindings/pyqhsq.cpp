// pyqhsq.cpp
// Python bindings for the main quadrature operations and a few simulator
// primitives used by the smoke tests.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qhsq/circuits.hpp"
#include "qhsq/design.hpp"
#include "qhsq/experiment.hpp"
#include "qhsq/measure.hpp"
#include "qhsq/quantum_quadrature.hpp"

namespace py = pybind11;
using namespace qhsq;

namespace {

QuadratureProblem make_problem(const Eigen::VectorXd& points, const Eigen::VectorXd& y,
                               double lo, double hi) {
    QuadratureProblem p;
    p.points = points;
    p.observations = y;
    p.domain_lo = lo;
    p.domain_hi = hi;
    return p;
}

py::dict estimate_to_dict(const QuadratureEstimate& est) {
    py::dict d;
    d["mean"] = est.mean;
    d["variance"] = est.variance;
    d["method"] = est.method;
    d["rank"] = est.rank;
    d["delta"] = est.delta;
    d["shots"] = est.shots;
    d["seed"] = est.seed;
    return d;
}

} // namespace

PYBIND11_MODULE(pyqhsq, m) {
    m.doc() = "Gaussian process quadrature with a simulated quantum low-rank estimator";

    py::register_exception<ConfigError>(m, "QhsqConfigError", PyExc_ValueError);
    py::register_exception<SolverError>(m, "QhsqSolverError", PyExc_RuntimeError);
    py::register_exception<ResourceLimitError>(m, "QhsqResourceLimitError", PyExc_MemoryError);

    py::class_<KernelSpec>(m, "KernelSpec")
        .def(py::init<double, double, double>(), py::arg("sigma_f") = 1.0, py::arg("ell") = 1.0,
             py::arg("sigma") = 0.05)
        .def_readwrite("sigma_f", &KernelSpec::sigma_f)
        .def_readwrite("ell", &KernelSpec::ell)
        .def_readwrite("sigma", &KernelSpec::sigma);

    m.def("se_kernel", &se_kernel, py::arg("x"), py::arg("x2"), py::arg("spec"));
    m.def("spectral_density", &spectral_density, py::arg("omega"), py::arg("spec"));
    m.def(
        "eigenfunction",
        [](int j, double x, double L, int M) { return HilbertBasis(L, M).eigenfunction(j, x); },
        py::arg("j"), py::arg("x"), py::arg("L"), py::arg("M"));
    m.def(
        "eigenvalue", [](int j, double L, int M) { return HilbertBasis(L, M).eigenvalue(j); },
        py::arg("j"), py::arg("L"), py::arg("M"));
    m.def(
        "kernel_approx",
        [](double x, double x2, double L, int M, const KernelSpec& spec) {
            return kernel_approx(x, x2, HilbertBasis(L, M), spec);
        },
        py::arg("x"), py::arg("x2"), py::arg("L"), py::arg("M"), py::arg("spec"));

    m.def(
        "gpq_full",
        [](const Eigen::VectorXd& points, const Eigen::VectorXd& y, const KernelSpec& spec,
           double lo, double hi) {
            return estimate_to_dict(gpq_full(make_problem(points, y, lo, hi), spec));
        },
        py::arg("points"), py::arg("y"), py::arg("spec"), py::arg("lo"), py::arg("hi"));

    m.def(
        "hsq",
        [](const Eigen::VectorXd& points, const Eigen::VectorXd& y, double L, int M,
           const KernelSpec& spec, double lo, double hi) {
            return estimate_to_dict(hsq(make_problem(points, y, lo, hi), HilbertBasis(L, M), spec));
        },
        py::arg("points"), py::arg("y"), py::arg("L"), py::arg("M"), py::arg("spec"),
        py::arg("lo"), py::arg("hi"));

    m.def(
        "build_design",
        [](const Eigen::VectorXd& points, double L, int M, const KernelSpec& spec, double lo,
           double hi) {
            const DesignMatrices d = build_design(
                make_problem(points, Eigen::VectorXd::Zero(points.size()), lo, hi),
                HilbertBasis(L, M), spec);
            py::dict out;
            out["Phi"] = d.Phi;
            out["lambda_diag"] = d.lambda_diag;
            out["X"] = d.X;
            out["X_mu"] = d.X_mu;
            out["Phi_mu"] = d.Phi_mu;
            return out;
        },
        py::arg("points"), py::arg("L"), py::arg("M"), py::arg("spec"), py::arg("lo"),
        py::arg("hi"));

    m.def(
        "svd_quadrature",
        [](const Eigen::MatrixXd& X, const Eigen::VectorXd& X_mu, const Eigen::VectorXd& y,
           const KernelSpec& spec, int R) {
            DesignMatrices d;
            d.X = X;
            d.X_mu = X_mu;
            return estimate_to_dict(svd_quadrature(d, y, spec, R));
        },
        py::arg("X"), py::arg("X_mu"), py::arg("y"), py::arg("spec"), py::arg("R"));

    m.def(
        "qhsq_estimate",
        [](const Eigen::VectorXd& points, const Eigen::VectorXd& y, double L, int M,
           const KernelSpec& spec, double lo, double hi, int R, int tau, double epsilon,
           std::uint64_t shots, std::uint64_t seed) {
            const DesignMatrices d =
                build_design(make_problem(points, y, lo, hi), HilbertBasis(L, M), spec);
            const EncodingResult enc = encode_psi_x(d, R);
            const QpeConfig cfg = choose_constants(enc, spec.sigma, tau, epsilon);
            const QuadratureEstimate qm = estimate_mean(d, y, enc, cfg, shots, seed);
            const QuadratureEstimate qv = estimate_variance(d, enc, cfg, shots, seed + 1);
            py::dict out = estimate_to_dict(qm);
            out["variance"] = qv.variance;
            out["c1"] = cfg.c1;
            out["c2"] = cfg.c2;
            out["c_x"] = enc.c_x;
            return out;
        },
        py::arg("points"), py::arg("y"), py::arg("L"), py::arg("M"), py::arg("spec"),
        py::arg("lo"), py::arg("hi"), py::arg("R"), py::arg("tau"), py::arg("epsilon"),
        py::arg("shots") = 0, py::arg("seed") = 0);

    m.def(
        "qft",
        [](const Eigen::VectorXcd& amplitudes) {
            const int n = padded_width(amplitudes.size());
            if ((Eigen::Index{1} << n) != amplitudes.size()) {
                throw ConfigError("qft: amplitude length must be a power of two");
            }
            auto enc = sim::amplitude_encode(amplitudes, {{"q", n}});
            sim::qft(enc.state, "q");
            Eigen::VectorXcd out(amplitudes.size());
            for (Eigen::Index i = 0; i < out.size(); ++i) {
                out[i] = enc.state.amplitudes()[static_cast<std::size_t>(i)] * enc.norm;
            }
            return out;
        },
        py::arg("amplitudes"), "QFT of a normalized amplitude vector");

    m.def(
        "hadamard_test",
        [](const Eigen::VectorXd& v1, const Eigen::VectorXd& v2) {
            const int n = padded_width(v1.size());
            const auto s1 = sim::amplitude_encode(v1, {{"q", n}});
            const auto s2 = sim::amplitude_encode(v2, {{"q", n}});
            return sim::hadamard_test(s1.state, s2.state).p0;
        },
        py::arg("v1"), py::arg("v2"), "exact ancilla-zero probability");

    m.def(
        "swap_test",
        [](const Eigen::VectorXd& v1, const Eigen::VectorXd& v2) {
            const int n = padded_width(v1.size());
            const auto s1 = sim::amplitude_encode(v1, {{"q", n}});
            const auto s2 = sim::amplitude_encode(v2, {{"q", n}});
            return sim::swap_test(s1.state, s2.state).p0;
        },
        py::arg("v1"), py::arg("v2"), "exact ancilla-zero probability");

    m.def(
        "evaluation_points",
        [](int N, double L) { return harness::evaluation_points(N, L); }, py::arg("N"),
        py::arg("L"));
}
