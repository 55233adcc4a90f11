#include "qhsq/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "qhsq/design.hpp"
#include "qhsq/quantum_quadrature.hpp"
#include "qhsq/svg.hpp"

namespace qhsq::harness {

namespace {

constexpr double kTruth = 2.0 * std::numbers::pi; // integral of 1 + sin over [-pi, pi]

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) { return splitmix64(a ^ splitmix64(b)); }

KernelSpec kernel_spec(const ExperimentConfig& cfg) { return {cfg.sigma_f, cfg.ell, cfg.sigma}; }

QuadratureProblem make_problem(const ExperimentConfig& cfg) {
    QuadratureProblem p;
    p.points = evaluation_points(cfg.N, cfg.L);
    p.observations = observations(cfg);
    p.domain_lo = -cfg.L;
    p.domain_hi = cfg.L;
    return p;
}

int auto_workers(const ExperimentConfig& cfg) {
    if (cfg.workers > 0) return cfg.workers;
    if (cfg.tau >= 14) return 1; // large statevectors; keep memory bounded
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp<unsigned>(hw, 1, 4));
}

void run_pool(std::vector<std::function<void()>>& tasks, int workers) {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            tasks[i]();
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path);
    out << content;
}

std::string manifest_json(const ExperimentConfig& cfg, const std::vector<std::string>& files,
                          const std::string& command) {
    nlohmann::json j;
    j["tool"] = "qhsq";
    j["command"] = command;
    j["true_value"] = kTruth;
    j["config"]["L"] = cfg.L;
    j["config"]["M"] = cfg.M;
    j["config"]["N"] = cfg.N;
    j["config"]["sigma_f"] = cfg.sigma_f;
    j["config"]["ell"] = cfg.ell;
    j["config"]["sigma"] = cfg.sigma;
    j["config"]["tau"] = cfg.tau;
    j["config"]["shots"] = cfg.shots;
    j["config"]["ranks"] = cfg.ranks;
    j["config"]["epsilons"] = cfg.epsilons;
    j["config"]["seed"] = cfg.seed;
    j["config"]["exact"] = cfg.exact;
    j["files"] = files;
    return j.dump(2) + "\n";
}

struct MedianPoint {
    double mean = 0.0;
    double variance = 0.0;
};

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Median over the delta sweep of a rank's QHSQ rows.
std::optional<MedianPoint> qhsq_median(const std::vector<ResultRow>& rows, int R, int N) {
    std::vector<double> means, vars;
    for (const auto& r : rows) {
        if (r.method == "QHSQ" && r.R == R && r.N == N) {
            means.push_back(r.mean);
            vars.push_back(r.variance);
        }
    }
    if (means.empty()) return std::nullopt;
    return MedianPoint{median(means), median(vars)};
}

const ResultRow* find_row(const std::vector<ResultRow>& rows, const std::string& method, int N) {
    for (const auto& r : rows) {
        if (r.method == method && r.N == N) return &r;
    }
    return nullptr;
}

void sort_rows(std::vector<ResultRow>& rows) {
    std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        return std::tie(a.N, a.method, a.R, a.delta) < std::tie(b.N, b.method, b.R, b.delta);
    });
}

const char* kQhsqColors[] = {"#1b9e4b", "#2bbf5e", "#44aa77", "#137a3a",
                             "#66c286", "#0f5c2d"};

} // namespace

Method method_from_string(const std::string& s) {
    if (s == "GPQ" || s == "gpq" || s == "classical") return Method::GPQ;
    if (s == "HSQ" || s == "hsq") return Method::HSQ;
    if (s == "QHSQ" || s == "qhsq" || s == "quantum") return Method::QHSQ;
    throw ConfigError("unknown method '" + s + "'");
}

std::string to_string(Method m) {
    switch (m) {
        case Method::GPQ: return "GPQ";
        case Method::HSQ: return "HSQ";
        case Method::QHSQ: return "QHSQ";
    }
    return "?";
}

Eigen::VectorXd evaluation_points(int N, double L) {
    // midpoints of N equal cells: symmetric about 0 and strictly inside
    // (-L, L), where the basis functions are nonzero
    Eigen::VectorXd x(N);
    for (int i = 0; i < N; ++i) {
        x[i] = -L + 2.0 * L * (i + 0.5) / N;
    }
    return x;
}

double integrand(double x) { return 1.0 + std::sin(x); }

Eigen::VectorXd observations(const ExperimentConfig& cfg) {
    const Eigen::VectorXd x = evaluation_points(cfg.N, cfg.L);
    std::mt19937_64 gen(mix(cfg.seed, static_cast<std::uint64_t>(cfg.N)));
    std::normal_distribution<double> noise(0.0, cfg.sigma);
    Eigen::VectorXd y(cfg.N);
    for (int i = 0; i < cfg.N; ++i) y[i] = integrand(x[i]) + noise(gen);
    return y;
}

ResultRow run_single(const ExperimentConfig& cfg, Method method, int R, int eps_index) {
    cfg.validate();
    if (eps_index < 0 || eps_index >= static_cast<int>(cfg.epsilons.size())) {
        throw ConfigError("run_single: epsilon index out of range");
    }
    const auto t0 = std::chrono::steady_clock::now();
    const KernelSpec spec = kernel_spec(cfg);
    const QuadratureProblem problem = make_problem(cfg);
    const HilbertBasis basis(cfg.L, cfg.M);

    ResultRow row;
    row.method = to_string(method);
    row.N = cfg.N;
    row.seed = cfg.seed;

    switch (method) {
        case Method::GPQ: {
            const QuadratureEstimate est = gpq_full(problem, spec);
            row.mean = est.mean;
            row.variance = est.variance;
            break;
        }
        case Method::HSQ: {
            const QuadratureEstimate est = hsq(problem, basis, spec);
            row.mean = est.mean;
            row.variance = est.variance;
            break;
        }
        case Method::QHSQ: {
            const DesignMatrices design = build_design(problem, basis, spec);
            const SvdForm svd = svd_of(design.X);
            const int r_eff = std::min(R, svd.rank);
            const double eps = cfg.epsilons[static_cast<std::size_t>(eps_index)];
            const EncodingResult enc = encode_psi_x(design, r_eff);
            const QpeConfig qcfg = choose_constants(enc, cfg.sigma, cfg.tau, eps);
            const std::uint64_t shots = cfg.exact ? 0 : cfg.shots;
            const std::uint64_t mseed =
                mix(cfg.seed, mix(0x6d65616e, mix(static_cast<std::uint64_t>(r_eff),
                                                  mix(static_cast<std::uint64_t>(cfg.N),
                                                      static_cast<std::uint64_t>(eps_index)))));
            const std::uint64_t vseed =
                mix(cfg.seed, mix(0x76617269, mix(static_cast<std::uint64_t>(r_eff),
                                                  mix(static_cast<std::uint64_t>(cfg.N),
                                                      static_cast<std::uint64_t>(eps_index)))));
            const QuadratureEstimate qm =
                estimate_mean(design, problem.observations, enc, qcfg, shots, mseed);
            const QuadratureEstimate qv = estimate_variance(design, enc, qcfg, shots, vseed);
            row.R = r_eff;
            row.delta = qcfg.delta;
            row.mean = qm.mean;
            row.variance = qv.variance;
            break;
        }
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                      .count();
    return row;
}

ExperimentOutput run_figure4(const ExperimentConfig& cfg) {
    cfg.validate();
    struct Cell {
        Method method;
        int R;
        int eps_index;
    };
    std::vector<Cell> cells{{Method::GPQ, 0, 0}, {Method::HSQ, 0, 0}};
    for (int R : cfg.ranks) {
        for (int e = 0; e < static_cast<int>(cfg.epsilons.size()); ++e) {
            cells.push_back({Method::QHSQ, R, e});
        }
    }
    std::vector<ResultRow> rows(cells.size());
    std::vector<std::function<void()>> tasks;
    tasks.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        tasks.push_back([&, i] { rows[i] = run_single(cfg, cells[i].method, cells[i].R,
                                                      cells[i].eps_index); });
    }
    run_pool(tasks, auto_workers(cfg));
    sort_rows(rows);

    std::filesystem::create_directories(cfg.out_dir);
    ExperimentOutput out;
    out.rows = rows;
    const std::string csv_path = cfg.out_dir + "/fig4_results.csv";
    const std::string svg_path = cfg.out_dir + "/fig4.svg";
    const std::string man_path = cfg.out_dir + "/fig4_manifest.json";
    write_file(csv_path, rows_to_csv(rows));
    write_file(svg_path, figure4_svg(rows));
    out.files = {csv_path, svg_path, man_path};
    write_file(man_path, manifest_json(cfg, out.files, "experiment fig4"));
    return out;
}

ExperimentOutput run_figure5(const ExperimentConfig& cfg, const std::vector<int>& n_values) {
    cfg.validate();
    if (n_values.empty()) throw ConfigError("run_figure5: empty N list");
    for (int n : n_values) {
        if (n < 1) throw ConfigError("run_figure5: N must be >= 1");
    }
    struct Cell {
        int N;
        Method method;
        int R;
        int eps_index;
    };
    std::vector<Cell> cells;
    for (int n : n_values) {
        cells.push_back({n, Method::GPQ, 0, 0});
        cells.push_back({n, Method::HSQ, 0, 0});
        for (int R : cfg.ranks) {
            for (int e = 0; e < static_cast<int>(cfg.epsilons.size()); ++e) {
                cells.push_back({n, Method::QHSQ, R, e});
            }
        }
    }
    std::vector<ResultRow> rows(cells.size());
    std::vector<std::function<void()>> tasks;
    tasks.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        tasks.push_back([&, i] {
            ExperimentConfig c = cfg;
            c.N = cells[i].N;
            rows[i] = run_single(c, cells[i].method, cells[i].R, cells[i].eps_index);
        });
    }
    run_pool(tasks, auto_workers(cfg));
    sort_rows(rows);

    std::filesystem::create_directories(cfg.out_dir);
    ExperimentOutput out;
    out.rows = rows;
    const std::string csv_path = cfg.out_dir + "/fig5_results.csv";
    const std::string mean_path = cfg.out_dir + "/fig5_mean.svg";
    const std::string var_path = cfg.out_dir + "/fig5_variance.svg";
    const std::string man_path = cfg.out_dir + "/fig5_manifest.json";
    write_file(csv_path, rows_to_csv(rows));
    write_file(mean_path, figure5_svg(rows, false));
    write_file(var_path, figure5_svg(rows, true));
    out.files = {csv_path, mean_path, var_path, man_path};
    write_file(man_path, manifest_json(cfg, out.files, "experiment fig5"));
    return out;
}

std::string rows_to_csv(const std::vector<ResultRow>& rows) {
    std::ostringstream os;
    os.precision(17);
    os << "method,R,N,delta,seed,mean,variance,wall_ms\n";
    for (const auto& r : rows) {
        os << r.method << ',' << r.R << ',' << r.N << ',' << r.delta << ',' << r.seed << ','
           << r.mean << ',' << r.variance << ',' << r.wall_ms << "\n";
    }
    return os.str();
}

std::vector<ResultRow> rows_from_csv(const std::string& csv) {
    std::vector<ResultRow> rows;
    std::stringstream ss(csv);
    std::string line;
    bool header = true;
    while (std::getline(ss, line)) {
        if (header) {
            header = false;
            continue;
        }
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::string f;
        ResultRow r;
        std::getline(ls, r.method, ',');
        std::getline(ls, f, ',');
        r.R = std::stoi(f);
        std::getline(ls, f, ',');
        r.N = std::stoi(f);
        std::getline(ls, f, ',');
        r.delta = std::stod(f);
        std::getline(ls, f, ',');
        r.seed = std::stoull(f);
        std::getline(ls, f, ',');
        r.mean = std::stod(f);
        std::getline(ls, f, ',');
        r.variance = std::stod(f);
        std::getline(ls, f, ',');
        r.wall_ms = std::stod(f);
        rows.push_back(r);
    }
    return rows;
}

std::string figure4_svg(const std::vector<ResultRow>& rows) {
    SvgFigure fig;
    fig.title = "Quadrature distributions, f(x) = 1 + sin(x) on [-pi, pi]";
    fig.x_label = "integral estimate";
    fig.y_label = "density";
    fig.vlines = {kTruth};

    struct Curve {
        std::string label, color, dash;
        double mean, var;
    };
    std::vector<Curve> curves;
    int N = 0;
    for (const auto& r : rows) {
        if (N == 0) N = r.N;
    }
    if (const ResultRow* g = find_row(rows, "GPQ", N)) {
        curves.push_back({"GPQ", "#000000", "2,3", g->mean, g->variance});
    }
    if (const ResultRow* h = find_row(rows, "HSQ", N)) {
        curves.push_back({"HSQ", "#cc2222", "7,4", h->mean, h->variance});
    }
    std::vector<int> ranks;
    for (const auto& r : rows) {
        if (r.method == "QHSQ" && std::find(ranks.begin(), ranks.end(), r.R) == ranks.end()) {
            ranks.push_back(r.R);
        }
    }
    std::sort(ranks.begin(), ranks.end());
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        if (auto mp = qhsq_median(rows, ranks[i], N)) {
            curves.push_back({"QHSQ R=" + std::to_string(ranks[i]),
                              kQhsqColors[i % std::size(kQhsqColors)], "", mp->mean,
                              mp->variance});
        }
    }

    for (const auto& c : curves) {
        const double sd = std::sqrt(std::max(c.var, 1e-12));
        SvgSeries s;
        s.label = c.label;
        s.color = c.color;
        s.dash = c.dash;
        const double lo = c.mean - 4 * sd, hi = c.mean + 4 * sd;
        for (int i = 0; i <= 300; ++i) {
            const double x = lo + (hi - lo) * i / 300.0;
            const double z = (x - c.mean) / sd;
            s.points.emplace_back(x, std::exp(-0.5 * z * z) / (sd * std::sqrt(2 * std::numbers::pi)));
        }
        fig.series.push_back(std::move(s));
    }
    return fig.render();
}

std::string figure5_svg(const std::vector<ResultRow>& rows, bool variance_panel) {
    SvgFigure fig;
    fig.title = variance_panel ? "Quadrature variance vs evaluation points"
                               : "Quadrature mean vs evaluation points";
    fig.x_label = "evaluation points N";
    fig.y_label = variance_panel ? "variance" : "mean";
    if (!variance_panel) fig.vlines = {};

    std::vector<int> ns;
    for (const auto& r : rows) {
        if (std::find(ns.begin(), ns.end(), r.N) == ns.end()) ns.push_back(r.N);
    }
    std::sort(ns.begin(), ns.end());

    auto classical_series = [&](const std::string& method, const std::string& color,
                                const std::string& dash) {
        SvgSeries s;
        s.label = method;
        s.color = color;
        s.dash = dash;
        s.markers = true;
        for (int n : ns) {
            if (const ResultRow* r = find_row(rows, method, n)) {
                s.points.emplace_back(n, variance_panel ? r->variance : r->mean);
            }
        }
        return s;
    };
    fig.series.push_back(classical_series("GPQ", "#000000", "2,3"));
    fig.series.push_back(classical_series("HSQ", "#cc2222", "7,4"));

    std::vector<int> ranks;
    for (const auto& r : rows) {
        if (r.method == "QHSQ" && std::find(ranks.begin(), ranks.end(), r.R) == ranks.end()) {
            ranks.push_back(r.R);
        }
    }
    std::sort(ranks.begin(), ranks.end());
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        SvgSeries s;
        s.label = "QHSQ R=" + std::to_string(ranks[i]);
        s.color = kQhsqColors[i % std::size(kQhsqColors)];
        s.markers = true;
        for (int n : ns) {
            if (auto mp = qhsq_median(rows, ranks[i], n)) {
                s.points.emplace_back(n, variance_panel ? mp->variance : mp->mean);
            }
        }
        fig.series.push_back(std::move(s));
    }
    if (!variance_panel) {
        SvgSeries truth;
        truth.label = "true value";
        truth.color = "#888888";
        truth.dash = "3,3";
        truth.points = {{static_cast<double>(ns.front()), kTruth},
                        {static_cast<double>(ns.back()), kTruth}};
        fig.series.insert(fig.series.begin(), std::move(truth));
    }
    return fig.render();
}

int selftest() {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok, const std::string& detail = "") {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << name;
        if (!detail.empty()) std::cout << " (" << detail << ")";
        std::cout << "\n";
        if (!ok) ++failures;
    };

    ExperimentConfig cfg;
    cfg.apply_test_scale();
    cfg.exact = true;
    cfg.epsilons = {0.15};
    const KernelSpec spec = kernel_spec(cfg);
    const QuadratureProblem problem = make_problem(cfg);
    const HilbertBasis basis(cfg.L, cfg.M);
    const DesignMatrices design = build_design(problem, basis, spec);

    // Phi-form vs X-form quadrature identity
    {
        const QuadratureEstimate h = hsq(problem, basis, spec);
        Eigen::MatrixXd A = design.X.transpose() * design.X;
        A.diagonal().array() += spec.sigma * spec.sigma;
        const Eigen::VectorXd sol = A.ldlt().solve(design.X.transpose() * problem.observations);
        const double mean_x = design.X_mu.dot(sol);
        check("phi-form vs x-form mean", std::abs(h.mean - mean_x) < 1e-10,
              "d=" + std::to_string(std::abs(h.mean - mean_x)));
    }
    // svd_quadrature at full rank reproduces hsq
    {
        const QuadratureEstimate h = hsq(problem, basis, spec);
        const SvdForm svd = svd_of(design.X);
        const QuadratureEstimate s = svd_quadrature(design, problem.observations, spec, svd.rank);
        check("svd full-rank vs hsq",
              std::abs(h.mean - s.mean) < 1e-10 && std::abs(h.variance - s.variance) < 1e-10);
    }
    // exact-mode oracle equivalence at the test profile
    {
        double worst_q = 0.0, worst_v = 0.0;
        for (int R : cfg.ranks) {
            const ResultRow row = run_single(cfg, Method::QHSQ, R, 0);
            const QuadratureEstimate s = svd_quadrature(design, problem.observations, spec, R);
            worst_q = std::max(worst_q, std::abs(row.mean - s.mean));
            worst_v = std::max(worst_v, std::abs(row.variance - s.variance));
        }
        check("exact-mode circuit vs classical truncation (tau=10)",
              worst_q < 5e-3 && worst_v < 5e-3,
              "worst dQ=" + std::to_string(worst_q) + " dV=" + std::to_string(worst_v));
    }
    // Hadamard and SWAP test identities on random states
    {
        std::mt19937_64 gen(7);
        std::normal_distribution<double> nd;
        bool ok = true;
        for (int trial = 0; trial < 20; ++trial) {
            Eigen::VectorXd v1(8), v2(8);
            for (int i = 0; i < 8; ++i) {
                v1[i] = nd(gen);
                v2[i] = nd(gen);
            }
            v1.normalize();
            v2.normalize();
            const auto e1 = sim::amplitude_encode(v1, {{"r", 3}});
            const auto e2 = sim::amplitude_encode(v2, {{"r", 3}});
            const double dot = v1.dot(v2);
            ok = ok &&
                 std::abs(sim::hadamard_test(e1.state, e2.state).estimate - dot) < 1e-10 &&
                 std::abs(sim::swap_test(e1.state, e2.state).estimate - dot * dot) < 1e-10;
        }
        check("hadamard/swap test identities", ok);
    }
    std::cout << (failures == 0 ? "selftest: all checks passed\n"
                                : "selftest: " + std::to_string(failures) + " checks FAILED\n");
    return failures;
}

} // namespace qhsq::harness
