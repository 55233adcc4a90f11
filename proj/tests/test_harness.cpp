#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>

#include "qhsq/design.hpp"
#include "qhsq/experiment.hpp"

using namespace qhsq;
using namespace qhsq::harness;

namespace {

ExperimentConfig smoke_config(const std::string& out_name) {
    ExperimentConfig cfg;
    cfg.tau = 6;
    cfg.shots = 2000;
    cfg.N = 4;
    cfg.ranks = {1, 2};
    cfg.epsilons = {0.15, 0.1};
    cfg.seed = 9;
    cfg.out_dir = (std::filesystem::temp_directory_path() / out_name).string();
    return cfg;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

} // namespace

TEST_SUITE("harness") {

TEST_CASE("config defaults match the study parameters") {
    ExperimentConfig cfg;
    CHECK(cfg.L == doctest::Approx(std::numbers::pi));
    CHECK(cfg.M == 4);
    CHECK(cfg.N == 8);
    CHECK(cfg.sigma_f == 1.0);
    CHECK(cfg.ell == 1.0);
    CHECK(cfg.sigma == 0.05);
    CHECK(cfg.tau == 16);
    CHECK(cfg.shots == 1000000);
    CHECK(cfg.ranks == std::vector<int>{1, 2, 3, 4});
    CHECK(cfg.epsilons == std::vector<double>{0.01, 0.009, 0.008, 0.007, 0.006});
}

TEST_CASE("config round-trips through serialization") {
    ExperimentConfig cfg;
    cfg.tau = 11;
    cfg.shots = 1234;
    cfg.ranks = {2, 3};
    cfg.epsilons = {0.02, 0.5};
    cfg.seed = 77;
    cfg.exact = true;
    cfg.out_dir = "results";
    const ExperimentConfig back = parse_config_text(serialize_config(cfg));
    CHECK(back.tau == cfg.tau);
    CHECK(back.shots == cfg.shots);
    CHECK(back.ranks == cfg.ranks);
    CHECK(back.epsilons == cfg.epsilons);
    CHECK(back.seed == cfg.seed);
    CHECK(back.exact == cfg.exact);
    CHECK(back.out_dir == cfg.out_dir);
    CHECK(back.L == cfg.L);
    // serialize(parse(text)) is stable
    CHECK(serialize_config(back) == serialize_config(cfg));
}

TEST_CASE("config files accept comments and reject junk") {
    const ExperimentConfig cfg = parse_config_text("# comment\n tau = 9 \nshots=5\n");
    CHECK(cfg.tau == 9);
    CHECK(cfg.shots == 5);
    CHECK_THROWS_AS(parse_config_text("nonsense_key = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("tau nine\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("tau = nine\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("tau = 0\n"), ConfigError);
}

TEST_CASE("cli overrides win over file values") {
    ExperimentConfig cfg = parse_config_text("tau = 9\nseed = 5\n");
    ConfigOverrides ov;
    ov.tau = 12;
    ov.exact = true;
    apply_overrides(cfg, ov);
    CHECK(cfg.tau == 12);
    CHECK(cfg.seed == 5);
    CHECK(cfg.exact);
}

TEST_CASE("evaluation points are symmetric and interior") {
    const Eigen::VectorXd x = evaluation_points(8, std::numbers::pi);
    CHECK(x.size() == 8);
    for (int i = 0; i < 8; ++i) {
        CHECK(x[i] == doctest::Approx(-x[7 - i]).epsilon(1e-14));
        CHECK(std::abs(x[i]) < std::numbers::pi);
    }
    const Eigen::VectorXd single = evaluation_points(1, std::numbers::pi);
    CHECK(single[0] == doctest::Approx(0.0));
}

TEST_CASE("observations are deterministic per seed and follow the integrand") {
    ExperimentConfig cfg;
    cfg.sigma = 0.0;
    Eigen::VectorXd clean = observations(cfg);
    const Eigen::VectorXd x = evaluation_points(cfg.N, cfg.L);
    for (int i = 0; i < cfg.N; ++i) CHECK(clean[i] == doctest::Approx(integrand(x[i])));
    cfg.sigma = 0.05;
    const Eigen::VectorXd a = observations(cfg);
    const Eigen::VectorXd b = observations(cfg);
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
    cfg.seed = 124;
    const Eigen::VectorXd c = observations(cfg);
    CHECK((a - c).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("run_single GPQ passes through the classical quadrature") {
    ExperimentConfig cfg = smoke_config("qhsq_rs");
    const ResultRow row = run_single(cfg, Method::GPQ, 0);
    QuadratureProblem p;
    p.points = evaluation_points(cfg.N, cfg.L);
    p.observations = observations(cfg);
    p.domain_lo = -cfg.L;
    p.domain_hi = cfg.L;
    const QuadratureEstimate direct = gpq_full(p, KernelSpec{1.0, 1.0, cfg.sigma});
    CHECK(row.mean == direct.mean);
    CHECK(row.variance == direct.variance);
    CHECK(row.method == "GPQ");
}

TEST_CASE("run_single is reproducible per seed, bit for bit") {
    ExperimentConfig cfg = smoke_config("qhsq_rep");
    const ResultRow a = run_single(cfg, Method::QHSQ, 2);
    const ResultRow b = run_single(cfg, Method::QHSQ, 2);
    CHECK(a.mean == b.mean);
    CHECK(a.variance == b.variance);
    CHECK(a.delta == b.delta);
}

TEST_CASE("invalid method strings are rejected") {
    CHECK_THROWS_AS(method_from_string("banana"), ConfigError);
    CHECK(method_from_string("classical") == Method::GPQ);
    CHECK(method_from_string("hsq") == Method::HSQ);
    CHECK(method_from_string("quantum") == Method::QHSQ);
}

TEST_CASE("csv round-trips the result rows") {
    ResultRow r;
    r.method = "QHSQ";
    r.R = 3;
    r.N = 8;
    r.delta = 0.4627911590776764;
    r.seed = 123;
    r.mean = 5.375135254077;
    r.variance = 0.0126833391;
    r.wall_ms = 17.25;
    const auto back = rows_from_csv(rows_to_csv({r}));
    REQUIRE(back.size() == 1);
    CHECK(back[0].method == r.method);
    CHECK(back[0].R == r.R);
    CHECK(back[0].N == r.N);
    CHECK(back[0].delta == r.delta);
    CHECK(back[0].seed == r.seed);
    CHECK(back[0].mean == r.mean);
    CHECK(back[0].variance == r.variance);
}

TEST_CASE("figure 4 writes the table, plot, and manifest") {
    ExperimentConfig cfg = smoke_config("qhsq_fig4");
    const ExperimentOutput out = run_figure4(cfg);
    CHECK(out.rows.size() == 2 + 2 * 2); // GPQ, HSQ, QHSQ {R} x {eps}
    for (const auto& f : out.files) CHECK(std::filesystem::exists(f));

    const std::string csv = slurp(cfg.out_dir + "/fig4_results.csv");
    const auto rows = rows_from_csv(csv);
    CHECK(rows.size() == out.rows.size());

    const std::string svg = slurp(cfg.out_dir + "/fig4.svg");
    CHECK(svg.find("GPQ") != std::string::npos);
    CHECK(svg.find("HSQ") != std::string::npos);
    CHECK(svg.find("QHSQ R=1") != std::string::npos);
    CHECK(svg.find("QHSQ R=2") != std::string::npos);

    // plots are pure views of the persisted table
    CHECK(figure4_svg(rows) == svg);

    // bit-identical numeric fields on a re-run (wall time excluded)
    const ExperimentOutput out2 = run_figure4(cfg);
    REQUIRE(out2.rows.size() == out.rows.size());
    for (std::size_t i = 0; i < out.rows.size(); ++i) {
        CHECK(out.rows[i].mean == out2.rows[i].mean);
        CHECK(out.rows[i].variance == out2.rows[i].variance);
        CHECK(out.rows[i].delta == out2.rows[i].delta);
    }
    std::filesystem::remove_all(cfg.out_dir);
}

TEST_CASE("figure 5 sweeps N and keeps the classical variances monotone") {
    ExperimentConfig cfg = smoke_config("qhsq_fig5");
    cfg.exact = true;
    const std::vector<int> ns{2, 4, 6};
    const ExperimentOutput out = run_figure5(cfg, ns);
    for (const auto& f : out.files) CHECK(std::filesystem::exists(f));

    double prev_g = 1e300, prev_h = 1e300;
    for (int n : ns) {
        bool found_g = false, found_h = false;
        for (const auto& r : out.rows) {
            if (r.N != n) continue;
            if (r.method == "GPQ") {
                CHECK(r.variance < prev_g);
                prev_g = r.variance;
                found_g = true;
            }
            if (r.method == "HSQ") {
                CHECK(r.variance < prev_h);
                prev_h = r.variance;
                found_h = true;
            }
        }
        CHECK(found_g);
        CHECK(found_h);
    }
    const std::string mean_svg = slurp(cfg.out_dir + "/fig5_mean.svg");
    CHECK(figure5_svg(out.rows, false) == mean_svg);
    CHECK(mean_svg.find("true value") != std::string::npos);
    std::filesystem::remove_all(cfg.out_dir);

    CHECK_THROWS_AS(run_figure5(cfg, {}), ConfigError);
    CHECK_THROWS_AS(run_figure5(cfg, {0}), ConfigError);
}

TEST_CASE("N=2 runs without error and carries a wide variance") {
    ExperimentConfig cfg = smoke_config("qhsq_n2");
    cfg.N = 2;
    cfg.exact = true;
    const ResultRow g = run_single(cfg, Method::GPQ, 0);
    CHECK(g.variance > 1.0);
    const ResultRow q = run_single(cfg, Method::QHSQ, 4); // rank clamps to 2
    CHECK(q.R == 2);
}

TEST_CASE("selftest passes") { CHECK(selftest() == 0); }

} // TEST_SUITE
