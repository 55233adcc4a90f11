// qhsq_main.cpp
// Command-line interface: single quadrature estimates, the two experiment
// figures, and the oracle-equivalence selftest.

#include <CLI11.hpp>
#include <iostream>

#include "qhsq/experiment.hpp"

namespace {

using qhsq::harness::ConfigOverrides;
using qhsq::harness::ExperimentConfig;

struct CommonFlags {
    std::string config_path;
    ConfigOverrides ov;
    bool paper = false;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool rank_list) {
    cmd->add_option("--config", f.config_path, "flat key = value config file");
    auto opt = [&](const char* name, auto& slot, const char* help) {
        using T = typename std::decay_t<decltype(slot)>::value_type;
        cmd->add_option_function<T>(name, [&slot](const T& v) { slot = v; }, help);
    };
    opt("--seed", f.ov.seed, "experiment seed");
    opt("--tau", f.ov.tau, "eigenvalue-register width");
    opt("--shots", f.ov.shots, "shots per circuit execution");
    if (rank_list) opt("--rank", f.ov.ranks, "rank list (repeat or comma-separate)");
    opt("--out", f.ov.out_dir, "output directory");
    opt("--n", f.ov.N, "number of evaluation points");
    opt("--sigma", f.ov.sigma, "observation-noise standard deviation");
    cmd->add_flag_function("--exact", [&f](std::int64_t) { f.ov.exact = true; },
                           "exact probabilities instead of shot sampling");
}

ExperimentConfig resolve(const CommonFlags& f, bool test_scale_default) {
    ExperimentConfig cfg;
    if (!f.config_path.empty()) {
        cfg = qhsq::harness::parse_config_file(f.config_path);
    } else if (test_scale_default && !f.paper) {
        cfg.apply_test_scale();
    }
    qhsq::harness::apply_overrides(cfg, f.ov);
    return cfg;
}

void print_row(const qhsq::harness::ResultRow& row) {
    std::cout << qhsq::harness::rows_to_csv({row});
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian process quadrature with a simulated quantum low-rank estimator"};
    app.require_subcommand(1);

    CommonFlags quad_flags, fig4_flags, fig5_flags;
    int quad_rank = 4;

    auto* quad = app.add_subcommand("quad", "single quadrature estimates");
    quad->require_subcommand(1);
    auto* quad_classical = quad->add_subcommand("classical", "full-rank GP quadrature");
    auto* quad_hsq = quad->add_subcommand("hsq", "low-rank Hilbert-space quadrature");
    auto* quad_quantum = quad->add_subcommand("quantum", "quantum low-rank quadrature");
    for (auto* c : {quad_classical, quad_hsq, quad_quantum}) add_common(c, quad_flags, false);
    quad_quantum->add_option("--rank", quad_rank, "truncation rank R");

    auto* exp = app.add_subcommand("experiment", "multi-cell experiments with persisted results");
    exp->require_subcommand(1);
    auto* fig4 = exp->add_subcommand("fig4", "quadrature distributions at fixed N");
    auto* fig5 = exp->add_subcommand("fig5", "mean/variance against N");
    add_common(fig4, fig4_flags, true);
    add_common(fig5, fig5_flags, true);
    fig4->add_flag("--paper", fig4_flags.paper, "paper-scale profile (tau=16, 1e6 shots)");
    fig5->add_flag("--paper", fig5_flags.paper, "paper-scale profile (tau=16, 1e6 shots)");
    std::vector<int> n_list{2, 4, 6, 8, 10, 12};
    fig5->add_option("--nlist", n_list, "N values for the sweep");

    auto* selftest = app.add_subcommand("selftest", "run the oracle-equivalence checks");

    try {
        app.parse(argc, argv);

        if (selftest->parsed()) {
            return qhsq::harness::selftest() == 0 ? 0 : 1;
        }
        if (quad->parsed()) {
            const ExperimentConfig cfg = resolve(quad_flags, false);
            qhsq::harness::Method m = qhsq::harness::Method::GPQ;
            if (quad_hsq->parsed()) m = qhsq::harness::Method::HSQ;
            if (quad_quantum->parsed()) m = qhsq::harness::Method::QHSQ;
            print_row(qhsq::harness::run_single(cfg, m, quad_rank));
            return 0;
        }
        if (fig4->parsed()) {
            const ExperimentConfig cfg = resolve(fig4_flags, true);
            const auto out = qhsq::harness::run_figure4(cfg);
            for (const auto& f : out.files) std::cout << "wrote " << f << "\n";
            return 0;
        }
        if (fig5->parsed()) {
            const ExperimentConfig cfg = resolve(fig5_flags, true);
            const auto out = qhsq::harness::run_figure5(cfg, n_list);
            for (const auto& f : out.files) std::cout << "wrote " << f << "\n";
            return 0;
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const qhsq::ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 2;
    } catch (const qhsq::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
