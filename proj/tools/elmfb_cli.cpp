// Experiment runner: solve / sweep / fit / exact.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "elmfb/assembly.hpp"
#include "elmfb/error.hpp"
#include "elmfb/experiment.hpp"

namespace {

using elmfb::ExperimentConfig;

struct Overrides {
    std::string config_path;
    std::vector<std::pair<std::string, std::string>> settings;

    void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
        app->add_option_function<std::string>(
            flag, [this, key](const std::string& v) { settings.emplace_back(key, v); }, help);
    }

    ExperimentConfig build(ExperimentConfig config) const {
        if (!config_path.empty()) {
            elmfb::load_config_file(config_path, config);
        }
        for (const auto& [key, value] : settings) {
            elmfb::apply_setting(config, key, value);
        }
        config.validate();
        return config;
    }
};

void add_common(CLI::App* app, Overrides& o) {
    app->add_option("--config", o.config_path, "key = value config file (flags override it)");
    o.add(app, "--m,--mass", "mass", "oscillator mass");
    o.add(app, "--omega0", "omega0", "undamped angular frequency");
    o.add(app, "--delta", "delta", "damping rate");
    o.add(app, "--n-interior", "n_interior", "collocation points");
    o.add(app, "--n-test", "n_test", "test points");
    o.add(app, "--j", "J", "subdomain count");
    o.add(app, "--width", "width", "subdomain width or 'auto'");
    o.add(app, "--width-ratio", "width_ratio", "auto width = ratio * spacing");
    o.add(app, "--c", "C", "features per subdomain");
    o.add(app, "--freq-scale", "freq_scale", "weight half-range");
    o.add(app, "--activation", "activation", "sin or tanh");
    o.add(app, "--seed", "seed", "feature seed");
    o.add(app, "--rank-tol", "rank_tol", "relative singular value cutoff");
    o.add(app, "--out", "output_path", "CSV output path (stdout if omitted)");
}

// Writes via `emit` to config.output_path, or stdout.
template <class Emit>
void write_output(const std::string& path, Emit&& emit) {
    if (path.empty()) {
        emit(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw elmfb::Error(elmfb::ErrorCategory::ConfigParse, "cannot open output file '" + path + "'");
    }
    emit(out);
}

void report_run(const char* label, std::uint64_t seed, const elmfb::RunResult& r) {
    std::fprintf(stderr,
                 "%s seed=%llu l1_loss=%.6e residual=%.3e interior_residual=%.3e boundary_residual=%.3e rank=%lld "
                 "cond_normal=%.6e u(0)=%.9f du(0)=%.6e assemble_s=%.6f solve_s=%.6f training_s=%.6f\n",
                 label, static_cast<unsigned long long>(seed), r.l1_loss, r.report.residual_norm,
                 r.report.interior_residual, r.report.boundary_residual, static_cast<long long>(r.report.rank),
                 r.report.cond_normal, r.u_at_start, r.du_at_start, r.report.assemble_seconds,
                 r.report.solve_seconds, r.report.training_seconds());
}

std::vector<std::uint64_t> seeds_for(const ExperimentConfig& config, const std::string& seeds) {
    return seeds.empty() ? std::vector<std::uint64_t>{config.seed} : elmfb::parse_index_list(seeds);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ELM-FBPINN solver for linear 1D boundary-value problems"};
    app.require_subcommand(1);

    Overrides solve_opts, sweep_opts, fit_opts, exact_opts;
    std::string solve_seeds, fit_seeds, dump_path, j_list = "5..25", target_name = "sin2pi";
    bool no_timings = false;

    auto* solve_cmd = app.add_subcommand("solve", "solve the damped oscillator and write the solution table");
    add_common(solve_cmd, solve_opts);
    solve_cmd->add_option("--seeds", solve_seeds, "seed range a..b or list; reports the median loss");
    solve_cmd->add_option("--dump-system", dump_path, "write A and rhs as row/col/value triplets");

    auto* sweep_cmd = app.add_subcommand("sweep", "condition number and loss versus subdomain count");
    add_common(sweep_cmd, sweep_opts);
    sweep_cmd->add_option("--j-list", j_list, "subdomain counts, a..b or list");
    sweep_cmd->add_flag("--no-timings", no_timings, "write timing columns as 0");

    auto* fit_cmd = app.add_subcommand("fit", "plain function fit with the windowed feature basis");
    add_common(fit_cmd, fit_opts);
    fit_cmd->add_option("--target", target_name, "sin2pi, exact_oscillator or feature");
    fit_cmd->add_option("--seeds", fit_seeds, "seed range a..b or list; reports the median loss");

    auto* exact_cmd = app.add_subcommand("exact", "sample the exact oscillator solution");
    add_common(exact_cmd, exact_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (solve_cmd->parsed()) {
            const auto config = solve_opts.build(ExperimentConfig{});
            std::vector<double> losses;
            elmfb::RunResult first;
            bool have_first = false;
            for (const auto seed : seeds_for(config, solve_seeds)) {
                auto run_config = config;
                run_config.seed = seed;
                auto result = elmfb::run_oscillator(run_config);
                report_run("solve", seed, result);
                losses.push_back(result.l1_loss);
                if (!have_first) {
                    first = std::move(result);
                    have_first = true;
                }
            }
            std::fprintf(stderr, "median_l1_loss=%.6e over %zu seed(s)\n", elmfb::median(losses), losses.size());
            write_output(config.output_path, [&](std::ostream& out) { elmfb::write_solution_csv(out, first); });
            if (!dump_path.empty()) {
                const auto seeds = seeds_for(config, solve_seeds);
                auto dump_config = config;
                dump_config.seed = seeds.front();
                const auto problem = elmfb::oscillator_problem(dump_config.oscillator);
                const auto layout = elmfb::uniform_layout(
                    dump_config.subdomains, dump_config.width.resolve(dump_config.subdomains, 0.0, 1.0), 0.0, 1.0);
                const auto bank = elmfb::init_features(dump_config.subdomains, dump_config.features,
                                                       dump_config.freq_scale, dump_config.seed,
                                                       dump_config.activation);
                const auto points = elmfb::linspace(dump_config.n_interior, 0.0, 1.0);
                const auto weighted = elmfb::stack_weighted(elmfb::assemble(problem, layout, bank, points));
                write_output(dump_path, [&](std::ostream& out) { elmfb::write_triplets(out, weighted.A); });
                write_output(dump_path + ".rhs",
                             [&](std::ostream& out) { elmfb::write_triplets(out, Eigen::MatrixXd(weighted.rhs)); });
            }
        } else if (sweep_cmd->parsed()) {
            ExperimentConfig defaults;
            defaults.width.automatic = true;
            const auto config = sweep_opts.build(defaults);
            std::vector<std::size_t> counts;
            for (const auto j : elmfb::parse_index_list(j_list)) {
                counts.push_back(static_cast<std::size_t>(j));
            }
            const auto rows = elmfb::sweep_subdomains(config, counts);
            for (const auto& row : rows) {
                std::fprintf(stderr, "sweep J=%zu columns=%zu cond_normal=%.6e l1_loss=%.6e\n", row.subdomains,
                             row.columns, row.cond_normal, row.l1_loss);
            }
            write_output(config.output_path,
                         [&](std::ostream& out) { elmfb::write_sweep_csv(out, rows, !no_timings); });
        } else if (fit_cmd->parsed()) {
            const auto config = fit_opts.build(ExperimentConfig{});
            const auto target = elmfb::parse_fit_target(target_name);
            std::vector<double> losses;
            elmfb::RunResult first;
            bool have_first = false;
            for (const auto seed : seeds_for(config, fit_seeds)) {
                auto run_config = config;
                run_config.seed = seed;
                auto result = elmfb::fit_mode(run_config, target);
                report_run("fit", seed, result);
                losses.push_back(result.l1_loss);
                if (!have_first) {
                    first = std::move(result);
                    have_first = true;
                }
            }
            std::fprintf(stderr, "median_l1_loss=%.6e over %zu seed(s)\n", elmfb::median(losses), losses.size());
            write_output(config.output_path, [&](std::ostream& out) { elmfb::write_solution_csv(out, first); });
        } else if (exact_cmd->parsed()) {
            const auto config = exact_opts.build(ExperimentConfig{});
            write_output(config.output_path, [&](std::ostream& out) {
                elmfb::write_exact_csv(out, config.oscillator, config.n_test);
            });
        }
    } catch (const elmfb::Error& e) {
        std::fprintf(stderr, "error: %s: %s\n", std::string(elmfb::to_string(e.category())).c_str(), e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: internal: %s\n", e.what());
        return 3;
    }
    return 0;
}
