#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "elmfb/features.hpp"
#include "elmfb/lsq.hpp"
#include "elmfb/partition.hpp"
#include "elmfb/problem.hpp"

namespace elmfb {

/// Either a fixed subdomain width or ratio * spacing.
struct WidthSpec {
    bool automatic = false;
    double value = 0.19;
    double ratio = kDefaultOverlapRatio;

    double resolve(std::size_t subdomains, double domain_lo, double domain_hi) const;
};

struct ExperimentConfig {
    OscillatorParams oscillator{};
    std::size_t n_interior = 150;
    std::size_t n_test = 300;
    std::size_t subdomains = 20;
    WidthSpec width{};
    std::size_t features = 32;
    double freq_scale = 8.0;
    Activation activation = Activation::Sin;
    std::uint64_t seed = 0;
    double rank_tol = kDefaultRankTol;
    std::string output_path;

    /// Throws Error(InvalidParams) on non-positive counts or widths.
    void validate() const;
};

/// Applies one `key = value` setting. Keys: mass, omega0, delta, n_interior,
/// n_test, J, width (number or "auto"), width_ratio, C, freq_scale,
/// activation (sin|tanh), seed, rank_tol, output_path. Throws
/// Error(ConfigParse) naming the field.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Reads a flat `key = value` file; '#' starts a comment. Diagnostics carry
/// the line number and field.
void parse_config(std::istream& in, ExperimentConfig& config);
void load_config_file(const std::string& path, ExperimentConfig& config);

/// "a..b" (inclusive) or a comma-separated list.
std::vector<std::uint64_t> parse_index_list(std::string_view text);

std::vector<double> linspace(std::size_t count, double lo, double hi);

struct RunResult {
    double l1_loss = 0.0;
    SolveReport report;
    std::size_t subdomains = 0;
    double width = 0.0;
    /// Reconstruction at the left boundary and its central difference
    /// derivative (step 1e-6).
    double u_at_start = 0.0;
    double du_at_start = 0.0;
    std::vector<double> t;
    std::vector<double> u_exact;
    std::vector<double> u_pred;
};

/// Full pipeline on the damped oscillator with evenly spaced,
/// endpoint-inclusive interior and test points.
RunResult run_oscillator(const ExperimentConfig& config);

struct SweepRow {
    std::size_t subdomains = 0;
    std::size_t columns = 0;
    double cond_normal = 0.0;
    double l1_loss = 0.0;
    double assemble_seconds = 0.0;
    double solve_seconds = 0.0;
};

/// One oscillator run per entry of `subdomain_counts`, each with a fresh
/// bank drawn from config.seed. Rows are returned in ascending J.
std::vector<SweepRow> sweep_subdomains(const ExperimentConfig& config, std::vector<std::size_t> subdomain_counts);

enum class FitTarget { Sin2Pi, ExactOscillator, Feature };

/// "sin2pi", "exact_oscillator", or "feature" (the first feature of the
/// first subdomain). Throws Error(UnknownTarget).
FitTarget parse_fit_target(std::string_view name);

/// Regression of a builtin target with the windowed feature basis (no
/// operator, data term only).
RunResult fit_mode(const ExperimentConfig& config, FitTarget target);

double median(std::vector<double> values);

/// Header `t,u_exact,u_pred,abs_err`, 17 significant digits.
void write_solution_csv(std::ostream& out, const RunResult& result);

/// Header `J,cond_normal,l1_loss,assemble_seconds,solve_seconds`. With
/// `with_timings` false the timing columns are written as 0 so that output
/// is reproducible byte for byte.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool with_timings = true);

/// Header `t,u_exact`.
void write_exact_csv(std::ostream& out, const OscillatorParams& params, std::size_t count);

} // namespace elmfb
