#include "elmfb/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <string>

#include "elmfb/assembly.hpp"
#include "elmfb/elm.hpp"
#include "elmfb/error.hpp"

namespace elmfb {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_field(std::string_view key, std::string_view value, std::string_view why) {
    throw Error(ErrorCategory::ConfigParse,
                "field '" + std::string(key) + "': " + std::string(why) + " (got '" + std::string(value) + "')");
}

double parse_real(std::string_view key, std::string_view value) {
    double out = 0.0;
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
        bad_field(key, value, "expected a real number");
    }
    return out;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view value) {
    std::uint64_t out = 0;
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end) {
        bad_field(key, value, "expected a non-negative integer");
    }
    return out;
}

std::size_t parse_count(std::string_view key, std::string_view value) {
    const auto n = parse_unsigned(key, value);
    if (n == 0) {
        bad_field(key, value, "must be positive");
    }
    return static_cast<std::size_t>(n);
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Pipeline {
    SubdomainLayout layout;
    FeatureBank bank;
    CollocationSystem system;
    SolveReport report;
    Eigen::MatrixXd m_sol;
    std::vector<double> test_points;
    double width = 0.0;
};

Pipeline run_pipeline(const ExperimentConfig& config, std::size_t subdomains) {
    const auto problem = oscillator_problem(config.oscillator);
    const double width = config.width.resolve(subdomains, problem.domain_lo, problem.domain_hi);

    const auto start = Clock::now();
    auto layout = uniform_layout(subdomains, width, problem.domain_lo, problem.domain_hi);
    auto bank = init_features(subdomains, config.features, config.freq_scale, config.seed, config.activation);
    const auto interior = linspace(config.n_interior, problem.domain_lo, problem.domain_hi);
    auto system = assemble(problem, layout, bank, interior);
    const double assemble_seconds = seconds_since(start);
    Pipeline out{std::move(layout), std::move(bank), std::move(system), {}, {}, {}, width};

    const auto solve_start = Clock::now();
    out.report = solve_system(out.system, config.rank_tol);
    out.report.solve_seconds = seconds_since(solve_start);
    out.report.assemble_seconds = assemble_seconds;

    out.test_points = linspace(config.n_test, problem.domain_lo, problem.domain_hi);
    out.m_sol = eval_matrix(out.layout, out.bank, out.test_points);
    return out;
}

RunResult summarize(std::vector<double> t, const Eigen::VectorXd& predicted, const ScalarFunction& exact) {
    RunResult result;
    result.t = std::move(t);
    result.u_pred.assign(predicted.data(), predicted.data() + predicted.size());
    result.u_exact.resize(result.t.size());
    double total = 0.0;
    for (std::size_t q = 0; q < result.t.size(); ++q) {
        result.u_exact[q] = exact(result.t[q]);
        total += std::abs(result.u_exact[q] - result.u_pred[q]);
    }
    result.l1_loss = result.t.empty() ? 0.0 : total / static_cast<double>(result.t.size());
    return result;
}

} // namespace

double WidthSpec::resolve(std::size_t subdomains, double domain_lo, double domain_hi) const {
    return automatic ? auto_width(subdomains, domain_lo, domain_hi, ratio) : value;
}

void ExperimentConfig::validate() const {
    if (n_interior == 0 || n_test == 0 || subdomains == 0 || features == 0) {
        throw Error(ErrorCategory::InvalidParams, "point, subdomain and feature counts must be positive");
    }
    if (width.automatic ? !(width.ratio > 0.0) : !(width.value > 0.0)) {
        throw Error(ErrorCategory::InvalidParams, "subdomain width must be positive");
    }
    if (!(freq_scale > 0.0)) {
        throw Error(ErrorCategory::InvalidParams, "freq_scale must be positive");
    }
    if (!(rank_tol >= 0.0)) {
        throw Error(ErrorCategory::InvalidParams, "rank_tol must be non-negative");
    }
}

void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value) {
    value = trim(value);
    if (key == "mass" || key == "m") {
        config.oscillator.mass = parse_real(key, value);
    } else if (key == "omega0") {
        config.oscillator.omega0 = parse_real(key, value);
    } else if (key == "delta") {
        config.oscillator.delta = parse_real(key, value);
    } else if (key == "n_interior") {
        config.n_interior = parse_count(key, value);
    } else if (key == "n_test") {
        config.n_test = parse_count(key, value);
    } else if (key == "J" || key == "j") {
        config.subdomains = parse_count(key, value);
    } else if (key == "width") {
        if (value == "auto") {
            config.width.automatic = true;
        } else {
            const double w = parse_real(key, value);
            if (!(w > 0.0)) {
                bad_field(key, value, "must be positive or 'auto'");
            }
            config.width.automatic = false;
            config.width.value = w;
        }
    } else if (key == "width_ratio") {
        const double r = parse_real(key, value);
        if (!(r > 0.0)) {
            bad_field(key, value, "must be positive");
        }
        config.width.ratio = r;
    } else if (key == "C" || key == "c") {
        config.features = parse_count(key, value);
    } else if (key == "freq_scale") {
        const double f = parse_real(key, value);
        if (!(f > 0.0)) {
            bad_field(key, value, "must be positive");
        }
        config.freq_scale = f;
    } else if (key == "activation") {
        if (value == "sin") {
            config.activation = Activation::Sin;
        } else if (value == "tanh") {
            config.activation = Activation::Tanh;
        } else {
            bad_field(key, value, "expected 'sin' or 'tanh'");
        }
    } else if (key == "seed") {
        config.seed = parse_unsigned(key, value);
    } else if (key == "rank_tol") {
        const double t = parse_real(key, value);
        if (!(t >= 0.0)) {
            bad_field(key, value, "must be non-negative");
        }
        config.rank_tol = t;
    } else if (key == "output_path") {
        config.output_path = std::string(value);
    } else {
        bad_field(key, value, "unknown field");
    }
}

void parse_config(std::istream& in, ExperimentConfig& config) {
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::string_view view(line);
        if (const auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        view = trim(view);
        if (view.empty()) {
            continue;
        }
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorCategory::ConfigParse,
                        "line " + std::to_string(number) + ": expected 'key = value'");
        }
        try {
            apply_setting(config, trim(view.substr(0, eq)), view.substr(eq + 1));
        } catch (const Error& e) {
            throw Error(e.category(), "line " + std::to_string(number) + ": " + e.what());
        }
    }
}

void load_config_file(const std::string& path, ExperimentConfig& config) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCategory::ConfigParse, "cannot open config file '" + path + "'");
    }
    parse_config(in, config);
}

std::vector<std::uint64_t> parse_index_list(std::string_view text) {
    text = trim(text);
    std::vector<std::uint64_t> out;
    if (const auto dots = text.find(".."); dots != std::string_view::npos) {
        const auto lo = parse_unsigned("range", trim(text.substr(0, dots)));
        const auto hi = parse_unsigned("range", trim(text.substr(dots + 2)));
        if (hi < lo) {
            bad_field("range", text, "upper bound below lower bound");
        }
        for (auto v = lo; v <= hi; ++v) {
            out.push_back(v);
        }
        return out;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto item = trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
        out.push_back(parse_unsigned("list", item));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

std::vector<double> linspace(std::size_t count, double lo, double hi) {
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = lo;
        return out;
    }
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    if (count > 1) {
        out.back() = hi;
    }
    return out;
}

RunResult run_oscillator(const ExperimentConfig& config) {
    config.validate();
    auto pipe = run_pipeline(config, config.subdomains);
    const Eigen::VectorXd predicted = reconstruct(pipe.m_sol, pipe.report.a);
    RunResult result = summarize(std::move(pipe.test_points), predicted, oscillator_exact(config.oscillator));
    result.report = std::move(pipe.report);
    result.subdomains = config.subdomains;
    result.width = pipe.width;

    // Boundary diagnostics straight from the reconstruction.
    constexpr double h = 1e-6;
    const double probe[] = {0.0, -h, h};
    const Eigen::VectorXd u = reconstruct(eval_matrix(pipe.layout, pipe.bank, probe), result.report.a);
    result.u_at_start = u[0];
    result.du_at_start = (u[2] - u[1]) / (2.0 * h);
    return result;
}

std::vector<SweepRow> sweep_subdomains(const ExperimentConfig& config, std::vector<std::size_t> subdomain_counts) {
    config.validate();
    std::sort(subdomain_counts.begin(), subdomain_counts.end());
    std::vector<SweepRow> rows;
    rows.reserve(subdomain_counts.size());
    const auto exact = oscillator_exact(config.oscillator);
    for (const std::size_t count : subdomain_counts) {
        auto pipe = run_pipeline(config, count);
        const Eigen::VectorXd predicted = reconstruct(pipe.m_sol, pipe.report.a);
        const auto summary = summarize(pipe.test_points, predicted, exact);
        SweepRow row;
        row.subdomains = count;
        row.columns = pipe.system.cols();
        row.cond_normal = pipe.report.cond_normal;
        row.l1_loss = summary.l1_loss;
        row.assemble_seconds = pipe.report.assemble_seconds;
        row.solve_seconds = pipe.report.solve_seconds;
        rows.push_back(row);
    }
    return rows;
}

FitTarget parse_fit_target(std::string_view name) {
    if (name == "sin2pi") {
        return FitTarget::Sin2Pi;
    }
    if (name == "exact_oscillator") {
        return FitTarget::ExactOscillator;
    }
    if (name == "feature") {
        return FitTarget::Feature;
    }
    throw Error(ErrorCategory::UnknownTarget, "unknown fit target '" + std::string(name) + "'");
}

RunResult fit_mode(const ExperimentConfig& config, FitTarget target) {
    config.validate();
    constexpr double lo = 0.0;
    constexpr double hi = 1.0;
    const double width = config.width.resolve(config.subdomains, lo, hi);

    const auto start = Clock::now();
    const auto layout = uniform_layout(config.subdomains, width, lo, hi);
    const auto bank =
        init_features(config.subdomains, config.features, config.freq_scale, config.seed, config.activation);

    ScalarFunction fn;
    switch (target) {
    case FitTarget::Sin2Pi:
        fn = [](double x) { return std::sin(2.0 * std::numbers::pi * x); };
        break;
    case FitTarget::ExactOscillator:
        fn = oscillator_exact(config.oscillator);
        break;
    case FitTarget::Feature:
        fn = [&bank, &layout](double x) { return eval_feature(bank, layout, 0, 0, x).value; };
        break;
    }

    const auto points = linspace(config.n_interior, lo, hi);
    const Eigen::MatrixXd m = eval_matrix(layout, bank, points);
    const double assemble_seconds = seconds_since(start);
    const auto solve_start = Clock::now();
    const auto fit = fit_function(fn, points, bank, layout, config.rank_tol);
    const double solve_seconds = seconds_since(solve_start);

    const auto test_points = linspace(config.n_test, lo, hi);
    const Eigen::VectorXd predicted = reconstruct(eval_matrix(layout, bank, test_points), fit.a);
    RunResult result = summarize(test_points, predicted, fn);
    result.report.a = fit.a;
    result.report.residual_norm = fit.train_residual;
    result.report.interior_residual = fit.train_residual;
    result.report.rank = fit.rank;
    result.report.cond_normal = condition_number_of(m);
    result.report.assemble_seconds = assemble_seconds;
    result.report.solve_seconds = solve_seconds;
    result.subdomains = config.subdomains;
    result.width = width;
    result.u_at_start = predicted[0];
    return result;
}

double median(std::vector<double> values) {
    if (values.empty()) {
        throw Error(ErrorCategory::InvalidParams, "median of an empty list");
    }
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

void write_solution_csv(std::ostream& out, const RunResult& result) {
    out << "t,u_exact,u_pred,abs_err\n";
    for (std::size_t q = 0; q < result.t.size(); ++q) {
        out << format_real(result.t[q]) << ',' << format_real(result.u_exact[q]) << ','
            << format_real(result.u_pred[q]) << ',' << format_real(std::abs(result.u_exact[q] - result.u_pred[q]))
            << '\n';
    }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool with_timings) {
    out << "J,cond_normal,l1_loss,assemble_seconds,solve_seconds\n";
    for (const auto& row : rows) {
        out << row.subdomains << ',' << format_real(row.cond_normal) << ',' << format_real(row.l1_loss) << ','
            << format_real(with_timings ? row.assemble_seconds : 0.0) << ','
            << format_real(with_timings ? row.solve_seconds : 0.0) << '\n';
    }
}

void write_exact_csv(std::ostream& out, const OscillatorParams& params, std::size_t count) {
    const auto exact = oscillator_exact(params);
    out << "t,u_exact\n";
    for (const double t : linspace(count, 0.0, 1.0)) {
        out << format_real(t) << ',' << format_real(exact(t)) << '\n';
    }
}

} // namespace elmfb
