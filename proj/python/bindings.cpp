#include <sstream>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "elmfb/assembly.hpp"
#include "elmfb/elm.hpp"
#include "elmfb/error.hpp"
#include "elmfb/experiment.hpp"
#include "elmfb/features.hpp"
#include "elmfb/lsq.hpp"
#include "elmfb/partition.hpp"
#include "elmfb/problem.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

template <class Writer>
std::string to_csv(Writer&& writer) {
    std::ostringstream out;
    writer(out);
    return out.str();
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "ELM-FBPINN least-squares solver for linear 1D boundary-value problems";

    static py::exception<elmfb::Error> error_type(m, "ElmfbError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const elmfb::Error& e) {
            const std::string msg = std::string(elmfb::to_string(e.category())) + ": " + e.what();
            PyErr_SetString(error_type.ptr(), msg.c_str());
        }
    });

    // problem
    py::enum_<elmfb::BoundaryOrder>(m, "BoundaryOrder")
        .value("Value", elmfb::BoundaryOrder::Value)
        .value("FirstDerivative", elmfb::BoundaryOrder::FirstDerivative);

    py::class_<elmfb::BoundaryCondition>(m, "BoundaryCondition")
        .def(py::init([](double location, elmfb::BoundaryOrder order, double rhs) {
                 return elmfb::BoundaryCondition{location, order, rhs};
             }),
             "location"_a, "order"_a, "rhs"_a)
        .def_readwrite("location", &elmfb::BoundaryCondition::location)
        .def_readwrite("order", &elmfb::BoundaryCondition::order)
        .def_readwrite("rhs", &elmfb::BoundaryCondition::rhs);

    py::class_<elmfb::LinearODEProblem>(m, "LinearODEProblem")
        .def(py::init([](double lo, double hi, double coeff2, double coeff1, double coeff0,
                         elmfb::ScalarFunction forcing, std::vector<elmfb::BoundaryCondition> bcs) {
                 elmfb::LinearODEProblem p;
                 p.domain_lo = lo;
                 p.domain_hi = hi;
                 p.coeff2 = coeff2;
                 p.coeff1 = coeff1;
                 p.coeff0 = coeff0;
                 p.forcing = std::move(forcing);
                 p.boundary_conditions = std::move(bcs);
                 p.validate();
                 return p;
             }),
             "domain_lo"_a, "domain_hi"_a, "coeff2"_a, "coeff1"_a, "coeff0"_a, "forcing"_a, "boundary_conditions"_a)
        .def_readonly("domain_lo", &elmfb::LinearODEProblem::domain_lo)
        .def_readonly("domain_hi", &elmfb::LinearODEProblem::domain_hi)
        .def_readonly("coeff2", &elmfb::LinearODEProblem::coeff2)
        .def_readonly("coeff1", &elmfb::LinearODEProblem::coeff1)
        .def_readonly("coeff0", &elmfb::LinearODEProblem::coeff0)
        .def_readonly("boundary_conditions", &elmfb::LinearODEProblem::boundary_conditions)
        .def("forcing", [](const elmfb::LinearODEProblem& p, double x) { return p.forcing(x); })
        .def("apply_operator", [](const elmfb::LinearODEProblem& p, double v, double d1, double d2) {
            return elmfb::apply_operator(p, v, d1, d2);
        });

    py::class_<elmfb::OscillatorParams>(m, "OscillatorParams")
        .def(py::init([](double mass, double omega0, double delta) {
                 return elmfb::OscillatorParams{mass, omega0, delta};
             }),
             "mass"_a = 1.0, "omega0"_a = 80.0, "delta"_a = 2.0)
        .def_readwrite("mass", &elmfb::OscillatorParams::mass)
        .def_readwrite("omega0", &elmfb::OscillatorParams::omega0)
        .def_readwrite("delta", &elmfb::OscillatorParams::delta);

    m.def("oscillator_problem", &elmfb::oscillator_problem, "params"_a);
    m.def(
        "oscillator_exact",
        [](const elmfb::OscillatorParams& p, const Eigen::VectorXd& t) {
            const auto f = elmfb::oscillator_exact(p);
            return Eigen::VectorXd(t.unaryExpr([&f](double x) { return f(x); }));
        },
        "params"_a, "t"_a);
    m.def(
        "oscillator_constants",
        [](const elmfb::OscillatorParams& p) {
            const auto k = elmfb::oscillator_constants(p);
            return py::dict("omega"_a = k.omega, "phi"_a = k.phi, "amplitude"_a = k.amplitude);
        },
        "params"_a);

    // partition
    py::class_<elmfb::SubdomainLayout>(m, "SubdomainLayout")
        .def(py::init<std::vector<double>, std::vector<double>, double, double>(), "centers"_a, "widths"_a,
             "domain_lo"_a, "domain_hi"_a)
        .def_property_readonly("centers", &elmfb::SubdomainLayout::centers)
        .def_property_readonly("widths", &elmfb::SubdomainLayout::widths)
        .def("__len__", &elmfb::SubdomainLayout::size)
        .def("support_index", &elmfb::SubdomainLayout::support_index, "x"_a)
        .def(
            "window_all",
            [](const elmfb::SubdomainLayout& layout, double x) {
                const auto w = layout.window_all(x);
                Eigen::MatrixXd out(static_cast<Eigen::Index>(w.size()), 3);
                for (std::size_t j = 0; j < w.size(); ++j) {
                    const auto r = static_cast<Eigen::Index>(j);
                    out(r, 0) = w[j].value;
                    out(r, 1) = w[j].d1;
                    out(r, 2) = w[j].d2;
                }
                return out;
            },
            "x"_a, "Rows (value, d1, d2) per subdomain.");
    m.def("uniform_layout", &elmfb::uniform_layout, "count"_a, "width"_a, "domain_lo"_a = 0.0, "domain_hi"_a = 1.0);
    m.def("auto_width", &elmfb::auto_width, "count"_a, "domain_lo"_a = 0.0, "domain_hi"_a = 1.0,
          "ratio"_a = elmfb::kDefaultOverlapRatio);

    // features
    py::enum_<elmfb::Activation>(m, "Activation")
        .value("Sin", elmfb::Activation::Sin)
        .value("Tanh", elmfb::Activation::Tanh);

    py::class_<elmfb::FeatureBank>(m, "FeatureBank")
        .def_readonly("subdomains", &elmfb::FeatureBank::subdomains)
        .def_readonly("features", &elmfb::FeatureBank::features)
        .def_readonly("weights", &elmfb::FeatureBank::weights)
        .def_readonly("biases", &elmfb::FeatureBank::biases)
        .def_readonly("activation", &elmfb::FeatureBank::activation)
        .def_readonly("freq_scale", &elmfb::FeatureBank::freq_scale)
        .def_readonly("seed", &elmfb::FeatureBank::seed)
        .def(py::self == py::self);
    m.def("init_features", &elmfb::init_features, "subdomains"_a, "features"_a, "freq_scale"_a = 8.0, "seed"_a = 0,
          "activation"_a = elmfb::Activation::Sin);
    m.def(
        "eval_feature",
        [](const elmfb::FeatureBank& bank, const elmfb::SubdomainLayout& layout, std::size_t j, std::size_t c,
           double x) {
            const auto f = elmfb::eval_feature(bank, layout, j, c, x);
            return py::make_tuple(f.value, f.d1, f.d2);
        },
        "bank"_a, "layout"_a, "j"_a, "c"_a, "x"_a);

    // assembly
    py::class_<elmfb::CollocationSystem>(m, "CollocationSystem")
        .def_readonly("M", &elmfb::CollocationSystem::M)
        .def_readonly("B", &elmfb::CollocationSystem::B)
        .def_readonly("c", &elmfb::CollocationSystem::c)
        .def_readonly("g", &elmfb::CollocationSystem::g)
        .def_readonly("lambda_I", &elmfb::CollocationSystem::lambda_I)
        .def_readonly("lambda_B", &elmfb::CollocationSystem::lambda_B)
        .def_readonly("interior_blocks", &elmfb::CollocationSystem::interior_blocks)
        .def_readonly("boundary_blocks", &elmfb::CollocationSystem::boundary_blocks);
    m.def(
        "assemble",
        [](const elmfb::LinearODEProblem& problem, const elmfb::SubdomainLayout& layout,
           const elmfb::FeatureBank& bank, const std::vector<double>& points) {
            return elmfb::assemble(problem, layout, bank, points);
        },
        "problem"_a, "layout"_a, "bank"_a, "interior_points"_a);
    m.def(
        "stack_weighted",
        [](const elmfb::CollocationSystem& sys) {
            auto w = elmfb::stack_weighted(sys);
            return py::make_tuple(w.A, w.rhs);
        },
        "system"_a);
    m.def(
        "eval_matrix",
        [](const elmfb::SubdomainLayout& layout, const elmfb::FeatureBank& bank, const std::vector<double>& points) {
            return elmfb::eval_matrix(layout, bank, points);
        },
        "layout"_a, "bank"_a, "points"_a);

    // lsq
    m.def(
        "solve",
        [](const Eigen::MatrixXd& A, const Eigen::VectorXd& rhs, double rank_tol) {
            auto r = elmfb::solve(A, rhs, rank_tol);
            return py::make_tuple(r.a, r.residual_norm, r.rank);
        },
        "A"_a, "rhs"_a, "rank_tol"_a = elmfb::kDefaultRankTol, "Returns (a, residual_norm, rank).");
    m.def("condition_number", &elmfb::condition_number, "system"_a);
    m.def("condition_number_of", &elmfb::condition_number_of, "stacked"_a);
    m.def("reconstruct", &elmfb::reconstruct, "m_sol"_a, "a"_a);

    py::class_<elmfb::SolveReport>(m, "SolveReport")
        .def_readonly("a", &elmfb::SolveReport::a)
        .def_readonly("residual_norm", &elmfb::SolveReport::residual_norm)
        .def_readonly("interior_residual", &elmfb::SolveReport::interior_residual)
        .def_readonly("boundary_residual", &elmfb::SolveReport::boundary_residual)
        .def_readonly("rank", &elmfb::SolveReport::rank)
        .def_readonly("cond_normal", &elmfb::SolveReport::cond_normal)
        .def_readonly("assemble_seconds", &elmfb::SolveReport::assemble_seconds)
        .def_readonly("solve_seconds", &elmfb::SolveReport::solve_seconds)
        .def_property_readonly("training_seconds", &elmfb::SolveReport::training_seconds);
    m.def("solve_system", &elmfb::solve_system, "system"_a, "rank_tol"_a = elmfb::kDefaultRankTol);

    // experiment
    py::class_<elmfb::ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("oscillator", &elmfb::ExperimentConfig::oscillator)
        .def_readwrite("n_interior", &elmfb::ExperimentConfig::n_interior)
        .def_readwrite("n_test", &elmfb::ExperimentConfig::n_test)
        .def_readwrite("subdomains", &elmfb::ExperimentConfig::subdomains)
        .def_readwrite("features", &elmfb::ExperimentConfig::features)
        .def_readwrite("freq_scale", &elmfb::ExperimentConfig::freq_scale)
        .def_readwrite("activation", &elmfb::ExperimentConfig::activation)
        .def_readwrite("seed", &elmfb::ExperimentConfig::seed)
        .def_readwrite("rank_tol", &elmfb::ExperimentConfig::rank_tol)
        .def("set", [](elmfb::ExperimentConfig& c, const std::string& key,
                       const std::string& value) { elmfb::apply_setting(c, key, value); },
             "key"_a, "value"_a, "Apply one key = value setting, e.g. set('width', 'auto').");

    py::class_<elmfb::RunResult>(m, "RunResult")
        .def_readonly("l1_loss", &elmfb::RunResult::l1_loss)
        .def_readonly("report", &elmfb::RunResult::report)
        .def_readonly("subdomains", &elmfb::RunResult::subdomains)
        .def_readonly("width", &elmfb::RunResult::width)
        .def_readonly("u_at_start", &elmfb::RunResult::u_at_start)
        .def_readonly("du_at_start", &elmfb::RunResult::du_at_start)
        .def_readonly("t", &elmfb::RunResult::t)
        .def_readonly("u_exact", &elmfb::RunResult::u_exact)
        .def_readonly("u_pred", &elmfb::RunResult::u_pred)
        .def("solution_csv", [](const elmfb::RunResult& r) {
            return to_csv([&](std::ostream& out) { elmfb::write_solution_csv(out, r); });
        });

    py::class_<elmfb::SweepRow>(m, "SweepRow")
        .def_readonly("subdomains", &elmfb::SweepRow::subdomains)
        .def_readonly("columns", &elmfb::SweepRow::columns)
        .def_readonly("cond_normal", &elmfb::SweepRow::cond_normal)
        .def_readonly("l1_loss", &elmfb::SweepRow::l1_loss)
        .def_readonly("assemble_seconds", &elmfb::SweepRow::assemble_seconds)
        .def_readonly("solve_seconds", &elmfb::SweepRow::solve_seconds);

    m.def("run_oscillator", &elmfb::run_oscillator, "config"_a);
    m.def("sweep_subdomains", &elmfb::sweep_subdomains, "config"_a, "subdomain_counts"_a);
    m.def(
        "fit_mode",
        [](const elmfb::ExperimentConfig& config, const std::string& target) {
            return elmfb::fit_mode(config, elmfb::parse_fit_target(target));
        },
        "config"_a, "target"_a);
    m.def(
        "sweep_csv",
        [](const std::vector<elmfb::SweepRow>& rows, bool with_timings) {
            return to_csv([&](std::ostream& out) { elmfb::write_sweep_csv(out, rows, with_timings); });
        },
        "rows"_a, "with_timings"_a = true);
}
