#include "elmfb/assembly.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "elmfb/error.hpp"

namespace elmfb {
namespace {

struct BasisJet {
    double value;
    double d1;
    double d2;
};

// Product rule for omega * Psi.
BasisJet windowed(const WindowEval& w, const FeatureEval& f) noexcept {
    return {w.value * f.value, w.d1 * f.value + w.value * f.d1,
            w.d2 * f.value + 2.0 * w.d1 * f.d1 + w.value * f.d2};
}

void check_compatible(const SubdomainLayout& layout, const FeatureBank& bank) {
    if (layout.size() != bank.subdomains) {
        throw Error(ErrorCategory::DimensionMismatch, "layout and feature bank disagree on subdomain count");
    }
}

// Visits every in-support basis jet at x; `emit(column, jet)`.
template <class Emit>
std::vector<std::size_t> for_each_basis(const SubdomainLayout& layout, const FeatureBank& bank, double x,
                                        std::vector<FeatureEval>& scratch, Emit&& emit) {
    auto support = layout.support_index(x);
    const auto windows = layout.window_support(x, support);
    for (std::size_t s = 0; s < support.size(); ++s) {
        const std::size_t j = support[s];
        eval_subdomain_features(bank, layout, j, x, scratch);
        for (std::size_t c = 0; c < bank.features; ++c) {
            emit(j * bank.features + c, windowed(windows[s], scratch[c]));
        }
    }
    return support;
}

Eigen::VectorXd row_scaling(const Eigen::MatrixXd& m, const char* which) {
    Eigen::VectorXd lambda(m.rows());
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        const double peak = m.row(r).cwiseAbs().maxCoeff();
        if (!(peak > 0.0) || !std::isfinite(peak)) {
            throw Error(ErrorCategory::DegenerateRow,
                        std::string(which) + " row " + std::to_string(r) + " has no usable nonzero entry");
        }
        lambda[r] = 1.0 / peak;
    }
    return lambda;
}

} // namespace

CollocationSystem assemble(const LinearODEProblem& problem, const SubdomainLayout& layout, const FeatureBank& bank,
                           std::span<const double> interior_points) {
    check_compatible(layout, bank);
    if (!problem.forcing) {
        throw Error(ErrorCategory::InvalidParams, "forcing function is empty");
    }
    for (const double x : interior_points) {
        if (!(x >= problem.domain_lo && x <= problem.domain_hi)) {
            throw Error(ErrorCategory::InvalidParams, "collocation point " + std::to_string(x) + " outside domain");
        }
    }

    const auto n_interior = static_cast<Eigen::Index>(interior_points.size());
    const auto n_boundary = static_cast<Eigen::Index>(problem.boundary_conditions.size());
    const auto n_cols = static_cast<Eigen::Index>(bank.subdomains * bank.features);

    CollocationSystem sys;
    sys.subdomains = bank.subdomains;
    sys.features = bank.features;
    sys.M = Eigen::MatrixXd::Zero(n_interior, n_cols);
    sys.B = Eigen::MatrixXd::Zero(n_boundary, n_cols);
    sys.c.resize(n_interior);
    sys.g.resize(n_boundary);
    sys.interior_blocks.resize(interior_points.size());
    sys.boundary_blocks.resize(problem.boundary_conditions.size());

    // Rows are independent; each writes only its own row of M or B.
    std::vector<FeatureEval> scratch;
    for (Eigen::Index n = 0; n < n_interior; ++n) {
        const double x = interior_points[static_cast<std::size_t>(n)];
        sys.interior_blocks[static_cast<std::size_t>(n)] =
            for_each_basis(layout, bank, x, scratch, [&](std::size_t col, const BasisJet& v) {
                sys.M(n, static_cast<Eigen::Index>(col)) = apply_operator(problem, v.value, v.d1, v.d2);
            });
        sys.c[n] = problem.forcing(x);
    }
    for (Eigen::Index p = 0; p < n_boundary; ++p) {
        const auto& bc = problem.boundary_conditions[static_cast<std::size_t>(p)];
        sys.boundary_blocks[static_cast<std::size_t>(p)] =
            for_each_basis(layout, bank, bc.location, scratch, [&](std::size_t col, const BasisJet& v) {
                sys.B(p, static_cast<Eigen::Index>(col)) = bc.order == BoundaryOrder::Value ? v.value : v.d1;
            });
        sys.g[p] = bc.rhs;
    }

    sys.lambda_I = row_scaling(sys.M, "interior");
    sys.lambda_B = row_scaling(sys.B, "boundary");
    return sys;
}

WeightedSystem stack_weighted(const CollocationSystem& sys) {
    const Eigen::Index n_interior = sys.M.rows();
    const Eigen::Index n_boundary = sys.B.rows();
    const auto n_cols = static_cast<Eigen::Index>(sys.cols());
    WeightedSystem out;
    out.A.resize(n_interior + n_boundary, n_cols);
    out.rhs.resize(n_interior + n_boundary);
    out.A.topRows(n_interior) = sys.lambda_I.asDiagonal() * sys.M;
    out.rhs.head(n_interior) = sys.lambda_I.cwiseProduct(sys.c);
    if (n_boundary > 0) {
        out.A.bottomRows(n_boundary) = kBoundaryStackWeight * (sys.lambda_B.asDiagonal() * sys.B);
        out.rhs.tail(n_boundary) = kBoundaryStackWeight * sys.lambda_B.cwiseProduct(sys.g);
    }
    return out;
}

Eigen::MatrixXd eval_matrix(const SubdomainLayout& layout, const FeatureBank& bank,
                            std::span<const double> points) {
    check_compatible(layout, bank);
    Eigen::MatrixXd out =
        Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(points.size()),
                              static_cast<Eigen::Index>(bank.subdomains * bank.features));
    std::vector<FeatureEval> scratch;
    for (Eigen::Index q = 0; q < out.rows(); ++q) {
        for_each_basis(layout, bank, points[static_cast<std::size_t>(q)], scratch,
                       [&](std::size_t col, const BasisJet& v) { out(q, static_cast<Eigen::Index>(col)) = v.value; });
    }
    return out;
}

void write_triplets(std::ostream& out, const Eigen::MatrixXd& matrix) {
    Eigen::Index nnz = 0;
    for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
        for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
            nnz += matrix(r, c) != 0.0 ? 1 : 0;
        }
    }
    out << matrix.rows() << ' ' << matrix.cols() << ' ' << nnz << '\n';
    char buf[64];
    for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
        for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
            if (matrix(r, c) != 0.0) {
                std::snprintf(buf, sizeof buf, "%.17g", matrix(r, c));
                out << (r + 1) << ' ' << (c + 1) << ' ' << buf << '\n';
            }
        }
    }
}

} // namespace elmfb
