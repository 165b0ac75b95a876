#pragma once

#include <cstddef>
#include <iosfwd>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "elmfb/features.hpp"
#include "elmfb/partition.hpp"
#include "elmfb/problem.hpp"

namespace elmfb {

/// Boundary rows are weighted by this factor when stacked so that
/// 0.5 |A a - rhs|^2 reproduces the 1/2 interior, 1/4 boundary objective.
inline constexpr double kBoundaryStackWeight = 1.0 / std::numbers::sqrt2;

/// Raw collocation matrices and their row scalings.
///
/// Column l = j * C + c holds the windowed basis function omega_j * Psi_jc.
/// Interior row n applies the differential operator at interior point n;
/// boundary rows follow the order of the problem's boundary conditions.
/// Entries outside a row's supporting subdomains are exact zeros;
/// `interior_blocks` / `boundary_blocks` list the subdomains that do support
/// each row.
struct CollocationSystem {
    Eigen::MatrixXd M;
    Eigen::MatrixXd B;
    Eigen::VectorXd c;
    Eigen::VectorXd g;
    Eigen::VectorXd lambda_I;
    Eigen::VectorXd lambda_B;
    std::size_t subdomains = 0;
    std::size_t features = 0;
    std::vector<std::vector<std::size_t>> interior_blocks;
    std::vector<std::vector<std::size_t>> boundary_blocks;

    std::size_t column(std::size_t j, std::size_t c) const noexcept { return j * features + c; }
    std::size_t cols() const noexcept { return subdomains * features; }

    Eigen::MatrixXd scaled_interior() const { return lambda_I.asDiagonal() * M; }
    Eigen::MatrixXd scaled_boundary() const { return lambda_B.asDiagonal() * B; }
};

/// Stacked weighted least-squares system [D_I M ; beta D_B B] a = [D_I c ; beta D_B g].
struct WeightedSystem {
    Eigen::MatrixXd A;
    Eigen::VectorXd rhs;
};

/// Throws Error(DegenerateRow) if a row has no nonzero entry, Error(CoverageGap)
/// for points outside every support, Error(DimensionMismatch) if layout and bank
/// disagree.
CollocationSystem assemble(const LinearODEProblem& problem, const SubdomainLayout& layout, const FeatureBank& bank,
                           std::span<const double> interior_points);

WeightedSystem stack_weighted(const CollocationSystem& sys);

/// Windowed basis values at the given points (no operator).
Eigen::MatrixXd eval_matrix(const SubdomainLayout& layout, const FeatureBank& bank,
                            std::span<const double> points);

/// Writes "rows cols nnz" followed by 1-based "row col value" triplets of the
/// nonzero entries, 17 significant digits.
void write_triplets(std::ostream& out, const Eigen::MatrixXd& matrix);

} // namespace elmfb
