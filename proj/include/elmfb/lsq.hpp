#pragma once

#include <Eigen/Dense>

#include "elmfb/assembly.hpp"

namespace elmfb {

inline constexpr double kDefaultRankTol = 1e-10;
inline constexpr double kConditionCap = 1e300;

struct LstsqResult {
    Eigen::VectorXd a;
    double residual_norm = 0.0;
    Eigen::Index rank = 0;
};

/// Minimum-norm least-squares solution through a thin SVD. Singular values
/// below rank_tol * sigma_max are dropped. Throws Error(NumericalFailure) if
/// the factorization fails or the input is not finite.
LstsqResult solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& rhs, double rank_tol = kDefaultRankTol);

/// (sigma_max / sigma_min)^2 over the min(rows, cols) singular values of the
/// stacked scaled matrix [D_I M ; D_B B], capped at kConditionCap.
///
/// For a tall full-rank stack this is the 2-norm condition number of the
/// normal matrix (D_I M)^T (D_I M) + (D_B B)^T (D_B B). For a wide stack the
/// normal matrix is singular, and the value is its condition number on the
/// row space of the stack.
double condition_number(const CollocationSystem& sys);

double condition_number_of(const Eigen::MatrixXd& stacked);

/// M_sol * a. Throws Error(DimensionMismatch).
Eigen::VectorXd reconstruct(const Eigen::MatrixXd& m_sol, const Eigen::VectorXd& a);

struct SolveReport {
    Eigen::VectorXd a;
    double residual_norm = 0.0;
    double interior_residual = 0.0;
    double boundary_residual = 0.0;
    Eigen::Index rank = 0;
    double cond_normal = 0.0;
    double assemble_seconds = 0.0;
    double solve_seconds = 0.0;

    double training_seconds() const noexcept { return assemble_seconds + solve_seconds; }
};

/// Solves the weighted system of an assembled collocation problem and fills
/// every report field except the timings.
SolveReport solve_system(const CollocationSystem& sys, double rank_tol = kDefaultRankTol);

} // namespace elmfb
