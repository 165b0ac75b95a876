#include "elmfb/lsq.hpp"

#include <algorithm>
#include <cmath>

#include "elmfb/error.hpp"

namespace elmfb {
namespace {

Eigen::BDCSVD<Eigen::MatrixXd> factor(const Eigen::MatrixXd& A, unsigned options) {
    if (!A.allFinite()) {
        throw Error(ErrorCategory::NumericalFailure, "matrix has non-finite entries");
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, options);
    if (svd.info() != Eigen::Success) {
        throw Error(ErrorCategory::NumericalFailure, "singular value decomposition did not converge");
    }
    return svd;
}

} // namespace

LstsqResult solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& rhs, double rank_tol) {
    if (A.rows() == 0 || A.cols() == 0) {
        throw Error(ErrorCategory::DimensionMismatch, "least-squares matrix is empty");
    }
    if (rhs.size() != A.rows()) {
        throw Error(ErrorCategory::DimensionMismatch, "right-hand side length does not match matrix rows");
    }
    if (!rhs.allFinite()) {
        throw Error(ErrorCategory::NumericalFailure, "right-hand side has non-finite entries");
    }
    const auto svd = factor(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sigma = svd.singularValues();

    // Singular values come sorted descending.
    const double cutoff = rank_tol * sigma[0];
    Eigen::Index rank = 0;
    while (rank < sigma.size() && sigma[rank] > cutoff) {
        ++rank;
    }

    LstsqResult out;
    out.rank = rank;
    if (rank == 0) {
        out.a = Eigen::VectorXd::Zero(A.cols());
    } else {
        const Eigen::VectorXd projected = svd.matrixU().leftCols(rank).transpose() * rhs;
        out.a = svd.matrixV().leftCols(rank) * projected.cwiseQuotient(sigma.head(rank));
    }
    out.residual_norm = (A * out.a - rhs).norm();
    return out;
}

double condition_number_of(const Eigen::MatrixXd& stacked) {
    if (stacked.size() == 0) {
        throw Error(ErrorCategory::DimensionMismatch, "condition number of an empty matrix");
    }
    const auto svd = factor(stacked, 0);
    const Eigen::VectorXd& sigma = svd.singularValues();
    const double hi = sigma[0];
    const double lo = sigma[sigma.size() - 1];
    if (!(lo > 0.0)) {
        return kConditionCap;
    }
    const double ratio = hi / lo;
    return std::min(ratio * ratio, kConditionCap);
}

double condition_number(const CollocationSystem& sys) {
    Eigen::MatrixXd stacked(sys.M.rows() + sys.B.rows(), static_cast<Eigen::Index>(sys.cols()));
    stacked << sys.scaled_interior(), sys.scaled_boundary();
    return condition_number_of(stacked);
}

Eigen::VectorXd reconstruct(const Eigen::MatrixXd& m_sol, const Eigen::VectorXd& a) {
    if (m_sol.cols() != a.size()) {
        throw Error(ErrorCategory::DimensionMismatch, "coefficient vector length does not match matrix columns");
    }
    return m_sol * a;
}

SolveReport solve_system(const CollocationSystem& sys, double rank_tol) {
    const auto weighted = stack_weighted(sys);
    const auto fit = solve(weighted.A, weighted.rhs, rank_tol);

    SolveReport report;
    report.a = fit.a;
    report.rank = fit.rank;
    report.residual_norm = fit.residual_norm;
    report.interior_residual = (sys.lambda_I.cwiseProduct(sys.M * fit.a - sys.c)).norm();
    report.boundary_residual = sys.B.rows() > 0 ? (sys.lambda_B.cwiseProduct(sys.B * fit.a - sys.g)).norm() : 0.0;
    report.cond_normal = condition_number(sys);
    return report;
}

} // namespace elmfb
