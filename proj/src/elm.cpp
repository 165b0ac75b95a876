#include "elmfb/elm.hpp"

#include "elmfb/assembly.hpp"
#include "elmfb/error.hpp"

namespace elmfb {

ElmFit fit_function(const ScalarFunction& target, std::span<const double> points, const FeatureBank& bank,
                    const SubdomainLayout& layout, double rank_tol) {
    if (points.empty()) {
        throw Error(ErrorCategory::InvalidParams, "fit needs at least one point");
    }
    if (!target) {
        throw Error(ErrorCategory::InvalidParams, "fit target is empty");
    }
    const Eigen::MatrixXd m = eval_matrix(layout, bank, points);
    Eigen::VectorXd b(m.rows());
    for (Eigen::Index i = 0; i < b.size(); ++i) {
        b[i] = target(points[static_cast<std::size_t>(i)]);
    }
    const auto sol = solve(m, b, rank_tol);

    ElmFit fit;
    fit.a = sol.a;
    fit.train_residual = sol.residual_norm;
    fit.rank = sol.rank;
    fit.points.assign(points.begin(), points.end());
    if (!fit.a.allFinite()) {
        throw Error(ErrorCategory::NumericalFailure, "fit produced non-finite weights");
    }
    return fit;
}

double evaluate(const ElmFit& fit, const FeatureBank& bank, const SubdomainLayout& layout, double x) {
    const double point[] = {x};
    return reconstruct(eval_matrix(layout, bank, point), fit.a)[0];
}

} // namespace elmfb
