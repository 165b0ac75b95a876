#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "elmfb/features.hpp"
#include "elmfb/lsq.hpp"
#include "elmfb/partition.hpp"
#include "elmfb/problem.hpp"

namespace elmfb {

struct ElmFit {
    Eigen::VectorXd a;
    double train_residual = 0.0;
    Eigen::Index rank = 0;
    std::vector<double> points;
};

/// Fits the output weights to target values at `points` by unweighted least
/// squares on the windowed feature matrix. With a single subdomain whose
/// window covers the domain the window is identically one and this is the
/// plain ELM regression.
ElmFit fit_function(const ScalarFunction& target, std::span<const double> points, const FeatureBank& bank,
                    const SubdomainLayout& layout, double rank_tol = kDefaultRankTol);

double evaluate(const ElmFit& fit, const FeatureBank& bank, const SubdomainLayout& layout, double x);

} // namespace elmfb
