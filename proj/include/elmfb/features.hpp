#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "elmfb/partition.hpp"

namespace elmfb {

enum class Activation { Sin, Tanh };

/// Value and derivatives of one feature with respect to the global coordinate.
struct FeatureEval {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

/// Frozen random hidden layer of every subdomain network.
///
/// Feature (j, c) is sigma(w_jc * xt + b_jc) with the subdomain-local input
/// xt = 2 (x - c_j) / w_j. Weights and biases are stored row-major (j major).
struct FeatureBank {
    std::size_t subdomains = 0;
    std::size_t features = 0;
    std::vector<double> weights;
    std::vector<double> biases;
    Activation activation = Activation::Sin;
    double freq_scale = 0.0;
    std::uint64_t seed = 0;

    std::size_t index(std::size_t j, std::size_t c) const noexcept { return j * features + c; }
    double weight(std::size_t j, std::size_t c) const noexcept { return weights[index(j, c)]; }
    double bias(std::size_t j, std::size_t c) const noexcept { return biases[index(j, c)]; }

    friend bool operator==(const FeatureBank&, const FeatureBank&) = default;
};

/// Draws weights uniform on [-freq_scale, freq_scale] and biases uniform on
/// [-pi, pi] from a mt19937_64 stream seeded with `seed`. Stream order: all
/// weights row-major, then all biases row-major.
FeatureBank init_features(std::size_t subdomains, std::size_t features, double freq_scale, std::uint64_t seed,
                          Activation activation = Activation::Sin);

/// Throws Error(IndexOutOfRange) for j or c outside the bank.
FeatureEval eval_feature(const FeatureBank& bank, const SubdomainLayout& layout, std::size_t j, std::size_t c,
                         double x);

/// Evaluates all C features of subdomain j into `out` (size C). No bounds checks.
void eval_subdomain_features(const FeatureBank& bank, const SubdomainLayout& layout, std::size_t j, double x,
                             std::vector<FeatureEval>& out);

} // namespace elmfb
