#include "elmfb/features.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "elmfb/error.hpp"

namespace elmfb {
namespace {

// 53 random bits mapped to [0, 1). Independent of the standard library's
// distribution implementations, so banks are identical across toolchains.
double unit_draw(std::mt19937_64& engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

double uniform_draw(std::mt19937_64& engine, double lo, double hi) {
    return lo + (hi - lo) * unit_draw(engine);
}

struct ActivationJet {
    double value;
    double d1;
    double d2;
};

ActivationJet activate(Activation activation, double z) noexcept {
    switch (activation) {
    case Activation::Tanh: {
        const double t = std::tanh(z);
        const double sech2 = 1.0 - t * t;
        return {t, sech2, -2.0 * t * sech2};
    }
    case Activation::Sin:
    default: {
        const double s = std::sin(z);
        return {s, std::cos(z), -s};
    }
    }
}

FeatureEval eval_unchecked(const FeatureBank& bank, const SubdomainLayout& layout, std::size_t j, std::size_t c,
                           double x) noexcept {
    const double scale = 2.0 / layout.widths()[j];
    const double local = scale * (x - layout.centers()[j]);
    const double w = bank.weight(j, c);
    const auto a = activate(bank.activation, w * local + bank.bias(j, c));
    const double rate = w * scale;
    return {a.value, rate * a.d1, rate * rate * a.d2};
}

} // namespace

FeatureBank init_features(std::size_t subdomains, std::size_t features, double freq_scale, std::uint64_t seed,
                          Activation activation) {
    if (subdomains == 0 || features == 0) {
        throw Error(ErrorCategory::InvalidParams, "feature bank needs at least one subdomain and one feature");
    }
    if (!(freq_scale > 0.0) || !std::isfinite(freq_scale)) {
        throw Error(ErrorCategory::InvalidParams, "freq_scale must be positive");
    }
    FeatureBank bank;
    bank.subdomains = subdomains;
    bank.features = features;
    bank.activation = activation;
    bank.freq_scale = freq_scale;
    bank.seed = seed;

    const std::size_t total = subdomains * features;
    std::mt19937_64 engine(seed);
    bank.weights.resize(total);
    bank.biases.resize(total);
    for (auto& w : bank.weights) {
        w = uniform_draw(engine, -freq_scale, freq_scale);
    }
    for (auto& b : bank.biases) {
        b = uniform_draw(engine, -std::numbers::pi, std::numbers::pi);
    }
    return bank;
}

FeatureEval eval_feature(const FeatureBank& bank, const SubdomainLayout& layout, std::size_t j, std::size_t c,
                         double x) {
    if (j >= bank.subdomains || c >= bank.features) {
        throw Error(ErrorCategory::IndexOutOfRange, "feature index out of range");
    }
    if (layout.size() != bank.subdomains) {
        throw Error(ErrorCategory::DimensionMismatch, "layout and feature bank disagree on subdomain count");
    }
    return eval_unchecked(bank, layout, j, c, x);
}

void eval_subdomain_features(const FeatureBank& bank, const SubdomainLayout& layout, std::size_t j, double x,
                             std::vector<FeatureEval>& out) {
    out.resize(bank.features);
    for (std::size_t c = 0; c < bank.features; ++c) {
        out[c] = eval_unchecked(bank, layout, j, c, x);
    }
}

} // namespace elmfb
