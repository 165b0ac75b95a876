#include "elmfb/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "elmfb/error.hpp"

namespace elmfb {
namespace {

struct Bump {
    double value;
    double d1;
    double d2;
};

// Unnormalized cos^2 bump, one-sided derivatives inside the support.
Bump bump(double center, double width, double x) noexcept {
    constexpr double pi = std::numbers::pi;
    const double u = x - center;
    const double half_angle = pi * u / width;
    const double c = std::cos(half_angle);
    return {c * c, -(pi / width) * std::sin(2.0 * half_angle),
            -(2.0 * pi * pi / (width * width)) * std::cos(2.0 * half_angle)};
}

std::string coverage_message(double x) {
    return "no subdomain covers x = " + std::to_string(x);
}

} // namespace

SubdomainLayout::SubdomainLayout(std::vector<double> centers, std::vector<double> widths, double domain_lo,
                                 double domain_hi, WindowKind kind)
    : centers_(std::move(centers)), widths_(std::move(widths)), domain_lo_(domain_lo), domain_hi_(domain_hi),
      kind_(kind) {
    if (centers_.empty()) {
        throw Error(ErrorCategory::InvalidParams, "layout needs at least one subdomain");
    }
    if (centers_.size() != widths_.size()) {
        throw Error(ErrorCategory::DimensionMismatch, "centers and widths differ in length");
    }
    if (!(domain_hi_ > domain_lo_)) {
        throw Error(ErrorCategory::InvalidParams, "domain_hi must exceed domain_lo");
    }
    for (std::size_t j = 0; j < centers_.size(); ++j) {
        if (!(widths_[j] > 0.0) || !std::isfinite(widths_[j])) {
            throw Error(ErrorCategory::InvalidParams, "subdomain widths must be positive");
        }
        if (j > 0 && !(centers_[j] > centers_[j - 1])) {
            throw Error(ErrorCategory::InvalidParams, "subdomain centers must be strictly increasing");
        }
    }

    const std::size_t grid = std::max<std::size_t>(64 * centers_.size(), 1024);
    const double length = domain_hi_ - domain_lo_;
    for (std::size_t i = 0; i <= grid; ++i) {
        const double x = domain_lo_ + length * static_cast<double>(i) / static_cast<double>(grid);
        if (!(window_sum(x) > 0.0)) {
            throw Error(ErrorCategory::CoverageGap, coverage_message(x));
        }
    }
    for (std::size_t j = 0; j < centers_.size(); ++j) {
        for (const double edge : {centers_[j] - 0.5 * widths_[j], centers_[j] + 0.5 * widths_[j]}) {
            if (edge >= domain_lo_ && edge <= domain_hi_ && !(window_sum(edge) > 0.0)) {
                throw Error(ErrorCategory::CoverageGap, coverage_message(edge));
            }
        }
    }
}

bool SubdomainLayout::in_support(std::size_t j, double x) const noexcept {
    return std::abs(x - centers_[j]) < 0.5 * widths_[j];
}

double SubdomainLayout::window_sum(double x) const noexcept {
    double sum = 0.0;
    for (std::size_t j = 0; j < centers_.size(); ++j) {
        if (in_support(j, x)) {
            sum += bump(centers_[j], widths_[j], x).value;
        }
    }
    return sum;
}

std::vector<std::size_t> SubdomainLayout::support_index(double x) const {
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < centers_.size(); ++j) {
        if (in_support(j, x)) {
            support.push_back(j);
        }
    }
    return support;
}

std::vector<WindowEval> SubdomainLayout::window_support(double x, const std::vector<std::size_t>& support) const {
    std::vector<Bump> bumps;
    bumps.reserve(support.size());
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (const std::size_t j : support) {
        const Bump b = bump(centers_[j], widths_[j], x);
        bumps.push_back(b);
        s0 += b.value;
        s1 += b.d1;
        s2 += b.d2;
    }
    if (!(s0 > 0.0)) {
        throw Error(ErrorCategory::CoverageGap, coverage_message(x));
    }

    std::vector<WindowEval> out(support.size());
    for (std::size_t i = 0; i < support.size(); ++i) {
        const Bump& b = bumps[i];
        WindowEval& w = out[i];
        w.value = b.value / s0;
        w.d1 = (b.d1 - w.value * s1) / s0;
        w.d2 = (b.d2 - 2.0 * w.d1 * s1 - w.value * s2) / s0;
    }
    return out;
}

std::vector<WindowEval> SubdomainLayout::window_all(double x) const {
    const auto support = support_index(x);
    const auto local = window_support(x, support);
    std::vector<WindowEval> out(centers_.size());
    for (std::size_t i = 0; i < support.size(); ++i) {
        out[support[i]] = local[i];
    }
    return out;
}

SubdomainLayout uniform_layout(std::size_t count, double width, double domain_lo, double domain_hi) {
    if (count == 0) {
        throw Error(ErrorCategory::InvalidParams, "subdomain count must be positive");
    }
    if (!(width > 0.0)) {
        throw Error(ErrorCategory::InvalidParams, "subdomain width must be positive");
    }
    std::vector<double> centers(count);
    if (count == 1) {
        centers[0] = 0.5 * (domain_lo + domain_hi);
    } else {
        const double spacing = (domain_hi - domain_lo) / static_cast<double>(count - 1);
        for (std::size_t j = 0; j < count; ++j) {
            centers[j] = domain_lo + static_cast<double>(j) * spacing;
        }
        centers.back() = domain_hi;
    }
    return SubdomainLayout(std::move(centers), std::vector<double>(count, width), domain_lo, domain_hi);
}

double auto_width(std::size_t count, double domain_lo, double domain_hi, double ratio) {
    const double length = domain_hi - domain_lo;
    if (count <= 1) {
        return 2.0 * length;
    }
    return ratio * length / static_cast<double>(count - 1);
}

} // namespace elmfb
