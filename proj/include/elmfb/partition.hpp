#pragma once

#include <cstddef>
#include <vector>

namespace elmfb {

enum class WindowKind { CosineSquared };

/// Value and derivatives of one normalized window at a point.
struct WindowEval {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

/// J overlapping 1D subdomains with normalized cos^2 windows.
///
/// Subdomain j is the open interval (c_j - w_j/2, c_j + w_j/2). The
/// unnormalized bump cos^2(pi (x - c_j) / w_j) is divided by the sum of all
/// bumps, so the windows form a partition of unity wherever that sum is
/// positive. Construction checks the sum on a dense grid plus every support
/// edge inside the domain and rejects layouts that leave gaps. Indices are
/// zero-based.
class SubdomainLayout {
public:
    SubdomainLayout(std::vector<double> centers, std::vector<double> widths, double domain_lo, double domain_hi,
                    WindowKind kind = WindowKind::CosineSquared);

    std::size_t size() const noexcept { return centers_.size(); }
    const std::vector<double>& centers() const noexcept { return centers_; }
    const std::vector<double>& widths() const noexcept { return widths_; }
    double domain_lo() const noexcept { return domain_lo_; }
    double domain_hi() const noexcept { return domain_hi_; }
    WindowKind window_kind() const noexcept { return kind_; }

    bool in_support(std::size_t j, double x) const noexcept;

    /// Sum of unnormalized windows at x.
    double window_sum(double x) const noexcept;

    /// Normalized windows and derivatives for every subdomain. Throws
    /// Error(CoverageGap) where no subdomain covers x.
    std::vector<WindowEval> window_all(double x) const;

    /// Normalized window evaluations restricted to `support_index(x)`, in the
    /// same order.
    std::vector<WindowEval> window_support(double x, const std::vector<std::size_t>& support) const;

    /// Ascending indices j with |x - c_j| < w_j / 2.
    std::vector<std::size_t> support_index(double x) const;

private:
    std::vector<double> centers_;
    std::vector<double> widths_;
    double domain_lo_;
    double domain_hi_;
    WindowKind kind_;
};

/// Equally spaced centers including both endpoints (midpoint when J = 1),
/// all with the same width.
SubdomainLayout uniform_layout(std::size_t count, double width, double domain_lo, double domain_hi);

/// Width that keeps the overlap ratio of the reference layout (20 subdomains
/// of width 0.19 on [0,1]) for any J: ratio * spacing.
inline constexpr double kDefaultOverlapRatio = 0.19 * 19.0;

double auto_width(std::size_t count, double domain_lo, double domain_hi, double ratio = kDefaultOverlapRatio);

} // namespace elmfb
