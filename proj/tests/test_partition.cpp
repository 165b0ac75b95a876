#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "elmfb/error.hpp"
#include "elmfb/partition.hpp"
#include "oracles.hpp"

using namespace elmfb;

namespace {

SubdomainLayout reference_layout() { return uniform_layout(20, 0.19, 0.0, 1.0); }

double distance_to_edges(const SubdomainLayout& layout, double x) {
    double d = 1e300;
    for (std::size_t j = 0; j < layout.size(); ++j) {
        d = std::min(d, std::abs(std::abs(x - layout.centers()[j]) - 0.5 * layout.widths()[j]));
    }
    return d;
}

ErrorCategory category_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.category();
    }
    return ErrorCategory::UnknownTarget;
}

} // namespace

TEST_SUITE("partition") {

TEST_CASE("uniform layout places endpoint-inclusive centers") {
    const auto layout = reference_layout();
    REQUIRE(layout.size() == 20);
    for (std::size_t j = 0; j < 20; ++j) {
        CHECK(layout.centers()[j] == doctest::Approx(static_cast<double>(j) / 19.0).epsilon(1e-15));
        CHECK(layout.widths()[j] == 0.19);
    }
    CHECK(layout.centers()[1] - layout.centers()[0] == doctest::Approx(0.0526315789).epsilon(1e-9));
}

TEST_CASE("single full-cover subdomain is a constant unit window") {
    const auto layout = uniform_layout(1, 2.0, 0.0, 1.0);
    CHECK(layout.centers()[0] == 0.5);
    for (const double x : {0.0, 0.1, 0.5, 0.77, 1.0}) {
        const auto w = layout.window_all(x);
        REQUIRE(w.size() == 1);
        CHECK(w[0].value == 1.0);
        CHECK(w[0].d1 == 0.0);
        CHECK(w[0].d2 == 0.0);
        CHECK(layout.support_index(x) == std::vector<std::size_t>{0});
    }
}

TEST_CASE("coverage gaps are rejected") {
    // Oracle: the bump sum with spacing 0.25 > width 0.19 vanishes somewhere.
    int zeros = 0;
    for (int i = 0; i < 1000; ++i) {
        const double x = i / 999.0;
        double s = 0.0;
        for (int j = 0; j < 5; ++j) {
            s += oracle::bump(j * 0.25, 0.19, x);
        }
        zeros += s == 0.0 ? 1 : 0;
    }
    REQUIRE(zeros > 0);
    CHECK(category_of([] { uniform_layout(5, 0.19, 0.0, 1.0); }) == ErrorCategory::CoverageGap);

    // Touching supports leave the shared edge uncovered.
    CHECK(category_of([] { uniform_layout(3, 0.5, 0.0, 1.0); }) == ErrorCategory::CoverageGap);
    // A single subdomain that misses the domain ends.
    CHECK(category_of([] { uniform_layout(1, 1.0, 0.0, 1.0); }) == ErrorCategory::CoverageGap);
}

TEST_CASE("invalid layouts") {
    CHECK(category_of([] { uniform_layout(0, 0.19, 0.0, 1.0); }) == ErrorCategory::InvalidParams);
    CHECK(category_of([] { uniform_layout(3, 0.0, 0.0, 1.0); }) == ErrorCategory::InvalidParams);
    CHECK(category_of([] { SubdomainLayout({0.0, 0.0}, {2.0, 2.0}, 0.0, 1.0); }) == ErrorCategory::InvalidParams);
    CHECK(category_of([] { SubdomainLayout({0.0, 1.0}, {2.0}, 0.0, 1.0); }) == ErrorCategory::DimensionMismatch);
}

TEST_CASE("support index at the domain ends of the reference layout") {
    const auto layout = reference_layout();
    CHECK(layout.support_index(0.0) == std::vector<std::size_t>{0, 1});
    CHECK(layout.support_index(1.0) == std::vector<std::size_t>{18, 19});
}

TEST_CASE("windows at x = 0.5 match direct evaluation") {
    const auto layout = reference_layout();
    const auto w = layout.window_all(0.5);
    CHECK(layout.support_index(0.5) == std::vector<std::size_t>{8, 9, 10, 11});
    // Frozen from a 30-digit evaluation of cos^2(pi (x - j/19) / 0.19) / sum.
    CHECK(w[8].value == doctest::Approx(0.0386092092272485116).epsilon(1e-13));
    CHECK(w[9].value == doctest::Approx(0.461390790772751488).epsilon(1e-14));
    CHECK(w[10].value == doctest::Approx(0.461390790772751488).epsilon(1e-14));
    CHECK(w[11].value == doctest::Approx(0.0386092092272485116).epsilon(1e-13));

    // Same numbers from the scalar test oracle.
    double sum = 0.0;
    for (int j = 0; j < 20; ++j) {
        sum += oracle::bump(j / 19.0, 0.19, 0.5);
    }
    for (int j = 0; j < 20; ++j) {
        CHECK(w[j].value == doctest::Approx(oracle::bump(j / 19.0, 0.19, 0.5) / sum).epsilon(1e-14));
    }
    int nonzero = 0;
    for (const auto& e : w) {
        nonzero += e.value != 0.0 ? 1 : 0;
    }
    CHECK((nonzero == 3 || nonzero == 4));
}

TEST_CASE("partition of unity holds on a dense grid") {
    for (const auto& layout : {reference_layout(), uniform_layout(7, auto_width(7, 0.0, 1.0), 0.0, 1.0),
                               uniform_layout(1, 2.0, 0.0, 1.0),
                               SubdomainLayout({0.0, 0.3, 0.35, 0.9}, {0.7, 0.2, 0.9, 0.5}, 0.0, 1.0)}) {
        double worst_sum = 0.0, worst_d1 = 0.0, worst_d2 = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const double x = i / 9999.0;
            const auto w = layout.window_all(x);
            double s0 = 0.0, s1 = 0.0, s2 = 0.0, scale = 1.0;
            for (const auto& e : w) {
                s0 += e.value;
                s1 += e.d1;
                s2 += e.d2;
                scale = std::max({scale, std::abs(e.d1), std::abs(e.d2)});
            }
            worst_sum = std::max(worst_sum, std::abs(s0 - 1.0));
            worst_d1 = std::max(worst_d1, std::abs(s1) / scale);
            worst_d2 = std::max(worst_d2, std::abs(s2) / scale);
        }
        CHECK(worst_sum <= 1e-12);
        CHECK(worst_d1 <= 1e-8);
        CHECK(worst_d2 <= 1e-8);
    }
}

TEST_CASE("compact support, bounds and agreement with support_index") {
    const auto layout = reference_layout();
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const double x = u(gen);
        const auto w = layout.window_all(x);
        const auto support = layout.support_index(x);
        std::vector<std::size_t> nonzero;
        for (std::size_t j = 0; j < w.size(); ++j) {
            CHECK(w[j].value >= 0.0);
            CHECK(w[j].value <= 1.0);
            const bool outside = std::abs(x - layout.centers()[j]) >= 0.5 * layout.widths()[j];
            if (outside) {
                CHECK(w[j].value == 0.0);
                CHECK(w[j].d1 == 0.0);
                CHECK(w[j].d2 == 0.0);
            }
            if (w[j].value != 0.0) {
                nonzero.push_back(j);
            }
        }
        CHECK(nonzero == support);
    }
}

TEST_CASE("support edges count as outside") {
    const SubdomainLayout layout({0.0, 0.5, 1.0}, {1.0, 1.0, 1.0}, 0.0, 1.0);
    // x = 0.5 sits exactly on the edges of subdomains 0 and 2.
    CHECK(layout.support_index(0.5) == std::vector<std::size_t>{1});
    const auto w = layout.window_all(0.5);
    CHECK(w[0].value == 0.0);
    CHECK(w[1].value == 1.0);
    CHECK(w[2].value == 0.0);
}

TEST_CASE("window derivatives match central differences") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double h = 1e-5;
    for (const auto& layout : {reference_layout(), uniform_layout(9, auto_width(9, 0.0, 1.0), 0.0, 1.0)}) {
        int checked = 0;
        double worst1 = 0.0, worst2 = 0.0;
        while (checked < 1000) {
            const double x = u(gen);
            if (distance_to_edges(layout, x) < 1e-4) {
                continue;
            }
            ++checked;
            const auto w = layout.window_all(x);
            for (std::size_t j = 0; j < layout.size(); ++j) {
                const auto fd = oracle::central_difference(
                    [&](double y) { return layout.window_all(y)[j].value; }, x, h);
                // Natural scales of the first and second derivative of a width-w bump.
                const double s1 = M_PI / layout.widths()[j];
                const double s2 = s1 * s1;
                worst1 = std::max(worst1, oracle::relative_error(w[j].d1, fd.d1, s1));
                worst2 = std::max(worst2, oracle::relative_error(w[j].d2, fd.d2, s2));
            }
        }
        CHECK(worst1 <= 1e-5);
        CHECK(worst2 <= 1e-5);
    }
}

TEST_CASE("auto width keeps the reference overlap ratio") {
    CHECK(auto_width(20, 0.0, 1.0) == doctest::Approx(0.19).epsilon(1e-15));
    CHECK(auto_width(5, 0.0, 1.0) == doctest::Approx(3.61 / 4.0).epsilon(1e-15));
    for (std::size_t j = 2; j <= 25; ++j) {
        CHECK_NOTHROW(uniform_layout(j, auto_width(j, 0.0, 1.0), 0.0, 1.0));
    }
}

} // TEST_SUITE
