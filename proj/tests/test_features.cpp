#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "elmfb/error.hpp"
#include "elmfb/features.hpp"
#include "oracles.hpp"

using namespace elmfb;

TEST_SUITE("features") {

TEST_CASE("same seed reproduces the bank bit for bit") {
    CHECK(init_features(1, 1, 8.0, 42) == init_features(1, 1, 8.0, 42));
    CHECK(init_features(20, 32, 8.0, 9, Activation::Tanh) == init_features(20, 32, 8.0, 9, Activation::Tanh));
}

TEST_CASE("draws respect their ranges") {
    const auto bank = init_features(20, 32, 8.0, 1);
    REQUIRE(bank.weights.size() == 640);
    REQUIRE(bank.biases.size() == 640);
    CHECK(*std::min_element(bank.weights.begin(), bank.weights.end()) >= -8.0);
    CHECK(*std::max_element(bank.weights.begin(), bank.weights.end()) <= 8.0);
    CHECK(*std::min_element(bank.biases.begin(), bank.biases.end()) >= -M_PI);
    CHECK(*std::max_element(bank.biases.begin(), bank.biases.end()) <= M_PI);
    // 640 uniform draws should reach close to both ends.
    CHECK(*std::min_element(bank.weights.begin(), bank.weights.end()) < -7.5);
    CHECK(*std::max_element(bank.weights.begin(), bank.weights.end()) > 7.5);
}

TEST_CASE("different seeds give different banks") {
    const auto a = init_features(2, 3, 8.0, 1);
    const auto b = init_features(2, 3, 8.0, 2);
    CHECK(a.weights != b.weights);
    CHECK(a.biases != b.biases);
}

TEST_CASE("stream order is all weights then all biases") {
    // The first J*C draws are weights, so a wider bank extends the weight
    // prefix of a narrower one with the same seed.
    const auto small = init_features(1, 3, 8.0, 17);
    const auto wide = init_features(2, 3, 8.0, 17);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(small.weights[i] == wide.weights[i]);
    }
    CHECK(small.biases[0] != wide.biases[0]);
}

TEST_CASE("invalid bank parameters") {
    CHECK_THROWS_AS(init_features(0, 3, 8.0, 0), Error);
    CHECK_THROWS_AS(init_features(1, 0, 8.0, 0), Error);
    CHECK_THROWS_AS(init_features(1, 1, 0.0, 0), Error);
}

TEST_CASE("feature evaluation examples") {
    const auto layout = uniform_layout(20, 0.19, 0.0, 1.0);
    auto bank = init_features(20, 4, 8.0, 3);

    SUBCASE("zero weight is a constant feature") {
        bank.weights[bank.index(5, 2)] = 0.0;
        const auto f = eval_feature(bank, layout, 5, 2, 0.31);
        CHECK(f.value == std::sin(bank.bias(5, 2)));
        CHECK(f.d1 == 0.0);
        CHECK(f.d2 == 0.0);
    }
    SUBCASE("at the subdomain center with zero bias") {
        bank.biases[bank.index(7, 1)] = 0.0;
        const double w = bank.weight(7, 1);
        const double gamma = 2.0 / 0.19;
        const auto f = eval_feature(bank, layout, 7, 1, layout.centers()[7]);
        CHECK(f.value == 0.0);
        CHECK(f.d1 == doctest::Approx(w * gamma).epsilon(1e-15));
        CHECK(f.d2 == 0.0);
    }
    SUBCASE("out of range indices") {
        CHECK_THROWS_AS(eval_feature(bank, layout, 20, 0, 0.5), Error);
        CHECK_THROWS_AS(eval_feature(bank, layout, 0, 4, 0.5), Error);
        try {
            eval_feature(bank, layout, 20, 0, 0.5);
        } catch (const Error& e) {
            CHECK(e.category() == ErrorCategory::IndexOutOfRange);
        }
    }
}

TEST_CASE("sin closure: d2 = -(w gamma)^2 value") {
    const auto layout = uniform_layout(20, 0.19, 0.0, 1.0);
    const auto bank = init_features(20, 32, 8.0, 4);
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick_j(0, 19), pick_c(0, 31);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t j = pick_j(gen), c = pick_c(gen);
        const double x = u(gen);
        const auto f = eval_feature(bank, layout, j, c, x);
        const double rate = bank.weight(j, c) * 2.0 / 0.19;
        CHECK(std::abs(f.value) <= 1.0);
        CHECK(std::abs(f.d2 + rate * rate * f.value) <= 1e-12 * std::max(1.0, rate * rate));
    }
}

TEST_CASE("feature derivatives match central differences") {
    const auto layout = uniform_layout(20, 0.19, 0.0, 1.0);
    const double h = 1e-5;
    for (const auto activation : {Activation::Sin, Activation::Tanh}) {
        const auto bank = init_features(20, 32, 8.0, 6, activation);
        std::mt19937_64 gen(10);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::uniform_int_distribution<std::size_t> pick_j(0, 19), pick_c(0, 31);
        double worst1 = 0.0, worst2 = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const std::size_t j = pick_j(gen), c = pick_c(gen);
            const double x = u(gen);
            const auto f = eval_feature(bank, layout, j, c, x);
            const auto fd = oracle::central_difference(
                [&](double y) { return eval_feature(bank, layout, j, c, y).value; }, x, h);
            // Natural derivative scales |w gamma| and (w gamma)^2, floored at 1.
            const double rate = std::abs(bank.weight(j, c) * 2.0 / 0.19);
            worst1 = std::max(worst1, oracle::relative_error(f.d1, fd.d1, std::max(rate, 1.0)));
            worst2 = std::max(worst2, oracle::relative_error(f.d2, fd.d2, std::max(rate * rate, 1.0)));
        }
        CHECK(worst1 <= 1e-5);
        CHECK(worst2 <= 1e-5);
    }
}

} // TEST_SUITE
