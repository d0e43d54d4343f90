#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "isac/special_functions.hpp"

using namespace isac;

TEST_CASE("log_gamma anchors and recurrence") {
    CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(log_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(std::numbers::pi)).epsilon(1e-13));
    CHECK(log_gamma(10.0) == doctest::Approx(std::log(362880.0)).epsilon(1e-13));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(1e-3, 50.0);
    for (int i = 0; i < 200; ++i) {
        const double x = u(rng);
        const double lhs = log_gamma(x + 1.0);
        const double rhs = log_gamma(x) + std::log(x);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
    // large-argument sanity against Stirling
    const double x = 1e6;
    const double stirling = (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) +
                            1.0 / (12.0 * x);
    CHECK(log_gamma(x) == doctest::Approx(stirling).epsilon(1e-12));
}

TEST_CASE("digamma and trigamma anchors") {
    constexpr double euler = 0.57721566490153286;
    CHECK(digamma(1.0) == doctest::Approx(-euler).epsilon(1e-13));
    CHECK(digamma(0.5) == doctest::Approx(-euler - 2.0 * std::log(2.0)).epsilon(1e-13));
    CHECK(trigamma(1.0) ==
          doctest::Approx(std::numbers::pi * std::numbers::pi / 6.0).epsilon(1e-13));
    CHECK(trigamma(0.5) ==
          doctest::Approx(std::numbers::pi * std::numbers::pi / 2.0).epsilon(1e-13));
}

TEST_CASE("digamma/trigamma recurrence on [0.5, 100]") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.5, 100.0);
    for (int i = 0; i < 500; ++i) {
        const double x = u(rng);
        CHECK(std::abs(digamma(x + 1.0) - digamma(x) - 1.0 / x) <=
              1e-12 * std::max(1.0, std::abs(digamma(x))));
        CHECK(std::abs(trigamma(x + 1.0) - trigamma(x) + 1.0 / (x * x)) <=
              1e-12 * std::max(1.0, trigamma(x)));
    }
}

TEST_CASE("q_function values and symmetry") {
    CHECK(q_function(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    // high-precision Gaussian tail value
    CHECK(q_function(2.0) == doctest::Approx(0.022750131948179195).epsilon(1e-13));
    for (double x : {0.3, 1.0, 2.5, 4.0})
        CHECK(q_function(-x) == doctest::Approx(1.0 - q_function(x)).epsilon(1e-14));
}

TEST_CASE("q_function matches Craig-form quadrature") {
    for (double x : {0.5, 1.0, 3.0}) {
        const double craig =
            adaptive_simpson(
                [x](double psi) {
                    const double s = std::sin(psi);
                    return std::exp(-x * x / (2.0 * s * s));
                },
                1e-12, std::numbers::pi / 2.0, 1e-12) /
            std::numbers::pi;
        CHECK(std::abs(craig - q_function(x)) < 1e-8);
    }
}

TEST_CASE("regularized incomplete beta") {
    CHECK(reg_inc_beta(0.0, 2.0, 3.0) == 0.0);
    CHECK(reg_inc_beta(1.0, 2.0, 3.0) == 1.0);
    // I_x(1/2, 1) = sqrt(x)
    for (double x : {0.01, 0.25, 0.5, 0.9, 0.999})
        CHECK(reg_inc_beta(x, 0.5, 1.0) == doctest::Approx(std::sqrt(x)).epsilon(1e-12));
    CHECK(reg_inc_beta(0.25, 0.5, 1.0) == doctest::Approx(0.5).epsilon(1e-12));

    // quadrature oracle for I_{0.3}(2.7, 4.1)
    const double a = 2.7, b = 4.1;
    const double ln_b = log_gamma(a) + log_gamma(b) - log_gamma(a + b);
    const double integral = adaptive_simpson(
        [&](double t) { return std::exp((a - 1.0) * std::log(t) + (b - 1.0) * std::log1p(-t)); },
        1e-14, 0.3, 1e-14);
    const double oracle = integral / std::exp(ln_b);
    CHECK(std::abs(reg_inc_beta(0.3, a, b) - oracle) < 1e-10);

    CHECK_THROWS_AS(reg_inc_beta(-0.1, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(reg_inc_beta(1.1, 1.0, 1.0), std::domain_error);
}

TEST_CASE("regularized lower incomplete gamma") {
    // P(1, x) = 1 - exp(-x)
    for (double x : {0.1, 1.0, 5.0, 30.0})
        CHECK(reg_lower_inc_gamma(1.0, x) == doctest::Approx(-std::expm1(-x)).epsilon(1e-13));
    // quadrature oracle for a = 3.6, x = 2.2
    const double a = 3.6, x = 2.2;
    const double oracle = adaptive_simpson(
                              [&](double t) { return std::exp((a - 1.0) * std::log(t) - t); },
                              1e-300, x, 1e-14) /
                          std::exp(log_gamma(a));
    CHECK(reg_lower_inc_gamma(a, x) == doctest::Approx(oracle).epsilon(1e-11));
    CHECK(reg_lower_inc_gamma(a, 0.0) == 0.0);
}

TEST_CASE("log_sum_exp stability") {
    std::vector<double> v{-1000.0, -1000.0};
    CHECK(log_sum_exp(v) == doctest::Approx(-1000.0 + std::log(2.0)).epsilon(1e-14));
    std::vector<double> w{700.0, 710.0};
    CHECK(log_sum_exp(w) == doctest::Approx(710.0 + std::log1p(std::exp(-10.0))).epsilon(1e-14));
}

TEST_CASE("logistic basics") {
    CHECK(logistic(0.0) == 0.5);
    CHECK(logistic(-745.0) >= 0.0);
    CHECK(logistic(40.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(logistic(-2.0) + logistic(2.0) == doctest::Approx(1.0).epsilon(1e-14));
}
