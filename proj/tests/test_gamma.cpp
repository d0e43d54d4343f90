#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "isac/gamma.hpp"
#include "isac/rng.hpp"
#include "isac/special_functions.hpp"

using namespace isac;

TEST_CASE("gamma_pdf values and edge cases") {
    CHECK(gamma_pdf(0.0, {2.0, 1.0}) == 0.0);
    CHECK(gamma_pdf(1.0, {1.0, 1.0}) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(gamma_pdf(0.0, {1.0, 2.5}) == doctest::Approx(1.0 / 2.5));
    CHECK_THROWS_AS(gamma_pdf(0.0, {0.5, 1.0}), std::domain_error);
    CHECK_THROWS_AS(gamma_pdf(-1.0, {2.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(gamma_pdf(1.0, {-1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("gamma_pdf integrates to one for the radar-centric parameters") {
    // adaptive quadrature over [0, far tail]; alpha, beta from the
    // radar-centric design row
    const GammaParams p{4.71, 1.0};
    const double integral = adaptive_simpson(
        [&](double r) { return gamma_pdf(r, p); }, 1e-300, 60.0, 1e-10);
    CHECK(integral == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("gamma_sample moments") {
    const auto s = gamma_sample({3.0, 2.0}, 1000000, 42);
    KahanSum m1, m2;
    for (double v : s) {
        m1.add(v);
        m2.add(v * v);
    }
    const double mean = m1.value() / 1e6;
    const double second = m2.value() / 1e6;
    CHECK(std::abs(mean - 6.0) < 0.02);      // alpha*beta
    CHECK(std::abs(second - 24.0) < 0.1);    // beta^2*alpha*(alpha+1)
}

TEST_CASE("gamma_sample determinism") {
    const auto a = gamma_sample({2.2, 0.7}, 1000, 9);
    const auto b = gamma_sample({2.2, 0.7}, 1000, 9);
    CHECK(a == b);
    const auto c = gamma_sample({2.2, 0.7}, 1000, 10);
    CHECK(a != c);
}

TEST_CASE("squared distance kernel formula") {
    // degenerate checks of d = (ri-rj)^2 + 4 ri rj sin^2(dphi/2)
    auto kernel = [](double ri, double rj, double dphi) {
        const double s = std::sin(0.5 * dphi);
        return (ri - rj) * (ri - rj) + 4.0 * ri * rj * s * s;
    };
    CHECK(kernel(1.3, 1.3, 0.0) == 0.0);
    CHECK(kernel(1.0, 1.0, std::numbers::pi) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("squared_distance_samples mean") {
    const auto d = squared_distance_samples({2.0, 1.0}, 1000000, 5);
    KahanSum m;
    double most_neg = 0.0;
    for (double v : d) {
        m.add(v);
        most_neg = std::min(most_neg, v);
    }
    CHECK(most_neg >= 0.0);
    // E[D] = 2 beta^2 alpha (alpha+1) = 12
    CHECK(std::abs(m.value() / 1e6 - 12.0) < 0.1);
}

TEST_CASE("mixture_pdf degenerate cases and normalization") {
    const GammaParams p{2.3, 1.7};
    GammaMixture single{{{1.0, p.alpha, p.beta}}};
    CHECK(mixture_pdf(0.9, single) == doctest::Approx(gamma_pdf(0.9, p)).epsilon(1e-14));

    GammaMixture twin{{{0.5, p.alpha, p.beta}, {0.5, p.alpha, p.beta}}};
    CHECK(mixture_pdf(0.9, twin) == doctest::Approx(gamma_pdf(0.9, p)).epsilon(1e-13));

    GammaMixture mix{{{0.2, 1.5, 0.8}, {0.5, 3.0, 2.0}, {0.3, 7.0, 0.5}}};
    const double integral = adaptive_simpson(
        [&](double d) { return mixture_pdf(d, mix); }, 1e-300, 120.0, 1e-10);
    CHECK(integral == doctest::Approx(1.0).epsilon(1e-6));

    CHECK_THROWS_AS(mixture_pdf(0.0, mix), std::domain_error);
}

TEST_CASE("mixture_mgf") {
    GammaMixture expo{{{1.0, 1.0, 2.0}}};
    CHECK(mixture_mgf(0.0, expo) == 1.0);
    CHECK(mixture_mgf(-1.0, expo) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(mixture_mgf(0.5, expo), std::domain_error);

    // Monte-Carlo oracle for a two-component mixture at s = -0.5
    GammaMixture mix{{{0.4, 2.0, 0.6}, {0.6, 5.0, 0.3}}};
    auto rng = rng_stream(77, 0);
    std::gamma_distribution<double> g1(2.0, 0.6), g2(5.0, 0.3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    KahanSum acc;
    const std::size_t n = 2000000;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = u(rng) < 0.4 ? g1(rng) : g2(rng);
        acc.add(std::exp(-0.5 * d));
    }
    const double mc = acc.value() / static_cast<double>(n);
    CHECK(std::abs(mixture_mgf(-0.5, mix) - mc) / mc < 0.005);
}

TEST_CASE("log_likelihood basics") {
    GammaMixture expo{{{1.0, 1.0, 1.0}}};
    std::vector<double> one{1.0};
    CHECK(log_likelihood(one, expo) == doctest::Approx(-1.0).epsilon(1e-13));

    const auto s = gamma_sample({2.0, 1.0}, 5000, 3);
    std::vector<double> rev(s.rbegin(), s.rend());
    CHECK(log_likelihood(s, expo) == doctest::Approx(log_likelihood(rev, expo)).epsilon(1e-12));

    std::vector<double> bad{1.0, -2.0};
    CHECK_THROWS_AS(log_likelihood(bad, expo), std::domain_error);
}

TEST_CASE("log_likelihood prefers the true model") {
    const auto s = gamma_sample({2.5, 1.3}, 100000, 21);
    GammaMixture truth{{{1.0, 2.5, 1.3}}};
    GammaMixture wrong{{{1.0, 3.5, 1.3}}};
    CHECK(log_likelihood(s, truth) > log_likelihood(s, wrong));
}

TEST_CASE("solve_gamma_shape satisfies the transcendental equation") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(1e-4, 10.0);
    for (int i = 0; i < 300; ++i) {
        const double s = u(rng);
        const double a = solve_gamma_shape(s);
        CHECK(std::abs(std::log(a) - digamma(a) - s) < 1e-10);
    }
}

TEST_CASE("em recovers a single gamma") {
    const auto s = gamma_sample({2.5, 4.0}, 100000, 11);
    EmConfig cfg;
    cfg.L = 1;
    cfg.restarts = 2;
    cfg.seed = 11;
    const auto fit = fit_gamma_mixture_em(s, cfg);
    REQUIRE(fit.mixture.size() == 1);
    CHECK(fit.mixture.components[0].alpha > 2.45);
    CHECK(fit.mixture.components[0].alpha < 2.55);
    CHECK(std::abs(fit.mixture.components[0].beta - 4.0) / 4.0 < 0.02);
}

TEST_CASE("em separates a well-split two-component mixture") {
    auto rng = rng_stream(123, 0);
    std::gamma_distribution<double> g1(1.0, 1.0), g2(8.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> s(200000);
    for (auto& v : s) v = u(rng) < 0.5 ? g1(rng) : g2(rng);
    EmConfig cfg;
    cfg.L = 2;
    cfg.restarts = 3;
    cfg.seed = 5;
    const auto fit = fit_gamma_mixture_em(s, cfg);
    REQUIRE(fit.mixture.size() == 2);
    const double w0 = fit.mixture.components[0].w;
    CHECK(std::abs(w0 - 0.5) < 0.05);
    CHECK(std::abs(fit.mixture.components[1].w - 0.5) < 0.05);
}

TEST_CASE("em log-likelihood trace is monotone in every restart") {
    const auto d = squared_distance_samples({3.36, 1.0}, 50000, 8);
    EmConfig cfg;
    cfg.L = 3;
    cfg.restarts = 4;
    cfg.seed = 8;
    const auto fit = fit_gamma_mixture_em(d, cfg);
    for (const auto& trace : fit.restart_traces) {
        REQUIRE(!trace.empty());
        for (std::size_t t = 1; t < trace.size(); ++t)
            CHECK(trace[t] >= trace[t - 1] - 1e-9);
    }
    CHECK(fit.final_log_likelihood == fit.ll_trace.back());
    // weights sum to one
    double w = 0.0;
    for (const auto& c : fit.mixture.components) w += c.w;
    CHECK(w == doctest::Approx(1.0).epsilon(1e-12));
    // fitted density integrates to one
    const double integral = adaptive_simpson(
        [&](double x) { return mixture_pdf(x, fit.mixture); }, 1e-300, 400.0, 1e-9);
    CHECK(integral == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("em rejects undersized datasets") {
    std::vector<double> tiny{1.0, 2.0, 3.0};
    EmConfig cfg;
    cfg.L = 1;
    CHECK_THROWS_AS(fit_gamma_mixture_em(tiny, cfg), std::invalid_argument);
}

TEST_CASE("method_of_moments_single") {
    {
        const auto mm = method_of_moments_single({2.0, 1.0});
        CHECK(mm.alpha == doctest::Approx(0.6).epsilon(1e-15));
        CHECK(mm.beta == doctest::Approx(20.0).epsilon(1e-15));
    }
    {
        const auto mm = method_of_moments_single({1e6, 1.0});
        CHECK(std::abs(mm.alpha - 2.0) < 1e-4);
    }
    {
        // product equals E[D] = 2 b^2 a (a+1); cross-checked against the
        // Monte-Carlo mean of the D-dataset
        const auto mm = method_of_moments_single({3.0, 2.0});
        CHECK(mm.alpha * mm.beta == doctest::Approx(96.0).epsilon(1e-12));
        const auto d = squared_distance_samples({3.0, 2.0}, 1000000, 17);
        KahanSum m;
        for (double v : d) m.add(v);
        CHECK(std::abs(m.value() / 1e6 - 96.0) / 96.0 < 0.01);
    }
}

TEST_CASE("kl divergence of an exact fit is small") {
    const auto s = gamma_sample({2.0, 1.0}, 1000000, 29);
    GammaMixture exact{{{1.0, 2.0, 1.0}}};
    bool clamped = false;
    const double kl = kl_divergence_empirical(s, exact, 200, &clamped);
    CHECK(!clamped);
    CHECK(kl >= -1e-9);
    CHECK(kl < 2e-3);
}

TEST_CASE("kl divergence near zero for a self-consistent fine fit") {
    // empirical distribution against a dense fit of itself: fit L=1 to exact
    // gamma draws and compare on the same draws
    const auto s = gamma_sample({3.0, 2.0}, 200000, 31);
    EmConfig cfg;
    cfg.L = 1;
    cfg.restarts = 1;
    cfg.seed = 31;
    const auto fit = fit_gamma_mixture_em(s, cfg);
    const double kl = kl_divergence_empirical(s, fit.mixture, 100);
    CHECK(kl >= -1e-9);
    CHECK(kl < 5e-4);
}

TEST_CASE("kl input validation") {
    GammaMixture m{{{1.0, 2.0, 1.0}}};
    std::vector<double> few(100, 1.0);
    CHECK_THROWS_AS(kl_divergence_empirical(few, m, 200), std::invalid_argument);
    const auto s = gamma_sample({2.0, 1.0}, 2000, 1);
    CHECK_THROWS_AS(kl_divergence_empirical(s, m, 5), std::invalid_argument);
}

TEST_CASE("kl non-increasing in L on a fixed trade-off dataset") {
    const auto d = squared_distance_samples({3.36, 1.0}, 200000, 40);
    EmConfig cfg;
    cfg.restarts = 2;
    cfg.seed = 40;
    double prev = 1e9;
    GammaMixture warm;
    for (std::size_t L = 1; L <= 3; ++L) {
        cfg.L = L;
        const auto fit =
            fit_gamma_mixture_em(d, cfg, L == 1 ? nullptr : &warm);
        warm = fit.mixture;
        const double kl = kl_divergence_empirical(d, fit.mixture, 200);
        CHECK(kl <= prev + 2e-4);
        prev = kl;
    }
}
