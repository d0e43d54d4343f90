#include "isac/bounds.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "isac/rng.hpp"

namespace isac {

double pep_conditional(double d_squared, double sigma_c2) {
    if (d_squared < 0.0) throw std::invalid_argument("pep_conditional: D must be >= 0");
    if (!(sigma_c2 > 0.0)) throw std::invalid_argument("pep_conditional: sigma_c2 must be > 0");
    return q_function(std::sqrt(d_squared / (2.0 * sigma_c2)));
}

PepResult average_pep_mixture(const GammaMixture& mix, double sigma_c2) {
    mix.validate();
    if (!(sigma_c2 > 0.0))
        throw std::invalid_argument("average_pep_mixture: sigma_c2 must be > 0");
    PepResult res;
    res.per_component_terms.reserve(mix.size());
    res.gamma_ells.reserve(mix.size());
    KahanSum total;
    for (const auto& c : mix.components) {
        const double g = c.beta / (4.0 * sigma_c2);
        const double term = 0.5 * c.w * reg_inc_beta(1.0 / (1.0 + g), 0.5, c.alpha);
        res.gamma_ells.push_back(g);
        res.per_component_terms.push_back(term);
        total.add(term);
    }
    res.avg_pep = total.value();
    return res;
}

UnionBound ser_union_bound(std::size_t M, double avg_pep) {
    if (M < 2) throw std::invalid_argument("ser_union_bound: M must be >= 2");
    if (avg_pep < 0.0 || avg_pep > 0.5)
        throw std::invalid_argument("ser_union_bound: avg_pep must be in [0, 0.5]");
    UnionBound b;
    b.value = static_cast<double>(M - 1) * avg_pep;
    b.vacuous = b.value > 1.0;
    return b;
}

std::complex<double> mle_reflection(std::complex<double> y_r, Symbol x_i) {
    const double rho2 = std::norm(x_i);
    if (!(rho2 > 0.0)) throw std::invalid_argument("mle_reflection: zero-amplitude symbol");
    return y_r * std::conj(x_i) / rho2;
}

double crb_conditional(double rho, double sigma_r2) {
    if (rho < 0.0) throw std::invalid_argument("crb_conditional: rho must be >= 0");
    if (!(sigma_r2 > 0.0)) throw std::invalid_argument("crb_conditional: sigma_r2 must be > 0");
    if (rho == 0.0) return std::numeric_limits<double>::infinity();
    return sigma_r2 / (rho * rho);
}

double crb_average(const GammaParams& params, double sigma_r2) {
    if (!(params.alpha > 0.0) || !(params.beta > 0.0))
        throw std::invalid_argument("crb_average: invalid params");
    if (!(sigma_r2 > 0.0)) throw std::invalid_argument("crb_average: sigma_r2 must be > 0");
    if (params.alpha <= 2.0) return std::numeric_limits<double>::infinity();
    return sigma_r2 / (params.beta * params.beta * (params.alpha - 1.0) * (params.alpha - 2.0));
}

double crb_average_power_constrained(double alpha, double P, double sigma_r2) {
    if (!(P > 0.0) || !(sigma_r2 > 0.0))
        throw std::invalid_argument("crb_average_power_constrained: P, sigma_r2 must be > 0");
    if (alpha <= 2.0) return std::numeric_limits<double>::infinity();
    return (sigma_r2 / P) * alpha * (alpha + 1.0) / ((alpha - 1.0) * (alpha - 2.0));
}

McEstimate crb_average_mc(const GammaParams& params, double sigma_r2, std::size_t n,
                          std::uint64_t seed) {
    if (n < 10000) throw std::invalid_argument("crb_average_mc: need n >= 1e4");
    constexpr std::size_t kChunk = 1u << 18;
    const std::size_t n_chunks = (n + kChunk - 1) / kChunk;
    std::vector<KahanSum> s1(n_chunks), s2(n_chunks);
    parallel_chunks(n_chunks, [&](std::size_t chunk) {
        auto rng = rng_stream(seed, chunk);
        std::gamma_distribution<double> amp(params.alpha, params.beta);
        const std::size_t lo = chunk * kChunk;
        const std::size_t hi = std::min(n, lo + kChunk);
        for (std::size_t i = lo; i < hi; ++i) {
            const double rho = amp(rng);
            const double v = sigma_r2 / (rho * rho);
            s1[chunk].add(v);
            s2[chunk].add(v * v);
        }
    });
    KahanSum sum, sum_sq;
    for (std::size_t c = 0; c < n_chunks; ++c) {
        sum.merge(s1[c]);
        sum_sq.merge(s2[c]);
    }
    const double nn = static_cast<double>(n);
    const double mean = sum.value() / nn;
    const double var = std::max(0.0, sum_sq.value() / nn - mean * mean);
    return {mean, std::sqrt(var / nn)};
}

McEstimate mle_variance_mc(Symbol x_i, std::complex<double> zeta_r, double sigma_r2,
                           std::size_t n, std::uint64_t seed) {
    if (!(std::norm(x_i) > 0.0))
        throw std::invalid_argument("mle_variance_mc: zero-amplitude symbol");
    if (n < 1000) throw std::invalid_argument("mle_variance_mc: need n >= 1e3");
    constexpr std::size_t kChunk = 1u << 18;
    const std::size_t n_chunks = (n + kChunk - 1) / kChunk;
    std::vector<KahanSum> s1(n_chunks), s2(n_chunks);
    const double comp_sigma = std::sqrt(0.5 * sigma_r2);
    parallel_chunks(n_chunks, [&](std::size_t chunk) {
        auto rng = rng_stream(seed, chunk);
        std::normal_distribution<double> noise(0.0, comp_sigma);
        const std::size_t lo = chunk * kChunk;
        const std::size_t hi = std::min(n, lo + kChunk);
        for (std::size_t i = lo; i < hi; ++i) {
            const std::complex<double> y =
                zeta_r * x_i + std::complex<double>(noise(rng), noise(rng));
            const double err = std::norm(mle_reflection(y, x_i) - zeta_r);
            s1[chunk].add(err);
            s2[chunk].add(err * err);
        }
    });
    KahanSum sum, sum_sq;
    for (std::size_t c = 0; c < n_chunks; ++c) {
        sum.merge(s1[c]);
        sum_sq.merge(s2[c]);
    }
    const double nn = static_cast<double>(n);
    const double mean = sum.value() / nn;
    const double var = std::max(0.0, sum_sq.value() / nn - mean * mean);
    return {mean, std::sqrt(var / nn)};
}

} // namespace isac
