#include "isac/metrics.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "isac/rng.hpp"
#include "isac/special_functions.hpp"

namespace isac {

void ChannelConfig::validate() const {
    if (!(sigma_c2 > 0.0) || !(sigma_r2 > 0.0))
        throw std::invalid_argument("ChannelConfig: noise variances must be > 0");
    if (!(p_fa > 0.0) || !(p_fa < 1.0))
        throw std::invalid_argument("ChannelConfig: p_fa must be in (0, 1)");
}

double conditional_entropy_awgn(double sigma_c2) {
    if (!(sigma_c2 > 0.0))
        throw std::invalid_argument("conditional_entropy_awgn: sigma_c2 must be > 0");
    return std::log2(std::numbers::pi * std::numbers::e * sigma_c2);
}

double mutual_information_mc(const Constellation& c, double sigma_c2, std::size_t n_mc,
                             std::uint64_t seed, bool stratified) {
    if (c.size() < 2) throw std::invalid_argument("mutual_information_mc: need M >= 2");
    if (!(sigma_c2 > 0.0))
        throw std::invalid_argument("mutual_information_mc: sigma_c2 must be > 0");
    if (n_mc < 100) throw std::invalid_argument("mutual_information_mc: n_mc must be >= 100");

    const std::size_t M = c.size();
    auto rng = rng_stream(seed, 0);
    std::uniform_int_distribution<std::size_t> pick(0, M - 1);
    std::normal_distribution<double> noise(0.0, std::sqrt(0.5 * sigma_c2));

    // R = log2 M - (1 + mean_n L_n) / ln 2 with
    // L_n = ln sum_i exp(-|y_n - x_i|^2 / sigma_c2); see the AWGN mixture
    // entropy estimator with p(x_i) = 1/M.
    const double inv_s2 = 1.0 / sigma_c2;
    KahanSum acc;
    std::vector<double> t(M);
    for (std::size_t n = 0; n < n_mc; ++n) {
        const std::size_t s = stratified ? (n % M) : pick(rng);
        const Symbol y = c.points[s] + Symbol(noise(rng), noise(rng));
        for (std::size_t i = 0; i < M; ++i) t[i] = -std::norm(y - c.points[i]) * inv_s2;
        acc.add(log_sum_exp(t));
    }
    const double mean_lse = acc.value() / static_cast<double>(n_mc);
    return std::log2(static_cast<double>(M)) - (1.0 + mean_lse) / std::numbers::ln2;
}

double normalized_mi(double mi_bits, std::size_t M) {
    if (M < 2) throw std::invalid_argument("normalized_mi: M must be >= 2");
    return mi_bits / std::log2(static_cast<double>(M));
}

double albersheim_pd(double snr_linear, double p_fa, AlbersheimUnits units) {
    if (!(snr_linear > 0.0)) throw std::invalid_argument("albersheim_pd: snr must be > 0");
    if (!(p_fa > 0.0) || !(p_fa < 0.62))
        throw std::domain_error("albersheim_pd: p_fa must be in (0, 0.62)");
    const double B = std::log(0.62 / p_fa);
    const double snr =
        units == AlbersheimUnits::Db ? 10.0 * std::log10(snr_linear) : snr_linear;
    return logistic((snr - B) / (0.12 * B + 1.7));
}

double marcum_q1(double a, double b) {
    if (a < 0.0 || b < 0.0) throw std::invalid_argument("marcum_q1: arguments must be >= 0");
    if (b == 0.0) return 1.0;
    const double x = 0.5 * a * a;
    const double y = 0.5 * b * b;
    if (a == 0.0) return std::exp(-y);
    // For x beyond the series range the mass sits far above any threshold we
    // use (b <= ~6); the complement is below 1e-100.
    if (x > 600.0) return a > b ? 1.0 : 0.0;

    // Q1 = sum_k Pois(k; x) * P(Poisson(y) <= k), both factors updated
    // iteratively. Terminate once the remaining Poisson tail is negligible.
    double pois = std::exp(-x);  // Pois(0; x)
    double inner_term = std::exp(-y);
    double inner_cdf = inner_term; // P(Poisson(y) <= 0)
    double pois_cum = pois;
    KahanSum q;
    q.add(pois * inner_cdf);
    for (std::size_t k = 1; k < 100000; ++k) {
        pois *= x / static_cast<double>(k);
        inner_term *= y / static_cast<double>(k);
        inner_cdf += inner_term;
        q.add(pois * std::min(inner_cdf, 1.0));
        pois_cum += pois;
        if (1.0 - pois_cum < 1e-14 && static_cast<double>(k) > x) break;
    }
    // Remaining Poisson mass has inner CDF ~ 1; add it as an upper completion.
    q.add(std::max(0.0, 1.0 - pois_cum));
    return std::min(1.0, std::max(0.0, q.value()));
}

double exact_pd_rice(double rho, double sigma_r2, double p_fa) {
    if (rho < 0.0) throw std::invalid_argument("exact_pd_rice: rho must be >= 0");
    if (!(sigma_r2 > 0.0))
        throw std::invalid_argument("exact_pd_rice: sigma_r2 must be > 0");
    if (!(p_fa > 0.0) || !(p_fa < 1.0))
        throw std::invalid_argument("exact_pd_rice: p_fa must be in (0, 1)");
    // V_T from the noise-only Rayleigh envelope, then the Rice exceedance in
    // per-quadrature units (sigma_r2 / 2 per component).
    const double a = std::sqrt(2.0 * rho * rho / sigma_r2);
    const double b = std::sqrt(-2.0 * std::log(p_fa));
    return marcum_q1(a, b);
}

std::pair<double, std::vector<double>> average_pd(const Constellation& c, double sigma_r2,
                                                  double p_fa, AlbersheimUnits units) {
    if (!(sigma_r2 > 0.0)) throw std::invalid_argument("average_pd: sigma_r2 must be > 0");
    std::vector<double> per(c.size());
    KahanSum mean;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double snr = std::max(std::norm(c.points[i]) / sigma_r2, 1e-12);
        per[i] = albersheim_pd(snr, p_fa, units);
        mean.add(per[i]);
    }
    return {mean.value() / static_cast<double>(c.size()), std::move(per)};
}

} // namespace isac
