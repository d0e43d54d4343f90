#ifndef ISAC_METRICS_HPP
#define ISAC_METRICS_HPP

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "isac/constellation.hpp"

namespace isac {

/// Channel parameters shared by the communication and radar paths. Noise
/// variances are total complex power (per-quadrature half).
struct ChannelConfig {
    double sigma_c2 = 1.0;
    double sigma_r2 = 1.0;
    std::complex<double> zeta_r{1.0, 0.0};
    double p_fa = 1e-3;

    void validate() const;
};

struct MetricReport {
    double mi_bits = 0.0;
    double mi_normalized = 0.0;
    double avg_pd = 0.0;
    std::vector<double> per_point_pd;
};

/// h(Y|X) for the AWGN channel, log2(pi e sigma_c2), in bits.
double conditional_entropy_awgn(double sigma_c2);

/// Monte-Carlo estimate of I(X; Y_c) in bits. A fresh uniformly-drawn symbol
/// is transmitted per trial (set stratified to cycle symbols deterministically
/// instead). Conditional densities are combined in the log domain.
double mutual_information_mc(const Constellation& c, double sigma_c2, std::size_t n_mc,
                             std::uint64_t seed, bool stratified = false);

/// R / log2(M).
double normalized_mi(double mi_bits, std::size_t M);

/// SNR units fed to the Albersheim logistic form. Db is the default
/// (snr_linear is converted to dB first); Linear is exposed for sensitivity
/// checks against the paper's as-printed equation.
enum class AlbersheimUnits { Db, Linear };

/// Albersheim approximation of the single-pulse detection probability,
/// P_d = logistic((SNR - B) / (0.12 B + 1.7)) with B = ln(0.62 / p_fa).
double albersheim_pd(double snr_linear, double p_fa,
                     AlbersheimUnits units = AlbersheimUnits::Db);

/// Marcum Q_1(a, b) by the noncentral chi-square series, absolute accuracy
/// better than 1e-10 for the operating ranges used here.
double marcum_q1(double a, double b);

/// Exact Neyman-Pearson envelope-detector P_d for a nonfluctuating return of
/// amplitude rho in complex noise of total variance sigma_r2. The threshold
/// solves P_fa = exp(-V_T^2 / sigma_r2); at rho = 0 the result equals p_fa.
double exact_pd_rice(double rho, double sigma_r2, double p_fa);

/// Per-point Albersheim P_d at snr_i = rho_i^2 / sigma_r2 and their mean.
/// Zero-amplitude points are evaluated at an SNR floor of 1e-12.
std::pair<double, std::vector<double>> average_pd(const Constellation& c, double sigma_r2,
                                                  double p_fa,
                                                  AlbersheimUnits units = AlbersheimUnits::Db);

} // namespace isac

#endif
