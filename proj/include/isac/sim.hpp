#ifndef ISAC_SIM_HPP
#define ISAC_SIM_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "isac/bounds.hpp"
#include "isac/constellation.hpp"
#include "isac/gamma.hpp"
#include "isac/metrics.hpp"

namespace isac {

struct SimConfig {
    std::size_t n_symbols = 1000000;
    std::uint64_t seed = 1;
    double ebn0_db = 10.0;
    ChannelConfig channel;

    void validate() const;
};

struct SimResult {
    double ser = 0.0;
    double ser_stderr = 0.0;
    double pd_empirical = 0.0;
    double pd_stderr = 0.0;
    std::size_t n_symbols = 0;
};

/// sigma^2 = P / ((E_b/N_0)_linear * log2 M), shared by both channels.
double ebn0_to_sigma2(double ebn0_db, std::size_t M, double P);

/// y = x + n, n complex Gaussian with total variance sigma_c2.
std::complex<double> awgn_channel(Symbol x, double sigma_c2, std::mt19937_64& rng);

/// y = zeta_r * x + n, total noise variance sigma_r2.
std::complex<double> radar_channel(Symbol x, std::complex<double> zeta_r, double sigma_r2,
                                   std::mt19937_64& rng);

/// Index of the nearest constellation point; ties go to the lowest index.
std::size_t ml_detect(std::complex<double> y, const Constellation& c);

struct SerEstimate {
    double ser = 0.0;
    double stderr_ = 0.0;
};

SerEstimate simulate_ser(const Constellation& c, double sigma_c2, std::size_t n,
                         std::uint64_t seed);

struct PdEstimate {
    double pd = 0.0;
    double stderr_ = 0.0;
    double fa_rate = 0.0; // measured on interleaved noise-only trials
    double fa_stderr = 0.0;
};

/// Neyman-Pearson envelope detection: V_T from P_fa = exp(-V_T^2 / sigma_r2),
/// target-present trials transmit uniformly drawn symbols through the radar
/// channel (zeta_r = 1), noise-only trials are interleaved to measure the
/// empirical false-alarm rate.
PdEstimate simulate_pd(const Constellation& c, double sigma_r2, double p_fa, std::size_t n,
                       std::uint64_t seed);

struct SweepRow {
    double ebn0_db = 0.0;
    double ser = 0.0;
    double ser_stderr = 0.0;
    double pd = 0.0;
    double pd_stderr = 0.0;
    // present only when bounds inputs are supplied
    std::optional<double> union_bound;
    std::optional<double> crb_closed;
    std::optional<double> crb_mc;
};

struct SweepOptions {
    std::size_t n_ser = 1000000;
    std::size_t n_pd = 100000;
    std::size_t n_crb_mc = 1000000;
    double p_fa = 1e-3;
    std::uint64_t seed = 1;
};

/// Inputs for the analytical columns: the design parameters behind the
/// constellation and a fitted mixture of its squared-distance law.
struct BoundsInputs {
    GammaParams design;
    GammaMixture mixture;
};

std::vector<SweepRow> sweep_ebn0(const Constellation& c,
                                 const std::vector<double>& ebn0_grid_db,
                                 const SweepOptions& opts,
                                 const BoundsInputs* bounds = nullptr);

} // namespace isac

#endif
