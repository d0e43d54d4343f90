#ifndef ISAC_GAMMA_HPP
#define ISAC_GAMMA_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace isac {

/// Shape/scale parameters of the amplitude law.
struct GammaParams {
    double alpha = 1.0; // shape
    double beta = 1.0;  // scale
};

/// Gamma density f(rho; alpha, beta) = rho^(alpha-1) e^(-rho/beta) / (Gamma(alpha) beta^alpha).
/// At rho = 0: 0 for alpha > 1, 1/beta for alpha == 1, domain error for alpha < 1.
double gamma_pdf(double rho, const GammaParams& params);

/// ln gamma_pdf for rho > 0.
double gamma_log_pdf(double rho, const GammaParams& params);

/// CDF via the regularized lower incomplete gamma.
double gamma_cdf(double rho, const GammaParams& params);

/// n i.i.d. draws, deterministic for a given seed.
std::vector<double> gamma_sample(const GammaParams& params, std::size_t n, std::uint64_t seed);

/// Samples of the squared distance D = |x_i - x_j|^2 between two points with
/// Gamma amplitudes and independent uniform phases. Evaluated as
/// (rho_i - rho_j)^2 + 4 rho_i rho_j sin^2(dphi/2), which is non-negative by
/// construction.
std::vector<double> squared_distance_samples(const GammaParams& params, std::size_t n,
                                             std::uint64_t seed);

struct GammaComponent {
    double w = 1.0;
    double alpha = 1.0;
    double beta = 1.0;
};

struct GammaMixture {
    std::vector<GammaComponent> components;

    std::size_t size() const { return components.size(); }
    void validate() const;
};

double mixture_pdf(double d, const GammaMixture& mix);
double mixture_log_pdf(double d, const GammaMixture& mix);
double mixture_cdf(double d, const GammaMixture& mix);

/// MGF M_D(s) = sum_l w_l (1 - beta_l s)^(-alpha_l); requires s < min_l 1/beta_l.
double mixture_mgf(double s, const GammaMixture& mix);

/// Observed-data log-likelihood, log-sum-exp over components per sample.
double log_likelihood(std::span<const double> samples, const GammaMixture& mix);

struct EmConfig {
    std::size_t L = 1;
    std::size_t restarts = 5;
    double tol = 1e-8;        // relative log-likelihood improvement
    double tol_floor = 1e-16; // denominator guard in the stopping rule
    std::size_t max_iters = 500;
    std::uint64_t seed = 1;
};

struct EmFitResult {
    GammaMixture mixture;
    double final_log_likelihood = 0.0;
    std::size_t iterations = 0;
    std::vector<double> ll_trace;               // winning restart
    std::vector<std::vector<double>> restart_traces; // all restarts, for diagnostics
};

/// Solves ln(alpha) - digamma(alpha) = s. Newton from the Minka initial value,
/// bisection fallback on [1e-6, 1e6] if Newton has not converged in 50 steps.
double solve_gamma_shape(double s);

/// EM fit of an L-component Gamma mixture (quantile/moment-matched init,
/// multiplicative restart perturbations, shape update by Newton). Returns the
/// best of config.restarts runs by final log-likelihood. When warm_start is
/// given it seeds restart 0 (extended with small-weight components if it has
/// fewer than L).
EmFitResult fit_gamma_mixture_em(std::span<const double> samples, const EmConfig& config,
                                 const GammaMixture* warm_start = nullptr);

/// Single-Gamma moment match for D when the point amplitudes are
/// Gamma(alpha, beta): alpha_hat = 2a(a+1)/((a+2)(a+3)), beta_hat = (a+2)(a+3) b^2.
GammaParams method_of_moments_single(const GammaParams& design);

/// KL divergence between the empirical distribution of the samples and the
/// mixture, over equal-probability quantile bins. Mixture bin masses come from
/// the CDF, i.e. exact integrals of the density over each bin. Bins with zero
/// empirical mass contribute zero; mixture masses below 1e-300 are clamped and
/// reported through *clamped when provided.
double kl_divergence_empirical(std::span<const double> samples, const GammaMixture& mix,
                               std::size_t bins, bool* clamped = nullptr);

} // namespace isac

#endif
