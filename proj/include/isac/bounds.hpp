#ifndef ISAC_BOUNDS_HPP
#define ISAC_BOUNDS_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "isac/constellation.hpp"
#include "isac/gamma.hpp"
#include "isac/special_functions.hpp"

namespace isac {

/// Identifies the mixture fit behind an analytical PEP so figures built from
/// it can be regenerated.
struct FitProvenance {
    std::size_t L = 0;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
};

struct PepResult {
    double avg_pep = 0.0;
    std::vector<double> per_component_terms;
    std::vector<double> gamma_ells;
    std::optional<FitProvenance> provenance;
};

/// Conditional pairwise error probability Q(sqrt(D / (2 sigma_c2))).
double pep_conditional(double d_squared, double sigma_c2);

/// Average PEP over the mixture model of D:
/// 0.5 * sum_l w_l I_{1/(1+g_l)}(1/2, alpha_l) with g_l = beta_l / (4 sigma_c2).
PepResult average_pep_mixture(const GammaMixture& mix, double sigma_c2);

struct UnionBound {
    double value = 0.0;
    bool vacuous = false; // set when the bound exceeds 1
};

/// (M - 1) * avg_pep.
UnionBound ser_union_bound(std::size_t M, double avg_pep);

/// MLE of the reflection coefficient, y_r * conj(x_i) / rho_i^2.
std::complex<double> mle_reflection(std::complex<double> y_r, Symbol x_i);

/// Conditional CRB sigma_r2 / rho^2; +infinity at rho = 0.
double crb_conditional(double rho, double sigma_r2);

/// Average CRB sigma_r2 / (beta^2 (alpha-1)(alpha-2)) for alpha > 2,
/// +infinity otherwise (divergent regime, not an error).
double crb_average(const GammaParams& params, double sigma_r2);

/// Power-constrained form (sigma_r2 / P) * alpha(alpha+1) / ((alpha-1)(alpha-2)).
double crb_average_power_constrained(double alpha, double P, double sigma_r2);

struct McEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
};

/// Monte-Carlo average of sigma_r2 / rho^2 over Gamma amplitude draws.
McEstimate crb_average_mc(const GammaParams& params, double sigma_r2, std::size_t n,
                          std::uint64_t seed);

/// Empirical variance of the reflection-coefficient MLE around the true value
/// over n noisy radar observations of the fixed symbol x_i.
McEstimate mle_variance_mc(Symbol x_i, std::complex<double> zeta_r, double sigma_r2,
                           std::size_t n, std::uint64_t seed);

struct CrbReport {
    std::vector<double> crb_conditional_per_point;
    double crb_average_closed_form = 0.0; // +inf marker when alpha <= 2
    double crb_average_mc = 0.0;
    double mle_variance_mc = 0.0;
};

} // namespace isac

#endif
