#ifndef ISAC_SPECIAL_FUNCTIONS_HPP
#define ISAC_SPECIAL_FUNCTIONS_HPP

#include <functional>
#include <span>

namespace isac {

/// ln Gamma(x) for x > 0, Lanczos approximation (g = 7, 9 terms),
/// ~1e-13 relative over [1e-3, 1e6].
double log_gamma(double x);

/// Digamma psi(x), x > 0. Recurrence below 10, asymptotic series above.
double digamma(double x);

/// Trigamma psi'(x), x > 0.
double trigamma(double x);

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
double reg_lower_inc_gamma(double a, double x);

/// Regularized incomplete beta I_x(a, b), continued fraction with the
/// symmetry I_x(a,b) = 1 - I_{1-x}(b,a) for convergence.
double reg_inc_beta(double x, double a, double b);

/// Gaussian tail Q(x) = 0.5 erfc(x / sqrt(2)).
double q_function(double x);

/// 1 / (1 + exp(-x)), overflow-safe.
double logistic(double x);

/// log(sum(exp(v))) evaluated stably.
double log_sum_exp(std::span<const double> v);

/// Adaptive Simpson quadrature on [a, b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 60);

} // namespace isac

#endif
