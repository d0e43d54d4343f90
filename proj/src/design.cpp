#include "isac/design.hpp"

#include <array>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "isac/rng.hpp"
#include "isac/special_functions.hpp"

namespace isac {

void DesignConfig::validate(std::size_t n_candidates) const {
    if (omega_d < 0.0 || omega_d > 1.0)
        throw std::invalid_argument("DesignConfig: omega_d must be in [0, 1]");
    if (!(alpha_min < alpha_max) || !(beta_min < beta_max))
        throw std::invalid_argument("DesignConfig: bounds must be ordered");
    if (M < 2 || M > n_candidates)
        throw std::invalid_argument("DesignConfig: M must be in [2, |candidates|]");
    if (lambda < 0.0) throw std::invalid_argument("DesignConfig: lambda must be >= 0");
    if (!(P > 0.0)) throw std::invalid_argument("DesignConfig: P must be > 0");
    if (n_mc < 100) throw std::invalid_argument("DesignConfig: n_mc must be >= 100");
    if (!(sigma_c2 > 0.0) || !(sigma_r2 > 0.0))
        throw std::invalid_argument("DesignConfig: noise variances must be > 0");
    if (n_particles < 1 || n_iters < 1)
        throw std::invalid_argument("DesignConfig: swarm settings must be >= 1");
}

double point_likelihood(Symbol x, const GammaParams& params) {
    const double rho = std::abs(x);
    if (!(rho > 0.0))
        throw std::domain_error("point_likelihood: undefined at the origin");
    return gamma_pdf(rho, params) / (2.0 * std::numbers::pi * rho);
}

namespace {

double log_ring_likelihood(double r, const GammaParams& params) {
    return gamma_log_pdf(r, params) - std::log(2.0 * std::numbers::pi) - std::log(r);
}

/// Squared distance from ring/phase identity rather than stored coordinates,
/// identical for a rotated copy of the same grid.
double grid_dist2(const CandidateSet& cs, std::size_t i, std::size_t j) {
    const double ri = cs.radius_of(i);
    const double rj = cs.radius_of(j);
    const double s = std::sin(0.5 * (cs.phase_of[i] - cs.phase_of[j]));
    return (ri - rj) * (ri - rj) + 4.0 * ri * rj * s * s;
}

} // namespace

Constellation select_constellation(const CandidateSet& candidates, const GammaParams& params,
                                   std::size_t M, double lambda, double P) {
    const std::size_t n = candidates.size();
    if (M > n) throw std::invalid_argument("select_constellation: M exceeds candidate count");
    if (M < 2) throw std::invalid_argument("select_constellation: M must be >= 2");
    if (lambda < 0.0) throw std::invalid_argument("select_constellation: lambda must be >= 0");

    std::vector<double> log_lik(n);
    {
        std::vector<double> per_ring(candidates.ring_radii.size());
        for (std::size_t k = 0; k < per_ring.size(); ++k)
            per_ring[k] = log_ring_likelihood(candidates.ring_radii[k], params);
        for (std::size_t i = 0; i < n; ++i) log_lik[i] = per_ring[candidates.ring_of[i]];
    }

    std::vector<bool> taken(n, false);
    std::vector<double> min_d2(n, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> picked;
    picked.reserve(M);

    std::size_t seed_idx = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (log_lik[i] > log_lik[seed_idx]) seed_idx = i;
    picked.push_back(seed_idx);
    taken[seed_idx] = true;

    for (std::size_t step = 1; step < M; ++step) {
        const std::size_t last = picked.back();
        double best_g = -std::numeric_limits<double>::infinity();
        std::size_t best_i = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (taken[i]) continue;
            const double d2 = grid_dist2(candidates, i, last);
            if (d2 < min_d2[i]) min_d2[i] = d2;
            const double g = log_lik[i] + lambda * min_d2[i];
            if (g > best_g) {
                best_g = g;
                best_i = i;
            }
        }
        picked.push_back(best_i);
        taken[best_i] = true;
    }

    std::vector<Symbol> selected;
    selected.reserve(M);
    for (std::size_t i : picked) selected.push_back(candidates.points[i]);

    if (!(pairwise_distance_sum(selected) > lambda))
        std::cerr << "select_constellation: separation constraint violated (sum of squared "
                     "pairwise distances <= lambda)\n";

    return normalize_power(selected, P);
}

std::tuple<double, Constellation, MetricReport> objective(double alpha, double beta,
                                                          const CandidateSet& candidates,
                                                          const DesignConfig& config,
                                                          std::uint64_t mc_seed) {
    if (alpha < config.alpha_min || alpha > config.alpha_max || beta < config.beta_min ||
        beta > config.beta_max)
        throw std::invalid_argument("objective: (alpha, beta) outside bounds");

    Constellation c = select_constellation(candidates, GammaParams{alpha, beta}, config.M,
                                           config.lambda, config.P);
    MetricReport rep;
    auto [pd_mean, pd_per] = average_pd(c, config.sigma_r2, config.pfa,
                                        config.albersheim_units);
    rep.avg_pd = pd_mean;
    rep.per_point_pd = std::move(pd_per);
    rep.mi_bits = mutual_information_mc(c, config.sigma_c2, config.n_mc, mc_seed,
                                        config.stratified_mi);
    rep.mi_normalized = normalized_mi(rep.mi_bits, config.M);

    double f;
    if (config.omega_d == 1.0)
        f = rep.avg_pd;
    else if (config.omega_d == 0.0)
        f = rep.mi_normalized;
    else
        f = config.omega_d * rep.avg_pd + (1.0 - config.omega_d) * rep.mi_normalized;
    return {f, std::move(c), std::move(rep)};
}

DesignResult pso_optimize(const CandidateSet& candidates, const DesignConfig& config) {
    config.validate(candidates.size());

    // one MC stream for every objective evaluation in this run
    std::uint64_t crn_state = config.seed ^ 0x43524e00ULL;
    const std::uint64_t mc_seed = splitmix64(crn_state);

    const double range[2] = {config.alpha_max - config.alpha_min,
                             config.beta_max - config.beta_min};
    const double lo[2] = {config.alpha_min, config.beta_min};
    const double hi[2] = {config.alpha_max, config.beta_max};

    const std::size_t np = config.n_particles;
    std::vector<std::mt19937_64> streams;
    streams.reserve(np);
    for (std::size_t p = 0; p < np; ++p) streams.push_back(rng_stream(config.seed, 100 + p));

    std::vector<std::array<double, 2>> pos(np), vel(np), pbest(np);
    std::vector<double> pbest_f(np, -std::numeric_limits<double>::infinity());
    for (std::size_t p = 0; p < np; ++p) {
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        pos[p] = {lo[0] + u01(streams[p]) * range[0], lo[1] + u01(streams[p]) * range[1]};
        vel[p] = {0.0, 0.0};
    }

    DesignResult result;
    result.objective = -std::numeric_limits<double>::infinity();
    result.objective_trace.reserve(config.n_iters);
    std::array<double, 2> gbest = pos[0];

    std::vector<double> f_val(np);
    std::vector<Constellation> f_con(np);
    std::vector<MetricReport> f_rep(np);

    for (std::size_t iter = 0; iter < config.n_iters; ++iter) {
        parallel_chunks(np, [&](std::size_t p) {
            auto [f, c, rep] = objective(pos[p][0], pos[p][1], candidates, config, mc_seed);
            f_val[p] = f;
            f_con[p] = std::move(c);
            f_rep[p] = std::move(rep);
        });
        for (std::size_t p = 0; p < np; ++p) {
            if (f_val[p] > pbest_f[p]) {
                pbest_f[p] = f_val[p];
                pbest[p] = pos[p];
            }
            if (f_val[p] > result.objective) {
                result.objective = f_val[p];
                result.alpha_star = pos[p][0];
                result.beta_star = pos[p][1];
                result.constellation = f_con[p];
                result.metrics = f_rep[p];
                gbest = pos[p];
            }
        }
        result.objective_trace.push_back(result.objective);

        for (std::size_t p = 0; p < np; ++p) {
            std::uniform_real_distribution<double> u01(0.0, 1.0);
            for (int d = 0; d < 2; ++d) {
                const double r1 = u01(streams[p]);
                const double r2 = u01(streams[p]);
                double v = config.inertia * vel[p][d] +
                           config.cognitive * r1 * (pbest[p][d] - pos[p][d]) +
                           config.social * r2 * (gbest[d] - pos[p][d]);
                const double vmax = config.vmax_frac * range[d];
                v = std::clamp(v, -vmax, vmax);
                double x = pos[p][d] + v;
                // reflecting boundaries
                int guard = 0;
                while ((x < lo[d] || x > hi[d]) && guard++ < 8) {
                    if (x < lo[d]) x = 2.0 * lo[d] - x;
                    if (x > hi[d]) x = 2.0 * hi[d] - x;
                    v = -v;
                }
                pos[p][d] = std::clamp(x, lo[d], hi[d]);
                vel[p][d] = v;
            }
        }
    }
    return result;
}

} // namespace isac
