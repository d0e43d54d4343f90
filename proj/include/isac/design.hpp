#ifndef ISAC_DESIGN_HPP
#define ISAC_DESIGN_HPP

#include <cstdint>
#include <tuple>
#include <vector>

#include "isac/constellation.hpp"
#include "isac/gamma.hpp"
#include "isac/metrics.hpp"

namespace isac {

struct DesignConfig {
    double omega_d = 0.6;
    std::size_t M = 16;
    double alpha_min = 2.0;
    double alpha_max = 5.0;
    double beta_min = 1.0;
    double beta_max = 20.0;
    double lambda = 0.05;
    double P = 1.0;
    std::size_t n_mc = 1000;
    double pfa = 1e-3;
    double sigma_c2 = 0.025;
    double sigma_r2 = 0.025;
    std::size_t n_particles = 5;
    std::size_t n_iters = 1000;
    std::uint64_t seed = 1;

    // constriction-standard swarm constants
    double inertia = 0.7298;
    double cognitive = 1.49618;
    double social = 1.49618;
    double vmax_frac = 0.2;

    AlbersheimUnits albersheim_units = AlbersheimUnits::Db;
    bool stratified_mi = false;

    void validate(std::size_t n_candidates) const;
};

struct DesignResult {
    double alpha_star = 0.0;
    double beta_star = 0.0;
    Constellation constellation;
    double objective = 0.0;
    std::vector<double> objective_trace;
    MetricReport metrics;
};

/// Density of the amplitude/phase sampling law at a point of the plane:
/// gamma_pdf(|x|; alpha, beta) / (2 pi |x|). Phase-independent.
double point_likelihood(Symbol x, const GammaParams& params);

/// Greedy realization of the likelihood-plus-separation selection: seeds with
/// the highest-likelihood candidate, then repeatedly adds the candidate
/// maximizing ln point_likelihood(x) + lambda * min_{s in selected} |x - s|^2,
/// ties broken by candidate ordering. Geometry is scored from ring radii and
/// nominal phases, so the choice is exactly covariant under a common rotation
/// of the grid. The selected set is scaled to average power P.
Constellation select_constellation(const CandidateSet& candidates, const GammaParams& params,
                                   std::size_t M, double lambda, double P);

/// Scalarized trade-off F = omega_d * Pd_bar + (1 - omega_d) * R_bar evaluated
/// on the constellation selected for (alpha, beta). The MC seed is shared by
/// every evaluation inside one optimizer run (common random numbers).
std::tuple<double, Constellation, MetricReport> objective(double alpha, double beta,
                                                          const CandidateSet& candidates,
                                                          const DesignConfig& config,
                                                          std::uint64_t mc_seed);

/// Synchronous PSO over (alpha, beta) with reflecting bounds and global-best
/// bookkeeping; the returned result is the best objective ever evaluated.
DesignResult pso_optimize(const CandidateSet& candidates, const DesignConfig& config);

} // namespace isac

#endif
