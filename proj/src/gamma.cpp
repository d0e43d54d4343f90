#include "isac/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "isac/rng.hpp"
#include "isac/special_functions.hpp"

namespace isac {

namespace {

void check_params(const GammaParams& p) {
    if (!(p.alpha > 0.0) || !(p.beta > 0.0))
        throw std::invalid_argument("GammaParams: alpha and beta must be > 0");
}

} // namespace

double gamma_pdf(double rho, const GammaParams& params) {
    check_params(params);
    if (rho < 0.0) throw std::domain_error("gamma_pdf: rho must be >= 0");
    if (rho == 0.0) {
        if (params.alpha > 1.0) return 0.0;
        if (params.alpha == 1.0) return 1.0 / params.beta;
        throw std::domain_error("gamma_pdf: density diverges at rho = 0 for alpha < 1");
    }
    return std::exp(gamma_log_pdf(rho, params));
}

double gamma_log_pdf(double rho, const GammaParams& params) {
    check_params(params);
    if (!(rho > 0.0)) throw std::domain_error("gamma_log_pdf: rho must be > 0");
    return (params.alpha - 1.0) * std::log(rho) - rho / params.beta -
           log_gamma(params.alpha) - params.alpha * std::log(params.beta);
}

double gamma_cdf(double rho, const GammaParams& params) {
    check_params(params);
    if (rho <= 0.0) return 0.0;
    return reg_lower_inc_gamma(params.alpha, rho / params.beta);
}

std::vector<double> gamma_sample(const GammaParams& params, std::size_t n, std::uint64_t seed) {
    check_params(params);
    if (n < 1) throw std::invalid_argument("gamma_sample: n must be >= 1");
    auto rng = rng_stream(seed, 0);
    std::gamma_distribution<double> dist(params.alpha, params.beta);
    std::vector<double> out(n);
    for (auto& v : out) v = dist(rng);
    return out;
}

std::vector<double> squared_distance_samples(const GammaParams& params, std::size_t n,
                                             std::uint64_t seed) {
    check_params(params);
    if (n < 1) throw std::invalid_argument("squared_distance_samples: n must be >= 1");
    auto rng = rng_stream(seed, 0);
    std::gamma_distribution<double> amp(params.alpha, params.beta);
    std::uniform_real_distribution<double> uni(0.0, 2.0 * std::numbers::pi);
    std::vector<double> out(n);
    for (auto& v : out) {
        const double ri = amp(rng);
        const double rj = amp(rng);
        const double half = 0.5 * uni(rng);
        const double s = std::sin(half);
        v = (ri - rj) * (ri - rj) + 4.0 * ri * rj * s * s;
    }
    return out;
}

void GammaMixture::validate() const {
    if (components.empty()) throw std::invalid_argument("GammaMixture: L must be >= 1");
    KahanSum wsum;
    for (const auto& c : components) {
        if (c.w < 0.0 || !(c.alpha > 0.0) || !(c.beta > 0.0))
            throw std::invalid_argument("GammaMixture: invalid component");
        wsum.add(c.w);
    }
    if (std::abs(wsum.value() - 1.0) > 1e-12)
        throw std::invalid_argument("GammaMixture: weights must sum to 1");
}

double mixture_pdf(double d, const GammaMixture& mix) {
    if (!(d > 0.0)) throw std::domain_error("mixture_pdf: d must be > 0");
    KahanSum s;
    for (const auto& c : mix.components)
        s.add(c.w * gamma_pdf(d, GammaParams{c.alpha, c.beta}));
    return s.value();
}

double mixture_log_pdf(double d, const GammaMixture& mix) {
    if (!(d > 0.0)) throw std::domain_error("mixture_log_pdf: d must be > 0");
    std::vector<double> terms;
    terms.reserve(mix.components.size());
    for (const auto& c : mix.components) {
        const double lw = c.w > 0.0 ? std::log(c.w) : -std::numeric_limits<double>::infinity();
        terms.push_back(lw + gamma_log_pdf(d, GammaParams{c.alpha, c.beta}));
    }
    return log_sum_exp(terms);
}

double mixture_cdf(double d, const GammaMixture& mix) {
    if (d <= 0.0) return 0.0;
    if (std::isinf(d)) return 1.0;
    KahanSum s;
    for (const auto& c : mix.components)
        s.add(c.w * reg_lower_inc_gamma(c.alpha, d / c.beta));
    return s.value();
}

double mixture_mgf(double s, const GammaMixture& mix) {
    for (const auto& c : mix.components)
        if (!(s < 1.0 / c.beta))
            throw std::domain_error("mixture_mgf: s must be < 1/beta_l for every component");
    if (s == 0.0) return 1.0;
    KahanSum acc;
    for (const auto& c : mix.components)
        acc.add(c.w * std::exp(-c.alpha * std::log1p(-c.beta * s)));
    return acc.value();
}

namespace {

constexpr std::size_t kEmChunk = 1u << 16;

struct ComponentConsts {
    double log_w;
    double am1;      // alpha - 1
    double inv_beta; // 1 / beta
    double norm;     // -lgamma(alpha) - alpha*log(beta)
};

struct ChunkStats {
    std::vector<KahanSum> n;    // per component: sum of responsibilities
    std::vector<KahanSum> sd;   // sum r * d
    std::vector<KahanSum> sld;  // sum r * ln d
    KahanSum ll;

    explicit ChunkStats(std::size_t L) : n(L), sd(L), sld(L) {}
};

/// One E-step sweep: accumulates responsibilities and the log-likelihood of
/// the current parameters. Parallel over fixed-size chunks; merge order is
/// chunk order, so results do not depend on the worker count.
ChunkStats e_step(std::span<const double> d, std::span<const double> log_d,
                  const GammaMixture& mix) {
    const std::size_t L = mix.size();
    std::vector<ComponentConsts> cc(L);
    for (std::size_t l = 0; l < L; ++l) {
        const auto& c = mix.components[l];
        cc[l].log_w = c.w > 0.0 ? std::log(c.w) : -std::numeric_limits<double>::infinity();
        cc[l].am1 = c.alpha - 1.0;
        cc[l].inv_beta = 1.0 / c.beta;
        cc[l].norm = -log_gamma(c.alpha) - c.alpha * std::log(c.beta);
    }

    const std::size_t n_chunks = (d.size() + kEmChunk - 1) / kEmChunk;
    std::vector<ChunkStats> partial(n_chunks, ChunkStats(L));

    parallel_chunks(n_chunks, [&](std::size_t chunk) {
        ChunkStats& st = partial[chunk];
        const std::size_t lo = chunk * kEmChunk;
        const std::size_t hi = std::min(d.size(), lo + kEmChunk);
        std::vector<double> t(L);
        for (std::size_t i = lo; i < hi; ++i) {
            const double di = d[i];
            const double ldi = log_d[i];
            double m = -std::numeric_limits<double>::infinity();
            for (std::size_t l = 0; l < L; ++l) {
                t[l] = cc[l].log_w + cc[l].norm + cc[l].am1 * ldi - di * cc[l].inv_beta;
                if (t[l] > m) m = t[l];
            }
            double z = 0.0;
            for (std::size_t l = 0; l < L; ++l) {
                t[l] = std::exp(t[l] - m);
                z += t[l];
            }
            st.ll.add(m + std::log(z));
            const double inv_z = 1.0 / z;
            for (std::size_t l = 0; l < L; ++l) {
                const double r = t[l] * inv_z;
                st.n[l].add(r);
                st.sd[l].add(r * di);
                st.sld[l].add(r * ldi);
            }
        }
    });

    ChunkStats total(L);
    for (const auto& st : partial) {
        total.ll.merge(st.ll);
        for (std::size_t l = 0; l < L; ++l) {
            total.n[l].merge(st.n[l]);
            total.sd[l].merge(st.sd[l]);
            total.sld[l].merge(st.sld[l]);
        }
    }
    return total;
}

GammaMixture quantile_init(std::span<const double> sorted, std::size_t L) {
    GammaMixture mix;
    mix.components.resize(L);
    const std::size_t N = sorted.size();
    for (std::size_t l = 0; l < L; ++l) {
        const std::size_t lo = l * N / L;
        const std::size_t hi = (l + 1) * N / L;
        KahanSum s1, s2;
        for (std::size_t i = lo; i < hi; ++i) {
            s1.add(sorted[i]);
            s2.add(sorted[i] * sorted[i]);
        }
        const double cnt = static_cast<double>(hi - lo);
        const double mu = s1.value() / cnt;
        const double var = std::max(0.0, s2.value() / cnt - mu * mu);
        auto& c = mix.components[l];
        c.w = 1.0 / static_cast<double>(L);
        if (var > 0.0 && mu > 0.0) {
            c.alpha = mu * mu / var;
            c.beta = var / mu;
        } else {
            // degenerate group: flat shape, scale from the group mean
            c.alpha = 1.0;
            c.beta = mu > 0.0 ? mu : 1.0;
        }
        c.alpha = std::clamp(c.alpha, 1e-6, 1e6);
        c.beta = std::clamp(c.beta, 1e-300, 1e300);
    }
    return mix;
}

struct RestartOutcome {
    GammaMixture mixture;
    std::vector<double> trace;
    std::size_t iterations = 0;
};

RestartOutcome run_em_once(std::span<const double> d, std::span<const double> log_d,
                           GammaMixture mix, const EmConfig& config) {
    const std::size_t L = mix.size();
    const double N = static_cast<double>(d.size());
    RestartOutcome out;
    double prev_ll = -std::numeric_limits<double>::infinity();

    for (std::size_t iter = 0; iter < config.max_iters; ++iter) {
        ChunkStats st = e_step(d, log_d, mix);
        const double ll = st.ll.value();
        out.trace.push_back(ll);
        out.iterations = iter + 1;
        if (iter > 0) {
            const double rel = (ll - prev_ll) / (std::abs(prev_ll) + config.tol_floor);
            if (rel < config.tol) {
                prev_ll = ll;
                break;
            }
        }
        prev_ll = ll;

        // M-step. Components whose effective count falls below the floor keep
        // their parameters and have their weight pinned so L stays fixed.
        std::vector<bool> frozen(L, false);
        double active_n = 0.0;
        std::size_t n_frozen = 0;
        for (std::size_t l = 0; l < L; ++l) {
            if (st.n[l].value() < 1e-8 * N) {
                frozen[l] = true;
                ++n_frozen;
            } else {
                active_n += st.n[l].value();
            }
        }
        const double floor_mass = 1e-8 * static_cast<double>(n_frozen);
        for (std::size_t l = 0; l < L; ++l) {
            auto& c = mix.components[l];
            if (frozen[l]) {
                c.w = 1e-8;
                continue;
            }
            c.w = (st.n[l].value() / active_n) * (1.0 - floor_mass);
            const double dbar = st.sd[l].value() / st.n[l].value();
            const double ldbar = st.sld[l].value() / st.n[l].value();
            const double s = std::log(dbar) - ldbar;
            c.alpha = solve_gamma_shape(std::max(s, 1e-12));
            c.beta = dbar / c.alpha;
        }
    }
    out.mixture = std::move(mix);
    return out;
}

} // namespace

double solve_gamma_shape(double s) {
    if (!(s > 0.0)) throw std::domain_error("solve_gamma_shape: s must be > 0");
    // Minka's closed-form starting point
    double a = (3.0 - s + std::sqrt((s - 3.0) * (s - 3.0) + 24.0 * s)) / (12.0 * s);
    a = std::clamp(a, 1e-6, 1e6);
    for (int i = 0; i < 50; ++i) {
        const double f = std::log(a) - digamma(a) - s;
        if (std::abs(f) < 1e-13) return std::clamp(a, 1e-6, 1e6);
        const double fp = 1.0 / a - trigamma(a);
        double next = a - f / fp;
        if (!(next > 0.0) || !std::isfinite(next)) next = 0.5 * a;
        a = std::clamp(next, 1e-6, 1e6);
    }
    // Newton did not settle; f is strictly decreasing in alpha, bisect.
    double lo = 1e-6, hi = 1e6;
    auto f_at = [s](double x) { return std::log(x) - digamma(x) - s; };
    if (f_at(lo) < 0.0) return lo;
    if (f_at(hi) > 0.0) return hi;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f_at(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double log_likelihood(std::span<const double> samples, const GammaMixture& mix) {
    mix.validate();
    if (samples.empty()) throw std::invalid_argument("log_likelihood: no samples");
    std::vector<double> log_d(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!(samples[i] > 0.0))
            throw std::domain_error("log_likelihood: samples must be > 0");
        log_d[i] = std::log(samples[i]);
    }
    return e_step(samples, log_d, mix).ll.value();
}

EmFitResult fit_gamma_mixture_em(std::span<const double> samples, const EmConfig& config,
                                 const GammaMixture* warm_start) {
    if (config.L < 1 || config.restarts < 1 || !(config.tol > 0.0) || config.max_iters < 1)
        throw std::invalid_argument("EmConfig: invalid settings");
    if (samples.size() < 10 * config.L)
        throw std::invalid_argument("fit_gamma_mixture_em: need at least 10*L samples");

    std::vector<double> log_d(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!(samples[i] > 0.0))
            throw std::domain_error("fit_gamma_mixture_em: samples must be > 0");
        log_d[i] = std::log(samples[i]);
    }
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const GammaMixture base_init = quantile_init(sorted, config.L);

    std::vector<GammaMixture> inits(config.restarts);
    for (std::size_t r = 0; r < config.restarts; ++r) {
        if (r == 0 && warm_start != nullptr) {
            GammaMixture warm = *warm_start;
            warm.validate();
            if (warm.size() > config.L)
                throw std::invalid_argument("fit_gamma_mixture_em: warm start larger than L");
            // pad to L components with low-weight copies drawn from the
            // quantile init, then renormalize
            std::size_t k = 0;
            while (warm.size() < config.L) {
                GammaComponent extra = base_init.components[k % base_init.size()];
                extra.w = 1e-3;
                warm.components.push_back(extra);
                ++k;
            }
            double total = 0.0;
            for (const auto& c : warm.components) total += c.w;
            for (auto& c : warm.components) c.w /= total;
            inits[r] = std::move(warm);
            continue;
        }
        GammaMixture init = base_init;
        if (r > 0) {
            auto rng = rng_stream(config.seed, 7000 + r);
            std::uniform_real_distribution<double> uni(-0.3, 0.3);
            for (auto& c : init.components) {
                c.alpha = std::clamp(c.alpha * std::exp(uni(rng)), 1e-6, 1e6);
                c.beta *= std::exp(uni(rng));
            }
        }
        inits[r] = std::move(init);
    }

    // Restarts are independent; run them in parallel and pick the winner by
    // final log-likelihood (ties by restart index).
    std::vector<RestartOutcome> outcomes(config.restarts);
    parallel_chunks(config.restarts, [&](std::size_t r) {
        outcomes[r] = run_em_once(samples, log_d, inits[r], config);
    });

    std::size_t best = 0;
    for (std::size_t r = 1; r < config.restarts; ++r)
        if (outcomes[r].trace.back() > outcomes[best].trace.back()) best = r;

    EmFitResult result;
    result.mixture = std::move(outcomes[best].mixture);
    result.final_log_likelihood = outcomes[best].trace.back();
    result.iterations = outcomes[best].iterations;
    result.ll_trace = outcomes[best].trace;
    result.restart_traces.reserve(config.restarts);
    for (auto& o : outcomes) result.restart_traces.push_back(std::move(o.trace));
    return result;
}

GammaParams method_of_moments_single(const GammaParams& design) {
    check_params(design);
    const double a = design.alpha;
    const double b = design.beta;
    return GammaParams{2.0 * a * (a + 1.0) / ((a + 2.0) * (a + 3.0)),
                       (a + 2.0) * (a + 3.0) * b * b};
}

double kl_divergence_empirical(std::span<const double> samples, const GammaMixture& mix,
                               std::size_t bins, bool* clamped) {
    mix.validate();
    if (samples.size() < 1000)
        throw std::invalid_argument("kl_divergence_empirical: need at least 1e3 samples");
    if (bins < 10) throw std::invalid_argument("kl_divergence_empirical: need >= 10 bins");
    if (clamped) *clamped = false;

    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t N = sorted.size();

    KahanSum kl;
    double cdf_lo = 0.0;
    std::size_t idx_lo = 0;
    for (std::size_t k = 1; k <= bins; ++k) {
        const std::size_t idx_hi = k * N / bins;
        const double cdf_hi =
            (k == bins) ? 1.0 : mixture_cdf(sorted[idx_hi], mix);
        const double p = static_cast<double>(idx_hi - idx_lo) / static_cast<double>(N);
        double q = cdf_hi - cdf_lo;
        if (p > 0.0) {
            if (q < 1e-300) {
                q = 1e-300;
                if (clamped) *clamped = true;
            }
            kl.add(p * std::log(p / q));
        }
        cdf_lo = cdf_hi;
        idx_lo = idx_hi;
    }
    return kl.value();
}

} // namespace isac
