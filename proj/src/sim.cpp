#include "isac/sim.hpp"

#include <cmath>
#include <stdexcept>

#include "isac/rng.hpp"

namespace isac {

void SimConfig::validate() const {
    if (n_symbols < 1000) throw std::invalid_argument("SimConfig: n_symbols must be >= 1e3");
    channel.validate();
}

double ebn0_to_sigma2(double ebn0_db, std::size_t M, double P) {
    if (M < 2) throw std::invalid_argument("ebn0_to_sigma2: M must be >= 2");
    if (!(P > 0.0)) throw std::invalid_argument("ebn0_to_sigma2: P must be > 0");
    const double snr = std::pow(10.0, ebn0_db / 10.0) * std::log2(static_cast<double>(M));
    return P / snr;
}

std::complex<double> awgn_channel(Symbol x, double sigma_c2, std::mt19937_64& rng) {
    if (!(sigma_c2 > 0.0)) throw std::invalid_argument("awgn_channel: sigma_c2 must be > 0");
    std::normal_distribution<double> n(0.0, std::sqrt(0.5 * sigma_c2));
    return x + std::complex<double>(n(rng), n(rng));
}

std::complex<double> radar_channel(Symbol x, std::complex<double> zeta_r, double sigma_r2,
                                   std::mt19937_64& rng) {
    if (!(sigma_r2 > 0.0)) throw std::invalid_argument("radar_channel: sigma_r2 must be > 0");
    std::normal_distribution<double> n(0.0, std::sqrt(0.5 * sigma_r2));
    return zeta_r * x + std::complex<double>(n(rng), n(rng));
}

std::size_t ml_detect(std::complex<double> y, const Constellation& c) {
    std::size_t best = 0;
    double best_d = std::norm(y - c.points[0]);
    for (std::size_t i = 1; i < c.points.size(); ++i) {
        const double d = std::norm(y - c.points[i]);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

namespace {
constexpr std::size_t kSimChunk = 1u << 16;
}

SerEstimate simulate_ser(const Constellation& c, double sigma_c2, std::size_t n,
                         std::uint64_t seed) {
    if (n < 1000) throw std::invalid_argument("simulate_ser: need n >= 1e3");
    if (!(sigma_c2 > 0.0)) throw std::invalid_argument("simulate_ser: sigma_c2 must be > 0");
    const std::size_t M = c.size();
    const std::size_t n_chunks = (n + kSimChunk - 1) / kSimChunk;
    std::vector<std::uint64_t> errors(n_chunks, 0);
    parallel_chunks(n_chunks, [&](std::size_t chunk) {
        auto rng = rng_stream(seed, chunk);
        std::uniform_int_distribution<std::size_t> pick(0, M - 1);
        std::normal_distribution<double> noise(0.0, std::sqrt(0.5 * sigma_c2));
        const std::size_t lo = chunk * kSimChunk;
        const std::size_t hi = std::min(n, lo + kSimChunk);
        std::uint64_t e = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            const std::size_t s = pick(rng);
            const std::complex<double> y =
                c.points[s] + std::complex<double>(noise(rng), noise(rng));
            if (ml_detect(y, c) != s) ++e;
        }
        errors[chunk] = e;
    });
    std::uint64_t total = 0;
    for (auto e : errors) total += e;
    const double p = static_cast<double>(total) / static_cast<double>(n);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n))};
}

PdEstimate simulate_pd(const Constellation& c, double sigma_r2, double p_fa, std::size_t n,
                       std::uint64_t seed) {
    if (n < 1000) throw std::invalid_argument("simulate_pd: need n >= 1e3");
    if (!(sigma_r2 > 0.0)) throw std::invalid_argument("simulate_pd: sigma_r2 must be > 0");
    if (!(p_fa > 0.0) || !(p_fa < 1.0))
        throw std::invalid_argument("simulate_pd: p_fa must be in (0, 1)");
    const double v_t = std::sqrt(-sigma_r2 * std::log(p_fa));
    const std::size_t M = c.size();
    const std::size_t n_chunks = (n + kSimChunk - 1) / kSimChunk;
    std::vector<std::uint64_t> detects(n_chunks, 0), alarms(n_chunks, 0);
    parallel_chunks(n_chunks, [&](std::size_t chunk) {
        auto rng = rng_stream(seed, chunk);
        std::uniform_int_distribution<std::size_t> pick(0, M - 1);
        std::normal_distribution<double> noise(0.0, std::sqrt(0.5 * sigma_r2));
        const std::size_t lo = chunk * kSimChunk;
        const std::size_t hi = std::min(n, lo + kSimChunk);
        std::uint64_t det = 0, fa = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            const Symbol x = c.points[pick(rng)];
            const std::complex<double> y = x + std::complex<double>(noise(rng), noise(rng));
            if (std::abs(y) > v_t) ++det;
            const std::complex<double> y0(noise(rng), noise(rng));
            if (std::abs(y0) > v_t) ++fa;
        }
        detects[chunk] = det;
        alarms[chunk] = fa;
    });
    std::uint64_t det = 0, fa = 0;
    for (std::size_t ch = 0; ch < n_chunks; ++ch) {
        det += detects[ch];
        fa += alarms[ch];
    }
    const double nn = static_cast<double>(n);
    const double pd = static_cast<double>(det) / nn;
    const double far = static_cast<double>(fa) / nn;
    return {pd, std::sqrt(pd * (1.0 - pd) / nn), far, std::sqrt(far * (1.0 - far) / nn)};
}

std::vector<SweepRow> sweep_ebn0(const Constellation& c,
                                 const std::vector<double>& ebn0_grid_db,
                                 const SweepOptions& opts, const BoundsInputs* bounds) {
    if (ebn0_grid_db.empty()) throw std::invalid_argument("sweep_ebn0: empty grid");
    std::vector<SweepRow> rows;
    rows.reserve(ebn0_grid_db.size());
    const std::size_t M = c.size();
    for (std::size_t g = 0; g < ebn0_grid_db.size(); ++g) {
        const double ebn0 = ebn0_grid_db[g];
        const double sigma2 = ebn0_to_sigma2(ebn0, M, c.avg_power);
        SweepRow row;
        row.ebn0_db = ebn0;
        const auto ser = simulate_ser(c, sigma2, opts.n_ser, opts.seed + 2 * g);
        row.ser = ser.ser;
        row.ser_stderr = ser.stderr_;
        const auto pd = simulate_pd(c, sigma2, opts.p_fa, opts.n_pd, opts.seed + 2 * g + 1);
        row.pd = pd.pd;
        row.pd_stderr = pd.stderr_;
        if (bounds != nullptr) {
            const auto pep = average_pep_mixture(bounds->mixture, sigma2);
            row.union_bound = ser_union_bound(M, pep.avg_pep).value;
            row.crb_closed = crb_average(bounds->design, sigma2);
            row.crb_mc =
                crb_average_mc(bounds->design, sigma2, opts.n_crb_mc, opts.seed + 9000 + g)
                    .value;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace isac
