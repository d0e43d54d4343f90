#ifndef ISAC_RNG_HPP
#define ISAC_RNG_HPP

#include <cstdint>
#include <functional>
#include <random>

namespace isac {

/// Deterministic per-stream engine. Streams derived from the same seed but
/// different stream ids are statistically independent; the mapping
/// (seed, stream) -> engine state is fixed, so results never depend on how
/// work is scheduled across threads.
std::mt19937_64 rng_stream(std::uint64_t seed, std::uint64_t stream);

/// splitmix64 step, also used to derive sub-seeds from strings/indices.
std::uint64_t splitmix64(std::uint64_t& state);

/// Compensated (Kahan) summation so that chunked reductions merged in a
/// fixed order reproduce serial results to ~1e-16 relative.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    void merge(const KahanSum& other) {
        add(other.sum);
        add(other.carry);
    }
    double value() const { return sum; }
};

/// Process-wide worker cap for parallel_chunks (default: hardware threads).
int max_threads();
void set_max_threads(int n);

/// Runs fn(chunk_index) for chunk_index in [0, n_chunks). Chunk identity,
/// not thread identity, determines RNG streams and reduction slots, so the
/// result is independent of the number of workers.
void parallel_chunks(std::size_t n_chunks, const std::function<void(std::size_t)>& fn);

} // namespace isac

#endif
