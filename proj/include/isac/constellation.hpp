#ifndef ISAC_CONSTELLATION_HPP
#define ISAC_CONSTELLATION_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace isac {

using Symbol = std::complex<double>;

inline double amplitude(Symbol x) { return std::abs(x); }

/// Phase in [0, 2*pi).
double phase(Symbol x);

/// APSK candidate pool. Points keep their ring/slot identity so that greedy
/// selection can score geometry from exact ring radii and phase indices,
/// independent of any common rotation applied to the stored points.
struct CandidateSet {
    std::vector<Symbol> points;
    std::vector<double> ring_radii;
    std::vector<std::size_t> points_per_ring;
    std::vector<std::size_t> ring_of;   // per point, index into ring_radii
    std::vector<double> phase_of;       // per point, nominal phase on its ring

    std::size_t size() const { return points.size(); }
    double radius_of(std::size_t i) const { return ring_radii[ring_of[i]]; }

    /// Checks the structural invariants (counts match, radii positive and
    /// strictly increasing, amplitudes consistent within each ring).
    void validate() const;

    /// Same grid with every point rotated by theta.
    CandidateSet rotated(double theta) const;
};

/// Uniform-radii APSK grid: ring k of num_rings at radius max_radius*k/num_rings
/// carrying points_per_ring symbols, with per-ring phase offset
/// (k-1)*pi/points_per_ring. Ordering is ring-major, then phase.
CandidateSet generate_apsk(std::size_t num_rings, std::size_t points_per_ring,
                           double max_radius);

/// M-ary constellation with its average power. Construct via normalize_power
/// or from_points so the invariants (M >= 2, distinct points, recorded power
/// consistent with the points) are established once.
struct Constellation {
    std::vector<Symbol> points;
    double avg_power = 0.0;

    std::size_t size() const { return points.size(); }

    static Constellation from_points(std::vector<Symbol> pts);
};

/// Scales points by sqrt(M*P / sum |x|^2) so the average power equals P.
/// Ratios between points are preserved exactly.
Constellation normalize_power(const std::vector<Symbol>& points, double P);

/// Sum over all ordered pairs (i, j) of |x_i - x_j|^2; the i == j terms are zero.
double pairwise_distance_sum(const std::vector<Symbol>& points);

double min_distance(const Constellation& c);

} // namespace isac

#endif
