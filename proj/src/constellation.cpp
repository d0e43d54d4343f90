#include "isac/constellation.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "isac/rng.hpp"

namespace isac {

double phase(Symbol x) {
    double p = std::arg(x);
    if (p < 0.0) p += 2.0 * std::numbers::pi;
    return p;
}

void CandidateSet::validate() const {
    if (ring_radii.size() != points_per_ring.size())
        throw std::invalid_argument("CandidateSet: ring metadata size mismatch");
    std::size_t total = 0;
    double prev = 0.0;
    for (std::size_t k = 0; k < ring_radii.size(); ++k) {
        if (!(ring_radii[k] > prev))
            throw std::invalid_argument("CandidateSet: radii must be positive and increasing");
        prev = ring_radii[k];
        total += points_per_ring[k];
    }
    if (total != points.size() || ring_of.size() != points.size() ||
        phase_of.size() != points.size())
        throw std::invalid_argument("CandidateSet: point count inconsistent with rings");
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double r = ring_radii[ring_of[i]];
        if (std::abs(std::abs(points[i]) - r) > 1e-12 * std::max(1.0, r))
            throw std::invalid_argument("CandidateSet: point amplitude off its ring");
    }
}

CandidateSet CandidateSet::rotated(double theta) const {
    CandidateSet out = *this;
    const Symbol rot = std::polar(1.0, theta);
    for (auto& p : out.points) p *= rot;
    return out;
}

CandidateSet generate_apsk(std::size_t num_rings, std::size_t points_per_ring,
                           double max_radius) {
    if (num_rings < 1 || points_per_ring < 1)
        throw std::invalid_argument("generate_apsk: counts must be >= 1");
    if (!(max_radius > 0.0))
        throw std::invalid_argument("generate_apsk: max_radius must be > 0");

    CandidateSet set;
    set.ring_radii.reserve(num_rings);
    set.points_per_ring.assign(num_rings, points_per_ring);
    set.points.reserve(num_rings * points_per_ring);
    set.ring_of.reserve(num_rings * points_per_ring);
    set.phase_of.reserve(num_rings * points_per_ring);

    const double n = static_cast<double>(points_per_ring);
    for (std::size_t k = 1; k <= num_rings; ++k) {
        const double r = max_radius * static_cast<double>(k) / static_cast<double>(num_rings);
        set.ring_radii.push_back(r);
        const double offset = static_cast<double>(k - 1) * std::numbers::pi / n;
        for (std::size_t m = 0; m < points_per_ring; ++m) {
            const double phi = offset + 2.0 * std::numbers::pi * static_cast<double>(m) / n;
            set.points.push_back(std::polar(r, phi));
            set.ring_of.push_back(k - 1);
            set.phase_of.push_back(phi);
        }
    }
    return set;
}

Constellation Constellation::from_points(std::vector<Symbol> pts) {
    if (pts.size() < 2) throw std::invalid_argument("Constellation: need M >= 2 points");
    KahanSum power;
    for (const auto& p : pts) power.add(std::norm(p));
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (std::norm(pts[i] - pts[j]) == 0.0)
                throw std::invalid_argument("Constellation: coincident points");
    Constellation c;
    c.points = std::move(pts);
    c.avg_power = power.value() / static_cast<double>(c.points.size());
    return c;
}

Constellation normalize_power(const std::vector<Symbol>& points, double P) {
    if (!(P > 0.0)) throw std::invalid_argument("normalize_power: P must be > 0");
    KahanSum total;
    for (const auto& p : points) total.add(std::norm(p));
    if (!(total.value() > 0.0))
        throw std::invalid_argument("normalize_power: all-zero input set");
    const double scale =
        std::sqrt(static_cast<double>(points.size()) * P / total.value());
    std::vector<Symbol> scaled;
    scaled.reserve(points.size());
    for (const auto& p : points) scaled.push_back(p * scale);
    Constellation c = Constellation::from_points(std::move(scaled));
    c.avg_power = P; // exact by construction up to rounding; record the target
    return c;
}

double pairwise_distance_sum(const std::vector<Symbol>& points) {
    if (points.empty()) throw std::invalid_argument("pairwise_distance_sum: empty input");
    KahanSum s;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = 0; j < points.size(); ++j)
            s.add(std::norm(points[i] - points[j]));
    return s.value();
}

double min_distance(const Constellation& c) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c.points.size(); ++i)
        for (std::size_t j = i + 1; j < c.points.size(); ++j)
            best = std::min(best, std::abs(c.points[i] - c.points[j]));
    return best;
}

} // namespace isac
