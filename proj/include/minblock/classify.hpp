// Orbit classification of fixed-size point sets under PGL(k,2): canonical
// forms, stabilizer orders, hyperplane-intersection signatures, and the
// explicit witness configurations for the five orbits of 9-point sets in
// PG(3,2).
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "minblock/blocking.hpp"
#include "minblock/errors.hpp"
#include "minblock/geometry.hpp"
#include "minblock/group.hpp"

namespace minblock {

namespace defaults {
inline constexpr std::uint64_t classify_budget = 1'000'000; // cap on C(n, size)
}

inline std::uint64_t binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        // exact at every step: r always holds C(n - k + i - 1, i - 1) * ...
        r = r * (n - k + i) / i;
    }
    return r;
}

// Multiset {|S ∩ H| : H hyperplane}, ascending. Invariant under the group
// action, so it buckets orbits ahead of exact canonical-form comparison.
inline std::vector<std::uint8_t> intersection_signature(const PointSet& s) {
    const Geometry& g = *s.geom;
    std::vector<std::uint8_t> sig;
    sig.reserve(g.num_hyperplanes());
    for (std::size_t h = 0; h < g.num_hyperplanes(); ++h)
        sig.push_back(static_cast<std::uint8_t>(
            std::popcount(s.mask & g.hyperplane_member_mask(h))));
    std::sort(sig.begin(), sig.end());
    return sig;
}

struct OrbitReport {
    std::uint64_t representative = 0; // canonical (minimum-image) mask
    std::uint64_t orbit_size = 0;
    std::uint64_t stabilizer_order = 0; // counted directly, not derived
    std::vector<std::uint8_t> signature;
    bool is_strong = false;
};

// Partitions all size-subsets of the geometry's points into group orbits.
// Subsets are bucketed by signature first; within each bucket the full-group
// minimum image identifies the orbit. Reports are ordered by descending
// orbit size, then signature, then representative.
inline std::vector<OrbitReport> classify_subsets(const Geometry& g, unsigned size,
                                                 const Group& group,
                                                 std::uint64_t budget = defaults::classify_budget) {
    if (&group.geometry() != &g &&
        (group.geometry().k() != g.k() || group.geometry().q() != g.q()))
        throw std::invalid_argument("group was built for a different geometry");
    const auto n = static_cast<unsigned>(g.num_points());
    if (size == 0 || size > n) throw std::invalid_argument("subset size out of range");
    std::uint64_t total = binomial(n, size);
    if (total > budget)
        throw BudgetExceeded("classification needs subset budget " + std::to_string(total),
                             total);

    std::map<std::vector<std::uint8_t>, std::unordered_map<std::uint64_t, std::uint64_t>>
        buckets;
    const std::uint64_t limit = std::uint64_t{1} << n;
    std::uint64_t mask = (std::uint64_t{1} << size) - 1;
    while (mask < limit) {
        PointSet s(g, mask);
        buckets[intersection_signature(s)][group.min_image(mask)] += 1;
        // next mask with the same popcount (Gosper)
        std::uint64_t c = mask & -mask, r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }

    std::vector<OrbitReport> reports;
    for (const auto& [sig, orbits] : buckets) {
        for (const auto& [rep, count] : orbits) {
            OrbitReport o;
            o.representative = rep;
            o.orbit_size = count;
            o.stabilizer_order = group.stabilizer_count(rep);
            o.signature = sig;
            o.is_strong = is_strong_blocking_set(PointSet(g, rep)).is_strong;
            reports.push_back(std::move(o));
        }
    }
    std::sort(reports.begin(), reports.end(), [](const OrbitReport& a, const OrbitReport& b) {
        if (a.orbit_size != b.orbit_size) return a.orbit_size > b.orbit_size;
        if (a.signature != b.signature) return a.signature < b.signature;
        return a.representative < b.representative;
    });
    return reports;
}

// One explicit member of each of the five projective classes of 9-point sets
// in PG(3,2).
struct NinePointWitnesses {
    PointSet quadric;                 // hyperbolic quadric
    PointSet point_plus_complement;   // P plus the 8 points off a plane through P
    PointSet plane_plus_two;          // full plane plus two external points
    PointSet punctured_plane_triple_off; // plane minus P, plus a secant triple with P off the trace
    PointSet punctured_plane_triple_on;  // same with P on the trace line
};

inline NinePointWitnesses nine_point_witnesses(const Geometry& g) {
    if (g.k() != 4 || g.q() != 2)
        throw std::invalid_argument("nine-point witnesses are specific to PG(3,2)");
    const std::uint64_t full = g.full_mask();
    const std::uint64_t plane = g.hyperplane_member_mask(0);
    const std::uint64_t off_plane = full & ~plane;

    auto lowest = [](std::uint64_t m) { return std::uint64_t{1} << std::countr_zero(m); };
    auto take = [&](std::uint64_t m, unsigned count) {
        std::uint64_t out = 0;
        for (unsigned i = 0; i < count; ++i) {
            std::uint64_t b = lowest(m);
            out |= b;
            m &= ~b;
        }
        return out;
    };

    NinePointWitnesses w{hyperbolic_quadric(g),
                         PointSet(g, lowest(plane) | off_plane),
                         PointSet(g, plane | take(off_plane, 2)),
                         PointSet(g, 0),
                         PointSet(g, 0)};

    // A line inside the plane, and a second plane through it; any 3 of the 4
    // points of that plane off the line are non-collinear and trace exactly
    // the line back onto the first plane.
    std::uint64_t line_mask = 0;
    for (std::size_t l = 0; l < g.num_lines(); ++l) {
        if ((g.line(l).member_mask & ~plane) == 0) {
            line_mask = g.line(l).member_mask;
            break;
        }
    }
    std::uint64_t other_plane = 0;
    for (std::size_t h = 1; h < g.num_hyperplanes(); ++h) {
        if ((line_mask & ~g.hyperplane_member_mask(h)) == 0) {
            other_plane = g.hyperplane_member_mask(h);
            break;
        }
    }
    std::uint64_t triple = take(other_plane & ~line_mask, 3);
    std::uint64_t p_off = lowest(plane & ~line_mask);
    std::uint64_t p_on = lowest(line_mask);
    w.punctured_plane_triple_off = PointSet(g, (plane & ~p_off) | triple);
    w.punctured_plane_triple_on = PointSet(g, (plane & ~p_on) | triple);
    return w;
}

// Direct census of the (plane, removed point, external triple) tuples in
// PG(3,2): every triple of points off a plane spans a second plane whose
// trace on the first is a line; tuples split by whether the removed point
// lies on that line, and the distinct 9-point sets they produce are tallied
// per branch.
struct PuncturedPlaneCensus {
    std::uint64_t raw_tuples = 0;
    std::uint64_t p_on_trace = 0;
    std::uint64_t p_off_trace = 0;
    std::uint64_t distinct_sets_on = 0;
    std::uint64_t distinct_sets_off = 0;
};

inline PuncturedPlaneCensus punctured_plane_census(const Geometry& g) {
    if (g.k() != 4 || g.q() != 2)
        throw std::invalid_argument("punctured-plane census is specific to PG(3,2)");
    PuncturedPlaneCensus census;
    std::unordered_set<std::uint64_t> sets_on, sets_off;
    for (std::size_t h = 0; h < g.num_hyperplanes(); ++h) {
        const std::uint64_t plane = g.hyperplane_member_mask(h);
        std::vector<std::uint32_t> outside = PointSet(g, g.full_mask() & ~plane).indices();
        for (std::size_t a = 0; a < outside.size(); ++a) {
            for (std::size_t b = a + 1; b < outside.size(); ++b) {
                for (std::size_t c = b + 1; c < outside.size(); ++c) {
                    std::uint64_t triple = (std::uint64_t{1} << outside[a]) |
                                           (std::uint64_t{1} << outside[b]) |
                                           (std::uint64_t{1} << outside[c]);
                    std::uint64_t trace = span(PointSet(g, triple)).member_mask & plane;
                    for (std::uint64_t pm = plane; pm; pm &= pm - 1) {
                        std::uint64_t p = pm & -pm;
                        std::uint64_t nine = (plane & ~p) | triple;
                        ++census.raw_tuples;
                        if (trace & p) {
                            ++census.p_on_trace;
                            sets_on.insert(nine);
                        } else {
                            ++census.p_off_trace;
                            sets_off.insert(nine);
                        }
                    }
                }
            }
        }
    }
    census.distinct_sets_on = sets_on.size();
    census.distinct_sets_off = sets_off.size();
    return census;
}

} // namespace minblock
