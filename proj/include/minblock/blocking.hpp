// Strong (cutting) blocking set verification: a point set S is strong when
// every hyperplane H satisfies span(S ∩ H) = H. Also the two structural
// checks that characterize the minimum-size case in PG(3,2), and the general
// size lower bound.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "minblock/geometry.hpp"
#include "minblock/gf.hpp"

namespace minblock {

struct BlockingReport {
    bool is_strong = false;

    struct Failure {
        std::uint32_t hyperplane;
        unsigned attained_rank; // rank of S ∩ H, short of the required k-1
    };
    // all failures in total mode, only the first in short-circuit mode
    std::vector<Failure> failing_hyperplanes;

    // multiset of |S ∩ H| over all hyperplanes, ascending
    std::vector<std::uint8_t> intersection_profile;
};

namespace detail {
inline unsigned intersection_rank(const Geometry& g, std::uint64_t mask, unsigned stop_at) {
    if (g.q() == 2) {
        Gf2Rank r;
        for (std::uint64_t m = mask; m; m &= m - 1) {
            r.add(g.point_bits(std::countr_zero(m)));
            if (r.rank() == stop_at) break;
        }
        return r.rank();
    }
    RankTracker r(g.field(), g.k());
    for (std::uint64_t m = mask; m; m &= m - 1) {
        r.add(g.point(std::countr_zero(m)).coords);
        if (r.rank() == stop_at) break;
    }
    return r.rank();
}
} // namespace detail

// With `total` set the report lists every failing hyperplane; the default
// stops the span tests at the first failure (the profile is complete either
// way).
inline BlockingReport is_strong_blocking_set(const PointSet& s, bool total = false) {
    const Geometry& g = *s.geom;
    const unsigned required = g.k() - 1;
    BlockingReport report;
    report.is_strong = true;

    report.intersection_profile.reserve(g.num_hyperplanes());
    bool check_spans = true;
    for (std::size_t h = 0; h < g.num_hyperplanes(); ++h) {
        std::uint64_t inter = s.mask & g.hyperplane_member_mask(h);
        report.intersection_profile.push_back(
            static_cast<std::uint8_t>(std::popcount(inter)));
        if (!check_spans) continue;
        unsigned rank = detail::intersection_rank(g, inter, required);
        if (rank < required) {
            report.is_strong = false;
            report.failing_hyperplanes.push_back({static_cast<std::uint32_t>(h), rank});
            if (!total) check_spans = false;
        }
    }
    std::sort(report.intersection_profile.begin(), report.intersection_profile.end());
    return report;
}

// Minimum size of a strong blocking set in PG(k-1, q).
inline unsigned lower_bound(unsigned k, unsigned q) {
    if (k < 2) throw std::invalid_argument("k must be at least 2");
    return (k - 1) * (q + 1);
}

namespace detail {
inline void require_pg32_nine(const PointSet& s, const char* what) {
    if (s.geom->k() != 4 || s.geom->q() != 2)
        throw std::invalid_argument(std::string(what) + " is specific to PG(3,2)");
    if (s.size() != 9)
        throw std::invalid_argument(std::string(what) + " requires a 9-point set");
}

// line indices fully contained in `mask`, restricted to lines inside `within`
inline std::vector<std::uint32_t> contained_lines(const Geometry& g, std::uint64_t mask,
                                                  std::uint64_t within) {
    std::vector<std::uint32_t> out;
    for (std::size_t l = 0; l < g.num_lines(); ++l) {
        std::uint64_t lm = g.line(l).member_mask;
        if ((lm & ~within) == 0 && (lm & ~mask) == 0)
            out.push_back(static_cast<std::uint32_t>(l));
    }
    return out;
}
} // namespace detail

// Plane-intersection structure of a 9-point set in PG(3,2):
//  (a) no plane meets S in more than 5 points;
//  (b) every plane containing a full line of S meets S in exactly 5 points
//      that form two concurrent lines.
struct Lemma1Report {
    bool holds = true;

    enum class Kind { TooManyPoints, BadLineStructure };
    struct Violation {
        std::uint32_t plane;
        Kind kind;
        unsigned points_in_plane;
    };
    std::vector<Violation> violations;
};

inline Lemma1Report check_lemma1(const PointSet& s) {
    detail::require_pg32_nine(s, "lemma-1 check");
    const Geometry& g = *s.geom;
    Lemma1Report report;
    for (std::size_t h = 0; h < g.num_hyperplanes(); ++h) {
        std::uint64_t plane = g.hyperplane_member_mask(h);
        std::uint64_t inter = s.mask & plane;
        auto count = static_cast<unsigned>(std::popcount(inter));
        if (count > 5) {
            report.holds = false;
            report.violations.push_back(
                {static_cast<std::uint32_t>(h), Lemma1Report::Kind::TooManyPoints, count});
            continue;
        }
        std::vector<std::uint32_t> lines = detail::contained_lines(g, s.mask, plane);
        if (lines.empty()) continue;
        bool ok = count == 5 && lines.size() == 2 &&
                  (g.line(lines[0]).member_mask | g.line(lines[1]).member_mask) == inter;
        if (!ok) {
            report.holds = false;
            report.violations.push_back(
                {static_cast<std::uint32_t>(h), Lemma1Report::Kind::BadLineStructure, count});
        }
    }
    return report;
}

// Through each point of a minimum-size strong blocking set in PG(3,2) there
// pass exactly two lines entirely contained in the set.
struct Lemma2Report {
    bool holds = true;
    struct PointCount {
        std::uint32_t point;
        unsigned contained_lines;
    };
    std::vector<PointCount> per_point; // one entry per point of S
};

inline Lemma2Report check_lemma2(const PointSet& s) {
    detail::require_pg32_nine(s, "lemma-2 check");
    const Geometry& g = *s.geom;
    Lemma2Report report;
    for (std::uint32_t p : s.indices()) {
        unsigned count = 0;
        for (std::uint32_t l : g.lines_of_point(p))
            if ((g.line(l).member_mask & ~s.mask) == 0) ++count;
        report.per_point.push_back({p, count});
        if (count != 2) report.holds = false;
    }
    return report;
}

} // namespace minblock
