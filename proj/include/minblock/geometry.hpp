// Projective geometry PG(k-1, q) over a prime field: canonical point tables,
// lines, hyperplanes, incidence bitmasks, and quadric point sets.
//
// Points are normalized coordinate vectors (first nonzero entry 1) ordered by
// their value as a base-q integer with coordinate 0 most significant. All
// incidence data is precomputed at build time; a Geometry is immutable
// afterwards and safe to share across threads.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "minblock/errors.hpp"
#include "minblock/gf.hpp"

namespace minblock {

struct ProjPoint {
    Vec coords;          // normalized, length k
    std::uint32_t index; // position in the geometry's canonical ordering
};

// A projective subspace given by its canonical RREF basis and the bitmask of
// member points. dim_projective: 0 = point, 1 = line, k-2 = hyperplane.
struct Subspace {
    Mat basis;
    unsigned dim_projective = 0;
    std::uint64_t member_mask = 0;
};

struct GeometryCaps {
    unsigned max_k = 8;
    unsigned max_q = 7;
    unsigned max_points = 63; // one mask word, and (1 << n) - 1 stays defined
};

class Geometry {
public:
    Geometry(unsigned k, unsigned q, const GeometryCaps& caps = {})
        : k_(k), q_(q), field_(q) {
        if (k < 2 || k > caps.max_k)
            throw std::invalid_argument("dimension k must be in [2, " +
                                        std::to_string(caps.max_k) + "]");
        if (q > caps.max_q)
            throw std::invalid_argument("field order q exceeds cap " + std::to_string(caps.max_q));

        std::uint64_t qk = 1;
        for (unsigned i = 0; i < k; ++i) qk *= q;
        std::uint64_t n_points = (qk - 1) / (q - 1);
        if (n_points > caps.max_points)
            throw BudgetExceeded("PG(" + std::to_string(k - 1) + "," + std::to_string(q) +
                                     ") has " + std::to_string(n_points) +
                                     " points, above the incidence-table cap",
                                 n_points);

        build_points(qk);
        build_hyperplanes();
        build_lines();
    }

    unsigned k() const { return k_; }
    unsigned q() const { return q_; }
    const Gf& field() const { return field_; }

    std::size_t num_points() const { return points_.size(); }
    std::size_t num_lines() const { return lines_.size(); }
    std::size_t num_hyperplanes() const { return hyperplanes_.size(); }

    const ProjPoint& point(std::size_t i) const { return points_[i]; }
    const Subspace& line(std::size_t i) const { return lines_[i]; }
    const Subspace& hyperplane(std::size_t i) const { return hyperplanes_[i]; }

    // Dual coefficient vector of hyperplane h: point p lies on h iff dot = 0.
    const Vec& hyperplane_coeffs(std::size_t h) const { return hyperplane_coeffs_[h]; }

    // Bit-packed coordinates (coordinate 0 = most significant bit); for q = 2
    // this equals index + 1 by construction.
    std::uint32_t point_bits(std::size_t i) const { return point_bits_[i]; }

    std::uint64_t full_mask() const { return (std::uint64_t{1} << points_.size()) - 1; }

    // The point_in_hyperplane table: mask of points on hyperplane h.
    std::uint64_t hyperplane_member_mask(std::size_t h) const {
        return hyperplanes_[h].member_mask;
    }
    // Dual table: mask of hyperplanes (by index) through point p.
    std::uint64_t hyperplanes_of_point(std::size_t p) const { return hyperplanes_of_point_[p]; }
    const std::vector<std::uint32_t>& lines_of_point(std::size_t p) const {
        return lines_of_point_[p];
    }

    // Index of an arbitrary nonzero coordinate vector (normalized internally).
    std::optional<std::uint32_t> index_of(Vec v) const {
        if (v.size() != k_) return std::nullopt;
        for (std::uint8_t e : v)
            if (e >= q_) return std::nullopt;
        if (!normalize_projective(v, field_)) return std::nullopt;
        return value_to_index_[value_of(v)];
    }

private:
    void build_points(std::uint64_t qk) {
        value_to_index_.assign(qk, std::uint32_t(-1));
        for (std::uint64_t value = 1; value < qk; ++value) {
            Vec v = decode(value);
            bool normalized = false;
            for (std::uint8_t e : v) {
                if (e != 0) {
                    normalized = (e == 1);
                    break;
                }
            }
            if (!normalized) continue;
            auto idx = static_cast<std::uint32_t>(points_.size());
            std::uint32_t bits = 0;
            for (unsigned j = 0; j < k_; ++j)
                if (v[j]) bits |= 1u << (k_ - 1 - j);
            point_bits_.push_back(bits);
            value_to_index_[value] = idx;
            points_.push_back({std::move(v), idx});
        }
        // non-normalized vectors resolve to their normalized representative
        for (std::uint64_t value = 1; value < qk; ++value) {
            if (value_to_index_[value] != std::uint32_t(-1)) continue;
            Vec v = decode(value);
            normalize_projective(v, field_);
            value_to_index_[value] = value_to_index_[value_of(v)];
        }
    }

    void build_hyperplanes() {
        hyperplanes_.reserve(points_.size());
        hyperplanes_of_point_.assign(points_.size(), 0);
        for (std::size_t h = 0; h < points_.size(); ++h) {
            const Vec& a = points_[h].coords; // dual vector, same canonical order
            std::uint64_t mask = 0;
            Mat members;
            for (std::size_t p = 0; p < points_.size(); ++p) {
                if (field_.dot(a, points_[p].coords) == 0) {
                    mask |= std::uint64_t{1} << p;
                    members.push_back(points_[p].coords);
                    hyperplanes_of_point_[p] |= std::uint64_t{1} << h;
                }
            }
            RankResult rr = rank_gf(members, q_);
            hyperplanes_.push_back({std::move(rr.rref), k_ - 2, mask});
            hyperplane_coeffs_.push_back(a);
        }
    }

    void build_lines() {
        std::map<std::uint64_t, std::pair<std::uint32_t, std::uint32_t>> seen;
        for (std::uint32_t i = 0; i < points_.size(); ++i) {
            for (std::uint32_t j = i + 1; j < points_.size(); ++j) {
                std::uint64_t mask = line_mask(i, j);
                seen.emplace(mask, std::make_pair(i, j));
            }
        }
        lines_of_point_.assign(points_.size(), {});
        for (const auto& [mask, pair] : seen) {
            RankResult rr = rank_gf({points_[pair.first].coords, points_[pair.second].coords}, q_);
            auto idx = static_cast<std::uint32_t>(lines_.size());
            lines_.push_back({std::move(rr.rref), 1, mask});
            for (std::uint64_t m = mask; m; m &= m - 1)
                lines_of_point_[std::countr_zero(m)].push_back(idx);
        }
    }

    std::uint64_t line_mask(std::uint32_t i, std::uint32_t j) const {
        const Vec& a = points_[i].coords;
        const Vec& b = points_[j].coords;
        std::uint64_t mask = (std::uint64_t{1} << i) | (std::uint64_t{1} << j);
        // remaining points are a + t*b for t = 1 .. q-1
        for (std::uint8_t t = 1; t < q_; ++t) {
            Vec c(k_);
            for (unsigned x = 0; x < k_; ++x)
                c[x] = field_.add(a[x], field_.mul(t, b[x]));
            normalize_projective(c, field_);
            mask |= std::uint64_t{1} << value_to_index_[value_of(c)];
        }
        return mask;
    }

    Vec decode(std::uint64_t value) const {
        Vec v(k_);
        for (unsigned j = k_; j-- > 0;) {
            v[j] = static_cast<std::uint8_t>(value % q_);
            value /= q_;
        }
        return v;
    }

    std::uint64_t value_of(const Vec& v) const {
        std::uint64_t value = 0;
        for (std::uint8_t e : v) value = value * q_ + e;
        return value;
    }

    unsigned k_, q_;
    Gf field_;
    std::vector<ProjPoint> points_;
    std::vector<std::uint32_t> point_bits_;
    std::vector<Subspace> lines_;
    std::vector<Subspace> hyperplanes_;
    std::vector<Vec> hyperplane_coeffs_;
    std::vector<std::uint64_t> hyperplanes_of_point_;
    std::vector<std::vector<std::uint32_t>> lines_of_point_;
    std::vector<std::uint32_t> value_to_index_;
};

inline Geometry build_geometry(unsigned k, unsigned q, const GeometryCaps& caps = {}) {
    return Geometry(k, q, caps);
}

// A subset of a geometry's points, stored as a bitmask over point indices.
struct PointSet {
    const Geometry* geom = nullptr;
    std::uint64_t mask = 0;

    PointSet() = default;
    PointSet(const Geometry& g, std::uint64_t m) : geom(&g), mask(m) {
        if (m & ~g.full_mask())
            throw std::invalid_argument("point-set mask has bits outside the geometry");
    }

    unsigned size() const { return static_cast<unsigned>(std::popcount(mask)); }
    bool contains(std::uint32_t p) const { return (mask >> p) & 1; }

    std::vector<std::uint32_t> indices() const {
        std::vector<std::uint32_t> out;
        out.reserve(size());
        for (std::uint64_t m = mask; m; m &= m - 1)
            out.push_back(static_cast<std::uint32_t>(std::countr_zero(m)));
        return out;
    }

    friend bool operator==(const PointSet& a, const PointSet& b) {
        return a.geom == b.geom && a.mask == b.mask;
    }
};

inline PointSet make_pointset(const Geometry& g, std::initializer_list<std::uint32_t> idx) {
    std::uint64_t m = 0;
    for (auto i : idx) m |= std::uint64_t{1} << i;
    return PointSet(g, m);
}

// Reduces v against a canonical RREF basis; true iff v lies in the row space.
inline bool in_rowspace(const Mat& rref, Vec v, const Gf& f) {
    for (const Vec& row : rref) {
        std::size_t pivot = 0;
        while (pivot < row.size() && row[pivot] == 0) ++pivot;
        if (pivot == row.size() || v[pivot] == 0) continue;
        std::uint8_t c = v[pivot];
        for (std::size_t j = pivot; j < v.size(); ++j)
            v[j] = f.sub(v[j], f.mul(c, row[j]));
    }
    return std::all_of(v.begin(), v.end(), [](std::uint8_t e) { return e == 0; });
}

// Smallest projective subspace containing the given points.
inline Subspace span(const PointSet& s) {
    if (s.mask == 0) throw std::invalid_argument("span of an empty point set");
    const Geometry& g = *s.geom;
    Mat rows;
    for (std::uint32_t p : s.indices()) rows.push_back(g.point(p).coords);
    RankResult rr = rank_gf(rows, g.q());

    std::uint64_t mask = 0;
    for (std::size_t p = 0; p < g.num_points(); ++p)
        if (in_rowspace(rr.rref, g.point(p).coords, g.field()))
            mask |= std::uint64_t{1} << p;
    return {std::move(rr.rref), rr.rank - 1, mask};
}

namespace detail {
inline void check_subspace(const Geometry& g, const Subspace& sub) {
    if (sub.member_mask == 0 || (sub.member_mask & ~g.full_mask()))
        throw std::invalid_argument("subspace does not belong to this geometry");
    Subspace re = span(PointSet(g, sub.member_mask));
    if (re.member_mask != sub.member_mask || re.dim_projective != sub.dim_projective)
        throw std::invalid_argument("subspace does not belong to this geometry");
}
} // namespace detail

// Hyperplane pencil: indices of all hyperplanes containing the subspace.
inline std::vector<std::uint32_t> hyperplanes_through(const Geometry& g, const Subspace& sub) {
    detail::check_subspace(g, sub);
    std::vector<std::uint32_t> out;
    for (std::size_t h = 0; h < g.num_hyperplanes(); ++h)
        if ((sub.member_mask & ~g.hyperplane_member_mask(h)) == 0)
            out.push_back(static_cast<std::uint32_t>(h));
    return out;
}

inline std::vector<std::uint32_t> hyperplanes_through(const Geometry& g, std::uint32_t point) {
    if (point >= g.num_points()) throw std::invalid_argument("point index out of range");
    std::vector<std::uint32_t> out;
    for (std::uint64_t m = g.hyperplanes_of_point(point); m; m &= m - 1)
        out.push_back(static_cast<std::uint32_t>(std::countr_zero(m)));
    return out;
}

inline const std::vector<std::uint32_t>& lines_through(const Geometry& g, std::uint32_t point) {
    if (point >= g.num_points()) throw std::invalid_argument("point index out of range");
    return g.lines_of_point(point);
}

// Zero set of x0*x1 + x2*x3 in PG(3,2).
inline PointSet hyperbolic_quadric(const Geometry& g) {
    if (g.k() != 4 || g.q() != 2)
        throw std::invalid_argument("hyperbolic quadric requires PG(3,2)");
    std::uint64_t mask = 0;
    for (std::size_t p = 0; p < g.num_points(); ++p) {
        const Vec& v = g.point(p).coords;
        if ((v[0] * v[1] + v[2] * v[3]) % 2 == 0) mask |= std::uint64_t{1} << p;
    }
    return PointSet(g, mask);
}

// Zero set of x0^2 + x1*x2 + x3*x4 in PG(4,2).
inline PointSet parabolic_quadric(const Geometry& g) {
    if (g.k() != 5 || g.q() != 2)
        throw std::invalid_argument("parabolic quadric requires PG(4,2)");
    std::uint64_t mask = 0;
    for (std::size_t p = 0; p < g.num_points(); ++p) {
        const Vec& v = g.point(p).coords;
        if ((v[0] * v[0] + v[1] * v[2] + v[3] * v[4]) % 2 == 0) mask |= std::uint64_t{1} << p;
    }
    return PointSet(g, mask);
}

} // namespace minblock
