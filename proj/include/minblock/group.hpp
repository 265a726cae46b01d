// The projective linear group of PG(k-1,2). For q = 2 the scalar group is
// trivial, so PGL = GL and elements are exactly the invertible k x k binary
// matrices. The hot path works with precomputed point permutations; matrices
// only appear in the streaming interface.
#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "minblock/errors.hpp"
#include "minblock/geometry.hpp"

namespace minblock {

namespace defaults {
inline constexpr std::uint64_t group_budget = 10'000'000; // cap on |GL(k,2)|
}

struct GroupElement {
    Mat matrix;                          // invertible over GF(2)
    std::vector<std::uint8_t> point_perm; // induced permutation of point indices
};

inline std::uint64_t gl2_order(unsigned k) {
    std::uint64_t order = 1, qk = std::uint64_t{1} << k;
    for (unsigned i = 0; i < k; ++i) order *= qk - (std::uint64_t{1} << i);
    return order;
}

namespace detail {

// Rows are bit-packed with coordinate 0 in the most significant of k bits,
// matching Geometry::point_bits (so point index == packed value - 1).
inline std::uint32_t apply_matrix(const std::uint32_t* rows, unsigned k, std::uint32_t v) {
    std::uint32_t w = 0;
    for (unsigned j = 0; j < k; ++j)
        w |= static_cast<std::uint32_t>(std::popcount(rows[j] & v) & 1) << (k - 1 - j);
    return w;
}

template <typename Fn>
void enumerate_gl2(unsigned k, Fn&& emit) {
    const std::uint32_t n_vectors = std::uint32_t{1} << k;
    std::vector<std::uint32_t> rows(k);
    // span_set: bitmask over the 2^k vector values currently spanned
    auto recurse = [&](auto&& self, unsigned depth, std::uint64_t span_set) -> void {
        if (depth == k) {
            emit(rows.data());
            return;
        }
        for (std::uint32_t v = 1; v < n_vectors; ++v) {
            if ((span_set >> v) & 1) continue;
            rows[depth] = v;
            std::uint64_t next = span_set;
            for (std::uint64_t m = span_set; m; m &= m - 1)
                next |= std::uint64_t{1} << (std::countr_zero(m) ^ v);
            self(self, depth + 1, next);
        }
    };
    recurse(recurse, 0, 1); // zero vector is always spanned
}

} // namespace detail

// Streams every invertible matrix exactly once (row-lexicographic order)
// together with its induced point permutation.
inline void for_each_group_element(const Geometry& g,
                                   const std::function<void(const GroupElement&)>& fn,
                                   std::uint64_t budget = defaults::group_budget) {
    if (g.q() != 2) throw std::invalid_argument("group enumeration requires q = 2");
    const unsigned k = g.k();
    std::uint64_t order = gl2_order(k);
    if (order > budget)
        throw BudgetExceeded("|GL(" + std::to_string(k) + ",2)| = " + std::to_string(order) +
                                 " exceeds the element budget",
                             order);
    const auto n_points = static_cast<std::uint32_t>(g.num_points());
    GroupElement elem;
    elem.matrix.assign(k, Vec(k, 0));
    elem.point_perm.assign(n_points, 0);
    detail::enumerate_gl2(k, [&](const std::uint32_t* rows) {
        for (unsigned i = 0; i < k; ++i)
            for (unsigned j = 0; j < k; ++j)
                elem.matrix[i][j] = static_cast<std::uint8_t>((rows[i] >> (k - 1 - j)) & 1);
        for (std::uint32_t p = 0; p < n_points; ++p)
            elem.point_perm[p] =
                static_cast<std::uint8_t>(detail::apply_matrix(rows, k, p + 1) - 1);
        fn(elem);
    });
}

// The full group with permutations stored flat (stride = number of points).
class Group {
public:
    explicit Group(const Geometry& g, std::uint64_t budget = defaults::group_budget)
        : geom_(&g), n_points_(static_cast<std::uint32_t>(g.num_points())) {
        perms_.reserve(static_cast<std::size_t>(gl2_order(g.k())) * n_points_);
        for_each_group_element(g, [&](const GroupElement& e) {
            perms_.insert(perms_.end(), e.point_perm.begin(), e.point_perm.end());
        }, budget);
        order_ = perms_.size() / n_points_;
    }

    const Geometry& geometry() const { return *geom_; }
    std::uint64_t order() const { return order_; }

    std::uint64_t apply(std::size_t element, std::uint64_t mask) const {
        const std::uint8_t* p = perms_.data() + element * n_points_;
        std::uint64_t image = 0;
        for (std::uint64_t m = mask; m; m &= m - 1)
            image |= std::uint64_t{1} << p[std::countr_zero(m)];
        return image;
    }

    // Numerically smallest image mask over the whole group; constant on
    // orbits, so equal outputs identify equal orbits.
    std::uint64_t min_image(std::uint64_t mask) const {
        std::uint64_t best = mask;
        for (std::uint64_t e = 0; e < order_; ++e) {
            std::uint64_t img = apply(e, mask);
            if (img < best) best = img;
        }
        return best;
    }

    std::uint64_t stabilizer_count(std::uint64_t mask) const {
        std::uint64_t count = 0;
        for (std::uint64_t e = 0; e < order_; ++e)
            if (apply(e, mask) == mask) ++count;
        return count;
    }

    std::vector<std::uint64_t> orbit(std::uint64_t mask) const {
        std::vector<std::uint64_t> images;
        images.reserve(order_);
        for (std::uint64_t e = 0; e < order_; ++e) images.push_back(apply(e, mask));
        std::sort(images.begin(), images.end());
        images.erase(std::unique(images.begin(), images.end()), images.end());
        return images;
    }

private:
    const Geometry* geom_;
    std::uint32_t n_points_;
    std::uint64_t order_ = 0;
    std::vector<std::uint8_t> perms_;
};

namespace detail {
inline void check_group(const PointSet& s, const Group& group) {
    if (s.geom->k() != group.geometry().k() || s.geom->q() != group.geometry().q())
        throw std::invalid_argument("group was built for a different geometry");
}
} // namespace detail

inline PointSet canonical_form(const PointSet& s, const Group& group) {
    detail::check_group(s, group);
    return PointSet(*s.geom, group.min_image(s.mask));
}

inline std::uint64_t stabilizer_order(const PointSet& s, const Group& group) {
    detail::check_group(s, group);
    return group.stabilizer_count(s.mask);
}

} // namespace minblock
