#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "minblock/geometry.hpp"
#include "oracles.hpp"

namespace helpers {

inline oracle::Row to_row(const minblock::Vec& v) {
    return oracle::Row(v.begin(), v.end());
}

inline oracle::Matrix points_matrix(const minblock::Geometry& g, std::uint64_t mask) {
    oracle::Matrix m;
    for (std::uint64_t b = mask; b; b &= b - 1) {
        const auto p = static_cast<std::uint32_t>(std::countr_zero(b));
        m.push_back(to_row(g.point(p).coords));
    }
    return m;
}

inline std::uint64_t random_subset(std::mt19937_64& rng, unsigned n, unsigned size) {
    std::vector<unsigned> idx(n);
    for (unsigned i = 0; i < n; ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    std::uint64_t mask = 0;
    for (unsigned i = 0; i < size; ++i) mask |= std::uint64_t{1} << idx[i];
    return mask;
}

} // namespace helpers
