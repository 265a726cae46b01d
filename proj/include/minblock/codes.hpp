// Linear codes over GF(q): codeword enumeration, minimal-codeword and
// minimal-code checks, and the conversion between generator matrices and
// projective point sets (columns of G <-> points of PG(k-1,q)).
#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "minblock/errors.hpp"
#include "minblock/geometry.hpp"
#include "minblock/gf.hpp"

namespace minblock {

struct DegenerateCode : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NonSpanningSet : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace defaults {
inline constexpr std::uint64_t codeword_budget = std::uint64_t{1} << 24; // cap on q^k
}

struct Codeword {
    Vec vector;
    std::uint64_t support = 0;
    unsigned weight = 0;

    static Codeword from_vec(Vec v) {
        Codeword c;
        c.vector = std::move(v);
        for (std::size_t i = 0; i < c.vector.size(); ++i)
            if (c.vector[i]) c.support |= std::uint64_t{1} << i;
        c.weight = static_cast<unsigned>(std::popcount(c.support));
        return c;
    }
};

class LinearCode {
public:
    // Rows of `generator` are the basis codewords; rank must equal the row
    // count. Zero columns are allowed (degenerate codes are representable;
    // the point-set conversion rejects them).
    LinearCode(Mat generator, unsigned q) : gen_(std::move(generator)), q_(q), field_(q) {
        if (gen_.empty() || gen_.front().empty())
            throw std::invalid_argument("empty generator matrix");
        k_ = static_cast<unsigned>(gen_.size());
        n_ = static_cast<unsigned>(gen_.front().size());
        if (n_ > 63) throw std::invalid_argument("code length above 63 is not supported");
        if (rank_of(gen_, q_) != k_)
            throw std::invalid_argument("generator matrix is rank-deficient");
    }

    unsigned n() const { return n_; }
    unsigned k() const { return k_; }
    unsigned q() const { return q_; }
    const Mat& generator() const { return gen_; }
    const Gf& field() const { return field_; }

    std::uint64_t codeword_count() const {
        std::uint64_t c = 1;
        for (unsigned i = 0; i < k_; ++i) c *= q_;
        return c;
    }

    bool column_is_zero(unsigned col) const {
        for (const Vec& row : gen_)
            if (row[col]) return false;
        return true;
    }

    Codeword encode(const Vec& message) const {
        Vec c(n_, 0);
        for (unsigned i = 0; i < k_; ++i) {
            if (!message[i]) continue;
            for (unsigned j = 0; j < n_; ++j)
                c[j] = field_.add(c[j], field_.mul(message[i], gen_[i][j]));
        }
        return Codeword::from_vec(std::move(c));
    }

    bool contains(const Vec& word) const {
        if (word.size() != n_) return false;
        Mat rows = gen_;
        rows.push_back(word);
        return rank_of(rows, q_) == k_;
    }

private:
    Mat gen_;
    unsigned n_ = 0, k_ = 0, q_;
    Gf field_;
};

// Visits all q^k codewords exactly once, in message-vector lexicographic
// order (message coordinate 0 most significant); the zero codeword comes
// first.
inline void for_each_codeword(const LinearCode& code,
                              const std::function<void(const Codeword&)>& fn,
                              std::uint64_t budget = defaults::codeword_budget) {
    std::uint64_t total = code.codeword_count();
    if (total > budget)
        throw BudgetExceeded("codeword enumeration needs budget " + std::to_string(total), total);
    Vec message(code.k(), 0);
    for (std::uint64_t m = 0;; ++m) {
        fn(code.encode(message));
        if (m + 1 == total) break;
        for (unsigned i = code.k(); i-- > 0;) {
            if (++message[i] < code.q()) break;
            message[i] = 0;
        }
    }
}

inline std::vector<Codeword> enumerate_codewords(const LinearCode& code,
                                                 std::uint64_t budget = defaults::codeword_budget) {
    std::vector<Codeword> out;
    out.reserve(static_cast<std::size_t>(code.codeword_count()));
    for_each_codeword(code, [&](const Codeword& c) { out.push_back(c); }, budget);
    return out;
}

// True iff b == lambda * a for some lambda in GF(q) (lambda = 0 included).
inline bool is_scalar_multiple(const Vec& b, const Vec& a, const Gf& f) {
    std::uint8_t lambda = 0;
    bool fixed = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) {
            if (b[i] != 0) return false;
            continue;
        }
        std::uint8_t l = f.mul(b[i], f.inv(a[i]));
        if (!fixed) {
            lambda = l;
            fixed = true;
        } else if (l != lambda) {
            return false;
        }
    }
    return true;
}

// A nonzero codeword c is minimal when every codeword whose support is
// contained in supp(c) is a scalar multiple of c.
inline bool is_minimal_codeword(const LinearCode& code, const Codeword& c,
                                std::uint64_t budget = defaults::codeword_budget) {
    if (c.weight == 0) throw std::invalid_argument("minimality is defined for nonzero codewords");
    if (!code.contains(c.vector))
        throw std::invalid_argument("vector is not a codeword of this code");
    bool minimal = true;
    for_each_codeword(code, [&](const Codeword& other) {
        if (!minimal) return;
        if ((other.support & ~c.support) != 0) return;
        if (!is_scalar_multiple(other.vector, c.vector, code.field())) minimal = false;
    }, budget);
    return minimal;
}

struct MinimalityReport {
    bool minimal = true;
    // (c, c') pairs with supp(c') contained in supp(c) and c' not proportional
    std::vector<std::pair<Codeword, Codeword>> witnesses;
};

inline MinimalityReport is_minimal_code(const LinearCode& code, bool all_witnesses = false,
                                        std::uint64_t budget = defaults::codeword_budget) {
    std::vector<Codeword> words = enumerate_codewords(code, budget);
    MinimalityReport report;
    for (const Codeword& c : words) {
        if (c.weight == 0) continue;
        for (const Codeword& other : words) {
            if (other.weight > c.weight) continue;
            if ((other.support & ~c.support) != 0) continue;
            if (is_scalar_multiple(other.vector, c.vector, code.field())) continue;
            report.minimal = false;
            report.witnesses.emplace_back(c, other);
            if (!all_witnesses) return report;
            break; // one witness per non-minimal codeword
        }
    }
    return report;
}

struct PointSetFromCode {
    PointSet set;
    unsigned distinct_points = 0;
    // columns that repeated an earlier column up to a scalar (set semantics
    // collapse them)
    unsigned collapsed_columns = 0;
};

inline PointSetFromCode pointset_from_code(const LinearCode& code, const Geometry& g) {
    if (g.k() != code.k() || g.q() != code.q())
        throw std::invalid_argument("geometry parameters do not match the code");
    std::uint64_t mask = 0;
    unsigned collapsed = 0;
    for (unsigned col = 0; col < code.n(); ++col) {
        Vec column(code.k());
        for (unsigned row = 0; row < code.k(); ++row) column[row] = code.generator()[row][col];
        auto idx = g.index_of(column);
        if (!idx)
            throw DegenerateCode("column " + std::to_string(col) +
                                 " is zero; degenerate codes have no point set");
        std::uint64_t bit = std::uint64_t{1} << *idx;
        if (mask & bit)
            ++collapsed;
        else
            mask |= bit;
    }
    return {PointSet(g, mask), static_cast<unsigned>(std::popcount(mask)), collapsed};
}

// Generator matrix whose columns are the set's points in canonical geometry
// order; n = |S|. The set must span the whole space.
inline LinearCode code_from_pointset(const PointSet& s) {
    const Geometry& g = *s.geom;
    std::vector<std::uint32_t> idx = s.indices();
    Mat gen(g.k(), Vec(idx.size(), 0));
    Mat coord_rows;
    for (std::size_t col = 0; col < idx.size(); ++col) {
        const Vec& v = g.point(idx[col]).coords;
        coord_rows.push_back(v);
        for (unsigned row = 0; row < g.k(); ++row) gen[row][col] = v[row];
    }
    if (rank_of(coord_rows, g.q()) != g.k())
        throw NonSpanningSet("point set does not span the space (rank " +
                             std::to_string(rank_of(coord_rows, g.q())) + " < " +
                             std::to_string(g.k()) + ")");
    return LinearCode(std::move(gen), g.q());
}

} // namespace minblock
