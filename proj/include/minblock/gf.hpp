// Arithmetic over prime fields GF(q) and exact linear algebra on small
// matrices: rank, reduced row echelon form, and incremental rank trackers
// used by the hyperplane-span checks.
#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace minblock {

// Coordinate vectors and row-major matrices with entries in [0, q).
using Vec = std::vector<std::uint8_t>;
using Mat = std::vector<Vec>;

inline bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Mod-q arithmetic with a precomputed inverse table. q must be prime.
class Gf {
public:
    explicit Gf(unsigned q) : q_(q) {
        if (!is_prime(q))
            throw std::invalid_argument("GF order must be prime, got " + std::to_string(q));
        inv_.assign(q, 0);
        for (unsigned a = 1; a < q; ++a)
            for (unsigned b = 1; b < q; ++b)
                if (a * b % q == 1) inv_[a] = static_cast<std::uint8_t>(b);
    }

    unsigned q() const { return q_; }

    std::uint8_t add(std::uint8_t a, std::uint8_t b) const {
        unsigned s = a + unsigned(b);
        return static_cast<std::uint8_t>(s >= q_ ? s - q_ : s);
    }
    std::uint8_t sub(std::uint8_t a, std::uint8_t b) const {
        return static_cast<std::uint8_t>((a + q_ - b) % q_);
    }
    std::uint8_t neg(std::uint8_t a) const { return a == 0 ? 0 : static_cast<std::uint8_t>(q_ - a); }
    std::uint8_t mul(std::uint8_t a, std::uint8_t b) const {
        return static_cast<std::uint8_t>(a * unsigned(b) % q_);
    }
    std::uint8_t inv(std::uint8_t a) const {
        if (a == 0) throw std::domain_error("inverse of 0 in GF(q)");
        return inv_[a];
    }

    std::uint8_t dot(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) const {
        unsigned s = 0;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * unsigned(b[i]);
        return static_cast<std::uint8_t>(s % q_);
    }

private:
    unsigned q_;
    std::vector<std::uint8_t> inv_;
};

// Scales a nonzero vector so its first nonzero entry is 1. Returns false for
// the zero vector (left untouched).
inline bool normalize_projective(Vec& v, const Gf& f) {
    for (std::uint8_t c : v) {
        if (c != 0) {
            if (c != 1) {
                std::uint8_t s = f.inv(c);
                for (auto& e : v) e = f.mul(e, s);
            }
            return true;
        }
    }
    return false;
}

struct RankResult {
    unsigned rank = 0;
    Mat rref; // canonical reduced row echelon basis, zero rows dropped
};

// Gaussian elimination over GF(q). The returned basis is the unique RREF,
// so equal row spaces produce identical bases.
inline RankResult rank_gf(const Mat& rows, unsigned q) {
    Gf f(q);
    Mat m;
    m.reserve(rows.size());
    std::size_t width = rows.empty() ? 0 : rows.front().size();
    for (const Vec& r : rows) {
        if (r.size() != width) throw std::invalid_argument("ragged matrix");
        for (std::uint8_t e : r)
            if (e >= q) throw std::invalid_argument("matrix entry out of field range");
        m.push_back(r);
    }

    RankResult out;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < width && pivot_row < m.size(); ++col) {
        std::size_t sel = pivot_row;
        while (sel < m.size() && m[sel][col] == 0) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[sel], m[pivot_row]);

        std::uint8_t s = f.inv(m[pivot_row][col]);
        for (auto& e : m[pivot_row]) e = f.mul(e, s);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == pivot_row || m[r][col] == 0) continue;
            std::uint8_t c = m[r][col];
            for (std::size_t j = col; j < width; ++j)
                m[r][j] = f.sub(m[r][j], f.mul(c, m[pivot_row][j]));
        }
        ++pivot_row;
    }
    out.rank = static_cast<unsigned>(pivot_row);
    out.rref.assign(m.begin(), m.begin() + pivot_row);
    return out;
}

inline unsigned rank_of(const Mat& rows, unsigned q) { return rank_gf(rows, q).rank; }

// Incremental rank over GF(2) for bit-packed vectors of up to 16 coordinates.
// This is the innermost loop of the blocking-set checks and the search.
class Gf2Rank {
public:
    bool add(std::uint32_t v) {
        while (v) {
            unsigned p = std::bit_width(v) - 1;
            if (!basis_[p]) {
                basis_[p] = v;
                ++rank_;
                return true;
            }
            v ^= basis_[p];
        }
        return false;
    }
    bool contains(std::uint32_t v) const {
        while (v) {
            unsigned p = std::bit_width(v) - 1;
            if (!basis_[p]) return false;
            v ^= basis_[p];
        }
        return true;
    }
    unsigned rank() const { return rank_; }
    void reset() { basis_.fill(0); rank_ = 0; }

private:
    std::array<std::uint32_t, 16> basis_{};
    unsigned rank_ = 0;
};

// Incremental rank over GF(q) for short coordinate vectors (length <= 16).
class RankTracker {
public:
    RankTracker(const Gf& f, unsigned width) : f_(&f), width_(width) {
        if (width > kMaxWidth) throw std::invalid_argument("RankTracker width cap exceeded");
    }

    // Returns true iff the vector enlarged the span.
    bool add(std::span<const std::uint8_t> v) {
        std::array<std::uint8_t, kMaxWidth> w{};
        for (unsigned i = 0; i < width_; ++i) w[i] = v[i];
        for (unsigned col = 0; col < width_; ++col) {
            if (w[col] == 0) continue;
            int r = pivot_row_[col];
            if (r < 0) {
                std::uint8_t s = f_->inv(w[col]);
                for (unsigned j = col; j < width_; ++j) w[j] = f_->mul(w[j], s);
                rows_[rank_] = w;
                pivot_row_[col] = static_cast<int>(rank_);
                ++rank_;
                return true;
            }
            std::uint8_t c = w[col];
            for (unsigned j = col; j < width_; ++j)
                w[j] = f_->sub(w[j], f_->mul(c, rows_[r][j]));
        }
        return false;
    }

    unsigned rank() const { return rank_; }

private:
    static constexpr unsigned kMaxWidth = 16;
    const Gf* f_;
    unsigned width_;
    unsigned rank_ = 0;
    std::array<std::array<std::uint8_t, kMaxWidth>, kMaxWidth> rows_{};
    std::array<int, kMaxWidth> pivot_row_{-1, -1, -1, -1, -1, -1, -1, -1,
                                          -1, -1, -1, -1, -1, -1, -1, -1};
};

} // namespace minblock
