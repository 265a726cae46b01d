// Reference implementations used to cross-check the library. These are
// deliberately naive and share no code with it: plain int vectors, modular
// inverse by scanning, and a different projective normalization (last
// nonzero coordinate set to 1 instead of the first).
#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

namespace oracle {

using Row = std::vector<int>;
using Matrix = std::vector<Row>;

inline int inv_mod(int a, int q) {
    a = ((a % q) + q) % q;
    for (int x = 1; x < q; ++x)
        if (a * x % q == 1) return x;
    throw std::domain_error("no inverse");
}

inline int rank_mod(Matrix m, int q) {
    const int rows = static_cast<int>(m.size());
    if (rows == 0) return 0;
    const int cols = static_cast<int>(m[0].size());
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][c] % q != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        const int scale = inv_mod(m[rank][c], q);
        for (int j = 0; j < cols; ++j) m[rank][j] = m[rank][j] * scale % q;
        for (int r = 0; r < rows; ++r) {
            if (r == rank) continue;
            const int f = m[r][c] % q;
            if (f == 0) continue;
            for (int j = 0; j < cols; ++j)
                m[r][j] = ((m[r][j] - f * m[rank][j]) % q + q) % q;
        }
        ++rank;
    }
    return rank;
}

// normalizes so the last nonzero coordinate is 1; zero vector throws
inline Row normalize_last(Row v, int q) {
    int last = -1;
    for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
        if (v[i] % q != 0) {
            last = i;
            break;
        }
    if (last < 0) throw std::invalid_argument("zero vector");
    const int scale = inv_mod(v[last], q);
    for (auto& x : v) x = ((x * scale) % q + q) % q;
    return v;
}

inline std::set<Row> all_points(int k, int q) {
    std::set<Row> pts;
    std::uint64_t total = 1;
    for (int i = 0; i < k; ++i) total *= static_cast<std::uint64_t>(q);
    for (std::uint64_t code = 1; code < total; ++code) {
        Row v(k);
        std::uint64_t rest = code;
        for (int i = k - 1; i >= 0; --i) {
            v[i] = static_cast<int>(rest % q);
            rest /= q;
        }
        pts.insert(normalize_last(v, q));
    }
    return pts;
}

// every linear combination of the generators, as normalized points
inline std::set<Row> closure(const Matrix& gens, int k, int q) {
    std::set<Row> out;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < gens.size(); ++i) total *= static_cast<std::uint64_t>(q);
    for (std::uint64_t code = 0; code < total; ++code) {
        Row combo(k, 0);
        std::uint64_t rest = code;
        bool nonzero = false;
        for (const auto& gen : gens) {
            const int coeff = static_cast<int>(rest % q);
            rest /= q;
            for (int i = 0; i < k; ++i) combo[i] = (combo[i] + coeff * gen[i]) % q;
        }
        for (int x : combo) nonzero = nonzero || x != 0;
        if (nonzero) out.insert(normalize_last(combo, q));
    }
    return out;
}

inline bool strong(const Matrix& pts, int k, int q) {
    for (const Row& functional : all_points(k, q)) {
        Matrix on_hyperplane;
        for (const Row& p : pts) {
            int dot = 0;
            for (int i = 0; i < k; ++i) dot = (dot + functional[i] * p[i]) % q;
            if (dot == 0) on_hyperplane.push_back(p);
        }
        if (rank_mod(on_hyperplane, q) != k - 1) return false;
    }
    return true;
}

inline Matrix codewords_of(const Matrix& gen, int n, int q) {
    const int k = static_cast<int>(gen.size());
    std::uint64_t total = 1;
    for (int i = 0; i < k; ++i) total *= static_cast<std::uint64_t>(q);
    Matrix words;
    for (std::uint64_t code = 0; code < total; ++code) {
        Row w(n, 0);
        std::uint64_t rest = code;
        for (int r = 0; r < k; ++r) {
            const int coeff = static_cast<int>(rest % q);
            rest /= q;
            for (int j = 0; j < n; ++j) w[j] = (w[j] + coeff * gen[r][j]) % q;
        }
        words.push_back(std::move(w));
    }
    return words;
}

inline bool is_zero(const Row& v) {
    for (int x : v)
        if (x != 0) return false;
    return true;
}

inline bool scalar_multiple(const Row& b, const Row& a, int q) {
    for (int lam = 0; lam < q; ++lam) {
        bool match = true;
        for (std::size_t i = 0; i < a.size() && match; ++i)
            match = b[i] == lam * a[i] % q;
        if (match) return true;
    }
    return false;
}

inline bool minimal_code(const Matrix& gen, int n, int q) {
    const Matrix words = codewords_of(gen, n, q);
    for (const Row& c : words) {
        if (is_zero(c)) continue;
        for (const Row& other : words) {
            if (scalar_multiple(other, c, q)) continue;
            bool contained = true;
            for (int j = 0; j < n && contained; ++j)
                if (other[j] != 0 && c[j] == 0) contained = false;
            if (contained) return false;
        }
    }
    return true;
}

} // namespace oracle
