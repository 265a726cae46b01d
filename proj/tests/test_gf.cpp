#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "minblock/geometry.hpp"
#include "minblock/gf.hpp"
#include "oracles.hpp"

using minblock::Gf;
using minblock::Mat;
using minblock::Vec;

TEST_CASE("prime field construction") {
    for (unsigned q : {2u, 3u, 5u, 7u}) REQUIRE_NOTHROW(Gf(q));
    for (unsigned q : {0u, 1u, 4u, 6u, 8u, 9u}) REQUIRE_THROWS_AS(Gf(q), std::invalid_argument);
}

TEST_CASE("field arithmetic agrees with integer arithmetic mod q") {
    for (unsigned q : {2u, 3u, 5u, 7u}) {
        Gf f(q);
        for (unsigned a = 0; a < q; ++a) {
            for (unsigned b = 0; b < q; ++b) {
                REQUIRE(f.add(a, b) == (a + b) % q);
                REQUIRE(f.mul(a, b) == (a * b) % q);
                REQUIRE(f.sub(a, b) == (a + q - b) % q);
            }
            REQUIRE(f.add(a, f.neg(a)) == 0);
            if (a != 0) {
                REQUIRE(f.mul(a, f.inv(a)) == 1);
                REQUIRE(f.inv(a) == static_cast<unsigned>(oracle::inv_mod(a, q)));
            }
        }
        REQUIRE_THROWS_AS(f.inv(0), std::domain_error);
    }
}

TEST_CASE("dot product") {
    Gf f(5);
    Vec a{1, 2, 3}, b{4, 0, 2};
    REQUIRE(f.dot(a, b) == (4 + 0 + 6) % 5);
    REQUIRE(f.dot(Vec{}, Vec{}) == 0);
}

TEST_CASE("projective normalization") {
    Gf f3(3);
    Vec v{2, 1, 0};
    REQUIRE(minblock::normalize_projective(v, f3));
    REQUIRE(v == Vec{1, 2, 0}); // scaled by inv(2) = 2

    Vec w{0, 0, 2};
    REQUIRE(minblock::normalize_projective(w, f3));
    REQUIRE(w == Vec{0, 0, 1});

    Vec z{0, 0, 0};
    REQUIRE_FALSE(minblock::normalize_projective(z, f3));

    // scalar multiples collapse to the same representative
    std::mt19937_64 rng(11);
    Gf f7(7);
    for (int trial = 0; trial < 100; ++trial) {
        Vec base(4);
        for (auto& x : base) x = static_cast<std::uint8_t>(rng() % 7);
        Vec scaled = base;
        const auto lambda = static_cast<std::uint8_t>(1 + rng() % 6);
        for (auto& x : scaled) x = f7.mul(x, lambda);
        const bool nz1 = minblock::normalize_projective(base, f7);
        const bool nz2 = minblock::normalize_projective(scaled, f7);
        REQUIRE(nz1 == nz2);
        if (nz1) REQUIRE(base == scaled);
    }
}

TEST_CASE("rank over GF(q) matches the reference elimination") {
    std::mt19937_64 rng(42);
    for (unsigned q : {2u, 3u, 5u, 7u}) {
        for (int trial = 0; trial < 120; ++trial) {
            const unsigned rows = 1 + rng() % 6, cols = 1 + rng() % 8;
            Mat m(rows, Vec(cols));
            oracle::Matrix om(rows, oracle::Row(cols));
            for (unsigned r = 0; r < rows; ++r)
                for (unsigned c = 0; c < cols; ++c) {
                    const auto x = static_cast<std::uint8_t>(rng() % q);
                    m[r][c] = x;
                    om[r][c] = x;
                }
            REQUIRE(minblock::rank_gf(m, q).rank ==
                    static_cast<unsigned>(oracle::rank_mod(om, q)));
        }
    }

    REQUIRE(minblock::rank_gf(Mat{{1, 0}, {0, 1}}, 2).rank == 2);
    REQUIRE(minblock::rank_gf(Mat{{0, 0}, {0, 0}}, 3).rank == 0);
    REQUIRE(minblock::rank_gf(Mat{{1, 2}, {2, 4 % 5}}, 5).rank == 1);
    REQUIRE(minblock::rank_gf(Mat{}, 2).rank == 0);
}

TEST_CASE("rank rejects malformed input") {
    REQUIRE_THROWS_AS(minblock::rank_gf(Mat{{1, 0}, {1}}, 2), std::invalid_argument);
    REQUIRE_THROWS_AS(minblock::rank_gf(Mat{{2, 0}}, 2), std::invalid_argument);
}

TEST_CASE("rref output spans the row space") {
    // every original row must lie in the span of the reduced rows
    Mat m{{1, 1, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 0}};
    const auto res = minblock::rank_gf(m, 2);
    REQUIRE(res.rank == 2);
    Gf f(2);
    for (const auto& row : m) REQUIRE(minblock::in_rowspace(res.rref, row, f));
}

TEST_CASE("incremental GF(2) rank tracker") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        minblock::Gf2Rank tracker;
        Mat accum;
        const unsigned width = 2 + rng() % 10;
        for (int step = 0; step < 12; ++step) {
            const auto v = static_cast<std::uint32_t>(rng() & ((1u << width) - 1));
            Vec as_vec(width);
            for (unsigned i = 0; i < width; ++i) as_vec[i] = (v >> (width - 1 - i)) & 1;

            const bool grew = tracker.add(v);
            accum.push_back(as_vec);
            const unsigned expect = minblock::rank_gf(accum, 2).rank;
            REQUIRE(tracker.rank() == expect);
            if (!grew) REQUIRE(tracker.contains(v));
        }
        tracker.reset();
        REQUIRE(tracker.rank() == 0);
    }
}

TEST_CASE("incremental rank tracker over odd fields") {
    std::mt19937_64 rng(13);
    for (unsigned q : {3u, 5u, 7u}) {
        const Gf f(q);
        for (int trial = 0; trial < 60; ++trial) {
            const unsigned width = 2 + rng() % 6;
            minblock::RankTracker tracker(f, width);
            Mat accum;
            for (int step = 0; step < 10; ++step) {
                Vec v(width);
                for (auto& x : v) x = static_cast<std::uint8_t>(rng() % q);
                tracker.add(v);
                accum.push_back(v);
                REQUIRE(tracker.rank() == minblock::rank_gf(accum, q).rank);
            }
        }
    }
}
