#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <bit>
#include <random>
#include <set>

#include "helpers.hpp"
#include "minblock/classify.hpp"
#include "minblock/group.hpp"

using minblock::Geometry;
using minblock::Group;
using minblock::PointSet;

TEST_CASE("group order formula and enumeration agree") {
    REQUIRE(minblock::gl2_order(2) == 6);
    REQUIRE(minblock::gl2_order(3) == 168);
    REQUIRE(minblock::gl2_order(4) == 20160);
    REQUIRE(minblock::gl2_order(5) == 9999360);

    for (unsigned k : {2u, 3u, 4u}) {
        Geometry g(k, 2);
        std::uint64_t seen = 0;
        minblock::for_each_group_element(g, [&](const minblock::GroupElement&) { ++seen; });
        REQUIRE(seen == minblock::gl2_order(k));
    }
}

TEST_CASE("enumeration respects its budget") {
    Geometry g(5, 2);
    try {
        minblock::for_each_group_element(
            g, [](const minblock::GroupElement&) {}, 1000);
        FAIL("expected BudgetExceeded");
    } catch (const minblock::BudgetExceeded& e) {
        REQUIRE(e.required == 9999360);
    }
}

TEST_CASE("group action requires q = 2") {
    Geometry g(3, 3);
    REQUIRE_THROWS_AS(minblock::for_each_group_element(g, [](const minblock::GroupElement&) {}),
                      std::invalid_argument);
}

TEST_CASE("elements are incidence-preserving permutations") {
    Geometry g(3, 2);
    std::set<std::uint64_t> line_masks;
    for (std::size_t l = 0; l < g.num_lines(); ++l) line_masks.insert(g.line(l).member_mask);

    unsigned identities = 0;
    minblock::for_each_group_element(g, [&](const minblock::GroupElement& e) {
        std::vector<bool> hit(g.num_points(), false);
        bool is_identity = true;
        for (std::size_t p = 0; p < g.num_points(); ++p) {
            const auto image = e.point_perm[p];
            REQUIRE(image < g.num_points());
            REQUIRE_FALSE(hit[image]);
            hit[image] = true;
            is_identity = is_identity && image == p;
        }
        identities += is_identity;
        // lines map to lines
        for (const auto lm : line_masks) {
            std::uint64_t mapped = 0;
            for (std::uint64_t m = lm; m; m &= m - 1)
                mapped |= std::uint64_t{1} << e.point_perm[std::countr_zero(m)];
            REQUIRE(line_masks.count(mapped) == 1);
        }
    });
    REQUIRE(identities == 1);
}

TEST_CASE("orbit and stabilizer sizes multiply to the group order") {
    Geometry g(3, 2);
    Group group(g);
    REQUIRE(group.order() == 168);

    // a single point: all 7 are equivalent
    REQUIRE(group.orbit(1).size() == 7);
    REQUIRE(group.stabilizer_count(1) == 24);

    // a full line
    const std::uint64_t line = g.line(0).member_mask;
    REQUIRE(group.orbit(line).size() == 7);
    REQUIRE(group.stabilizer_count(line) == 24);

    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 40; ++trial) {
        const auto mask = helpers::random_subset(rng, 7, 1 + rng() % 6);
        REQUIRE(group.orbit(mask).size() * group.stabilizer_count(mask) == group.order());
    }
}

TEST_CASE("minimum image is a canonical form") {
    Geometry g(4, 2);
    Group group(g);
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        const auto mask = helpers::random_subset(rng, 15, 9);
        const auto canon = group.min_image(mask);
        // the canonical form lies in the orbit and is minimal there
        const auto orb = group.orbit(mask);
        REQUIRE(std::find(orb.begin(), orb.end(), canon) != orb.end());
        for (const auto img : orb) REQUIRE(canon <= img);
        // invariance along the orbit
        const auto elem = static_cast<std::size_t>(rng() % group.order());
        REQUIRE(group.min_image(group.apply(elem, mask)) == canon);
    }
}

TEST_CASE("apply distributes over set union") {
    Geometry g(4, 2);
    Group group(g);
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = helpers::random_subset(rng, 15, 4);
        const auto b = helpers::random_subset(rng, 15, 5);
        const auto e = static_cast<std::size_t>(rng() % group.order());
        REQUIRE(group.apply(e, a | b) == (group.apply(e, a) | group.apply(e, b)));
        REQUIRE(std::popcount(group.apply(e, a)) == std::popcount(a));
    }
}

TEST_CASE("intersection signature is constant on orbits") {
    Geometry g(4, 2);
    Group group(g);
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto mask = helpers::random_subset(rng, 15, 1 + rng() % 14);
        const auto e = static_cast<std::size_t>(rng() % group.order());
        REQUIRE(minblock::intersection_signature(PointSet(g, group.apply(e, mask))) ==
                minblock::intersection_signature(PointSet(g, mask)));
    }
}

TEST_CASE("wrapper functions check their pairing") {
    Geometry g32(4, 2);
    Geometry g22(3, 2);
    Group small(g22);
    const auto quad = minblock::hyperbolic_quadric(g32);
    REQUIRE_THROWS_AS(minblock::canonical_form(quad, small), std::invalid_argument);
    REQUIRE_THROWS_AS(minblock::stabilizer_order(quad, small), std::invalid_argument);

    Group big(g32);
    REQUIRE(minblock::stabilizer_order(quad, big) == 72);
    REQUIRE(minblock::canonical_form(quad, big).mask == big.min_image(quad.mask));
}
