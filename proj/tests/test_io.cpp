#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "minblock/blocking.hpp"
#include "minblock/io.hpp"

using minblock::Geometry;
using minblock::ParseError;
using minblock::PointSet;

namespace {

const std::string kFixtures = MINBLOCK_FIXTURES_DIR;

std::vector<minblock::RawPointSet> parse(const std::string& text) {
    std::istringstream in(text);
    return minblock::read_pointset_blocks(in);
}

int parse_error_line(const std::string& text) {
    std::istringstream in(text);
    try {
        minblock::read_pointset_blocks(in);
    } catch (const ParseError& e) {
        return e.line;
    }
    return -1;
}

} // namespace

TEST_CASE("reading the quadric fixture") {
    std::ifstream in(kFixtures + "/quadric_pg32.pts");
    REQUIRE(in.good());
    const auto blocks = minblock::read_pointset_blocks(in);
    REQUIRE(blocks.size() == 1);
    REQUIRE(blocks[0].k == 4);
    REQUIRE(blocks[0].q == 2);
    REQUIRE(blocks[0].points.size() == 9);

    Geometry g(4, 2);
    const auto s = minblock::bind_pointset(blocks[0], g);
    REQUIRE(s.mask == minblock::hyperbolic_quadric(g).mask);
}

TEST_CASE("multi-set files keep their blocks apart") {
    std::ifstream in(kFixtures + "/multi_sets.pts");
    const auto blocks = minblock::read_pointset_blocks(in);
    REQUIRE(blocks.size() == 2);
    Geometry g(4, 2);
    REQUIRE(minblock::is_strong_blocking_set(minblock::bind_pointset(blocks[0], g)).is_strong);
    REQUIRE_FALSE(
        minblock::is_strong_blocking_set(minblock::bind_pointset(blocks[1], g)).is_strong);
}

TEST_CASE("scalar multiples collapse on binding") {
    std::ifstream in(kFixtures + "/gf3_scalars.pts");
    const auto blocks = minblock::read_pointset_blocks(in);
    REQUIRE(blocks.size() == 1);
    REQUIRE(blocks[0].points.size() == 3);
    Geometry g(3, 3);
    REQUIRE(minblock::bind_pointset(blocks[0], g).size() == 2);
}

TEST_CASE("comments and blank lines are ignored") {
    const auto blocks = parse("# leading comment\n\npg 3 2  # trailing\n1,0,0\n\n# gap\n0,1,0\n");
    REQUIRE(blocks.size() == 1);
    REQUIRE(blocks[0].points.size() == 2);
    REQUIRE(blocks[0].header_line == 3);
    REQUIRE(blocks[0].points[1].second == 7); // source line of the second point
}

TEST_CASE("parse errors carry line numbers") {
    REQUIRE(parse_error_line("pg 3 2\n0,2,1\n") == 2);       // entry outside GF(2)
    REQUIRE(parse_error_line("1,0,0\npg 3 2\n") == 1);       // point before header
    REQUIRE(parse_error_line("pg 3\n") == 1);                // short header
    REQUIRE(parse_error_line("pg 3 2 9\n") == 1);            // long header
    REQUIRE(parse_error_line("pg 3 2\n1,0\n") == 2);         // wrong arity
    REQUIRE(parse_error_line("pg 3 2\n1,x,0\n") == 2);       // junk token
    REQUIRE(parse_error_line("pg 3 2\n1,,0\n") == 2);        // empty coordinate
    REQUIRE_THROWS_AS(parse(""), ParseError); // no header at all
    REQUIRE_THROWS_AS(parse("# only comments\n"), ParseError);
}

TEST_CASE("binding rejects the zero vector with its source line") {
    const auto blocks = parse("pg 3 2\n1,0,0\n0,0,0\n");
    Geometry g(3, 2);
    try {
        minblock::bind_pointset(blocks[0], g);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        REQUIRE(e.line == 3);
    }
    Geometry wrong(4, 2);
    REQUIRE_THROWS_AS(minblock::bind_pointset(blocks[0], wrong), std::invalid_argument);
}

TEST_CASE("write and read round trip") {
    Geometry g(4, 2);
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 30; ++trial) {
        const auto mask = helpers::random_subset(rng, 15, 1 + rng() % 15);
        std::ostringstream out;
        minblock::write_pointset(out, g, mask, "round trip");
        std::istringstream in(out.str());
        const auto blocks = minblock::read_pointset_blocks(in);
        REQUIRE(blocks.size() == 1);
        REQUIRE(minblock::bind_pointset(blocks[0], g).mask == mask);
    }

    std::ostringstream multi;
    minblock::write_pointsets(multi, g, {0x1ff, 0x7f, 0x3});
    std::istringstream in(multi.str());
    const auto blocks = minblock::read_pointset_blocks(in);
    REQUIRE(blocks.size() == 3);
    REQUIRE(minblock::bind_pointset(blocks[1], g).mask == 0x7f);
}

TEST_CASE("generator matrix files") {
    std::ifstream in(kFixtures + "/simplex_73.gen");
    const auto raw = minblock::read_code_file(in);
    REQUIRE(raw.k == 3);
    REQUIRE(raw.n == 7);
    REQUIRE(raw.q == 2);
    REQUIRE(raw.rows.size() == 3);
    REQUIRE(raw.rows[2] == minblock::Vec{1, 0, 1, 0, 1, 0, 1});

    auto parse_code = [](const std::string& text) {
        std::istringstream s(text);
        return minblock::read_code_file(s);
    };
    REQUIRE_THROWS_AS(parse_code("code 2 3 2\n1,0,1\n"), ParseError);          // missing row
    REQUIRE_THROWS_AS(parse_code("code 2 3 2\n1,0,1\n0,1,1\n1,1,1\n"), ParseError); // extra row
    REQUIRE_THROWS_AS(parse_code("code 2 3 2\n1,0\n0,1\n"), ParseError);       // short rows
    REQUIRE_THROWS_AS(parse_code("code 2 3 2\n1,0,2\n0,1,1\n"), ParseError);   // bad entry
    REQUIRE_THROWS_AS(parse_code("matrix 2 3 2\n"), ParseError);               // wrong keyword
    REQUIRE_THROWS_AS(parse_code(""), ParseError);
}
