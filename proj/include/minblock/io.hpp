// Text formats for point sets and generator matrices.
//
// Point-set files: a header line `pg k q` followed by one point per line as
// comma-separated coordinates. `#` starts a comment, blank lines are
// ignored, and a file may hold several sets, each opened by its own header.
// Coordinates are taken projectively; any nonzero scalar multiple denotes
// the same point.
//
// Generator files: a header line `code k n q` followed by exactly k rows of
// n comma-separated entries.
#pragma once

#include <bit>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "minblock/errors.hpp"
#include "minblock/geometry.hpp"
#include "minblock/gf.hpp"

namespace minblock {

struct RawPointSet {
    unsigned k = 0;
    unsigned q = 0;
    int header_line = 0;
    std::vector<std::pair<Vec, int>> points; // coordinates with their source line
};

struct RawCode {
    unsigned k = 0;
    unsigned n = 0;
    unsigned q = 0;
    Mat rows;
};

namespace detail {

inline std::string strip_line(const std::string& raw) {
    std::string s = raw.substr(0, raw.find('#'));
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline unsigned parse_field(const std::string& token, const char* what, int line) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(token, &used);
    } catch (const std::exception&) {
        throw ParseError(std::string("bad ") + what + " '" + token + "'", line);
    }
    if (used != token.size() || v > 1'000'000)
        throw ParseError(std::string("bad ") + what + " '" + token + "'", line);
    return static_cast<unsigned>(v);
}

inline Vec parse_row(const std::string& text, unsigned width, unsigned q, int line) {
    Vec row;
    std::istringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        const std::string t = strip_line(token);
        if (t.empty()) throw ParseError("empty coordinate", line);
        const unsigned v = parse_field(t, "coordinate", line);
        if (v >= q)
            throw ParseError("coordinate " + t + " not in GF(" + std::to_string(q) + ")", line);
        row.push_back(static_cast<std::uint8_t>(v));
    }
    if (row.size() != width)
        throw ParseError("expected " + std::to_string(width) + " coordinates, got " +
                             std::to_string(row.size()),
                         line);
    return row;
}

} // namespace detail

inline std::vector<RawPointSet> read_pointset_blocks(std::istream& in) {
    std::vector<RawPointSet> blocks;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = detail::strip_line(raw);
        if (s.empty()) continue;
        std::istringstream ss(s);
        std::string head;
        ss >> head;
        if (head == "pg") {
            std::string ktok, qtok, extra;
            if (!(ss >> ktok >> qtok) || (ss >> extra))
                throw ParseError("header must read 'pg k q'", line);
            RawPointSet block;
            block.k = detail::parse_field(ktok, "dimension", line);
            block.q = detail::parse_field(qtok, "field order", line);
            block.header_line = line;
            blocks.push_back(std::move(block));
        } else {
            if (blocks.empty())
                throw ParseError("point before any 'pg k q' header", line);
            RawPointSet& block = blocks.back();
            block.points.emplace_back(detail::parse_row(s, block.k, block.q, line), line);
        }
    }
    if (blocks.empty()) throw ParseError("no 'pg k q' header found", line);
    return blocks;
}

// Resolves a parsed block against a geometry built for the same (k, q).
// Scalar multiples collapse to one point; listing a point twice is
// harmless.
inline PointSet bind_pointset(const RawPointSet& block, const Geometry& g) {
    if (block.k != g.k() || block.q != g.q())
        throw std::invalid_argument("point-set block does not match the geometry");
    std::uint64_t mask = 0;
    for (const auto& [coords, line] : block.points) {
        const auto idx = g.index_of(coords);
        if (!idx) throw ParseError("zero vector is not a projective point", line);
        mask |= std::uint64_t{1} << *idx;
    }
    return PointSet(g, mask);
}

inline void write_pointset(std::ostream& out, const Geometry& g, std::uint64_t mask,
                           const std::string& comment = {}) {
    if (!comment.empty()) out << "# " << comment << '\n';
    out << "pg " << g.k() << ' ' << g.q() << '\n';
    for (std::uint64_t m = mask; m; m &= m - 1) {
        const auto p = static_cast<std::uint32_t>(std::countr_zero(m));
        const Vec& coords = g.point(p).coords;
        for (std::size_t i = 0; i < coords.size(); ++i)
            out << (i ? "," : "") << static_cast<unsigned>(coords[i]);
        out << '\n';
    }
}

inline void write_pointsets(std::ostream& out, const Geometry& g,
                            const std::vector<std::uint64_t>& masks) {
    for (std::size_t i = 0; i < masks.size(); ++i) {
        if (i) out << '\n';
        write_pointset(out, g, masks[i], "set " + std::to_string(i + 1));
    }
}

inline RawCode read_code_file(std::istream& in) {
    RawCode code;
    bool have_header = false;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = detail::strip_line(raw);
        if (s.empty()) continue;
        if (!have_header) {
            std::istringstream ss(s);
            std::string head, ktok, ntok, qtok, extra;
            ss >> head;
            if (head != "code" || !(ss >> ktok >> ntok >> qtok) || (ss >> extra))
                throw ParseError("header must read 'code k n q'", line);
            code.k = detail::parse_field(ktok, "dimension", line);
            code.n = detail::parse_field(ntok, "length", line);
            code.q = detail::parse_field(qtok, "field order", line);
            have_header = true;
        } else {
            if (code.rows.size() == code.k)
                throw ParseError("more than " + std::to_string(code.k) + " generator rows", line);
            code.rows.push_back(detail::parse_row(s, code.n, code.q, line));
        }
    }
    if (!have_header) throw ParseError("no 'code k n q' header found", line);
    if (code.rows.size() != code.k)
        throw ParseError("expected " + std::to_string(code.k) + " generator rows, got " +
                             std::to_string(code.rows.size()),
                         line);
    return code;
}

} // namespace minblock
