// Error types shared across the library.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace minblock {

// Thrown when an operation would exceed its configured enumeration or
// memory budget. `required` is the budget the caller would need.
struct BudgetExceeded : std::runtime_error {
    BudgetExceeded(const std::string& what, std::uint64_t required_budget)
        : std::runtime_error(what), required(required_budget) {}
    std::uint64_t required;
};

// File-format errors carry the 1-based line number of the offending line.
struct ParseError : std::runtime_error {
    ParseError(const std::string& what, int line_number)
        : std::runtime_error(what + " (line " + std::to_string(line_number) + ")"),
          line(line_number) {}
    int line;
};

} // namespace minblock
