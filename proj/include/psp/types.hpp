#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>

namespace psp {

using Vertex = std::uint32_t;
using Weight = std::uint64_t;

// Sentinel for "no edge / unreachable". All arithmetic on weights must go
// through add() so sums saturate instead of wrapping.
constexpr Weight kInf = Weight(1) << 62;
constexpr Vertex kNoVertex = ~Vertex(0);

inline Weight add(Weight a, Weight b) {
    return (a >= kInf || b >= kInf) ? kInf : a + b;
}
inline Weight add(Weight a, Weight b, Weight c) { return add(add(a, b), c); }

// ---- errors ----------------------------------------------------------

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file; line is 1-based.
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t line_no)
        : Error(what + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
    std::size_t line;
};

// An operation's precondition does not hold (bad k, missing edge, ...).
struct ContractError : Error {
    using Error::Error;
};

// A requested workload stratum cannot be produced on this graph.
struct InfeasibleError : Error {
    using Error::Error;
};

} // namespace psp
