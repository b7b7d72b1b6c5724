#pragma once
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "psp/graph.hpp"
#include "psp/types.hpp"

namespace psp::io {

// Binary little-endian primitives for the versioned index files.

inline constexpr std::uint8_t kTagDijkstra = 1;
inline constexpr std::uint8_t kTagCH = 2;
inline constexpr std::uint8_t kTagTD = 3;
inline constexpr std::uint8_t kTagPLL = 4;
inline constexpr std::uint8_t kTagTable = 5;
inline constexpr std::uint8_t kTagIndex = 32;

inline constexpr char kMagic[4] = {'P', 'S', 'P', '1'};

void write_magic(std::ostream& out);
void expect_magic(std::istream& in); // throws Error on mismatch

void write_u8(std::ostream& out, std::uint8_t x);
std::uint8_t read_u8(std::istream& in);
void write_u32(std::ostream& out, std::uint32_t x);
std::uint32_t read_u32(std::istream& in);
void write_u64(std::ostream& out, std::uint64_t x);
std::uint64_t read_u64(std::istream& in);

void write_tag(std::ostream& out, std::uint8_t tag);
void expect_tag(std::istream& in, std::uint8_t tag);
std::uint8_t peek_tag(std::istream& in);

void write_vec_u32(std::ostream& out, const std::vector<std::uint32_t>& v);
std::vector<std::uint32_t> read_vec_u32(std::istream& in);
void write_vec_u64(std::ostream& out, const std::vector<std::uint64_t>& v);
std::vector<std::uint64_t> read_vec_u64(std::istream& in);
void write_vec_i32(std::ostream& out, const std::vector<std::int32_t>& v);
std::vector<std::int32_t> read_vec_i32(std::istream& in);
void write_bytes(std::ostream& out, const std::vector<char>& v);
std::vector<char> read_bytes(std::istream& in);

// Whole-graph binary form, adjacency slots included (deleted edges survive
// the trip with their kInf weight).
void write_graph(std::ostream& out, const Graph& g);
Graph read_graph(std::istream& in);

} // namespace psp::io
