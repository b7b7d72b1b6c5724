#include "psp/serialize.hpp"

using namespace std;

namespace psp::io {

namespace {
void write_bytes(ostream& out, const void* p, size_t n) {
    out.write(static_cast<const char*>(p), streamsize(n));
    if (!out) throw Error("index file write failed");
}
void read_bytes(istream& in, void* p, size_t n) {
    in.read(static_cast<char*>(p), streamsize(n));
    if (size_t(in.gcount()) != n) throw Error("index file truncated");
}
} // namespace

void write_magic(ostream& out) { write_bytes(out, kMagic, 4); }

void expect_magic(istream& in) {
    char m[4];
    read_bytes(in, m, 4);
    if (!equal(m, m + 4, kMagic)) throw Error("not an index file (bad magic)");
}

void write_u8(ostream& out, uint8_t x) { write_bytes(out, &x, 1); }
uint8_t read_u8(istream& in) {
    uint8_t x;
    read_bytes(in, &x, 1);
    return x;
}

void write_u32(ostream& out, uint32_t x) {
    uint8_t b[4] = {uint8_t(x), uint8_t(x >> 8), uint8_t(x >> 16), uint8_t(x >> 24)};
    write_bytes(out, b, 4);
}
uint32_t read_u32(istream& in) {
    uint8_t b[4];
    read_bytes(in, b, 4);
    return uint32_t(b[0]) | uint32_t(b[1]) << 8 | uint32_t(b[2]) << 16 |
           uint32_t(b[3]) << 24;
}

void write_u64(ostream& out, uint64_t x) {
    write_u32(out, uint32_t(x));
    write_u32(out, uint32_t(x >> 32));
}
uint64_t read_u64(istream& in) {
    uint64_t lo = read_u32(in);
    return lo | (uint64_t(read_u32(in)) << 32);
}

void write_tag(ostream& out, uint8_t tag) { write_u8(out, tag); }

void expect_tag(istream& in, uint8_t tag) {
    if (read_u8(in) != tag) throw Error("index file holds a different structure");
}

uint8_t peek_tag(istream& in) {
    int c = in.peek();
    if (c == istream::traits_type::eof()) throw Error("index file truncated");
    return uint8_t(c);
}

void write_vec_u32(ostream& out, const vector<uint32_t>& v) {
    write_u64(out, v.size());
    for (uint32_t x : v) write_u32(out, x);
}
vector<uint32_t> read_vec_u32(istream& in) {
    vector<uint32_t> v(read_u64(in));
    for (auto& x : v) x = read_u32(in);
    return v;
}

void write_vec_u64(ostream& out, const vector<uint64_t>& v) {
    write_u64(out, v.size());
    for (uint64_t x : v) write_u64(out, x);
}
vector<uint64_t> read_vec_u64(istream& in) {
    vector<uint64_t> v(read_u64(in));
    for (auto& x : v) x = read_u64(in);
    return v;
}

void write_vec_i32(ostream& out, const vector<int32_t>& v) {
    write_u64(out, v.size());
    for (int32_t x : v) write_u32(out, uint32_t(x));
}
vector<int32_t> read_vec_i32(istream& in) {
    vector<int32_t> v(read_u64(in));
    for (auto& x : v) x = int32_t(read_u32(in));
    return v;
}

void write_bytes(ostream& out, const vector<char>& v) {
    write_u64(out, v.size());
    out.write(v.data(), std::streamsize(v.size()));
}
vector<char> read_bytes(istream& in) {
    vector<char> v(read_u64(in));
    in.read(v.data(), std::streamsize(v.size()));
    if (!in) throw Error("truncated byte block");
    return v;
}

void write_graph(ostream& out, const Graph& g) {
    write_u64(out, g.vertex_count());
    uint64_t slots = 0;
    for (Vertex u = 0; u < g.vertex_count(); ++u)
        for (const auto& e : g.neighbors(u))
            if (e.to > u) ++slots;
    write_u64(out, slots);
    for (Vertex u = 0; u < g.vertex_count(); ++u)
        for (const auto& e : g.neighbors(u))
            if (e.to > u) {
                write_u32(out, u);
                write_u32(out, e.to);
                write_u64(out, e.w);
            }
}

Graph read_graph(istream& in) {
    uint64_t n = read_u64(in);
    Graph g(n);
    uint64_t slots = read_u64(in);
    for (uint64_t i = 0; i < slots; ++i) {
        Vertex u = read_u32(in), v = read_u32(in);
        Weight w = read_u64(in);
        if (w < kInf) {
            g.add_edge(u, v, w);
        } else {
            g.add_edge(u, v, 0); // open the slot...
            g.set_weight(u, v, kInf); // ...and mark it deleted
        }
    }
    return g;
}

} // namespace psp::io
