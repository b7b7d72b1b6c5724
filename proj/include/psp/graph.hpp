#pragma once
#include <iosfwd>
#include <optional>
#include <vector>

#include "psp/types.hpp"

namespace psp {

struct Edge {
    Vertex to;
    Weight w;
};

// Undirected weighted graph. Parallel edges and opposite-direction arcs
// collapse to the minimum weight on insertion; self-loops are rejected.
// A deleted edge keeps its adjacency slot with weight kInf so that
// delete/re-insert round-trips do not reshuffle anything.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : adj_(n) {}

    std::size_t vertex_count() const { return adj_.size(); }
    // Live (weight < kInf) edges only.
    std::size_t edge_count() const { return live_edges_; }

    Vertex add_vertex();

    // Inserts or min-merges. Returns the resulting stored weight.
    Weight add_edge(Vertex u, Vertex v, Weight w);

    // Overwrites the weight of an existing adjacency slot (kInf = delete,
    // finite = insert/change). Throws ContractError if no slot exists.
    void set_weight(Vertex u, Vertex v, Weight w);

    // kInf when absent or deleted.
    Weight weight(Vertex u, Vertex v) const;
    bool has_edge(Vertex u, Vertex v) const { return weight(u, v) < kInf; }
    bool has_slot(Vertex u, Vertex v) const;

    const std::vector<Edge>& neighbors(Vertex u) const { return adj_[u]; }

    // Live degree (deleted slots not counted).
    std::size_t degree(Vertex u) const;

    // Canonical live-edge list, u < v, sorted.
    struct EdgeRef { Vertex u, v; Weight w; };
    std::vector<EdgeRef> edges() const;

    bool operator==(const Graph& o) const;

    void check_vertex(Vertex u) const;

private:
    std::vector<std::vector<Edge>> adj_;
    std::size_t live_edges_ = 0;
};

// ---- file formats -----------------------------------------------------

enum class GraphFormat { dimacs, edge_list };

// DIMACS: "c" comments, "p sp <n> <m>" header, "a <u> <v> <w>" arcs (1-based).
// Edge list: "<n> <m>" header line, then "<u> <v> <w>" per line (0-based).
// Throws ParseError with the offending line number.
Graph parse_graph(std::istream& in, GraphFormat format);
Graph load_graph(const std::string& path, GraphFormat format);

// Writes the canonical edge list of g in the requested format; parsing the
// output yields a graph equal to g.
void serialize_graph(const Graph& g, std::ostream& out, GraphFormat format);

// DIMACS .co coordinate file: "v <id> <x> <y>" (1-based ids).
struct Coordinates {
    std::vector<std::int64_t> x, y;
};
Coordinates parse_coordinates(std::istream& in, std::size_t n);

} // namespace psp
