#pragma once
#include <span>
#include <vector>

#include "psp/graph.hpp"

namespace psp {

// Single-source shortest distances over live edges; kInf where unreachable.
// This is the reference answer that every index structure is checked against.
std::vector<Weight> dijkstra(const Graph& g, Vertex s);

// Point-to-point distance (early exit once t settles).
Weight dijkstra_distance(const Graph& g, Vertex s, Vertex t);

// Reusable scratch for repeated searches on one graph size.
struct SearchBuffer {
    std::vector<Weight> dist;
    std::vector<std::uint32_t> stamp;
    std::uint32_t cur = 0;

    void reset(std::size_t n);
    bool seen(Vertex v) const { return stamp[v] == cur; }
    Weight get(Vertex v) const { return stamp[v] == cur ? dist[v] : kInf; }
    void set(Vertex v, Weight w) { stamp[v] = cur; dist[v] = w; }
};

// Full search that stops early once every target is settled. Distances for
// non-target vertices are whatever the search reached before stopping; the
// targets' entries are exact. Results read through buf.get().
void dijkstra_targets(const Graph& g, Vertex s, std::span<const Vertex> targets,
                      SearchBuffer& buf);

// Bidirectional variant: two opposing searches with per-direction stop flags
// raised once a popped distance exceeds the best meeting value; terminates
// when both flags are up or one flag is up and the other queue is empty.
// Agrees with dijkstra() on every pair.
Weight bidirectional_search(const Graph& g, Vertex s, Vertex t);

// ---- contraction / elimination orders ----------------------------------

enum class OrderScheme : std::uint8_t {
    mde,            // minimum degree elimination (simulated fill-in)
    degree,         // static degree, ascending
    boundary_first, // internal vertices by mde, boundary vertices ranked highest
};

struct VertexOrder {
    std::vector<Vertex> by_rank;         // by_rank[r] = vertex with rank r
    std::vector<std::uint32_t> rank_of;  // inverse

    std::size_t size() const { return by_rank.size(); }
};

// is_boundary is required for boundary_first and ignored otherwise.
// Deterministic: ties break toward the lowest vertex id.
VertexOrder build_order(const Graph& g, OrderScheme scheme,
                        const std::vector<char>* is_boundary = nullptr);

// Generalized stratified MDE: vertices of a lower stratum are exhausted
// (contracted) before any vertex of a higher stratum; mde with lowest-id
// ties within a stratum. boundary_first is the two-strata special case.
VertexOrder build_order_stratified(const Graph& g, const std::vector<int>& stratum);

} // namespace psp
