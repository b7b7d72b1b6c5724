#pragma once
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "psp/graph.hpp"

namespace psp {

// One node of the recursive partition tree (hierarchical partitioner only).
struct PartitionTreeNode {
    int parent = -1; // -1 at the root
    std::uint32_t depth = 0;
    std::vector<int> children;
    int leaf_part = -1; // partition id when this node is a leaf
};

// A vertex partition of one graph, frozen at construction time: boundary
// sets, inter-edges, and (when applicable) the partition tree or the
// core/periphery split are all recorded here and never recomputed behind
// the caller's back.
struct PartitionResult {
    std::size_t n = 0;
    int k = 0;
    // partition id per vertex; -1 marks core vertices of a core-periphery
    // decomposition (they belong to the overlay, not to any partition)
    std::vector<int> part_of;
    std::vector<std::vector<Vertex>> members;  // per partition, sorted
    std::vector<char> is_boundary;             // per vertex
    std::vector<std::vector<Vertex>> boundary; // per partition, sorted
    // live edges crossing partitions (u < v); empty for core-periphery
    std::vector<Graph::EdgeRef> inter_edges;

    // hierarchical partitioner only
    std::vector<PartitionTreeNode> tree; // node 0 = root when non-empty
    std::vector<int> leaf_node;          // partition id -> tree node index
    // per vertex: depth of the shallowest tree node separating it from a
    // cross-partition neighbor; -1 for non-boundary vertices or flat results
    std::vector<int> boundary_level;

    // core-periphery decomposition only
    bool core_periphery = false;
    std::vector<char> in_core;
    // final-state edges among core vertices (original + contraction shortcuts)
    std::vector<Graph::EdgeRef> core_edges;
    // per partition: periphery-tree edges (member -> its recorded neighbor
    // set at contraction time, weights as of that moment)
    std::vector<std::vector<Graph::EdgeRef>> tree_edges;
};

// Per-vertex split of boundary vertices: half-connected vertices have at
// least one same-partition neighbor that is not itself a boundary vertex;
// the rest are full-connected.
struct BoundaryClass {
    std::size_t n = 0;
    std::vector<char> half; // meaningful where is_boundary holds
};

// The boundary-level graph: vertex set = all boundary vertices, edges =
// per-partition boundary shortcuts plus the inter-edges, kept as a local-id
// graph with its translation. `part_pairs` lists, per partition, exactly the
// shortcut pairs present (global ids, a < b), with a flag telling whether
// the pair is a clique shortcut (weight tracks partition distances) or only
// a retained raw adjacency edge.
struct OverlayGraph {
    struct Pair {
        Vertex a, b; // global ids, a < b
        bool clique;
    };
    std::vector<Vertex> vertices;        // sorted global ids of B
    std::vector<std::uint32_t> pos_of;   // global -> local, kNoPos elsewhere
    Graph graph{0};                      // local ids
    bool pruned = false;
    std::vector<std::vector<Pair>> part_pairs; // per partition, sorted

    static constexpr std::uint32_t kNoPos = ~std::uint32_t(0);
    std::uint32_t pos(Vertex global) const; // throws ContractError if absent
};

// Aggregate partition quality figures.
struct PartitionMetrics {
    std::uint64_t total_boundary = 0;   // sum of |B_i|
    double avg_boundary = 0.0;          // |B_i| mean
    double connectivity_ratio = 1.0;    // mean per-partition component count
    std::vector<std::uint32_t> component_counts; // per partition
};

// ---- partitioners ---------------------------------------------------------

// Region-growing partitioner: k seeds spread farthest-point-first from a
// seeded random start, then k concurrent best-first growths claim unclaimed
// vertices in lockstep (one claim per region per round, ties to the lower
// vertex id, sizes capped at ceil(2n/k)); unreached components join the
// smallest region. One re-centering iteration (seed := approximate
// unweighted center of its region) regrows and that result is returned.
// Deterministic for a fixed seed. Throws ContractError unless 2 <= k <= n.
PartitionResult partition_growing(const Graph& g, int k, std::uint64_t seed);

// Reads one partition id per line (exactly n lines). Ids with gaps are
// densified; when that happens and `warning` is non-null it receives a
// note. Throws ParseError on malformed input.
PartitionResult ingest_partition_file(const Graph& g, std::istream& in,
                                      std::string* warning = nullptr);

// Recursive f-way growing until every leaf holds at most `tau` vertices.
// The leaf-level assignment doubles as a flat partition; the node tree and
// per-boundary-vertex levels are recorded for hierarchy-aware callers.
PartitionResult partition_hierarchical(const Graph& g, int fanout,
                                       std::size_t tau, std::uint64_t seed);

// Min-degree contraction until no remaining vertex has current degree in
// [1, bandwidth]. Contracted vertices form periphery trees (each vertex
// stores its neighbor set at contraction time); survivors form the core.
// Each tree's boundary is its interface into the core. Degree-0 vertices
// are never contracted. Throws ContractError when bandwidth < 1.
PartitionResult core_tree_decompose(const Graph& g, std::size_t bandwidth);

// ---- derived structures -----------------------------------------------------

// Exact half/full-connected split. Edge-cut partitions only.
BoundaryClass classify_boundaries(const Graph& g, const PartitionResult& p);

// The canonical pair enumeration for partition i: all boundary pairs
// (a, b), a < b, in sorted order. Shortcut-weight vectors follow this order.
std::vector<std::pair<Vertex, Vertex>> boundary_pairs(const PartitionResult& p,
                                                      int i);

// Assembles the unpruned overlay: every partition's boundary clique (weights
// supplied per boundary_pairs order; kInf entries mean "no edge") plus the
// inter-edges, min-merged where both meet. Throws ContractError when a
// partition's weight vector does not cover its pairs exactly.
OverlayGraph build_overlay(const PartitionResult& p,
                           const std::vector<std::vector<Weight>>& shortcut_weights);

// Drops the clique pairs that both end at full-connected vertices, keeping
// the half-half clique pairs plus raw same-partition adjacency incident to
// a full-connected boundary vertex. Boundary-to-boundary distances are
// preserved exactly. Throws ContractError on size mismatches or on
// core-periphery results (their overlay is already minimal).
OverlayGraph prune_overlay(const OverlayGraph& o, const BoundaryClass& c,
                           const Graph& g, const PartitionResult& p);

// ---- vertex-cut conversion ---------------------------------------------------

// One cut vertex: its copies, each taking a disjoint group of the original
// neighbors and a partition id. Copy 0 keeps the original vertex id; later
// copies get fresh ids n, n+1, ... and a zero-weight tie to copy 0.
struct VertexCut {
    Vertex v;
    struct Copy {
        std::vector<Vertex> neighbors;
        int part;
    };
    std::vector<Copy> copies;
};

// Rewires each cut vertex into its copies (distances are preserved by the
// zero-weight ties) and returns the transformed graph plus the edge-cut
// partition induced by `base_part` (per original vertex) and the copies'
// ids. Throws ContractError when a live neighbor is not covered by exactly
// one copy.
std::pair<Graph, PartitionResult> convert_vertex_cut(
    const Graph& g, const std::vector<VertexCut>& cuts,
    const std::vector<int>& base_part);

// ---- reporting -----------------------------------------------------------------

// |B|, mean |B_i|, connectivity ratio, per-partition component counts
// (intra-edges only; periphery trees use their recorded tree edges).
PartitionMetrics partition_metrics(const Graph& g, const PartitionResult& p);

} // namespace psp
