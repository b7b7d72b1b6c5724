#pragma once
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "psp/engine.hpp"
#include "psp/graph.hpp"
#include "psp/partition.hpp"
#include "psp/workload.hpp"

namespace psp {

// How the partitioned index obtains globally-correct boundary information:
//   pre_boundary  — boundary all-pair distances are computed up front by
//                   full-graph searches and baked into each partition copy.
//   no_boundary   — partition indexes stay local; the overlay alone lifts
//                   local boundary-pair weights to global distances.
//   post_boundary — built on top of no_boundary: overlay answers are folded
//                   back into repaired partition copies, and both the local
//                   and the repaired index families are kept.
enum class Strategy : std::uint8_t { pre_boundary, no_boundary, post_boundary };

std::string_view strategy_name(Strategy s);
Strategy strategy_from(std::string_view name); // throws Error on unknown

// Work attribution across one index's lifetime. Query counters tally point
// evaluations; a batched many-to-many probe counts as one overlay query.
struct IndexCounters {
    std::uint64_t full_graph_dijkstra = 0;   // searches over the whole graph
    std::uint64_t partition_label_queries = 0;
    std::uint64_t overlay_label_queries = 0;
    std::uint64_t partition_engine_updates = 0; // non-empty apply() calls, L and L'
    std::uint64_t overlay_engine_updates = 0;   // non-empty apply() calls on L~
    std::uint64_t boundary_rechecks = 0;        // per-partition pair recomputations
};

// Outcome of a structural change: absorbed in place, or the partition itself
// is invalidated and the caller must re-partition and rebuild.
enum class UpdateOutcome : std::uint8_t { applied, rebuild_required };

// A partitioned shortest-path index: one engine per partition, one engine
// over the boundary overlay, and (post-boundary only) a repaired engine per
// partition. Engine graphs are the live state: each engine owns a copy of
// its subgraph which apply() keeps current; `overlay.graph` and the vectors
// inside `part` are build-time snapshots used for id mapping only.
struct PSPIndex {
    Strategy strategy = Strategy::no_boundary;
    EngineKind part_kind = EngineKind::ch;
    EngineKind overlay_kind = EngineKind::ch;
    bool pruned = false;

    Graph g;              // current full graph, mutated by updates
    PartitionResult part;
    BoundaryClass cls;    // meaningful only when pruned
    OverlayGraph overlay; // vertex/pair mapping; weights live in tilde

    // Sorted local vertex list per partition; engine vertex i of partition p
    // is local_verts[p][i]. For edge-cut partitions this equals members[p];
    // for core-periphery it is members[p] plus the tree's core attachments.
    std::vector<std::vector<Vertex>> local_verts;

    std::vector<std::unique_ptr<SPEngine>> parts;    // {L_i}
    std::vector<std::unique_ptr<SPEngine>> repaired; // {L'_i}, post-boundary
    std::unique_ptr<SPEngine> tilde;                 // overlay index

    // Current per-partition contribution for every overlay clique pair,
    // aligned with overlay.part_pairs. Pre-boundary stores global distances,
    // the other strategies local ones. Needed because a core-periphery
    // overlay slot is the minimum over several partitions' contributions.
    std::vector<std::vector<Weight>> pair_w;

    mutable IndexCounters counters;

    // Local engine id of v inside partition i; throws ContractError when v
    // is not carried by that partition.
    Vertex local_of(int i, Vertex v) const;

    // Partition that answers point queries about v: part_of[v], or -1 when v
    // lives on the overlay itself (core vertices of a core-periphery split).
    int home_of(Vertex v) const;

    bool is_boundary(Vertex v) const { return part.is_boundary[v] != 0; }
};

struct BuildOptions {
    EngineKind part_kind = EngineKind::ch;
    EngineKind overlay_kind = EngineKind::ch;
    bool prune = false;
    // overrides the overlay engine's contraction order
    const VertexOrder* overlay_order = nullptr;
    // per-global-vertex stratum for the overlay contraction order: lower
    // strata contract first, min-degree breaks ties inside a stratum.
    // Ignored when overlay_order is set.
    const std::vector<int>* overlay_stratum = nullptr;
    // pre-warm plain-search partition engines with per-boundary rows
    bool cache_partition_rows = false;
    // worker threads for the per-partition engine builds (the independent
    // step); everything else stays sequential so counters and results are
    // identical for any value. <= 1 means fully sequential.
    int threads = 1;
};

// Construction. All three accept edge-cut and core-periphery partitions;
// pruning requires an edge-cut partition (ContractError otherwise).
PSPIndex build_pre_boundary(const Graph& g, const PartitionResult& p,
                            const BuildOptions& opt = {});
PSPIndex build_no_boundary(const Graph& g, const PartitionResult& p,
                           const BuildOptions& opt = {});
PSPIndex build_post_boundary(const Graph& g, const PartitionResult& p,
                             const BuildOptions& opt = {});

// Exact distance between any two vertices. Throws ContractError on an
// out-of-range vertex.
Weight psp_query(const PSPIndex& idx, Vertex s, Vertex t);

// Weight maintenance for an existing edge (kind decrease or increase;
// anything else is a ContractError). Each routine requires the matching
// strategy on idx.
void update_pre_boundary(PSPIndex& idx, const WeightUpdate& u);
void update_no_boundary(PSPIndex& idx, const WeightUpdate& u);
void update_post_boundary(PSPIndex& idx, const WeightUpdate& u);

// Dispatches on idx.strategy and update kind (weight kinds to the update_*
// routines, structural kinds to structural_update).
UpdateOutcome psp_update(PSPIndex& idx, const WeightUpdate& u);

// One maintenance pass for a whole batch: conflicting updates to one edge
// resolve last-wins, engines receive one batched apply per partition, and
// boundary pairs are re-checked at most once per partition. If any member
// would require a rebuild the index and graph are left untouched.
UpdateOutcome batch_update(PSPIndex& idx, std::span<const WeightUpdate> us);

// Edge insertion/deletion and vertex operations. Absorbable cases: an edge
// inside one partition (for pruned overlays only when no brand-new slot
// touches a boundary vertex classified full), an edge between two overlay
// vertices, and vertex_erase (expands to per-edge deletions). A new edge
// whose endpoints fall in different partitions with a non-boundary end, or
// a vertex insertion, invalidates the partition: rebuild_required is
// returned and nothing — including idx.g — is modified.
UpdateOutcome structural_update(PSPIndex& idx, const WeightUpdate& u);

// Whole-index binary round trip: graph, partition, overlay, every engine,
// and the work counters. load_index validates the leading format tag and
// throws Error on a malformed stream.
void save_index(std::ostream& out, const PSPIndex& idx);
PSPIndex load_index(std::istream& in);

} // namespace psp
