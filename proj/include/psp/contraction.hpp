#pragma once
#include <span>
#include <vector>

#include "psp/graph.hpp"
#include "psp/search.hpp"
#include "psp/workload.hpp"

namespace psp {

// Contraction hierarchy core shared by the shortcut-based engines.
//
// Vertices carry a rank (elimination order). Every vertex v holds the pair
// set U(v): partners of strictly higher rank, each with
//   wh — the hierarchy weight: length of the shortest s-t path whose interior
//        vertices all rank below min(rank pair), i.e. the shortcut weight
//        produced by contracting everything under the pair; and
//   ow — the current raw graph-edge weight between the two (kInf if the pair
//        exists only as a shortcut).
//
// Two structural facts are maintained at all times:
//   weight law:  wh(a,b) = min( ow(a,b),
//                               min over v with a,b in U(v) of wh(v,a)+wh(v,b) )
//   closure:     a,b in U(v)  =>  the pair (a,b) exists.
//
// Updates repair the weight law by popping dirty pairs from a priority queue
// keyed by (rank of lower end, rank of higher end). A recomputed pair only
// dirties pairs whose lower rank is strictly larger, so every pair pops at
// most once and lower-keyed weights are final when read.
class Hierarchy {
public:
    struct UpEntry {
        Vertex to;
        Weight wh;
        Weight ow;
    };
    struct PairChange {
        Vertex lo, hi; // lo = lower-ranked endpoint
        Weight old_wh, new_wh;
    };

    static Hierarchy build(const Graph& g, VertexOrder order);

    const VertexOrder& order() const { return order_; }
    std::size_t vertex_count() const { return up_.size(); }

    // U(v), sorted by partner id. Entries with wh == kInf are dead pairs
    // (slot kept, consistent with the frozen pair set).
    const std::vector<UpEntry>& up(Vertex v) const { return up_[v]; }
    // vertices v with `of` in U(v)
    const std::vector<Vertex>& down(Vertex of) const { return down_[of]; }

    // Total number of pairs; `shortcuts` = pairs that are not graph edges.
    std::size_t pair_count() const { return pairs_; }

    // Hierarchy weight of pair (a,b) in either orientation; kInf when the
    // pair does not exist.
    Weight pair_weight(Vertex a, Vertex b) const;

    // Applies raw-edge deltas (new pairs are created on structural inserts,
    // with closure re-established) and repairs the weight law. Returns every
    // pair whose wh changed, old_wh == kInf for newly created pairs.
    std::vector<PairChange> update(std::span<const EdgeChange> changes);

private:
    UpEntry* find(Vertex lo, Vertex hi);
    const UpEntry* find(Vertex lo, Vertex hi) const;
    // inserts pair (lo,hi) if absent and recursively restores closure;
    // returns the entry
    UpEntry* ensure_pair(Vertex lo, Vertex hi,
                         std::vector<std::pair<Vertex, Vertex>>& created);

    VertexOrder order_;
    std::vector<std::vector<UpEntry>> up_;
    std::vector<std::vector<Vertex>> down_;
    std::size_t pairs_ = 0;
};

} // namespace psp
