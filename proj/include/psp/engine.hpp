#pragma once
#include <iosfwd>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "psp/graph.hpp"
#include "psp/search.hpp"
#include "psp/workload.hpp"

namespace psp {

// Running operation counts, used by the index layer to attribute work.
struct EngineStats {
    std::uint64_t queries = 0;      // point queries (all_pairs adds C(n,2))
    std::uint64_t update_calls = 0; // apply() invocations
};

// Size/shape figures for reports.
struct IndexFootprint {
    std::uint64_t label_entries = 0;
    std::uint64_t shortcuts = 0;
    std::uint32_t tree_height = 0;
    std::uint32_t tree_width = 0;
};

// A point-to-point exact distance engine over an owned copy of one graph.
// Vertices are the local ids 0..n-1 of that graph. Queries are safe for
// concurrent readers; apply/clone require exclusive access.
class SPEngine {
public:
    virtual ~SPEngine() = default;

    // Exact distance; kInf when disconnected; throws Error when s or t is
    // not indexed.
    virtual Weight query(Vertex s, Vertex t) const = 0;

    // All pairwise distances among vs, row-major |vs| x |vs|.
    virtual std::vector<Weight> all_pairs(std::span<const Vertex> vs) const;

    // Distances s -> each target.
    virtual std::vector<Weight> one_to_many(Vertex s,
                                            std::span<const Vertex> targets) const;

    // Offset many-to-many minimum: min over all (a,da) x (b,db) of
    // da + query(a,b) + db, with saturating sums; entries with an infinite
    // offset are ignored. The base class evaluates pairwise; engines with a
    // cheaper combined search (virtual-endpoint variants) override it.
    virtual Weight multi_query(
        std::span<const std::pair<Vertex, Weight>> sources,
        std::span<const std::pair<Vertex, Weight>> targets) const;

    // Applies already-realized edge changes (same deltas the owning graph
    // saw) and repairs the structure.
    virtual void apply(std::span<const EdgeChange> changes) = 0;

    virtual std::unique_ptr<SPEngine> clone() const = 0;

    virtual std::string_view name() const = 0;
    virtual const Graph& graph() const = 0;
    virtual IndexFootprint footprint() const = 0;
    virtual void save(std::ostream& out) const = 0;

    const EngineStats& stats() const { return stats_; }

protected:
    mutable EngineStats stats_;
};

enum class EngineKind : std::uint8_t { dijkstra, ch, td, pll, table };

std::string_view engine_kind_name(EngineKind k);
EngineKind engine_kind_from(std::string_view name); // throws Error on unknown

struct EngineOptions {
    OrderScheme order = OrderScheme::mde;
    // overrides `order` when set (rank source for ch/td/pll)
    const VertexOrder* custom_order = nullptr;
    // pll: rebuild labels from scratch on weight increases instead of the
    // incremental repair (same answers, different cost profile)
    bool pll_rebuild_on_increase = false;
};

std::unique_ptr<SPEngine> make_engine(EngineKind kind, const Graph& g,
                                      const EngineOptions& opt = {});

// Reads back an engine written by save().
std::unique_ptr<SPEngine> load_engine(std::istream& in);

} // namespace psp
