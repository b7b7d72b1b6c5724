#pragma once
#include <string_view>

#include "psp/strategy.hpp"

namespace psp {

// How the graph is split before indexing.
enum class PartitionScheme : std::uint8_t {
    growing,       // k region-growing blocks (edge cut)
    hierarchical,  // recursive f-way growing down to tau-sized leaves
    core_periphery // contraction peels trees off, the dense core remains
};

std::string_view partition_scheme_name(PartitionScheme s);
PartitionScheme partition_scheme_from(std::string_view name); // throws Error

// A named index recipe over the strategy / partition / engine axes. The five
// stock recipes cover the design-space corners; `custom` is a free choice.
enum class PresetName : std::uint8_t {
    n_ch_p,  // local build, growing blocks, contraction engines throughout
    p_td_p,  // deferred repair, growing blocks, tree engines throughout
    p_pt_cp, // deferred repair, core-periphery, hub labels over the core
    n_pc_cp, // local build, core-periphery, hub labels over the core
    n_ts_hp, // local build, hierarchical leaves with cached boundary rows,
             // tree overlay ordered by separator depth
    custom
};

std::string_view preset_label(PresetName n); // "n-ch-p", ..., "custom"
PresetName preset_from(std::string_view label); // throws Error on unknown

struct IndexDescriptor {
    PresetName name = PresetName::custom;
    Strategy strategy = Strategy::no_boundary;
    PartitionScheme scheme = PartitionScheme::growing;
    int k = 32;                 // growing: number of blocks
    std::size_t bandwidth = 40; // core_periphery: contraction width
    int fanout = 4;             // hierarchical: children per split
    std::size_t tau = 128;      // hierarchical: maximum leaf size
    EngineKind partition_engine = EngineKind::ch;
    EngineKind overlay_engine = EngineKind::ch;
    bool prune = false;
    // plain-search leaves keep their boundary distance rows warm
    bool cache_partition_rows = false;
    // overlay contraction order follows the separator hierarchy: vertices cut
    // at deeper levels contract first, top separators end up on top
    bool stratified_overlay_order = false;
    // worker threads for the per-partition engine builds; results are
    // identical for any value (execution knob, not part of the recipe)
    int threads = 1;
};

// The exact stock recipe behind a preset name (custom = all defaults).
IndexDescriptor make_preset(PresetName name);

// Just the partitioning step of build_index, for callers that want to
// inspect the split without paying for the engines.
PartitionResult make_partition(const Graph& g, const IndexDescriptor& d,
                               std::uint64_t seed);

// Splits the graph per the descriptor and builds the index. The seed drives
// the partitioner; construction itself is deterministic.
PSPIndex build_index(const Graph& g, const IndexDescriptor& d,
                     std::uint64_t seed);

// Thin delegation to the strategy layer, so callers can stay at the
// descriptor level end to end.
Weight index_query(const PSPIndex& idx, Vertex s, Vertex t);
UpdateOutcome index_update(PSPIndex& idx, const WeightUpdate& u);

} // namespace psp
