#include "psp/presets.hpp"

#include <string>

#include "psp/partition.hpp"

namespace psp {

std::string_view partition_scheme_name(PartitionScheme s) {
    switch (s) {
        case PartitionScheme::growing: return "growing";
        case PartitionScheme::hierarchical: return "hierarchical";
        case PartitionScheme::core_periphery: return "core-periphery";
    }
    throw Error("unknown partition scheme");
}

PartitionScheme partition_scheme_from(std::string_view name) {
    if (name == "growing") return PartitionScheme::growing;
    if (name == "hierarchical") return PartitionScheme::hierarchical;
    if (name == "core-periphery") return PartitionScheme::core_periphery;
    throw Error("unknown partition scheme: " + std::string(name));
}

std::string_view preset_label(PresetName n) {
    switch (n) {
        case PresetName::n_ch_p: return "n-ch-p";
        case PresetName::p_td_p: return "p-td-p";
        case PresetName::p_pt_cp: return "p-pt-cp";
        case PresetName::n_pc_cp: return "n-pc-cp";
        case PresetName::n_ts_hp: return "n-ts-hp";
        case PresetName::custom: return "custom";
    }
    throw Error("unknown preset");
}

PresetName preset_from(std::string_view label) {
    for (PresetName n : {PresetName::n_ch_p, PresetName::p_td_p,
                         PresetName::p_pt_cp, PresetName::n_pc_cp,
                         PresetName::n_ts_hp, PresetName::custom})
        if (label == preset_label(n)) return n;
    throw Error("unknown preset: " + std::string(label));
}

IndexDescriptor make_preset(PresetName name) {
    IndexDescriptor d;
    d.name = name;
    switch (name) {
        case PresetName::custom:
            break;
        case PresetName::n_ch_p:
            d.strategy = Strategy::no_boundary;
            d.scheme = PartitionScheme::growing;
            d.partition_engine = EngineKind::ch;
            d.overlay_engine = EngineKind::ch;
            break;
        case PresetName::p_td_p:
            d.strategy = Strategy::post_boundary;
            d.scheme = PartitionScheme::growing;
            d.partition_engine = EngineKind::td;
            d.overlay_engine = EngineKind::td;
            break;
        case PresetName::p_pt_cp:
            d.strategy = Strategy::post_boundary;
            d.scheme = PartitionScheme::core_periphery;
            d.partition_engine = EngineKind::td; // periphery trees
            d.overlay_engine = EngineKind::pll;  // hub labels over the core
            break;
        case PresetName::n_pc_cp:
            d.strategy = Strategy::no_boundary;
            d.scheme = PartitionScheme::core_periphery;
            d.partition_engine = EngineKind::ch;
            d.overlay_engine = EngineKind::pll;
            break;
        case PresetName::n_ts_hp:
            d.strategy = Strategy::no_boundary;
            d.scheme = PartitionScheme::hierarchical;
            d.partition_engine = EngineKind::dijkstra; // plain leaf searches
            d.overlay_engine = EngineKind::td;
            d.cache_partition_rows = true;
            d.stratified_overlay_order = true;
            break;
    }
    return d;
}

PartitionResult make_partition(const Graph& g, const IndexDescriptor& d,
                               std::uint64_t seed) {
    switch (d.scheme) {
        case PartitionScheme::growing:
            return partition_growing(g, d.k, seed);
        case PartitionScheme::hierarchical:
            return partition_hierarchical(g, d.fanout, d.tau, seed);
        case PartitionScheme::core_periphery:
            return core_tree_decompose(g, d.bandwidth);
    }
    throw Error("unknown partition scheme");
}

PSPIndex build_index(const Graph& g, const IndexDescriptor& d,
                     std::uint64_t seed) {
    const PartitionResult p = make_partition(g, d, seed);
    BuildOptions opt;
    opt.part_kind = d.partition_engine;
    opt.overlay_kind = d.overlay_engine;
    opt.prune = d.prune;
    opt.cache_partition_rows = d.cache_partition_rows;
    opt.threads = d.threads;
    std::vector<int> stratum;
    if (d.stratified_overlay_order && !p.boundary_level.empty()) {
        // deeper separators are more local: contract them first so the top
        // of the order is the top of the separator hierarchy
        stratum.assign(p.n, 0);
        for (std::size_t v = 0; v < p.n; ++v)
            if (p.boundary_level[v] >= 0) stratum[v] = -p.boundary_level[v];
        opt.overlay_stratum = &stratum;
    }
    switch (d.strategy) {
        case Strategy::pre_boundary: return build_pre_boundary(g, p, opt);
        case Strategy::no_boundary: return build_no_boundary(g, p, opt);
        case Strategy::post_boundary: return build_post_boundary(g, p, opt);
    }
    throw Error("unknown strategy");
}

Weight index_query(const PSPIndex& idx, Vertex s, Vertex t) {
    return psp_query(idx, s, t);
}

UpdateOutcome index_update(PSPIndex& idx, const WeightUpdate& u) {
    return psp_update(idx, u);
}

} // namespace psp
