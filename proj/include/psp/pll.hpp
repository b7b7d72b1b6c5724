#pragma once
#include "psp/engine.hpp"

namespace psp {

// Pruned-landmark 2-hop labeling engine. Every vertex holds a sorted list of
// (hub, distance) entries; the distance between s and t is the best
// rendezvous over their common hubs. Hubs are installed by pruned Dijkstra
// sweeps in decreasing rank order, so a hub always outranks the vertices
// holding it.
class PLLEngine final : public SPEngine {
public:
    PLLEngine(const Graph& g, const EngineOptions& opt = {});

    Weight query(Vertex s, Vertex t) const override;
    void apply(std::span<const EdgeChange> changes) override;
    std::unique_ptr<SPEngine> clone() const override;
    std::string_view name() const override { return "pll"; }
    const Graph& graph() const override { return g_; }
    IndexFootprint footprint() const override;
    void save(std::ostream& out) const override;
    static std::unique_ptr<PLLEngine> load(std::istream& in);

    struct LabelEntry {
        Vertex hub;
        Weight d;
    };
    const std::vector<LabelEntry>& labels(Vertex v) const { return labels_[v]; }
    bool rebuilds_on_increase() const { return rebuild_on_increase_; }

private:
    PLLEngine() = default;
    void build();
    // one canonical pruned sweep from hub h, labeling what it must
    void sweep(Vertex h);
    // resumed pruned sweep from h after a decrease landed on edge (u,v)
    void resume(Vertex h, Vertex u, Vertex v, Weight w);
    Weight label_query(Vertex s, Vertex t) const; // no stats, internal
    void add_label(Vertex v, Vertex hub, Weight d);
    // drop hub h's entries everywhere; holders + old values returned
    std::vector<LabelEntry> strip_hub(Vertex h);
    void repair_decrease(Vertex u, Vertex v, Weight w);
    void repair_increase(Vertex u, Vertex v, Weight old_w);

    Graph g_;
    VertexOrder order_;
    std::vector<std::vector<LabelEntry>> labels_; // sorted by hub id
    std::vector<std::vector<Vertex>> holders_;    // hub -> labeled vertices
    bool rebuild_on_increase_ = false;
};

} // namespace psp
