#pragma once
#include "psp/contraction.hpp"
#include "psp/engine.hpp"

namespace psp {

// Tree-decomposition engine. The contraction core's pair sets arrange the
// vertices into a forest: parent(v) = lowest-ranked member of U(v). Every
// vertex stores distances to each of its tree ancestors; a query meets at
// the separator X(lca) and takes the best ancestor rendezvous. Disconnected
// components form separate trees and queries across them answer kInf.
class TDEngine final : public SPEngine {
public:
    TDEngine(const Graph& g, const EngineOptions& opt = {});

    Weight query(Vertex s, Vertex t) const override;
    void apply(std::span<const EdgeChange> changes) override;
    std::unique_ptr<SPEngine> clone() const override;
    std::string_view name() const override { return "td"; }
    const Graph& graph() const override { return g_; }
    IndexFootprint footprint() const override;
    void save(std::ostream& out) const override;
    static std::unique_ptr<TDEngine> load(std::istream& in);

    // tree ancestor at depth d of v (for tests); kNoVertex above the root
    Vertex ancestor_at(Vertex v, std::uint32_t d) const;
    std::uint32_t depth(Vertex v) const { return depth_[v]; }
    Vertex parent(Vertex v) const { return parent_[v]; }
    const Hierarchy& hierarchy() const { return h_; }

private:
    TDEngine() = default;
    void rebuild_structure();                    // parents, depths, LCA, arrays
    void recompute_array(Vertex v);              // one vertex's ancestor array
    bool refresh_subtrees(const std::vector<Vertex>& dirty); // top-down repair
    Vertex lca(Vertex s, Vertex t) const;

    Graph g_;
    Hierarchy h_;

    std::vector<Vertex> parent_;            // kNoVertex for roots
    std::vector<std::uint32_t> depth_;      // root = 0
    std::vector<std::vector<Vertex>> kids_;
    std::vector<std::vector<Vertex>> anc_;   // root..v inclusive, anc_[v][d]
    std::vector<std::vector<Weight>> dis_;   // dis_[v][d] = d(v, anc_[v][d])

    // Euler tour + sparse-table range-minimum for LCA; a virtual super-root
    // (id = n) stitches the forest together
    std::vector<std::uint32_t> first_;
    std::vector<std::vector<std::pair<std::uint32_t, Vertex>>> rmq_;
};

} // namespace psp
