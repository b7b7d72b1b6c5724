#pragma once
#include "psp/contraction.hpp"
#include "psp/engine.hpp"

namespace psp {

// Contraction-hierarchy engine: every vertex keeps shortcut pairs to
// higher-ranked partners (see Hierarchy); a query runs two upward searches
// that meet at a common high-ranked vertex.
class CHEngine final : public SPEngine {
public:
    CHEngine(const Graph& g, const EngineOptions& opt = {});

    Weight query(Vertex s, Vertex t) const override;
    std::vector<Weight> all_pairs(std::span<const Vertex> vs) const override;
    Weight multi_query(
        std::span<const std::pair<Vertex, Weight>> sources,
        std::span<const std::pair<Vertex, Weight>> targets) const override;
    void apply(std::span<const EdgeChange> changes) override;
    std::unique_ptr<SPEngine> clone() const override;
    std::string_view name() const override { return "ch"; }
    const Graph& graph() const override { return g_; }
    IndexFootprint footprint() const override;
    void save(std::ostream& out) const override;
    static std::unique_ptr<CHEngine> load(std::istream& in);

    const Hierarchy& hierarchy() const { return h_; }
    // pairs whose hierarchy weight moved in the latest apply()
    const std::vector<Hierarchy::PairChange>& last_changes() const { return last_; }

    // Exhaustive upward search from s: distance to every reachable vertex
    // along strictly rank-increasing pair chains. Sorted by vertex id.
    std::vector<std::pair<Vertex, Weight>> upward_search(Vertex s) const;

private:
    CHEngine() = default;

    Graph g_;
    Hierarchy h_;
    std::vector<Hierarchy::PairChange> last_;
};

} // namespace psp
