#pragma once
#include <unordered_map>

#include "psp/engine.hpp"

namespace psp {

// Plain-search engine: answers queries by running Dijkstra on its graph
// copy. all_pairs() keeps the per-source distance vectors, so later point
// queries that touch one of those sources are table lookups — the cheap
// boundary-to-partition cache used by the hierarchical preset's leaves.
class DijkstraEngine final : public SPEngine {
public:
    explicit DijkstraEngine(const Graph& g) : g_(g) {}

    Weight query(Vertex s, Vertex t) const override;
    std::vector<Weight> all_pairs(std::span<const Vertex> vs) const override;
    std::vector<Weight> one_to_many(Vertex s,
                                    std::span<const Vertex> targets) const override;
    Weight multi_query(
        std::span<const std::pair<Vertex, Weight>> sources,
        std::span<const std::pair<Vertex, Weight>> targets) const override;
    void apply(std::span<const EdgeChange> changes) override;
    std::unique_ptr<SPEngine> clone() const override;
    std::string_view name() const override { return "dijkstra"; }
    const Graph& graph() const override { return g_; }
    IndexFootprint footprint() const override;
    void save(std::ostream& out) const override;
    static std::unique_ptr<DijkstraEngine> load(std::istream& in);

    std::size_t cached_sources() const { return cache_.size(); }

private:
    const std::vector<Weight>* cached(Vertex s) const;

    Graph g_;
    mutable std::unordered_map<Vertex, std::vector<Weight>> cache_;
};

// Exact all-pairs distance table over an indexed vertex subset (defaults to
// every vertex), one Dijkstra per indexed vertex. Mutations rebuild the
// affected table rows outright.
class TableEngine final : public SPEngine {
public:
    explicit TableEngine(const Graph& g);
    TableEngine(const Graph& g, std::span<const Vertex> subset);

    Weight query(Vertex s, Vertex t) const override;
    std::vector<Weight> all_pairs(std::span<const Vertex> vs) const override;
    void apply(std::span<const EdgeChange> changes) override;
    std::unique_ptr<SPEngine> clone() const override;
    std::string_view name() const override { return "table"; }
    const Graph& graph() const override { return g_; }
    IndexFootprint footprint() const override;
    void save(std::ostream& out) const override;
    static std::unique_ptr<TableEngine> load(std::istream& in);

    const std::vector<Vertex>& subset() const { return subset_; }

private:
    TableEngine() = default;
    void rebuild();
    std::size_t pos(Vertex v) const; // throws Error when v is not indexed

    Graph g_;
    std::vector<Vertex> subset_;
    std::vector<std::uint32_t> pos_of_; // kNoPos when not indexed
    std::vector<Weight> table_;         // |subset| x |subset|, row-major
};

} // namespace psp
