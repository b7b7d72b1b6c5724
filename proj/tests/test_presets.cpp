// The five stock index recipes and the descriptor plumbing around them.
#include <string>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "psp/presets.hpp"

using namespace psp;

namespace {

constexpr PresetName kStock[] = {PresetName::n_ch_p, PresetName::p_td_p,
                                 PresetName::p_pt_cp, PresetName::n_pc_cp,
                                 PresetName::n_ts_hp};

// Shrinks a stock recipe's partition parameters to fit a small fixture.
IndexDescriptor small(PresetName name, int k, std::size_t bandwidth,
                      std::size_t tau) {
    IndexDescriptor d = make_preset(name);
    d.k = k;
    d.bandwidth = bandwidth;
    d.tau = tau;
    d.fanout = 2;
    return d;
}

void expect_exact(const PSPIndex& idx, std::size_t stride = 1) {
    const std::size_t n = idx.g.vertex_count();
    for (std::size_t s = 0; s < n; s += stride) {
        const auto row = fix::bellman_ford(idx.g, Vertex(s));
        for (std::size_t t = 0; t < n; ++t)
            REQUIRE(index_query(idx, Vertex(s), Vertex(t)) == row[t]);
    }
}

} // namespace

TEST_CASE("stock recipes expand to their published tuples") {
    const auto a = make_preset(PresetName::n_ch_p);
    CHECK(a.strategy == Strategy::no_boundary);
    CHECK(a.scheme == PartitionScheme::growing);
    CHECK(a.partition_engine == EngineKind::ch);
    CHECK(a.overlay_engine == EngineKind::ch);

    const auto b = make_preset(PresetName::p_td_p);
    CHECK(b.strategy == Strategy::post_boundary);
    CHECK(b.scheme == PartitionScheme::growing);
    CHECK(b.partition_engine == EngineKind::td);
    CHECK(b.overlay_engine == EngineKind::td);

    const auto c = make_preset(PresetName::p_pt_cp);
    CHECK(c.strategy == Strategy::post_boundary);
    CHECK(c.scheme == PartitionScheme::core_periphery);
    CHECK(c.partition_engine == EngineKind::td);
    CHECK(c.overlay_engine == EngineKind::pll);

    const auto d = make_preset(PresetName::n_pc_cp);
    CHECK(d.strategy == Strategy::no_boundary);
    CHECK(d.scheme == PartitionScheme::core_periphery);
    CHECK(d.partition_engine == EngineKind::ch);
    CHECK(d.overlay_engine == EngineKind::pll);

    const auto e = make_preset(PresetName::n_ts_hp);
    CHECK(e.strategy == Strategy::no_boundary);
    CHECK(e.scheme == PartitionScheme::hierarchical);
    CHECK(e.partition_engine == EngineKind::dijkstra);
    CHECK(e.overlay_engine == EngineKind::td);
    CHECK(e.cache_partition_rows);
    CHECK(e.stratified_overlay_order);

    // shared defaults
    for (PresetName n : kStock) {
        const auto p = make_preset(n);
        CHECK(p.name == n);
        CHECK(p.k == 32);
        CHECK(p.bandwidth == 40);
        CHECK(p.fanout == 4);
        CHECK(p.tau == 128);
        CHECK(!p.prune);
    }
}

TEST_CASE("preset labels round-trip and reject strangers") {
    for (PresetName n : kStock) CHECK(preset_from(preset_label(n)) == n);
    CHECK(preset_from("custom") == PresetName::custom);
    CHECK(preset_label(PresetName::n_ch_p) == "n-ch-p");
    CHECK_THROWS_AS((void)preset_from("x-yz-q"), Error);
    CHECK(partition_scheme_from("core-periphery") ==
          PartitionScheme::core_periphery);
    CHECK(partition_scheme_name(PartitionScheme::hierarchical) ==
          "hierarchical");
    CHECK_THROWS_AS((void)partition_scheme_from("mosaic"), Error);
}

TEST_CASE("two-block path yields a one-edge overlay") {
    const Graph g = fix::path_graph(4);
    IndexDescriptor d = make_preset(PresetName::n_ch_p);
    d.k = 2;
    const auto idx = build_index(g, d, 1);
    CHECK(idx.overlay.graph.edges().size() == 1);
    REQUIRE(idx.parts.size() == 2);
    for (const auto& e : idx.parts) {
        CHECK(e->name() == "ch");
        CHECK(e->graph().vertex_count() == 2);
        CHECK(e->footprint().label_entries <= 2);
    }
    expect_exact(idx);
}

TEST_CASE("every preset answers a small grid exactly") {
    const Graph g = fix::grid_graph(3, 3);
    for (PresetName n : kStock) {
        INFO("preset ", std::string(preset_label(n)));
        expect_exact(build_index(g, small(n, 2, 2, 4), 2));
    }
}

TEST_CASE("presets stay exact before and after two hundred updates") {
    const Graph g = fix::random_connected_graph(220, 320, 77);
    const auto updates = generate_updates(g, 200, 5);
    for (PresetName n : kStock) {
        INFO("preset ", std::string(preset_label(n)));
        auto idx = build_index(g, make_preset(n), 19);
        expect_exact(idx, 17);
        for (const auto& u : updates)
            REQUIRE(index_update(idx, u) == UpdateOutcome::applied);
        expect_exact(idx, 17);
    }
}

TEST_CASE("a custom tuple mirrors its preset exactly") {
    const Graph g = fix::random_connected_graph(100, 150, 37);
    IndexDescriptor stock = make_preset(PresetName::p_td_p);
    stock.k = 6;
    IndexDescriptor twin = stock;
    twin.name = PresetName::custom;
    const auto a = build_index(g, stock, 11);
    const auto b = build_index(g, twin, 11);
    for (std::size_t s = 0; s < 100; s += 7)
        for (std::size_t t = 0; t < 100; ++t)
            REQUIRE(index_query(a, Vertex(s), Vertex(t)) ==
                    index_query(b, Vertex(s), Vertex(t)));
}

TEST_CASE("hierarchical recipe sweeps a 64-vertex grid through the levels") {
    const Graph g = fix::grid_graph(8, 8);
    const auto idx = build_index(g, small(PresetName::n_ts_hp, 0, 0, 16), 2);
    CHECK(idx.part.k == 4);
    CHECK(idx.tilde->name() == "td");
    for (const auto& e : idx.parts) CHECK(e->name() == "dijkstra");
    expect_exact(idx);
}

TEST_CASE("overlay-resident endpoints touch no partition labels") {
    const Graph g = fix::random_connected_graph(120, 170, 41);
    IndexDescriptor d = make_preset(PresetName::n_ch_p);
    d.k = 6;
    const auto idx = build_index(g, d, 3);
    // find two boundary vertices in different blocks
    Vertex a = kNoVertex, b = kNoVertex;
    for (Vertex v = 0; v < 120 && b == kNoVertex; ++v) {
        if (!idx.is_boundary(v)) continue;
        if (a == kNoVertex) a = v;
        else if (idx.part.part_of[v] != idx.part.part_of[a]) b = v;
    }
    REQUIRE(b != kNoVertex);
    const auto before = idx.counters;
    const Weight got = index_query(idx, a, b);
    CHECK(got == fix::bellman_ford(g, a)[b]);
    CHECK(idx.counters.partition_label_queries ==
          before.partition_label_queries);
    CHECK(idx.counters.overlay_label_queries ==
          before.overlay_label_queries + 1);
}

TEST_CASE("periphery pairs inside one tree match plain search") {
    const Graph g = fix::random_connected_graph(150, 200, 53);
    const auto idx = build_index(g, make_preset(PresetName::n_pc_cp), 0);
    REQUIRE(idx.part.core_periphery);
    int tree = -1; // the largest periphery tree
    for (int i = 0; i < idx.part.k; ++i)
        if (tree < 0 ||
            idx.part.members[i].size() > idx.part.members[tree].size())
            tree = i;
    REQUIRE(tree >= 0);
    REQUIRE(idx.part.members[tree].size() >= 2);
    const auto& m = idx.part.members[tree];
    for (std::size_t x = 0; x < m.size(); ++x) {
        const auto row = fix::bellman_ford(g, m[x]);
        for (std::size_t y = x + 1; y < m.size(); ++y)
            REQUIRE(index_query(idx, m[x], m[y]) == row[m[y]]);
    }
}
