#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "psp/search.hpp"

using namespace psp;

TEST_CASE("dijkstra on hand-checked fixtures") {
    SUBCASE("path") {
        Graph g = fix::path_graph(4);
        auto d = dijkstra(g, 0);
        CHECK(d == std::vector<Weight>{0, 1, 2, 3});
    }
    SUBCASE("3x3 grid from a corner") {
        Graph g = fix::grid_graph(3, 3);
        auto d = dijkstra(g, 0);
        CHECK(d == std::vector<Weight>{0, 1, 2, 1, 2, 3, 2, 3, 4});
    }
    SUBCASE("weighted detour beats direct edge") {
        Graph g(3);
        g.add_edge(0, 2, 10);
        g.add_edge(0, 1, 3);
        g.add_edge(1, 2, 4);
        CHECK(dijkstra(g, 0)[2] == 7);
    }
    SUBCASE("disconnected pair is INF") {
        Graph g(3);
        g.add_edge(0, 1, 1);
        auto d = dijkstra(g, 0);
        CHECK(d[2] == kInf);
    }
    SUBCASE("s equals t") {
        Graph g = fix::path_graph(2);
        CHECK(dijkstra(g, 1)[1] == 0);
        CHECK(dijkstra_distance(g, 1, 1) == 0);
    }
}

TEST_CASE("dijkstra agrees with an independent relaxation oracle") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        Graph g = fix::random_connected_graph(120, 200, seed);
        // punch a hole so disconnection is exercised too
        if (seed == 3) {
            Graph h(125);
            for (const auto& e : g.edges()) h.add_edge(e.u, e.v, e.w);
            h.add_edge(121, 122, 4); // island
            g = h;
        }
        for (Vertex s : {Vertex(0), Vertex(7), Vertex(63)}) {
            auto fast = dijkstra(g, s);
            auto slow = fix::bellman_ford(g, s);
            CHECK(fast == slow);
        }
    }
}

TEST_CASE("dijkstra_distance early exit matches the full run") {
    Graph g = fix::random_connected_graph(90, 140, 9);
    auto d = dijkstra(g, 5);
    for (Vertex t = 0; t < g.vertex_count(); t += 7)
        CHECK(dijkstra_distance(g, 5, t) == d[t]);
}

TEST_CASE("targeted dijkstra settles exactly the requested targets") {
    Graph g = fix::random_connected_graph(150, 260, 17);
    SearchBuffer buf;
    std::vector<Vertex> targets{3, 88, 149, 42, 3}; // duplicate tolerated
    auto full = dijkstra(g, 11);
    dijkstra_targets(g, 11, targets, buf);
    for (Vertex t : targets) {
        REQUIRE(buf.seen(t));
        CHECK(buf.get(t) == full[t]);
    }
    // unreachable target terminates (no hang) and stays unseen or INF
    Graph h(4);
    h.add_edge(0, 1, 1);
    std::vector<Vertex> lone{3};
    dijkstra_targets(h, 0, lone, buf);
    CHECK((!buf.seen(3) || buf.get(3) >= kInf));
}

TEST_CASE("bidirectional search equals plain dijkstra") {
    SUBCASE("randoms") {
        Graph g = fix::random_connected_graph(100, 170, 23);
        auto queries = generate_queries(g, 60, 5);
        for (auto [s, t] : queries)
            CHECK(bidirectional_search(g, s, t) == dijkstra_distance(g, s, t));
    }
    SUBCASE("s equals t and disconnected") {
        Graph g(4);
        g.add_edge(0, 1, 2);
        CHECK(bidirectional_search(g, 1, 1) == 0);
        CHECK(bidirectional_search(g, 0, 3) == kInf);
        CHECK(bidirectional_search(g, 3, 0) == kInf);
    }
    SUBCASE("two equal routes around a 4-cycle") {
        Graph g(4);
        g.add_edge(0, 1, 1);
        g.add_edge(1, 2, 1);
        g.add_edge(2, 3, 1);
        g.add_edge(3, 0, 1);
        CHECK(bidirectional_search(g, 0, 2) == 2);
        CHECK(bidirectional_search(g, 1, 3) == 2);
    }
    SUBCASE("larger random sweep") {
        Graph g = fix::random_connected_graph(500, 900, 77, 1000);
        auto queries = generate_queries(g, 1000, 8);
        for (auto [s, t] : queries)
            CHECK(bidirectional_search(g, s, t) == dijkstra_distance(g, s, t));
    }
    SUBCASE("weighted grid") {
        Graph g = fix::grid_graph(6, 7, 3);
        for (Vertex s = 0; s < 42; s += 5)
            for (Vertex t = 1; t < 42; t += 6)
                CHECK(bidirectional_search(g, s, t) == dijkstra_distance(g, s, t));
    }
}

TEST_CASE("elimination orders") {
    SUBCASE("degree scheme ranks the star center highest") {
        Graph g = fix::star_graph(6);
        VertexOrder ord = build_order(g, OrderScheme::degree);
        CHECK(ord.rank_of[0] == 6); // last position = highest rank
        CHECK(ord.by_rank.back() == 0);
    }
    SUBCASE("minimum-degree elimination on a path, hand-traced") {
        Graph g = fix::path_graph(4);
        VertexOrder ord = build_order(g, OrderScheme::mde);
        // the lowest rank goes to a degree-1 endpoint...
        CHECK(g.degree(ord.by_rank[0]) == 1);
        // ...and with lowest-id ties the full trace is forced: contracting 0
        // makes 1 an endpoint, so elimination walks straight down the path
        CHECK(ord.by_rank == std::vector<Vertex>{0, 1, 2, 3});
    }
    SUBCASE("boundary-first on a split path ranks the cut pair highest") {
        Graph g = fix::path_graph(4);
        std::vector<char> is_b{0, 1, 1, 0}; // split [0,0,1,1] -> cut edge (1,2)
        VertexOrder ord = build_order(g, OrderScheme::boundary_first, &is_b);
        CHECK(ord.rank_of[1] >= 2);
        CHECK(ord.rank_of[2] >= 2);
    }
    SUBCASE("orders are permutations and mutually inverse") {
        Graph g = fix::random_connected_graph(80, 120, 31);
        for (OrderScheme sch : {OrderScheme::mde, OrderScheme::degree}) {
            VertexOrder ord = build_order(g, sch);
            REQUIRE(ord.size() == g.vertex_count());
            std::vector<char> hit(ord.size(), 0);
            for (std::size_t r = 0; r < ord.size(); ++r) {
                Vertex v = ord.by_rank[r];
                CHECK(ord.rank_of[v] == r);
                CHECK(!hit[v]);
                hit[v] = 1;
            }
        }
    }
    SUBCASE("boundary-first puts every non-boundary vertex below every boundary one") {
        Graph g = fix::grid_graph(4, 4);
        std::vector<char> is_b(16, 0);
        is_b[3] = is_b[7] = is_b[12] = 1;
        VertexOrder ord = build_order(g, OrderScheme::boundary_first, &is_b);
        for (Vertex v = 0; v < 16; ++v)
            for (Vertex b : {Vertex(3), Vertex(7), Vertex(12)})
                if (!is_b[v]) CHECK(ord.rank_of[v] < ord.rank_of[b]);
        CHECK_THROWS_AS(build_order(g, OrderScheme::boundary_first), ContractError);
    }
    SUBCASE("stratified order exhausts lower strata first") {
        Graph g = fix::grid_graph(3, 3);
        std::vector<int> strat{0, 0, 1, 0, 1, 2, 0, 2, 2};
        VertexOrder ord = build_order_stratified(g, strat);
        for (Vertex a = 0; a < 9; ++a)
            for (Vertex b = 0; b < 9; ++b)
                if (strat[a] < strat[b]) CHECK(ord.rank_of[a] < ord.rank_of[b]);
    }
}
