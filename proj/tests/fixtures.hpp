#pragma once
// Shared graph fixtures and independent oracles for the test suite.
#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "psp/graph.hpp"
#include "psp/types.hpp"
#include "psp/workload.hpp"

namespace fix {

using psp::Graph;
using psp::Vertex;
using psp::Weight;

// Path v0-v1-...-v(n-1), unit weights by default.
inline Graph path_graph(std::size_t n, Weight w = 1) {
    Graph g(n);
    for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1, w);
    return g;
}

// rows x cols grid, vertex r*cols+c, unit weights by default.
inline Graph grid_graph(std::size_t rows, std::size_t cols, Weight w = 1) {
    Graph g(rows * cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            Vertex v = Vertex(r * cols + c);
            if (c + 1 < cols) g.add_edge(v, v + 1, w);
            if (r + 1 < rows) g.add_edge(v, Vertex(v + cols), w);
        }
    return g;
}

// Star: center 0, leaves 1..n.
inline Graph star_graph(std::size_t leaves, Weight w = 1) {
    Graph g(leaves + 1);
    for (Vertex v = 1; v <= leaves; ++v) g.add_edge(0, v, w);
    return g;
}

// Triangle a=0,b=1,c=2 plus pendant p=3 attached to a.
inline Graph triangle_pendant() {
    Graph g(4);
    g.add_edge(0, 1, 1);
    g.add_edge(0, 2, 1);
    g.add_edge(1, 2, 1);
    g.add_edge(0, 3, 1);
    return g;
}

// Connected random graph: random spanning tree + `extra` random chords,
// weights in [1, wmax]. Deterministic under seed.
inline Graph random_connected_graph(std::size_t n, std::size_t extra,
                                    std::uint64_t seed, Weight wmax = 100) {
    psp::Rng rng(seed);
    Graph g(n);
    for (Vertex v = 1; v < n; ++v) {
        Vertex u = Vertex(rng.below(v)); // attach to an earlier vertex
        g.add_edge(u, v, Weight(1 + rng.below(wmax)));
    }
    std::size_t added = 0, guard = 0;
    while (added < extra && ++guard < 100 * (extra + 1)) {
        Vertex u = Vertex(rng.below(n)), v = Vertex(rng.below(n));
        if (u == v || g.has_slot(u, v)) continue;
        g.add_edge(u, v, Weight(1 + rng.below(wmax)));
        ++added;
    }
    return g;
}

// Independent distance oracle (Bellman-Ford), used to cross-check the
// Dijkstra the rest of the suite relies on.
inline std::vector<Weight> bellman_ford(const Graph& g, Vertex s) {
    const std::size_t n = g.vertex_count();
    std::vector<Weight> dist(n, psp::kInf);
    dist[s] = 0;
    for (std::size_t round = 0; round + 1 < std::max<std::size_t>(n, 1); ++round) {
        bool moved = false;
        for (Vertex u = 0; u < n; ++u) {
            if (dist[u] >= psp::kInf) continue;
            for (const auto& e : g.neighbors(u)) {
                Weight cand = psp::add(dist[u], e.w);
                if (cand < dist[e.to]) {
                    dist[e.to] = cand;
                    moved = true;
                }
            }
        }
        if (!moved) break;
    }
    return dist;
}

// 13-vertex worked example used across the partition/index tests.
// Vertex i is "v(i+1)" in the discussion below. Four blocks:
//   block 0: v1,v2,v3,v10   block 1: v7,v8,v9
//   block 2: v5,v12,v13     block 3: v4,v6,v11
struct WorkedExample {
    Graph g{13};
    std::vector<int> part_of;
    WorkedExample() : part_of{0, 0, 0, 3, 2, 3, 1, 1, 1, 0, 3, 2, 2} {
        auto E = [&](int a, int b, Weight w) { g.add_edge(Vertex(a - 1), Vertex(b - 1), w); };
        // intra, block 0
        E(1, 2, 1); E(1, 3, 1); E(2, 10, 1); E(3, 10, 3);
        // intra, block 1
        E(7, 8, 1); E(8, 9, 2); E(7, 9, 3);
        // intra, block 2
        E(5, 12, 2); E(12, 13, 1); E(5, 13, 4);
        // intra, block 3
        E(4, 6, 1); E(4, 11, 4); E(6, 11, 5);
        // inter
        E(3, 5, 1); E(10, 7, 1); E(8, 5, 2); E(9, 11, 1); E(6, 12, 1); E(11, 12, 1);
    }
    static Vertex v(int one_based) { return Vertex(one_based - 1); }
};

// Two-block fixture exercising boundary classification: block 0 holds five
// boundary vertices b1..b5 (ids 0..4) and two inner vertices (5, 6); block 1
// is the single hub 7 every b_i links to. b1,b2,b4 keep only boundary
// neighbors inside block 0; b3 and b5 each see an inner vertex.
struct BoundaryClassExample {
    Graph g{8};
    std::vector<int> part_of{0, 0, 0, 0, 0, 0, 0, 1};
    BoundaryClassExample() {
        g.add_edge(0, 1, 1); // b1-b2
        g.add_edge(1, 2, 1); // b2-b3
        g.add_edge(3, 4, 1); // b4-b5
        g.add_edge(2, 5, 1); // b3-inner
        g.add_edge(4, 6, 1); // b5-inner
        for (Vertex b = 0; b < 5; ++b) g.add_edge(b, 7, 1);
    }
};

} // namespace fix
