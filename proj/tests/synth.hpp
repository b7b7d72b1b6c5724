#pragma once
// Deterministic synthetic road-style network: a maze spanning tree carved on
// a near-square grid plus random grid-local chords. Local edges only, so the
// instance keeps the small separators typical of road networks.
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <utility>
#include <fstream>
#include <string>
#include <vector>

#include "psp/graph.hpp"
#include "psp/types.hpp"
#include "psp/workload.hpp"

namespace fix {

inline psp::Graph synth_road_graph(std::size_t n, std::size_t m_target,
                                   std::uint64_t seed) {
    using psp::Vertex;
    using psp::Weight;
    psp::Rng rng(seed);
    const std::size_t W = std::size_t(1) + std::size_t(std::sqrt(double(n)));
    auto weight = [&] { return Weight(100 + rng.below(2901)); };

    // grid adjacency over vertices 0..n-1 laid out row-major, last row partial
    auto grid_neighbors = [&](std::size_t v, std::size_t out[4]) {
        std::size_t cnt = 0, c = v % W;
        if (c + 1 < W && v + 1 < n) out[cnt++] = v + 1;
        if (c > 0) out[cnt++] = v - 1;
        if (v + W < n) out[cnt++] = v + W;
        if (v >= W) out[cnt++] = v - W;
        return cnt;
    };

    psp::Graph g(n);
    // randomized iterative DFS spanning tree (the "maze")
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t nb[4];
    while (!stack.empty()) {
        std::size_t v = stack.back();
        std::size_t cnt = grid_neighbors(v, nb);
        // random unvisited neighbor
        std::size_t pick = cnt, alive = 0;
        for (std::size_t i = 0; i < cnt; ++i)
            if (!seen[nb[i]] && rng.below(++alive) == 0) pick = i;
        if (pick == cnt) {
            stack.pop_back();
            continue;
        }
        std::size_t u = nb[pick];
        seen[u] = 1;
        g.add_edge(Vertex(v), Vertex(u), weight());
        stack.push_back(u);
    }

    // chords: remaining grid edges, shuffled, until m_target
    std::vector<std::pair<Vertex, Vertex>> rest;
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t c = v % W;
        if (c + 1 < W && v + 1 < n && !g.has_slot(Vertex(v), Vertex(v + 1)))
            rest.push_back({Vertex(v), Vertex(v + 1)});
        if (v + W < n && !g.has_slot(Vertex(v), Vertex(v + W)))
            rest.push_back({Vertex(v), Vertex(v + W)});
    }
    for (std::size_t i = rest.size(); i > 1; --i)
        std::swap(rest[i - 1], rest[rng.below(i)]);
    for (std::size_t i = 0; i < rest.size() && g.edge_count() < m_target; ++i)
        g.add_edge(rest[i].first, rest[i].second, weight());
    return g;
}

// Scale fixture matching the published New York City road network's size:
// 264,346 vertices, 730,100 arcs (= 365,050 undirected edges).
inline const psp::Graph& ny_scale_graph() {
    static psp::Graph g = synth_road_graph(264346, 365050, 20260819);
    return g;
}

// Cached .gr form of the scale fixture (written once per build tree).
inline std::string ny_scale_file() {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "psp_test_data";
    fs::path file = dir / "ny_scale.gr";
    if (!fs::exists(file)) {
        fs::create_directories(dir);
        fs::path tmp = dir / "ny_scale.gr.partial";
        std::ofstream out(tmp, std::ios::binary);
        psp::serialize_graph(ny_scale_graph(), out, psp::GraphFormat::dimacs);
        out.close();
        fs::rename(tmp, file); // atomic publish; racing writers agree on bytes
    }
    return file.string();
}

} // namespace fix
