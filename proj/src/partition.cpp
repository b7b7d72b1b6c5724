#include "psp/partition.hpp"

#include <algorithm>
#include <istream>
#include <queue>
#include <unordered_map>

#include "psp/search.hpp"
#include "psp/workload.hpp"

namespace psp {

using std::size_t;

namespace {

// Fills members/boundary/inter-edges of an edge-cut result from part_of.
void derive_edge_cut(const Graph& g, PartitionResult& p) {
    const size_t n = g.vertex_count();
    p.n = n;
    p.members.assign(p.k, {});
    for (Vertex v = 0; v < n; ++v) p.members[p.part_of[v]].push_back(v);
    p.is_boundary.assign(n, 0);
    p.inter_edges.clear();
    for (const auto& e : g.edges()) {
        if (p.part_of[e.u] != p.part_of[e.v]) {
            p.inter_edges.push_back(e);
            p.is_boundary[e.u] = 1;
            p.is_boundary[e.v] = 1;
        }
    }
    p.boundary.assign(p.k, {});
    for (Vertex v = 0; v < n; ++v)
        if (p.is_boundary[v]) p.boundary[p.part_of[v]].push_back(v);
}

// k seeds spread farthest-point-first (weighted distances, lowest id on
// ties), returned sorted by id so region order is stable.
std::vector<Vertex> spread_seeds(const Graph& g, int k, Rng& rng) {
    const size_t n = g.vertex_count();
    std::vector<Vertex> seeds;
    seeds.reserve(k);
    std::vector<char> chosen(n, 0);
    const Vertex first = Vertex(rng.below(n));
    seeds.push_back(first);
    chosen[first] = 1;
    std::vector<Weight> mind = dijkstra(g, first);
    while (int(seeds.size()) < k) {
        Vertex best = kNoVertex;
        Weight bd = 0;
        for (Vertex v = 0; v < n; ++v) {
            if (chosen[v]) continue;
            if (best == kNoVertex || mind[v] > bd) {
                best = v;
                bd = mind[v];
            }
        }
        seeds.push_back(best);
        chosen[best] = 1;
        if (int(seeds.size()) == k) break;
        const auto d = dijkstra(g, best);
        for (Vertex v = 0; v < n; ++v) mind[v] = std::min(mind[v], d[v]);
    }
    std::sort(seeds.begin(), seeds.end());
    return seeds;
}

struct GrowthOutcome {
    std::vector<int> part_of;
    size_t cut = 0;
};

size_t cut_size(const Graph& g, const std::vector<int>& part_of) {
    size_t cut = 0;
    for (const auto& e : g.edges())
        if (part_of[e.u] != part_of[e.v]) ++cut;
    return cut;
}

// Concurrent best-first growth from fixed seeds: regions take turns, each
// claiming its single closest unclaimed frontier vertex per round (ties:
// lower vertex id), capped at ceil(2n/k). The lockstep keeps sizes close
// until a region is walled in. Vertices unreachable from every seed join
// the currently smallest region, one whole component at a time.
GrowthOutcome grow_regions(const Graph& g, const std::vector<Vertex>& seeds,
                           size_t cap) {
    const size_t n = g.vertex_count();
    const int k = int(seeds.size());
    GrowthOutcome out;
    out.part_of.assign(n, -1);

    using Item = std::pair<Weight, Vertex>;
    std::vector<std::priority_queue<Item, std::vector<Item>, std::greater<>>>
        frontier(k);
    std::vector<std::unordered_map<Vertex, Weight>> best(k);
    std::vector<size_t> size_of(k, 0);

    auto claim = [&](int r, Vertex v, Weight d) {
        out.part_of[v] = r;
        ++size_of[r];
        for (const auto& e : g.neighbors(v)) {
            if (e.w >= kInf || out.part_of[e.to] != -1) continue;
            const Weight nd = add(d, e.w);
            auto it = best[r].find(e.to);
            if (it == best[r].end() || nd < it->second) {
                best[r][e.to] = nd;
                frontier[r].push({nd, e.to});
            }
        }
    };
    for (int r = 0; r < k; ++r) {
        best[r][seeds[r]] = 0;
        claim(r, seeds[r], 0);
    }

    bool progress = true;
    while (progress) {
        progress = false;
        for (int r = 0; r < k; ++r) {
            if (size_of[r] >= cap) continue;
            while (!frontier[r].empty()) {
                const auto [d, v] = frontier[r].top();
                if (out.part_of[v] != -1 || d != best[r][v]) {
                    frontier[r].pop();
                    continue;
                }
                break;
            }
            if (frontier[r].empty()) continue;
            const auto [d, v] = frontier[r].top();
            frontier[r].pop();
            claim(r, v, d);
            progress = true;
        }
    }

    // components no growth reached, smallest region first
    std::vector<char> seen(n, 0);
    for (Vertex v0 = 0; v0 < n; ++v0) {
        if (out.part_of[v0] != -1 || seen[v0]) continue;
        std::vector<Vertex> comp{v0};
        seen[v0] = 1;
        for (size_t i = 0; i < comp.size(); ++i)
            for (const auto& e : g.neighbors(comp[i]))
                if (e.w < kInf && out.part_of[e.to] == -1 && !seen[e.to]) {
                    seen[e.to] = 1;
                    comp.push_back(e.to);
                }
        int smallest = 0;
        for (int r = 1; r < k; ++r)
            if (size_of[r] < size_of[smallest]) smallest = r;
        for (Vertex v : comp) out.part_of[v] = smallest;
        size_of[smallest] += comp.size();
    }

    out.cut = cut_size(g, out.part_of);
    return out;
}

// Unweighted BFS center of one region: the member minimizing in-region
// eccentricity (ties: lowest id). Exact for modest regions; very large
// regions fall back to the double-sweep midpoint approximation.
Vertex region_center(const Graph& g, const std::vector<int>& part_of, int r,
                     const std::vector<Vertex>& members) {
    const size_t n = g.vertex_count();
    constexpr size_t kExactCenterLimit = 4096;
    std::vector<std::uint32_t> hop(n);
    std::vector<Vertex> parent(n);
    auto bfs = [&](Vertex src) { // returns farthest member (ties: lowest id)
        hop.assign(n, ~std::uint32_t(0));
        parent.assign(n, kNoVertex);
        std::queue<Vertex> q;
        hop[src] = 0;
        q.push(src);
        Vertex far = src;
        while (!q.empty()) {
            const Vertex v = q.front();
            q.pop();
            if (hop[v] > hop[far] || (hop[v] == hop[far] && v < far)) far = v;
            for (const auto& e : g.neighbors(v)) {
                if (e.w >= kInf || part_of[e.to] != r) continue;
                if (hop[e.to] != ~std::uint32_t(0)) continue;
                hop[e.to] = hop[v] + 1;
                parent[e.to] = v;
                q.push(e.to);
            }
        }
        return far;
    };
    if (members.size() <= kExactCenterLimit) {
        Vertex best = members.front();
        std::uint32_t best_ecc = ~std::uint32_t(0);
        for (Vertex src : members) {
            const Vertex far = bfs(src);
            if (hop[far] < best_ecc) {
                best_ecc = hop[far];
                best = src;
            }
        }
        return best;
    }
    const Vertex x = bfs(members.front());
    const Vertex y = bfs(x);
    std::vector<Vertex> path; // y .. x
    for (Vertex v = y; v != kNoVertex; v = parent[v]) path.push_back(v);
    return path[path.size() / 2];
}

} // namespace

PartitionResult partition_growing(const Graph& g, int k, std::uint64_t seed) {
    const size_t n = g.vertex_count();
    if (k < 2 || size_t(k) > n)
        throw ContractError("partition count must satisfy 2 <= k <= n");
    Rng rng(seed);
    const size_t cap = (2 * n + size_t(k) - 1) / size_t(k);

    const auto seeds = spread_seeds(g, k, rng);
    const GrowthOutcome first = grow_regions(g, seeds, cap);

    // one re-centering iteration: move every seed to its region's
    // approximate unweighted center, then regrow from there
    std::vector<Vertex> centers(k);
    {
        std::vector<std::vector<Vertex>> members(k);
        for (Vertex v = 0; v < n; ++v) members[first.part_of[v]].push_back(v);
        for (int r = 0; r < k; ++r)
            centers[r] = region_center(g, first.part_of, r, members[r]);
        std::sort(centers.begin(), centers.end());
    }
    const GrowthOutcome second = grow_regions(g, centers, cap);

    PartitionResult p;
    p.k = k;
    p.part_of = second.part_of;
    derive_edge_cut(g, p);
    return p;
}

PartitionResult ingest_partition_file(const Graph& g, std::istream& in,
                                      std::string* warning) {
    const size_t n = g.vertex_count();
    std::vector<long long> raw;
    raw.reserve(n);
    long long x = 0;
    while (in >> x) {
        if (x < 0)
            throw ParseError("negative partition id", raw.size() + 1);
        raw.push_back(x);
        if (raw.size() > n)
            throw ParseError("more partition lines than vertices", raw.size());
    }
    if (!in.eof() && in.fail())
        throw ParseError("partition id is not an integer", raw.size() + 1);
    if (raw.size() != n)
        throw ParseError("expected one line per vertex (n=" + std::to_string(n) +
                             ", got " + std::to_string(raw.size()) + ")",
                         raw.size());

    std::vector<long long> ids(raw);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    const bool dense = !ids.empty() && ids.back() == (long long)ids.size() - 1;
    if (!dense && warning)
        *warning = "partition ids had gaps; densified to [0," +
                   std::to_string(ids.size()) + ")";
    std::unordered_map<long long, int> remap;
    for (size_t i = 0; i < ids.size(); ++i) remap[ids[i]] = int(i);

    PartitionResult p;
    p.k = int(ids.size());
    if (p.k == 0) p.k = (n == 0) ? 0 : 1; // n == 0 corner
    p.part_of.resize(n);
    for (size_t v = 0; v < n; ++v) p.part_of[v] = remap[raw[v]];
    derive_edge_cut(g, p);
    return p;
}

PartitionResult partition_hierarchical(const Graph& g, int fanout,
                                       std::size_t tau, std::uint64_t seed) {
    if (fanout < 2) throw ContractError("fanout must be at least 2");
    if (tau < 1) throw ContractError("leaf capacity must be at least 1");
    const size_t n = g.vertex_count();
    Rng rng(seed);

    PartitionResult p;
    p.n = n;
    p.part_of.assign(n, -1);
    p.tree.push_back({-1, 0, {}, -1});

    struct Work {
        std::vector<Vertex> verts;
        int node;
    };
    std::vector<Work> stack;
    {
        std::vector<Vertex> all(n);
        for (Vertex v = 0; v < n; ++v) all[v] = v;
        stack.push_back({std::move(all), 0});
    }
    while (!stack.empty()) {
        Work w = std::move(stack.back());
        stack.pop_back();
        if (w.verts.size() <= tau) {
            const int pid = p.k++;
            p.tree[w.node].leaf_part = pid;
            p.leaf_node.push_back(w.node);
            for (Vertex v : w.verts) p.part_of[v] = pid;
            continue;
        }
        // induced subgraph on w.verts (sorted, so local ids are stable)
        Graph sub(w.verts.size());
        std::unordered_map<Vertex, Vertex> local;
        local.reserve(w.verts.size());
        for (size_t i = 0; i < w.verts.size(); ++i) local[w.verts[i]] = Vertex(i);
        for (Vertex v : w.verts)
            for (const auto& e : g.neighbors(v)) {
                if (e.w >= kInf || e.to < v) continue;
                auto it = local.find(e.to);
                if (it != local.end()) sub.add_edge(local[v], it->second, e.w);
            }
        const int kk = int(std::min<size_t>(fanout, w.verts.size()));
        const auto split = partition_growing(sub, kk, rng.next());

        std::vector<std::vector<Vertex>> child_verts(kk);
        for (size_t i = 0; i < w.verts.size(); ++i)
            child_verts[split.part_of[i]].push_back(w.verts[i]);
        // push in reverse so child 0 is processed (and numbered) first
        std::vector<int> child_nodes(kk);
        for (int c = 0; c < kk; ++c) {
            const int cn = int(p.tree.size());
            p.tree.push_back({w.node, p.tree[w.node].depth + 1, {}, -1});
            p.tree[w.node].children.push_back(cn);
            child_nodes[c] = cn;
        }
        for (int c = kk; c-- > 0;)
            stack.push_back({std::move(child_verts[c]), child_nodes[c]});
    }

    derive_edge_cut(g, p);

    // boundary levels: depth of the shallowest node separating the vertex
    // from one of its cross-partition neighbors
    p.boundary_level.assign(n, -1);
    auto lca_depth = [&](int a, int b) {
        while (p.tree[a].depth > p.tree[b].depth) a = p.tree[a].parent;
        while (p.tree[b].depth > p.tree[a].depth) b = p.tree[b].parent;
        while (a != b) {
            a = p.tree[a].parent;
            b = p.tree[b].parent;
        }
        return int(p.tree[a].depth);
    };
    for (const auto& e : p.inter_edges) {
        const int d = lca_depth(p.leaf_node[p.part_of[e.u]],
                                p.leaf_node[p.part_of[e.v]]);
        for (Vertex v : {e.u, e.v})
            if (p.boundary_level[v] == -1 || d < p.boundary_level[v])
                p.boundary_level[v] = d;
    }
    return p;
}

PartitionResult core_tree_decompose(const Graph& g, std::size_t bandwidth) {
    if (bandwidth < 1) throw ContractError("bandwidth must be at least 1");
    const size_t n = g.vertex_count();

    std::vector<std::unordered_map<Vertex, Weight>> adj(n);
    for (const auto& e : g.edges()) {
        adj[e.u][e.v] = e.w;
        adj[e.v][e.u] = e.w;
    }
    std::vector<char> alive(n, 1);
    std::vector<std::uint32_t> when(n, 0); // contraction timestamp + 1
    std::vector<std::vector<std::pair<Vertex, Weight>>> xset(n);

    using Key = std::pair<size_t, Vertex>; // (current degree, id)
    std::priority_queue<Key, std::vector<Key>, std::greater<>> pq;
    for (Vertex v = 0; v < n; ++v) pq.push({adj[v].size(), v});

    std::uint32_t clock = 0;
    while (!pq.empty()) {
        const auto [deg, v] = pq.top();
        pq.pop();
        if (!alive[v] || adj[v].size() != deg) continue; // stale entry
        if (deg == 0) continue;           // isolated vertices stay in core
        if (deg > bandwidth) break;       // minimum exceeds the width bound
        // contract v
        alive[v] = 0;
        when[v] = ++clock;
        auto& X = xset[v];
        X.assign(adj[v].begin(), adj[v].end());
        std::sort(X.begin(), X.end());
        for (const auto& [u, w] : X) {
            adj[u].erase(v);
            (void)w;
        }
        for (size_t i = 0; i < X.size(); ++i)
            for (size_t j = i + 1; j < X.size(); ++j) {
                const Vertex a = X[i].first, b = X[j].first;
                const Weight w = add(X[i].second, X[j].second);
                if (w >= kInf) continue;
                auto it = adj[a].find(b);
                if (it == adj[a].end()) {
                    adj[a][b] = w;
                    adj[b][a] = w;
                } else if (w < it->second) {
                    it->second = w;
                    adj[b][a] = w;
                }
            }
        for (const auto& [u, w] : X) {
            pq.push({adj[u].size(), u});
            (void)w;
        }
        adj[v].clear();
    }

    // trees via "first-contracted recorded neighbor" parent links
    std::vector<Vertex> parent(n, kNoVertex);
    for (Vertex v = 0; v < n; ++v) {
        if (alive[v]) continue;
        std::uint32_t bestt = 0;
        for (const auto& [u, w] : xset[v]) {
            (void)w;
            if (!alive[u] && (bestt == 0 || when[u] < bestt)) {
                bestt = when[u];
                parent[v] = u;
            }
        }
    }
    PartitionResult p;
    p.n = n;
    p.core_periphery = true;
    p.part_of.assign(n, -1);
    p.in_core.assign(n, 0);
    for (Vertex v = 0; v < n; ++v) p.in_core[v] = alive[v];

    std::vector<int> tree_of(n, -1);
    for (Vertex v0 = 0; v0 < n; ++v0) {
        if (alive[v0] || tree_of[v0] != -1) continue;
        std::vector<Vertex> chain;
        Vertex cur = v0;
        while (cur != kNoVertex && tree_of[cur] == -1 && !alive[cur]) {
            chain.push_back(cur);
            cur = parent[cur];
        }
        const int id = (cur != kNoVertex && !alive[cur]) ? tree_of[cur] : p.k++;
        for (Vertex v : chain) tree_of[v] = id;
    }
    for (Vertex v = 0; v < n; ++v)
        if (!alive[v]) p.part_of[v] = tree_of[v];

    p.members.assign(p.k, {});
    p.tree_edges.assign(p.k, {});
    p.boundary.assign(p.k, {});
    for (Vertex v = 0; v < n; ++v) {
        if (alive[v]) continue;
        const int i = tree_of[v];
        p.members[i].push_back(v);
        for (const auto& [u, w] : xset[v]) {
            p.tree_edges[i].push_back({v, u, w});
            if (alive[u]) p.boundary[i].push_back(u);
        }
    }
    for (auto& b : p.boundary) {
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
    }
    p.is_boundary.assign(n, 0);
    for (Vertex v = 0; v < n; ++v) p.is_boundary[v] = alive[v];

    for (Vertex a = 0; a < n; ++a) {
        if (!alive[a]) continue;
        for (const auto& [b, w] : adj[a])
            if (b > a) p.core_edges.push_back({a, b, w});
    }
    std::sort(p.core_edges.begin(), p.core_edges.end(),
              [](const Graph::EdgeRef& x, const Graph::EdgeRef& y) {
                  return std::pair(x.u, x.v) < std::pair(y.u, y.v);
              });
    return p;
}

BoundaryClass classify_boundaries(const Graph& g, const PartitionResult& p) {
    if (p.core_periphery)
        throw ContractError(
            "boundary classification requires an edge-cut partition");
    BoundaryClass c;
    c.n = p.n;
    c.half.assign(p.n, 0);
    for (Vertex v = 0; v < p.n; ++v) {
        if (!p.is_boundary[v]) continue;
        for (const auto& e : g.neighbors(v)) {
            if (e.w >= kInf) continue;
            if (p.part_of[e.to] == p.part_of[v] && !p.is_boundary[e.to]) {
                c.half[v] = 1;
                break;
            }
        }
    }
    return c;
}

std::vector<std::pair<Vertex, Vertex>> boundary_pairs(const PartitionResult& p,
                                                      int i) {
    const auto& b = p.boundary[i];
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(b.size() * (b.size() ? b.size() - 1 : 0) / 2);
    for (size_t x = 0; x < b.size(); ++x)
        for (size_t y = x + 1; y < b.size(); ++y) out.push_back({b[x], b[y]});
    return out;
}

std::uint32_t OverlayGraph::pos(Vertex global) const {
    if (global >= pos_of.size() || pos_of[global] == kNoPos)
        throw ContractError("vertex " + std::to_string(global) +
                            " is not a boundary vertex of this overlay");
    return pos_of[global];
}

OverlayGraph build_overlay(const PartitionResult& p,
                           const std::vector<std::vector<Weight>>& shortcut_weights) {
    if (p.core_periphery)
        throw ContractError("core-periphery overlays come from the core graph");
    if (shortcut_weights.size() != size_t(p.k))
        throw ContractError("need one shortcut-weight vector per partition");

    OverlayGraph o;
    for (Vertex v = 0; v < p.n; ++v)
        if (p.is_boundary[v]) o.vertices.push_back(v);
    o.pos_of.assign(p.n, OverlayGraph::kNoPos);
    for (size_t i = 0; i < o.vertices.size(); ++i)
        o.pos_of[o.vertices[i]] = std::uint32_t(i);
    o.graph = Graph(o.vertices.size());
    o.part_pairs.resize(p.k);

    for (int i = 0; i < p.k; ++i) {
        const auto pairs = boundary_pairs(p, i);
        if (shortcut_weights[i].size() != pairs.size())
            throw ContractError("partition " + std::to_string(i) +
                                ": boundary-pair weights incomplete");
        for (size_t j = 0; j < pairs.size(); ++j) {
            const auto [a, b] = pairs[j];
            o.part_pairs[i].push_back({a, b, true});
            const Weight w = shortcut_weights[i][j];
            if (w < kInf) o.graph.add_edge(o.pos(a), o.pos(b), w);
        }
    }
    for (const auto& e : p.inter_edges) o.graph.add_edge(o.pos(e.u), o.pos(e.v), e.w);
    return o;
}

OverlayGraph prune_overlay(const OverlayGraph& o, const BoundaryClass& c,
                           const Graph& g, const PartitionResult& p) {
    if (p.core_periphery)
        throw ContractError("core-periphery overlays cannot be pruned");
    if (c.n != p.n || c.n != g.vertex_count() ||
        o.part_pairs.size() != size_t(p.k))
        throw ContractError("overlay, classification, and partition disagree");

    OverlayGraph out;
    out.vertices = o.vertices;
    out.pos_of = o.pos_of;
    out.graph = Graph(o.vertices.size());
    out.pruned = true;
    out.part_pairs.resize(p.k);

    for (int i = 0; i < p.k; ++i) {
        for (const auto& [a, b] : boundary_pairs(p, i)) {
            const bool half_half = c.half[a] && c.half[b];
            const bool raw_full =
                (!c.half[a] || !c.half[b]) && g.has_edge(a, b);
            if (half_half) {
                out.part_pairs[i].push_back({a, b, true});
                const Weight w = o.graph.weight(o.pos(a), o.pos(b));
                if (w < kInf) out.graph.add_edge(out.pos(a), out.pos(b), w);
            } else if (raw_full) {
                out.part_pairs[i].push_back({a, b, false});
                out.graph.add_edge(out.pos(a), out.pos(b), g.weight(a, b));
            }
        }
    }
    for (const auto& e : p.inter_edges)
        out.graph.add_edge(out.pos(e.u), out.pos(e.v), e.w);
    return out;
}

std::pair<Graph, PartitionResult> convert_vertex_cut(
    const Graph& g, const std::vector<VertexCut>& cuts,
    const std::vector<int>& base_part) {
    const size_t n = g.vertex_count();
    if (base_part.size() != n)
        throw ContractError("need a base partition id per vertex");

    PartitionResult p;
    if (cuts.empty()) {
        p.k = 0;
        for (int x : base_part) p.k = std::max(p.k, x + 1);
        p.part_of = base_part;
        Graph out = g;
        derive_edge_cut(out, p);
        return {std::move(out), std::move(p)};
    }

    std::vector<int> cut_idx(n, -1);
    for (size_t i = 0; i < cuts.size(); ++i) {
        g.check_vertex(cuts[i].v);
        if (cut_idx[cuts[i].v] != -1)
            throw ContractError("cut vertex listed twice");
        if (cuts[i].copies.empty())
            throw ContractError("cut vertex needs at least one copy");
        cut_idx[cuts[i].v] = int(i);
    }
    // per cut vertex: neighbor -> copy index, validated against live edges
    std::vector<std::unordered_map<Vertex, int>> group_of(cuts.size());
    size_t extra = 0;
    std::vector<Vertex> first_copy_id(cuts.size());
    for (size_t i = 0; i < cuts.size(); ++i) {
        first_copy_id[i] = Vertex(n + extra);
        extra += cuts[i].copies.size() - 1;
        for (size_t j = 0; j < cuts[i].copies.size(); ++j)
            for (Vertex u : cuts[i].copies[j].neighbors) {
                if (!g.has_edge(cuts[i].v, u))
                    throw ContractError("copy group lists a non-neighbor");
                if (!group_of[i].emplace(u, int(j)).second)
                    throw ContractError("neighbor assigned to two copies");
            }
    }
    auto endpoint = [&](Vertex a, Vertex partner) -> Vertex {
        const int ci = cut_idx[a];
        if (ci == -1) return a;
        auto it = group_of[ci].find(partner);
        if (it == group_of[ci].end())
            throw ContractError("live neighbor " + std::to_string(partner) +
                                " of cut vertex " + std::to_string(a) +
                                " is not covered by any copy");
        return it->second == 0 ? a
                               : Vertex(first_copy_id[ci] + it->second - 1);
    };

    Graph out(n + extra);
    for (const auto& e : g.edges())
        out.add_edge(endpoint(e.u, e.v), endpoint(e.v, e.u), e.w);
    for (size_t i = 0; i < cuts.size(); ++i)
        for (size_t j = 1; j < cuts[i].copies.size(); ++j)
            out.add_edge(cuts[i].v, Vertex(first_copy_id[i] + j - 1), 0);

    p.part_of.resize(n + extra);
    for (size_t v = 0; v < n; ++v) p.part_of[v] = base_part[v];
    for (size_t i = 0; i < cuts.size(); ++i) {
        p.part_of[cuts[i].v] = cuts[i].copies[0].part;
        for (size_t j = 1; j < cuts[i].copies.size(); ++j)
            p.part_of[first_copy_id[i] + j - 1] = cuts[i].copies[j].part;
    }
    p.k = 0;
    for (int x : p.part_of) p.k = std::max(p.k, x + 1);
    derive_edge_cut(out, p);
    return {std::move(out), std::move(p)};
}

PartitionMetrics partition_metrics(const Graph& g, const PartitionResult& p) {
    PartitionMetrics m;
    m.component_counts.assign(p.k, 0);
    for (int i = 0; i < p.k; ++i) m.total_boundary += p.boundary[i].size();
    m.avg_boundary = p.k ? double(m.total_boundary) / p.k : 0.0;

    // per-partition intra adjacency (tree edges for periphery trees)
    std::vector<std::vector<std::pair<Vertex, Vertex>>> intra(p.k);
    if (p.core_periphery) {
        for (int i = 0; i < p.k; ++i)
            for (const auto& e : p.tree_edges[i])
                if (!p.in_core[e.v]) intra[i].push_back({e.u, e.v});
    } else {
        for (const auto& e : g.edges())
            if (p.part_of[e.u] == p.part_of[e.v])
                intra[p.part_of[e.u]].push_back({e.u, e.v});
    }
    std::vector<int> comp(p.n, -1);
    for (int i = 0; i < p.k; ++i) {
        std::unordered_map<Vertex, std::vector<Vertex>> adj;
        for (const auto& [a, b] : intra[i]) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        std::uint32_t comps = 0;
        for (Vertex v : p.members[i]) {
            if (comp[v] != -1) continue;
            ++comps;
            std::vector<Vertex> q{v};
            comp[v] = int(comps);
            while (!q.empty()) {
                const Vertex x = q.back();
                q.pop_back();
                auto it = adj.find(x);
                if (it == adj.end()) continue;
                for (Vertex y : it->second)
                    if (comp[y] == -1) {
                        comp[y] = int(comps);
                        q.push_back(y);
                    }
            }
        }
        m.component_counts[i] = comps;
    }
    std::uint64_t total_comps = 0;
    for (auto c : m.component_counts) total_comps += c;
    m.connectivity_ratio = p.k ? double(total_comps) / p.k : 1.0;
    return m;
}

} // namespace psp
