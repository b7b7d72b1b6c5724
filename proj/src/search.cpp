#include "psp/search.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <unordered_set>

using namespace std;

namespace psp {

namespace {
using HeapItem = pair<Weight, Vertex>; // (dist, vertex), min-heap
using MinHeap = priority_queue<HeapItem, vector<HeapItem>, greater<HeapItem>>;
} // namespace

void SearchBuffer::reset(size_t n) {
    if (dist.size() < n) {
        dist.resize(n, kInf);
        stamp.resize(n, 0);
    }
    if (++cur == 0) { // stamp wrapped; start clean
        fill(stamp.begin(), stamp.end(), 0);
        cur = 1;
    }
}

vector<Weight> dijkstra(const Graph& g, Vertex s) {
    g.check_vertex(s);
    vector<Weight> dist(g.vertex_count(), kInf);
    MinHeap pq;
    dist[s] = 0;
    pq.push({0, s});
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d != dist[v]) continue;
        for (const Edge& e : g.neighbors(v)) {
            if (e.w >= kInf) continue;
            Weight nd = add(d, e.w);
            if (nd < dist[e.to]) {
                dist[e.to] = nd;
                pq.push({nd, e.to});
            }
        }
    }
    return dist;
}

Weight dijkstra_distance(const Graph& g, Vertex s, Vertex t) {
    g.check_vertex(t);
    if (s == t) return 0;
    vector<Weight> dist(g.vertex_count(), kInf);
    MinHeap pq;
    dist[s] = 0;
    pq.push({0, s});
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d != dist[v]) continue;
        if (v == t) return d;
        for (const Edge& e : g.neighbors(v)) {
            if (e.w >= kInf) continue;
            Weight nd = add(d, e.w);
            if (nd < dist[e.to]) {
                dist[e.to] = nd;
                pq.push({nd, e.to});
            }
        }
    }
    return kInf;
}

void dijkstra_targets(const Graph& g, Vertex s, span<const Vertex> targets,
                      SearchBuffer& buf) {
    buf.reset(g.vertex_count());
    size_t pending = 0;
    // mark targets; duplicates tolerated
    unordered_set<Vertex> want(targets.begin(), targets.end());
    pending = want.size();
    MinHeap pq;
    buf.set(s, 0);
    pq.push({0, s});
    while (!pq.empty() && pending > 0) {
        auto [d, v] = pq.top();
        pq.pop();
        if (buf.get(v) != d) continue;
        auto it = want.find(v);
        if (it != want.end()) {
            want.erase(it);
            --pending;
        }
        for (const Edge& e : g.neighbors(v)) {
            if (e.w >= kInf) continue;
            Weight nd = add(d, e.w);
            if (nd < buf.get(e.to)) {
                buf.set(e.to, nd);
                pq.push({nd, e.to});
            }
        }
    }
}

Weight bidirectional_search(const Graph& g, Vertex s, Vertex t) {
    g.check_vertex(s);
    g.check_vertex(t);
    if (s == t) return 0;
    const size_t n = g.vertex_count();
    vector<Weight> df(n, kInf), db(n, kInf);
    MinHeap qf, qb;
    df[s] = 0;
    db[t] = 0;
    qf.push({0, s});
    qb.push({0, t});
    Weight best = kInf;
    bool ff = false, fb = false; // stop flags per direction

    auto step = [&](MinHeap& pq, vector<Weight>& mine, vector<Weight>& other, bool& flag) {
        while (!pq.empty()) {
            auto [d, v] = pq.top();
            if (d != mine[v]) { // stale
                pq.pop();
                continue;
            }
            if (d > best) {
                flag = true;
                return;
            }
            pq.pop();
            if (other[v] < kInf) best = min(best, add(d, other[v]));
            for (const Edge& e : g.neighbors(v)) {
                if (e.w >= kInf) continue;
                Weight nd = add(d, e.w);
                if (nd < mine[e.to]) {
                    mine[e.to] = nd;
                    pq.push({nd, e.to});
                }
            }
            return;
        }
    };

    while (true) {
        if ((ff && fb) || (ff && qb.empty()) || (fb && qf.empty())) break;
        if (qf.empty() && qb.empty()) break;
        if (!ff && !qf.empty()) step(qf, df, db, ff);
        if (!fb && !qb.empty()) step(qb, db, df, fb);
        if (qf.empty() && !ff) ff = true;
        if (qb.empty() && !fb) fb = true;
    }
    return best;
}

// ---- orders -------------------------------------------------------------

VertexOrder build_order_stratified(const Graph& g, const vector<int>& stratum) {
    const size_t n = g.vertex_count();
    assert(stratum.size() == n);

    // simulated elimination on an unweighted working copy
    vector<unordered_set<Vertex>> nb(n);
    for (Vertex u = 0; u < n; ++u)
        for (const Edge& e : g.neighbors(u))
            if (e.w < kInf) nb[u].insert(e.to);

    // (stratum, degree, id) lazy min-heap
    using Key = tuple<int, size_t, Vertex>;
    priority_queue<Key, vector<Key>, greater<Key>> pq;
    for (Vertex v = 0; v < n; ++v) pq.push({stratum[v], nb[v].size(), v});

    VertexOrder ord;
    ord.by_rank.reserve(n);
    ord.rank_of.assign(n, 0);
    vector<char> done(n, 0);
    while (!pq.empty()) {
        auto [st, deg, v] = pq.top();
        pq.pop();
        if (done[v] || deg != nb[v].size()) continue; // stale entry
        done[v] = 1;
        ord.rank_of[v] = Vertex(ord.by_rank.size());
        ord.by_rank.push_back(v);
        // eliminate: clique the remaining neighborhood
        vector<Vertex> ns(nb[v].begin(), nb[v].end());
        for (Vertex u : ns) {
            nb[u].erase(v);
        }
        for (size_t i = 0; i < ns.size(); ++i) {
            for (size_t j = i + 1; j < ns.size(); ++j) {
                Vertex a = ns[i], b = ns[j];
                if (nb[a].insert(b).second) {
                    nb[b].insert(a);
                    pq.push({stratum[a], nb[a].size(), a});
                    pq.push({stratum[b], nb[b].size(), b});
                }
            }
        }
        for (Vertex u : ns)
            if (!done[u]) pq.push({stratum[u], nb[u].size(), u});
        nb[v].clear();
    }
    return ord;
}

VertexOrder build_order(const Graph& g, OrderScheme scheme,
                        const vector<char>* is_boundary) {
    const size_t n = g.vertex_count();
    if (scheme == OrderScheme::degree) {
        vector<Vertex> vs(n);
        for (Vertex v = 0; v < n; ++v) vs[v] = v;
        stable_sort(vs.begin(), vs.end(), [&](Vertex a, Vertex b) {
            size_t da = g.degree(a), db = g.degree(b);
            return da != db ? da < db : a < b;
        });
        VertexOrder ord;
        ord.by_rank = move(vs);
        ord.rank_of.assign(n, 0);
        for (size_t r = 0; r < n; ++r) ord.rank_of[ord.by_rank[r]] = Vertex(r);
        return ord;
    }
    vector<int> stratum(n, 0);
    if (scheme == OrderScheme::boundary_first) {
        if (!is_boundary)
            throw ContractError("boundary_first order needs the boundary flags");
        for (Vertex v = 0; v < n; ++v)
            if ((*is_boundary)[v]) stratum[v] = 1;
    }
    return build_order_stratified(g, stratum);
}

} // namespace psp
