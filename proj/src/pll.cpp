#include "psp/pll.hpp"

#include <algorithm>
#include <queue>
#include <utility>

#include "psp/serialize.hpp"

namespace psp {

namespace {

using HeapItem = std::pair<Weight, Vertex>;
using MinHeap =
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>>;

VertexOrder order_for_pll(const Graph& g, const EngineOptions& opt) {
    if (opt.custom_order) {
        if (opt.custom_order->size() != g.vertex_count())
            throw ContractError("custom order size does not match graph");
        return *opt.custom_order;
    }
    return build_order(g, opt.order);
}

// label value of `hub` at v, kInf when absent
Weight entry_value(const std::vector<PLLEngine::LabelEntry>& L, Vertex hub) {
    auto it = std::lower_bound(
        L.begin(), L.end(), hub,
        [](const PLLEngine::LabelEntry& e, Vertex h) { return e.hub < h; });
    return (it != L.end() && it->hub == hub) ? it->d : kInf;
}

} // namespace

PLLEngine::PLLEngine(const Graph& g, const EngineOptions& opt)
    : g_(g),
      order_(order_for_pll(g, opt)),
      rebuild_on_increase_(opt.pll_rebuild_on_increase) {
    build();
}

void PLLEngine::build() {
    const std::size_t n = g_.vertex_count();
    labels_.assign(n, {});
    holders_.assign(n, {});
    // highest rank first, so every label's hub outranks its holder
    for (std::size_t r = n; r-- > 0;) sweep(order_.by_rank[r]);
}

// One pruned Dijkstra from h. A vertex x settled at distance d is labeled
// only if no rendezvous through an existing hub already proves d(h,x) <= d;
// pruned vertices do not relax, keeping label sets minimal. All hubs in
// L(h) outrank h and were swept earlier, so the prune tests only consult
// finished label sets.
void PLLEngine::sweep(Vertex h) {
    const std::size_t n = g_.vertex_count();
    // hub-indexed distances h -> g for O(|L(x)|) prune tests
    std::vector<Weight> hub_dist(n, kInf);
    for (const auto& e : labels_[h]) hub_dist[e.hub] = e.d;

    std::vector<Weight> dist(n, kInf);
    MinHeap pq;
    dist[h] = 0;
    pq.push({0, h});
    while (!pq.empty()) {
        auto [d, x] = pq.top();
        pq.pop();
        if (d != dist[x]) continue; // stale heap entry
        if (x != h) {
            Weight via = kInf;
            for (const auto& e : labels_[x])
                via = std::min(via, add(hub_dist[e.hub], e.d));
            if (via <= d) continue; // covered, prune subtree
        }
        add_label(x, h, d);
        for (const auto& e : g_.neighbors(x)) {
            if (e.w >= kInf) continue;
            Weight nd = add(d, e.w);
            if (nd < dist[e.to]) {
                dist[e.to] = nd;
                pq.push({nd, e.to});
            }
        }
    }
}

// Resumed pruned search from h after edge (u,v) dropped to w. The only
// distances from h that can improve go through the new weight, so the
// search is seeded on both endpoints with the through-edge candidates and
// spreads outward, lowering or adding (h, .) labels where coverage demands.
void PLLEngine::resume(Vertex h, Vertex u, Vertex v, Weight w) {
    const std::size_t n = g_.vertex_count();
    std::vector<Weight> hub_dist(n, kInf);
    for (const auto& e : labels_[h]) hub_dist[e.hub] = e.d;
    hub_dist[h] = 0; // rendezvous at h itself: L(x) may hold (h, .)

    std::vector<Weight> dist(n, kInf);
    MinHeap pq;
    const Weight du = (h == u) ? 0 : entry_value(labels_[u], h);
    const Weight dv = (h == v) ? 0 : entry_value(labels_[v], h);
    const Weight seed_v = add(du, w);
    const Weight seed_u = add(dv, w);
    if (seed_v < dist[v]) {
        dist[v] = seed_v;
        pq.push({seed_v, v});
    }
    if (seed_u < dist[u]) {
        dist[u] = seed_u;
        pq.push({seed_u, u});
    }
    while (!pq.empty()) {
        auto [d, x] = pq.top();
        pq.pop();
        if (d != dist[x] || d >= kInf) continue;
        auto& L = labels_[x];
        auto it = std::lower_bound(
            L.begin(), L.end(), h,
            [](const LabelEntry& e, Vertex hub) { return e.hub < hub; });
        if (it != L.end() && it->hub == h) {
            if (it->d <= d) continue; // no improvement, stop here
            it->d = d;                // tighten in place
        } else {
            Weight via = kInf;
            for (const auto& e : L)
                via = std::min(via, add(hub_dist[e.hub], e.d));
            if (via <= d) continue; // covered elsewhere
            L.insert(it, {h, d});
            holders_[h].push_back(x);
        }
        for (const auto& e : g_.neighbors(x)) {
            if (e.w >= kInf) continue;
            Weight nd = add(d, e.w);
            if (nd < dist[e.to]) {
                dist[e.to] = nd;
                pq.push({nd, e.to});
            }
        }
    }
}

Weight PLLEngine::label_query(Vertex s, Vertex t) const {
    if (s == t) return 0;
    const auto& a = labels_[s];
    const auto& b = labels_[t];
    Weight best = kInf;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].hub < b[j].hub) {
            ++i;
        } else if (a[i].hub > b[j].hub) {
            ++j;
        } else {
            best = std::min(best, add(a[i].d, b[j].d));
            ++i;
            ++j;
        }
    }
    return best;
}

Weight PLLEngine::query(Vertex s, Vertex t) const {
    g_.check_vertex(s);
    g_.check_vertex(t);
    ++stats_.queries;
    return label_query(s, t);
}

void PLLEngine::add_label(Vertex v, Vertex hub, Weight d) {
    auto& L = labels_[v];
    auto it = std::lower_bound(
        L.begin(), L.end(), hub,
        [](const LabelEntry& e, Vertex h) { return e.hub < h; });
    if (it != L.end() && it->hub == hub) {
        it->d = std::min(it->d, d);
        return;
    }
    L.insert(it, {hub, d});
    holders_[hub].push_back(v);
}

std::vector<PLLEngine::LabelEntry> PLLEngine::strip_hub(Vertex h) {
    std::vector<LabelEntry> old;
    old.reserve(holders_[h].size());
    for (Vertex q : holders_[h]) {
        auto& L = labels_[q];
        auto it = std::lower_bound(
            L.begin(), L.end(), h,
            [](const LabelEntry& e, Vertex hub) { return e.hub < hub; });
        if (it != L.end() && it->hub == h) {
            old.push_back({q, it->d}); // .hub field reused as holder id
            L.erase(it);
        }
    }
    holders_[h].clear();
    return old;
}

void PLLEngine::repair_decrease(Vertex u, Vertex v, Weight w) {
    // every pair whose distance improved routes through (u,v), and the
    // highest-ranked vertex of any such path already labels u or v
    std::vector<Vertex> hubs;
    hubs.reserve(labels_[u].size() + labels_[v].size());
    for (const auto& e : labels_[u]) hubs.push_back(e.hub);
    for (const auto& e : labels_[v]) hubs.push_back(e.hub);
    std::sort(hubs.begin(), hubs.end(), [&](Vertex a, Vertex b) {
        return order_.rank_of[a] > order_.rank_of[b];
    });
    hubs.erase(std::unique(hubs.begin(), hubs.end()), hubs.end());
    for (Vertex h : hubs) resume(h, u, v, w);
}

void PLLEngine::repair_increase(Vertex u, Vertex v, Weight old_w) {
    // Suspects: hubs whose labeled path to one endpoint continued through
    // the old edge weight to the other. Pruned sweeps label every vertex on
    // a canonical shortest path, so any label that used (u,v) shows up here.
    std::vector<std::pair<std::uint32_t, Vertex>> heap_init;
    {
        const auto& a = labels_[u];
        const auto& b = labels_[v];
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i].hub < b[j].hub) {
                ++i;
            } else if (a[i].hub > b[j].hub) {
                ++j;
            } else {
                if (b[j].d == add(a[i].d, old_w) || a[i].d == add(b[j].d, old_w))
                    heap_init.push_back({order_.rank_of[a[i].hub], a[i].hub});
                ++i;
                ++j;
            }
        }
    }
    if (heap_init.empty()) return; // no label ever used the edge

    // Re-sweep stale hubs from highest rank down. When re-sweeping g weakens
    // or drops an entry (g,x), two kinds of vertices may now be missing a
    // label of their own: x itself, and any other holder h of g with
    // rank(h) > rank(x) — h's sweep may have pruned (h,x) against the
    // rendezvous label(g,h) + label(g,x) that just disappeared. Both join
    // the worklist. Enqueued vertices always rank strictly below the hub
    // that exposed them, so by the time any hub pops, every higher-ranked
    // hub it could consult is final, and each vertex re-sweeps at most once.
    std::priority_queue<std::pair<std::uint32_t, Vertex>> work(
        std::less<std::pair<std::uint32_t, Vertex>>{}, std::move(heap_init));
    std::vector<char> done(g_.vertex_count(), 0);
    while (!work.empty()) {
        auto [rank, h] = work.top();
        work.pop();
        if (done[h]) continue;
        done[h] = 1;
        std::vector<LabelEntry> old = strip_hub(h);
        sweep(h);
        std::uint32_t weakest = ~std::uint32_t(0); // min rank of weakened holder
        for (const auto& entry : old) {
            const Vertex q = entry.hub; // holder id (see strip_hub)
            if (q == h) continue;
            if (entry_value(labels_[q], h) > entry.d) {
                weakest = std::min(weakest, order_.rank_of[q]);
                if (!done[q]) work.push({order_.rank_of[q], q});
            }
        }
        if (weakest != ~std::uint32_t(0)) {
            for (const auto& entry : old) {
                const Vertex q = entry.hub;
                if (q == h || done[q]) continue;
                if (order_.rank_of[q] > weakest)
                    work.push({order_.rank_of[q], q});
            }
        }
    }
}

void PLLEngine::apply(std::span<const EdgeChange> changes) {
    ++stats_.update_calls;
    for (const auto& c : changes) {
        const Weight old_w = g_.weight(c.u, c.v);
        if (c.new_w < kInf && !g_.has_slot(c.u, c.v))
            g_.add_edge(c.u, c.v, c.new_w);
        else
            g_.set_weight(c.u, c.v, c.new_w);
        if (c.new_w == old_w) continue;
        if (c.new_w < old_w) {
            repair_decrease(c.u, c.v, c.new_w);
        } else if (rebuild_on_increase_) {
            build();
        } else {
            repair_increase(c.u, c.v, old_w);
        }
    }
}

std::unique_ptr<SPEngine> PLLEngine::clone() const {
    return std::make_unique<PLLEngine>(*this);
}

IndexFootprint PLLEngine::footprint() const {
    IndexFootprint f;
    for (const auto& L : labels_) {
        f.label_entries += L.size();
        f.tree_width = std::max(f.tree_width, std::uint32_t(L.size()));
    }
    return f;
}

void PLLEngine::save(std::ostream& out) const {
    io::write_tag(out, io::kTagPLL);
    io::write_graph(out, g_);
    io::write_vec_u32(out, order_.rank_of);
    io::write_u8(out, rebuild_on_increase_ ? 1 : 0);
    for (const auto& L : labels_) {
        io::write_u64(out, L.size());
        for (const auto& e : L) {
            io::write_u32(out, e.hub);
            io::write_u64(out, e.d);
        }
    }
}

std::unique_ptr<PLLEngine> PLLEngine::load(std::istream& in) {
    io::expect_tag(in, io::kTagPLL);
    std::unique_ptr<PLLEngine> eng(new PLLEngine());
    eng->g_ = io::read_graph(in);
    const std::size_t n = eng->g_.vertex_count();
    eng->order_.rank_of = io::read_vec_u32(in);
    if (eng->order_.rank_of.size() != n)
        throw Error("label file order does not match its graph");
    eng->order_.by_rank.assign(n, 0);
    for (std::size_t v = 0; v < n; ++v)
        eng->order_.by_rank[eng->order_.rank_of[v]] = Vertex(v);
    eng->rebuild_on_increase_ = io::read_u8(in) != 0;
    eng->labels_.assign(n, {});
    eng->holders_.assign(n, {});
    for (std::size_t v = 0; v < n; ++v) {
        const std::uint64_t cnt = io::read_u64(in);
        auto& L = eng->labels_[v];
        L.reserve(cnt);
        for (std::uint64_t i = 0; i < cnt; ++i) {
            Vertex hub = io::read_u32(in);
            Weight d = io::read_u64(in);
            L.push_back({hub, d});
            eng->holders_[hub].push_back(Vertex(v));
        }
    }
    return eng;
}

} // namespace psp
