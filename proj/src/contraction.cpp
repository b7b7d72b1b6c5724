#include "psp/contraction.hpp"

#include <algorithm>
#include <queue>
#include <unordered_set>

using namespace std;

namespace psp {

namespace {

// sort by partner id, min-merge duplicates (wh and ow independently)
void consolidate(vector<Hierarchy::UpEntry>& list) {
    if (list.size() < 2) return;
    sort(list.begin(), list.end(),
         [](const auto& a, const auto& b) { return a.to < b.to; });
    size_t out = 0;
    for (size_t i = 0; i < list.size(); ++i) {
        if (out > 0 && list[out - 1].to == list[i].to) {
            list[out - 1].wh = min(list[out - 1].wh, list[i].wh);
            list[out - 1].ow = min(list[out - 1].ow, list[i].ow);
        } else {
            list[out++] = list[i];
        }
    }
    list.resize(out);
}

} // namespace

Hierarchy Hierarchy::build(const Graph& g, VertexOrder order) {
    const size_t n = g.vertex_count();
    if (order.size() != n) throw ContractError("order does not cover the graph");
    Hierarchy h;
    h.order_ = std::move(order);
    h.up_.assign(n, {});
    h.down_.assign(n, {});
    const auto& rank = h.order_.rank_of;

    for (const auto& e : g.edges()) {
        Vertex lo = rank[e.u] < rank[e.v] ? e.u : e.v;
        Vertex hi = lo == e.u ? e.v : e.u;
        h.up_[lo].push_back({hi, e.w, e.w});
    }
    // contract in rank order; U(v) is complete and final when v is reached
    for (size_t r = 0; r < n; ++r) {
        Vertex v = h.order_.by_rank[r];
        auto& uv = h.up_[v];
        consolidate(uv);
        for (size_t i = 0; i < uv.size(); ++i)
            for (size_t j = i + 1; j < uv.size(); ++j) {
                Vertex a = uv[i].to, b = uv[j].to;
                Weight w = add(uv[i].wh, uv[j].wh);
                if (rank[b] < rank[a]) swap(a, b);
                h.up_[a].push_back({b, w, kInf});
            }
    }
    for (Vertex v = 0; v < n; ++v) {
        h.pairs_ += h.up_[v].size();
        for (const auto& e : h.up_[v]) h.down_[e.to].push_back(v);
    }
    return h;
}

Hierarchy::UpEntry* Hierarchy::find(Vertex lo, Vertex hi) {
    auto& list = up_[lo];
    auto it = lower_bound(list.begin(), list.end(), hi,
                          [](const UpEntry& e, Vertex x) { return e.to < x; });
    return (it != list.end() && it->to == hi) ? &*it : nullptr;
}

const Hierarchy::UpEntry* Hierarchy::find(Vertex lo, Vertex hi) const {
    return const_cast<Hierarchy*>(this)->find(lo, hi);
}

Weight Hierarchy::pair_weight(Vertex a, Vertex b) const {
    if (a == b) return 0;
    if (order_.rank_of[a] > order_.rank_of[b]) swap(a, b);
    const UpEntry* e = find(a, b);
    return e ? e->wh : kInf;
}

Hierarchy::UpEntry*
Hierarchy::ensure_pair(Vertex lo, Vertex hi,
                       vector<pair<Vertex, Vertex>>& created) {
    if (UpEntry* e = find(lo, hi)) return e;
    auto& list = up_[lo];
    auto it = lower_bound(list.begin(), list.end(), hi,
                          [](const UpEntry& e, Vertex x) { return e.to < x; });
    it = list.insert(it, UpEntry{hi, kInf, kInf});
    down_[hi].push_back(lo);
    ++pairs_;
    created.push_back({lo, hi});
    // closure: the new pair makes hi a member of U(lo), so hi must be paired
    // with every other member of U(lo)
    const auto& rank = order_.rank_of;
    vector<Vertex> partners;
    partners.reserve(list.size());
    for (const auto& e : list)
        if (e.to != hi) partners.push_back(e.to);
    for (Vertex x : partners) {
        Vertex a = x, b = hi;
        if (rank[b] < rank[a]) swap(a, b);
        ensure_pair(a, b, created);
    }
    // iterator may be stale after recursion; re-find
    return find(lo, hi);
}

vector<Hierarchy::PairChange>
Hierarchy::update(span<const EdgeChange> changes) {
    const auto& rank = order_.rank_of;

    using Key = pair<uint32_t, uint32_t>; // (rank lo, rank hi)
    priority_queue<Key, vector<Key>, greater<Key>> pq;
    unordered_set<uint64_t> queued;
    auto push = [&](Vertex lo, Vertex hi) {
        Key k{rank[lo], rank[hi]};
        uint64_t packed = (uint64_t(k.first) << 32) | k.second;
        if (queued.insert(packed).second) pq.push(k);
    };

    vector<pair<Vertex, Vertex>> created;
    for (const auto& c : changes) {
        Vertex lo = c.u, hi = c.v;
        if (rank[lo] > rank[hi]) swap(lo, hi);
        UpEntry* e = ensure_pair(lo, hi, created);
        e->ow = c.new_w;
        push(lo, hi);
    }
    for (auto [lo, hi] : created) push(lo, hi);
    created.clear();

    vector<PairChange> report;
    while (!pq.empty()) {
        auto [rlo, rhi] = pq.top();
        pq.pop();
        Vertex a = order_.by_rank[rlo], b = order_.by_rank[rhi];
        UpEntry* e = find(a, b);
        Weight cand = e->ow;
        for (Vertex v : down_[a]) {
            const UpEntry* va = find(v, a);
            if (va->wh >= kInf) continue;
            const UpEntry* vb = find(v, b);
            if (vb && vb->wh < kInf) cand = min(cand, add(va->wh, vb->wh));
        }
        if (cand == e->wh) continue;
        report.push_back({a, b, e->wh, cand});
        e->wh = cand;
        // pairs supported by a now need rechecking: (b, x) for x in U(a)
        for (const auto& ux : up_[a]) {
            if (ux.to == b) continue;
            Vertex p = b, q = ux.to;
            if (rank[q] < rank[p]) swap(p, q);
            ensure_pair(p, q, created);
            push(p, q);
        }
        // entries created by the closure restore need (re)checking too
        for (auto [lo, hi] : created) push(lo, hi);
        created.clear();
    }
    return report;
}

} // namespace psp
