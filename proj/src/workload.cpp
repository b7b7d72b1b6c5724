#include "psp/workload.hpp"

#include <algorithm>
#include <cmath>

#include "psp/search.hpp"

using namespace std;

namespace psp {

uint64_t Rng::next() {
    uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// ---- apply_update ---------------------------------------------------------

vector<EdgeChange> apply_update(Graph& g, const WeightUpdate& upd) {
    vector<EdgeChange> changes;
    switch (upd.kind) {
    case UpdateKind::decrease: {
        Weight old = g.weight(upd.u, upd.v);
        if (old >= kInf) throw ContractError("decrease on absent edge");
        if (upd.w >= old) throw ContractError("decrease does not decrease");
        g.set_weight(upd.u, upd.v, upd.w);
        changes.push_back({upd.u, upd.v, old, upd.w});
        break;
    }
    case UpdateKind::increase: {
        Weight old = g.weight(upd.u, upd.v);
        if (old >= kInf) throw ContractError("increase on absent edge");
        if (upd.w <= old || upd.w >= kInf)
            throw ContractError("increase does not increase");
        g.set_weight(upd.u, upd.v, upd.w);
        changes.push_back({upd.u, upd.v, old, upd.w});
        break;
    }
    case UpdateKind::insert: {
        if (g.has_edge(upd.u, upd.v)) throw ContractError("insert on present edge");
        if (upd.w >= kInf) throw ContractError("insert weight out of range");
        if (g.has_slot(upd.u, upd.v))
            g.set_weight(upd.u, upd.v, upd.w);
        else
            g.add_edge(upd.u, upd.v, upd.w);
        changes.push_back({upd.u, upd.v, kInf, upd.w});
        break;
    }
    case UpdateKind::erase: {
        Weight old = g.weight(upd.u, upd.v);
        if (old >= kInf) throw ContractError("erase on absent edge");
        g.set_weight(upd.u, upd.v, kInf);
        changes.push_back({upd.u, upd.v, old, kInf});
        break;
    }
    case UpdateKind::vertex_insert: {
        if (upd.u > g.vertex_count())
            throw ContractError("vertex_insert id is not contiguous");
        if (upd.u == g.vertex_count()) g.add_vertex();
        break; // edges arrive as separate inserts
    }
    case UpdateKind::vertex_erase: {
        g.check_vertex(upd.u);
        for (const Edge& e : g.neighbors(upd.u)) {
            if (e.w >= kInf) continue;
            changes.push_back({upd.u, e.to, e.w, kInf});
        }
        for (const auto& c : changes) g.set_weight(c.u, c.v, kInf);
        break;
    }
    }
    return changes;
}

// ---- update stream --------------------------------------------------------

vector<WeightUpdate> generate_updates(const Graph& g, size_t count, uint64_t seed) {
    auto edges = g.edges();
    if (edges.empty() && count > 0)
        throw InfeasibleError("cannot generate weight updates on an edgeless graph");
    Rng rng(seed);
    Graph scratch = g;
    vector<WeightUpdate> out;
    out.reserve(count);
    size_t total_attempts = 0;
    while (out.size() < count) {
        if (++total_attempts > 1000 * count + 1000)
            throw InfeasibleError("update generation failed to converge");
        const auto& e = edges[rng.below(edges.size())];
        Weight w = scratch.weight(e.u, e.v);
        double a = 2.0 * (1.0 - rng.real01()); // (0, 2]
        if (a == 1.0) continue;
        Weight neww = Weight(max<long long>(1, llround(a * double(w))));
        if (neww >= kInf) continue;
        if (a < 1.0) {
            if (neww >= w) continue;
            out.push_back({UpdateKind::decrease, e.u, e.v, neww});
        } else {
            if (neww <= w) continue;
            out.push_back({UpdateKind::increase, e.u, e.v, neww});
        }
        scratch.set_weight(e.u, e.v, neww);
    }
    return out;
}

void assign_complex_weights(Graph& g, uint64_t) {
    const size_t n = g.vertex_count();
    vector<size_t> deg(n);
    size_t cmax = 0;
    for (Vertex v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        cmax = max(cmax, deg[v]);
    }
    if (cmax == 0) return;
    for (const auto& e : g.edges()) {
        size_t md = max(deg[e.u], deg[e.v]);
        g.set_weight(e.u, e.v, Weight((cmax + md - 1) / md));
    }
}

// ---- query workloads --------------------------------------------------------

namespace {

// vertices grouped by partition + offsets, for O(1) complement draws
struct PartIndex {
    vector<Vertex> by_part;
    vector<size_t> offset; // per part: [offset[p], offset[p+1])
    int parts;
};

PartIndex build_part_index(const vector<int>& part_of, size_t n) {
    int k = 0;
    for (size_t v = 0; v < n; ++v) k = max(k, part_of[v] + 1);
    PartIndex pi;
    pi.parts = k;
    pi.offset.assign(size_t(k) + 1, 0);
    for (size_t v = 0; v < n; ++v)
        if (part_of[v] >= 0) ++pi.offset[size_t(part_of[v]) + 1];
    for (int p = 0; p < k; ++p) pi.offset[size_t(p) + 1] += pi.offset[p];
    pi.by_part.resize(pi.offset[size_t(k)]);
    vector<size_t> cur(pi.offset.begin(), pi.offset.end() - 1);
    for (size_t v = 0; v < n; ++v)
        if (part_of[v] >= 0) pi.by_part[cur[size_t(part_of[v])]++] = Vertex(v);
    return pi;
}

} // namespace

vector<QueryPair> generate_queries(const Graph& g, size_t count, uint64_t seed,
                                   QueryStratum stratum, const WorkloadContext* ctx) {
    const size_t n = g.vertex_count();
    Rng rng(seed);
    vector<QueryPair> out;
    out.reserve(count);
    if (count == 0) return out;
    if (n < 2) throw InfeasibleError("query workload needs at least two vertices");

    switch (stratum) {
    case QueryStratum::any: {
        while (out.size() < count) {
            Vertex s = Vertex(rng.below(n)), t = Vertex(rng.below(n));
            if (s == t) continue;
            out.push_back({s, t});
        }
        return out;
    }
    case QueryStratum::q1: {
        if (!ctx || !ctx->part_of) throw ContractError("Q1 stratum needs a partition");
        PartIndex pi = build_part_index(*ctx->part_of, n);
        vector<int> eligible;
        for (int p = 0; p < pi.parts; ++p)
            if (pi.offset[size_t(p) + 1] - pi.offset[p] >= 2) eligible.push_back(p);
        if (eligible.empty())
            throw InfeasibleError("no partition holds two vertices (Q1 infeasible)");
        while (out.size() < count) {
            int p = eligible[rng.below(eligible.size())];
            size_t lo = pi.offset[size_t(p)], sz = pi.offset[size_t(p) + 1] - lo;
            Vertex s = pi.by_part[lo + rng.below(sz)];
            Vertex t = pi.by_part[lo + rng.below(sz)];
            if (s == t) continue;
            out.push_back({s, t});
        }
        return out;
    }
    case QueryStratum::q2:
    case QueryStratum::q3: {
        if (!ctx || !ctx->is_boundary) throw ContractError("Q2/Q3 strata need boundary flags");
        vector<Vertex> bnd, inner;
        for (Vertex v = 0; v < n; ++v)
            ((*ctx->is_boundary)[v] ? bnd : inner).push_back(v);
        if (stratum == QueryStratum::q2) {
            if (bnd.size() < 2)
                throw InfeasibleError("fewer than two boundary vertices (Q2 infeasible)");
            while (out.size() < count) {
                Vertex s = bnd[rng.below(bnd.size())], t = bnd[rng.below(bnd.size())];
                if (s == t) continue;
                out.push_back({s, t});
            }
        } else {
            if (bnd.empty() || inner.empty())
                throw InfeasibleError("need both boundary and non-boundary vertices (Q3 infeasible)");
            while (out.size() < count) {
                Vertex b = bnd[rng.below(bnd.size())], i = inner[rng.below(inner.size())];
                if (rng.next() & 1)
                    out.push_back({b, i});
                else
                    out.push_back({i, b});
            }
        }
        return out;
    }
    case QueryStratum::q4: {
        if (!ctx || !ctx->part_of) throw ContractError("Q4 stratum needs a partition");
        PartIndex pi = build_part_index(*ctx->part_of, n);
        int nonempty = 0;
        for (int p = 0; p < pi.parts; ++p)
            if (pi.offset[size_t(p) + 1] > pi.offset[p]) ++nonempty;
        if (nonempty < 2)
            throw InfeasibleError("fewer than two non-empty partitions (Q4 infeasible)");
        const size_t total = pi.by_part.size();
        while (out.size() < count) {
            Vertex s = pi.by_part[rng.below(total)];
            int ps = (*ctx->part_of)[s];
            size_t lo = pi.offset[size_t(ps)], hi = pi.offset[size_t(ps) + 1];
            size_t outside = total - (hi - lo);
            if (outside == 0) throw InfeasibleError("single partition covers the graph (Q4 infeasible)");
            size_t idx = rng.below(outside);
            if (idx >= lo) idx += hi - lo; // skip s's block
            out.push_back({s, pi.by_part[idx]});
        }
        return out;
    }
    case QueryStratum::d_band: {
        if (!ctx || ctx->band < 1 || ctx->band > 10)
            throw ContractError("distance band must be 1..10");
        Weight lmin = ctx->l_min;
        if (lmin == 0) {
            lmin = kInf;
            for (const auto& e : g.edges())
                if (e.w > 0) lmin = min(lmin, e.w);
            if (lmin >= kInf) lmin = 1;
        }
        Weight lmax = ctx->l_max;
        if (lmax == 0) { // double-sweep eccentricity estimate
            auto d0 = dijkstra(g, 0);
            Vertex f1 = 0;
            for (Vertex v = 0; v < n; ++v)
                if (d0[v] < kInf && d0[v] > d0[f1]) f1 = v;
            auto d1 = dijkstra(g, f1);
            for (Vertex v = 0; v < n; ++v)
                if (d1[v] < kInf) lmax = max(lmax, d1[v]);
        }
        if (lmax <= lmin)
            throw InfeasibleError("degenerate distance range for banded queries");
        double x = pow(double(lmax) / double(lmin), 0.1);
        double lo = double(lmin) * pow(x, ctx->band - 1);
        double hi = double(lmin) * pow(x, ctx->band);
        size_t attempts = 0;
        while (out.size() < count) {
            if (++attempts > 1000 * count + 1000)
                throw InfeasibleError("distance band " + to_string(ctx->band) +
                                      " yielded no pairs");
            Vertex s = Vertex(rng.below(n)), t = Vertex(rng.below(n));
            if (s == t) continue;
            Weight d = dijkstra_distance(g, s, t);
            if (d >= kInf) continue;
            bool in_band = double(d) > lo && double(d) <= hi;
            if (ctx->band == 1 && d == lmin) in_band = true;
            if (in_band) out.push_back({s, t});
        }
        return out;
    }
    }
    throw ContractError("unknown query stratum");
}

} // namespace psp
