#include "psp/strategy.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_map>

#include "psp/search.hpp"
#include "psp/serialize.hpp"

namespace psp {

std::string_view strategy_name(Strategy s) {
    switch (s) {
        case Strategy::pre_boundary: return "pre-boundary";
        case Strategy::no_boundary: return "no-boundary";
        case Strategy::post_boundary: return "post-boundary";
    }
    throw Error("unknown strategy");
}

Strategy strategy_from(std::string_view name) {
    if (name == "pre-boundary" || name == "pre") return Strategy::pre_boundary;
    if (name == "no-boundary" || name == "no") return Strategy::no_boundary;
    if (name == "post-boundary" || name == "post")
        return Strategy::post_boundary;
    throw Error("unknown strategy: " + std::string(name));
}

Vertex PSPIndex::local_of(int i, Vertex v) const {
    const auto& lv = local_verts[i];
    const auto it = std::lower_bound(lv.begin(), lv.end(), v);
    if (it == lv.end() || *it != v)
        throw ContractError("vertex " + std::to_string(v) +
                            " is not carried by partition " + std::to_string(i));
    return Vertex(it - lv.begin());
}

int PSPIndex::home_of(Vertex v) const {
    g.check_vertex(v);
    return part.part_of[v];
}

namespace {

using PairList = std::vector<std::pair<Vertex, Vertex>>;

std::vector<std::vector<Vertex>> make_local_verts(const PartitionResult& p) {
    std::vector<std::vector<Vertex>> lv(p.k);
    for (int i = 0; i < p.k; ++i) {
        if (!p.core_periphery) {
            lv[i] = p.members[i]; // boundary vertices are members here
        } else {
            lv[i].resize(p.members[i].size() + p.boundary[i].size());
            std::merge(p.members[i].begin(), p.members[i].end(),
                       p.boundary[i].begin(), p.boundary[i].end(),
                       lv[i].begin());
        }
    }
    return lv;
}

// Induced partition subgraphs over local ids. Edges between two overlay
// vertices (possible only under core-periphery) belong to the overlay and
// are excluded.
std::vector<Graph> make_local_graphs(const Graph& g, const PartitionResult& p,
                                     const std::vector<std::vector<Vertex>>& lv) {
    std::vector<Graph> out;
    out.reserve(p.k);
    for (int i = 0; i < p.k; ++i) {
        Graph sub(lv[i].size());
        std::unordered_map<Vertex, Vertex> loc;
        loc.reserve(lv[i].size());
        for (std::size_t j = 0; j < lv[i].size(); ++j) loc[lv[i][j]] = Vertex(j);
        for (Vertex v : lv[i]) {
            if (p.core_periphery && p.in_core[v]) continue;
            for (const auto& e : g.neighbors(v)) {
                if (e.w >= kInf) continue;
                const auto it = loc.find(e.to);
                if (it == loc.end()) continue;
                if (p.core_periphery && p.in_core[e.to]) {
                    sub.add_edge(loc[v], it->second, e.w); // member-to-core
                } else if (e.to > v) {
                    sub.add_edge(loc[v], it->second, e.w);
                }
            }
        }
        out.push_back(std::move(sub));
    }
    return out;
}

// Index of (a,b) inside the a<b enumeration of the sorted boundary list.
std::size_t pair_enum_index(const std::vector<Vertex>& b, Vertex x, Vertex y) {
    const std::size_t n = b.size();
    const std::size_t i =
        std::size_t(std::lower_bound(b.begin(), b.end(), x) - b.begin());
    const std::size_t j =
        std::size_t(std::lower_bound(b.begin(), b.end(), y) - b.begin());
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

// Position of overlay pair entry (a,b) of partition i, or npos.
std::size_t pair_entry(const PSPIndex& idx, int i, Vertex a, Vertex b) {
    const auto& pp = idx.overlay.part_pairs[i];
    const auto it = std::lower_bound(
        pp.begin(), pp.end(), std::pair(a, b), [](const auto& e, const auto& k) {
            return std::pair(e.a, e.b) < k;
        });
    if (it == pp.end() || it->a != a || it->b != b)
        return std::size_t(-1);
    return std::size_t(it - pp.begin());
}

// Current overlay weight owed to slot (a,b), recomputed from the live pair
// contributions and the raw graph. Returns kInf when nothing feeds the slot.
Weight slot_value(const PSPIndex& idx, Vertex a, Vertex b) {
    if (idx.part.core_periphery) {
        Weight w = idx.g.weight(a, b); // raw overlay-level edge, if any
        for (int i = 0; i < idx.part.k; ++i) {
            const std::size_t e = pair_entry(idx, i, a, b);
            if (e != std::size_t(-1)) w = std::min(w, idx.pair_w[i][e]);
        }
        return w;
    }
    const int i = idx.part.part_of[a];
    if (idx.part.part_of[b] != i) return idx.g.weight(a, b); // inter-edge
    const std::size_t e = pair_entry(idx, i, a, b);
    if (e == std::size_t(-1)) return kInf; // slot not represented
    return idx.overlay.part_pairs[i][e].clique ? idx.pair_w[i][e]
                                               : idx.g.weight(a, b);
}

std::pair<Vertex, Vertex> norm(Vertex u, Vertex v) {
    return u < v ? std::pair(u, v) : std::pair(v, u);
}

// Pushes the new weights of all dirty overlay slots to the overlay engine.
std::vector<EdgeChange> flush_overlay(PSPIndex& idx,
                                      const std::set<std::pair<Vertex, Vertex>>& dirty) {
    std::vector<EdgeChange> changes;
    for (const auto& [a, b] : dirty) {
        const Vertex pa = idx.overlay.pos(a), pb = idx.overlay.pos(b);
        const Weight old_w = idx.tilde->graph().weight(pa, pb);
        const Weight new_w = slot_value(idx, a, b);
        if (new_w != old_w) changes.push_back({pa, pb, old_w, new_w});
    }
    if (!changes.empty()) {
        idx.tilde->apply(changes);
        ++idx.counters.overlay_engine_updates;
    }
    return changes;
}

// Recomputes partition i's contribution for each retained clique pair and
// returns the entries that moved (index into part_pairs[i], new weight).
std::vector<std::pair<std::size_t, Weight>> recheck_partition(PSPIndex& idx,
                                                              int i) {
    const auto& pp = idx.overlay.part_pairs[i];
    std::vector<std::pair<std::size_t, Weight>> moved;
    ++idx.counters.boundary_rechecks;
    if (pp.empty()) return moved;
    if (!idx.pruned) {
        const auto& b = idx.part.boundary[i];
        std::vector<Vertex> lb;
        lb.reserve(b.size());
        for (Vertex v : b) lb.push_back(idx.local_of(i, v));
        const auto mat = idx.parts[i]->all_pairs(lb);
        idx.counters.partition_label_queries += b.size() * (b.size() - 1) / 2;
        std::size_t e = 0;
        for (std::size_t x = 0; x < b.size(); ++x)
            for (std::size_t y = x + 1; y < b.size(); ++y, ++e) {
                const Weight w = mat[x * b.size() + y];
                if (w != idx.pair_w[i][e]) moved.push_back({e, w});
            }
    } else {
        for (std::size_t e = 0; e < pp.size(); ++e) {
            if (!pp[e].clique) continue;
            const Weight w = idx.parts[i]->query(idx.local_of(i, pp[e].a),
                                                 idx.local_of(i, pp[e].b));
            ++idx.counters.partition_label_queries;
            if (w != idx.pair_w[i][e]) moved.push_back({e, w});
        }
    }
    return moved;
}

// Which partition absorbs a change on edge (u,v): a partition id, or -1 for
// an overlay-level edge (inter-partition or core-core).
int edge_class(const PSPIndex& idx, Vertex u, Vertex v) {
    const int hu = idx.part.part_of[u], hv = idx.part.part_of[v];
    if (hu == hv) return hu; // same partition, or both core (-1)
    if (hu == -1) return hv; // member-to-core
    if (hv == -1) return hu;
    if (idx.part.core_periphery)
        throw ContractError("edge connects two periphery trees");
    return -1; // inter-partition edge of an edge-cut split
}

// Effective, already-applied changes grouped per absorbing partition, plus
// overlay-level raw changes.
struct GroupedChanges {
    std::vector<std::vector<EdgeChange>> per_part; // local ids
    std::vector<EdgeChange> raw_overlay;           // original ids
};

GroupedChanges group_changes(const PSPIndex& idx,
                             std::span<const EdgeChange> cs) {
    GroupedChanges g;
    g.per_part.resize(idx.part.k);
    for (const auto& c : cs) {
        const int j = edge_class(idx, c.u, c.v);
        if (j < 0) {
            g.raw_overlay.push_back(c);
        } else {
            g.per_part[j].push_back(
                {idx.local_of(j, c.u), idx.local_of(j, c.v), c.old_w, c.new_w});
        }
    }
    return g;
}

// Boundary vertices that must run a full-graph search in construction step
// one, with their same-partition co-boundary targets.
struct StepOneSource {
    Vertex b;
    std::vector<Vertex> targets;            // co-boundary, all partitions of b
    std::vector<std::pair<int, std::size_t>> fills; // partition, position of b
};

std::vector<StepOneSource> step_one_plan(const PartitionResult& p) {
    std::map<Vertex, StepOneSource> plan;
    for (int i = 0; i < p.k; ++i) {
        const auto& b = p.boundary[i];
        for (std::size_t x = 0; x < b.size(); ++x) {
            auto& s = plan[b[x]];
            s.b = b[x];
            s.fills.push_back({i, x});
            for (Vertex t : b)
                if (t != b[x]) s.targets.push_back(t);
        }
    }
    std::vector<StepOneSource> out;
    out.reserve(plan.size());
    for (auto& [v, s] : plan) out.push_back(std::move(s));
    return out;
}

// Full-graph boundary-pair distances per partition, aligned with the a<b
// boundary enumeration. Counts one full-graph search per boundary vertex.
std::vector<std::vector<Weight>> global_pair_weights(const Graph& g,
                                                     const PartitionResult& p,
                                                     IndexCounters& counters) {
    std::vector<std::vector<Weight>> gw(p.k);
    for (int i = 0; i < p.k; ++i) {
        const std::size_t n = p.boundary[i].size();
        gw[i].assign(n * (n - 1) / 2, kInf);
    }
    SearchBuffer buf;
    for (const auto& src : step_one_plan(p)) {
        dijkstra_targets(g, src.b, src.targets, buf);
        ++counters.full_graph_dijkstra;
        for (const auto& [i, x] : src.fills) {
            const auto& b = p.boundary[i];
            for (std::size_t y = x + 1; y < b.size(); ++y)
                gw[i][pair_enum_index(b, b[x], b[y])] = buf.get(b[y]);
        }
    }
    return gw;
}

// Local boundary-pair distances per partition through the partition engines
// (construction step two of the local strategies).
std::vector<std::vector<Weight>> local_pair_weights(PSPIndex& idx) {
    const auto& p = idx.part;
    std::vector<std::vector<Weight>> w(p.k);
    for (int i = 0; i < p.k; ++i) {
        const auto& b = p.boundary[i];
        if (b.size() < 2) continue;
        std::vector<Vertex> lb;
        lb.reserve(b.size());
        for (Vertex v : b) lb.push_back(idx.local_of(i, v));
        const auto mat = idx.parts[i]->all_pairs(lb);
        idx.counters.partition_label_queries += b.size() * (b.size() - 1) / 2;
        w[i].reserve(b.size() * (b.size() - 1) / 2);
        for (std::size_t x = 0; x < b.size(); ++x)
            for (std::size_t y = x + 1; y < b.size(); ++y)
                w[i].push_back(mat[x * b.size() + y]);
    }
    return w;
}

// Assembles the overlay for a core-periphery split: the core subgraph plus
// min-merged per-tree attachment-pair contributions.
OverlayGraph core_overlay(const Graph& g, const PartitionResult& p,
                          const std::vector<std::vector<Weight>>& w) {
    OverlayGraph o;
    for (Vertex v = 0; v < p.n; ++v)
        if (p.in_core[v]) o.vertices.push_back(v);
    o.pos_of.assign(p.n, OverlayGraph::kNoPos);
    for (std::size_t i = 0; i < o.vertices.size(); ++i)
        o.pos_of[o.vertices[i]] = Vertex(i);
    o.graph = Graph(o.vertices.size());
    for (Vertex v : o.vertices)
        for (const auto& e : g.neighbors(v))
            if (e.w < kInf && e.to > v && p.in_core[e.to])
                o.graph.add_edge(o.pos(v), o.pos(e.to), e.w);
    o.part_pairs.resize(p.k);
    for (int i = 0; i < p.k; ++i) {
        std::size_t e = 0;
        for (const auto& [a, b] : boundary_pairs(p, i)) {
            o.part_pairs[i].push_back({a, b, true});
            if (w[i][e] < kInf) o.graph.add_edge(o.pos(a), o.pos(b), w[i][e]);
            ++e;
        }
    }
    return o;
}

// Initializes pair_w from the final overlay pair lists: clique entries take
// the computed contribution, raw entries mirror the graph.
void init_pair_w(PSPIndex& idx, const std::vector<std::vector<Weight>>& w) {
    const auto& p = idx.part;
    idx.pair_w.assign(p.k, {});
    for (int i = 0; i < p.k; ++i) {
        const auto& pp = idx.overlay.part_pairs[i];
        idx.pair_w[i].reserve(pp.size());
        for (const auto& e : pp) {
            if (e.clique)
                idx.pair_w[i].push_back(
                    w[i][pair_enum_index(p.boundary[i], e.a, e.b)]);
            else
                idx.pair_w[i].push_back(idx.g.weight(e.a, e.b));
        }
    }
}

EngineOptions engine_opts(const BuildOptions& opt, bool overlay) {
    EngineOptions eo;
    if (overlay && opt.overlay_order) eo.custom_order = opt.overlay_order;
    return eo;
}

void common_init(PSPIndex& idx, const Graph& g, const PartitionResult& p,
                 const BuildOptions& opt, Strategy strat) {
    if (p.n != g.vertex_count())
        throw ContractError("partition does not describe this graph");
    if (opt.prune && p.core_periphery)
        throw ContractError("pruning requires an edge-cut partition");
    idx.strategy = strat;
    idx.part_kind = opt.part_kind;
    idx.overlay_kind = opt.overlay_kind;
    idx.pruned = opt.prune;
    idx.g = g;
    idx.part = p;
    idx.local_verts = make_local_verts(p);
}

// Overlay assembly shared by the build paths; w holds the clique-pair
// contributions (local or global depending on the strategy).
void finish_overlay(PSPIndex& idx, const BuildOptions& opt,
                    const std::vector<std::vector<Weight>>& w) {
    if (idx.part.core_periphery) {
        idx.overlay = core_overlay(idx.g, idx.part, w);
    } else {
        OverlayGraph full = build_overlay(idx.part, w);
        if (opt.prune) {
            idx.cls = classify_boundaries(idx.g, idx.part);
            idx.overlay = prune_overlay(full, idx.cls, idx.g, idx.part);
        } else {
            idx.overlay = std::move(full);
        }
    }
    init_pair_w(idx, w);
    if (idx.overlay.graph.vertex_count() > 0) {
        EngineOptions eo = engine_opts(opt, true);
        VertexOrder stratified;
        if (!eo.custom_order && opt.overlay_stratum) {
            std::vector<int> s(idx.overlay.vertices.size(), 0);
            for (std::size_t i = 0; i < idx.overlay.vertices.size(); ++i)
                s[i] = (*opt.overlay_stratum)[idx.overlay.vertices[i]];
            stratified = build_order_stratified(idx.overlay.graph, s);
            eo.custom_order = &stratified; // engines copy the order
        }
        idx.tilde = make_engine(idx.overlay_kind, idx.overlay.graph, eo);
    }
}

// Pre-warms plain-search partition engines with one cached row per boundary
// vertex, so later point queries against a boundary endpoint are lookups.
void warm_partition_rows(PSPIndex& idx) {
    for (int i = 0; i < idx.part.k; ++i) {
        const auto& b = idx.part.boundary[i];
        if (b.empty()) continue;
        std::vector<Vertex> lb;
        lb.reserve(b.size());
        for (Vertex v : b) lb.push_back(idx.local_of(i, v));
        idx.parts[i]->all_pairs(lb);
    }
}

// Builds one engine per local graph. The builds are independent, so when
// more than one worker is requested they run on strided std::threads; the
// resulting engines (and every counter) are identical either way.
std::vector<std::unique_ptr<SPEngine>> make_partition_engines(
    EngineKind kind, const std::vector<Graph>& locals, const EngineOptions& eo,
    int threads) {
    std::vector<std::unique_ptr<SPEngine>> parts(locals.size());
    const int n_workers =
        std::max(1, std::min<int>(threads, int(locals.size())));
    if (n_workers == 1) {
        for (std::size_t i = 0; i < locals.size(); ++i)
            parts[i] = make_engine(kind, locals[i], eo);
        return parts;
    }
    std::exception_ptr first_error;
    std::mutex error_mu;
    std::vector<std::thread> workers;
    workers.reserve(std::size_t(n_workers));
    for (int w = 0; w < n_workers; ++w)
        workers.emplace_back([&, w] {
            try {
                for (std::size_t i = std::size_t(w); i < locals.size();
                     i += std::size_t(n_workers))
                    parts[i] = make_engine(kind, locals[i], eo);
            } catch (...) {
                const std::scoped_lock lock(error_mu);
                if (!first_error) first_error = std::current_exception();
            }
        });
    for (auto& t : workers) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return parts;
}

} // namespace

PSPIndex build_no_boundary(const Graph& g, const PartitionResult& p,
                           const BuildOptions& opt) {
    PSPIndex idx;
    common_init(idx, g, p, opt, Strategy::no_boundary);
    const auto locals = make_local_graphs(g, p, idx.local_verts);
    idx.parts = make_partition_engines(opt.part_kind, locals,
                                       engine_opts(opt, false), opt.threads);
    const auto w = local_pair_weights(idx);
    finish_overlay(idx, opt, w);
    if (opt.cache_partition_rows) warm_partition_rows(idx);
    return idx;
}

PSPIndex build_pre_boundary(const Graph& g, const PartitionResult& p,
                            const BuildOptions& opt) {
    PSPIndex idx;
    common_init(idx, g, p, opt, Strategy::pre_boundary);
    const auto gw = global_pair_weights(g, p, idx.counters);
    auto locals = make_local_graphs(g, p, idx.local_verts);
    for (int i = 0; i < p.k; ++i) { // bake global shortcuts into each copy
        const auto& b = p.boundary[i];
        std::size_t e = 0;
        for (std::size_t x = 0; x < b.size(); ++x)
            for (std::size_t y = x + 1; y < b.size(); ++y, ++e)
                if (gw[i][e] < kInf)
                    locals[i].add_edge(idx.local_of(i, b[x]),
                                       idx.local_of(i, b[y]), gw[i][e]);
    }
    idx.parts = make_partition_engines(opt.part_kind, locals,
                                       engine_opts(opt, false), opt.threads);
    finish_overlay(idx, opt, gw);
    if (opt.cache_partition_rows) warm_partition_rows(idx);
    return idx;
}

PSPIndex build_post_boundary(const Graph& g, const PartitionResult& p,
                             const BuildOptions& opt) {
    PSPIndex idx = build_no_boundary(g, p, opt);
    idx.strategy = Strategy::post_boundary;
    for (int i = 0; i < p.k; ++i) {
        idx.repaired.push_back(idx.parts[i]->clone());
        std::vector<EdgeChange> repairs;
        for (const auto& [a, b] : boundary_pairs(p, i)) {
            const Weight dt =
                idx.tilde->query(idx.overlay.pos(a), idx.overlay.pos(b));
            ++idx.counters.overlay_label_queries;
            const Vertex la = idx.local_of(i, a), lb = idx.local_of(i, b);
            const Weight old_w = idx.repaired[i]->graph().weight(la, lb);
            if (dt < old_w) repairs.push_back({la, lb, old_w, dt});
        }
        if (!repairs.empty()) idx.repaired[i]->apply(repairs);
    }
    return idx;
}

Weight psp_query(const PSPIndex& idx, Vertex s, Vertex t) {
    idx.g.check_vertex(s);
    idx.g.check_vertex(t);
    if (s == t) return 0;
    const auto& qf =
        idx.strategy == Strategy::post_boundary ? idx.repaired : idx.parts;
    const int hs = idx.home_of(s), ht = idx.home_of(t);

    if (hs == ht && hs != -1) {
        const Vertex ls = idx.local_of(hs, s), lt = idx.local_of(hs, t);
        const Weight direct = qf[hs]->query(ls, lt);
        ++idx.counters.partition_label_queries;
        if (idx.strategy != Strategy::no_boundary) return direct;
        // local answer, improved by any detour through the overlay
        const auto& b = idx.part.boundary[hs];
        if (b.empty() || !idx.tilde) return direct;
        std::vector<std::pair<Vertex, Weight>> rs, rt;
        rs.reserve(b.size());
        rt.reserve(b.size());
        std::vector<Vertex> lb;
        lb.reserve(b.size());
        for (Vertex v : b) lb.push_back(idx.local_of(hs, v));
        const auto row_s = idx.parts[hs]->one_to_many(ls, lb);
        const auto row_t = idx.parts[hs]->one_to_many(lt, lb);
        idx.counters.partition_label_queries += 2 * b.size();
        for (std::size_t j = 0; j < b.size(); ++j) {
            rs.push_back({idx.overlay.pos(b[j]), row_s[j]});
            rt.push_back({idx.overlay.pos(b[j]), row_t[j]});
        }
        ++idx.counters.overlay_label_queries;
        return std::min(direct, idx.tilde->multi_query(rs, rt));
    }

    // endpoints on the overlay itself or in different partitions
    auto seeds = [&](Vertex v, int h) {
        std::vector<std::pair<Vertex, Weight>> out;
        if (h == -1 || idx.is_boundary(v)) {
            out.push_back({idx.overlay.pos(v), 0});
            return out;
        }
        const auto& b = idx.part.boundary[h];
        std::vector<Vertex> lb;
        lb.reserve(b.size());
        for (Vertex x : b) lb.push_back(idx.local_of(h, x));
        const auto row = qf[h]->one_to_many(idx.local_of(h, v), lb);
        idx.counters.partition_label_queries += b.size();
        out.reserve(b.size());
        for (std::size_t j = 0; j < b.size(); ++j)
            out.push_back({idx.overlay.pos(b[j]), row[j]});
        return out;
    };
    if (!idx.tilde) return kInf; // no boundary at all: disconnected halves
    const auto rs = seeds(s, hs), rt = seeds(t, ht);
    ++idx.counters.overlay_label_queries;
    return idx.tilde->multi_query(rs, rt);
}

namespace {

// ---- maintenance cores --------------------------------------------------

// No-boundary absorption: partition engines take their raw changes, touched
// partitions re-check their boundary pairs, and the overlay receives the
// resulting slot movements. Returns the changes applied to the overlay.
std::vector<EdgeChange> absorb_no(PSPIndex& idx,
                                  std::span<const EdgeChange> cs) {
    const auto grouped = group_changes(idx, cs);
    std::set<std::pair<Vertex, Vertex>> dirty;
    for (int j = 0; j < idx.part.k; ++j) {
        if (grouped.per_part[j].empty()) continue;
        idx.parts[j]->apply(grouped.per_part[j]);
        ++idx.counters.partition_engine_updates;
        for (const auto& [e, w] : recheck_partition(idx, j)) {
            idx.pair_w[j][e] = w;
            dirty.insert(
                norm(idx.overlay.part_pairs[j][e].a, idx.overlay.part_pairs[j][e].b));
        }
    }
    for (const auto& c : cs) { // raw slots the overlay mirrors directly
        const int j = edge_class(idx, c.u, c.v);
        if (j < 0) {
            dirty.insert(norm(c.u, c.v));
        } else if (idx.pruned) {
            const auto [a, b] = norm(c.u, c.v);
            const std::size_t e = pair_entry(idx, j, a, b);
            if (e != std::size_t(-1) && !idx.overlay.part_pairs[j][e].clique)
                dirty.insert({a, b});
        }
    }
    if (!idx.tilde || dirty.empty()) return {};
    return flush_overlay(idx, dirty);
}

// Pre-boundary absorption: one full boundary recomputation over the mutated
// graph, then shortcut diffs into the partition copies and the overlay.
void absorb_pre(PSPIndex& idx, std::span<const EdgeChange> cs) {
    const auto& p = idx.part;
    const auto gw = global_pair_weights(idx.g, p, idx.counters);
    std::vector<std::vector<EdgeChange>> per_part(p.k);
    std::set<std::pair<Vertex, Vertex>> dirty;
    for (int i = 0; i < p.k; ++i) {
        ++idx.counters.boundary_rechecks;
        const auto& b = p.boundary[i];
        std::size_t e = 0;
        for (std::size_t x = 0; x < b.size(); ++x)
            for (std::size_t y = x + 1; y < b.size(); ++y, ++e) {
                const Vertex la = idx.local_of(i, b[x]),
                             lb = idx.local_of(i, b[y]);
                const Weight old_w = idx.parts[i]->graph().weight(la, lb);
                if (gw[i][e] != old_w)
                    per_part[i].push_back({la, lb, old_w, gw[i][e]});
                const std::size_t pe = pair_entry(idx, i, b[x], b[y]);
                if (pe != std::size_t(-1) && idx.pair_w[i][pe] != gw[i][e]) {
                    idx.pair_w[i][pe] = gw[i][e];
                    dirty.insert({b[x], b[y]});
                }
            }
    }
    for (const auto& c : cs) { // raw changes not covered by a shortcut slot
        const int j = edge_class(idx, c.u, c.v);
        if (j < 0) {
            dirty.insert(norm(c.u, c.v));
            continue;
        }
        if (idx.is_boundary(c.u) && idx.is_boundary(c.v)) {
            if (idx.pruned) { // possibly a retained raw overlay slot
                const auto [a, b] = norm(c.u, c.v);
                const std::size_t e = pair_entry(idx, j, a, b);
                if (e != std::size_t(-1) && !idx.overlay.part_pairs[j][e].clique)
                    dirty.insert({a, b});
            }
            continue; // the pair slot in the copy already carries d(u,v)
        }
        per_part[j].push_back(
            {idx.local_of(j, c.u), idx.local_of(j, c.v), c.old_w, c.new_w});
    }
    for (int i = 0; i < p.k; ++i) {
        if (per_part[i].empty()) continue;
        idx.parts[i]->apply(per_part[i]);
        ++idx.counters.partition_engine_updates;
    }
    if (idx.tilde && !dirty.empty()) flush_overlay(idx, dirty);
}

// Post-boundary absorption: the local family absorbs first; if the overlay
// moved, every partition's repaired copy is re-synced against fresh overlay
// answers, and raw changes reach the repaired copies either way.
void absorb_post(PSPIndex& idx, std::span<const EdgeChange> cs) {
    const bool overlay_moved = !absorb_no(idx, cs).empty();
    const auto& p = idx.part;
    std::vector<std::vector<EdgeChange>> per_part(p.k);
    for (const auto& c : cs) {
        const int j = edge_class(idx, c.u, c.v);
        if (j < 0) continue;
        if (idx.is_boundary(c.u) && idx.is_boundary(c.v))
            continue; // repaired pair slots are synced from the overlay
        per_part[j].push_back(
            {idx.local_of(j, c.u), idx.local_of(j, c.v), c.old_w, c.new_w});
    }
    if (overlay_moved) {
        for (int i = 0; i < p.k; ++i) {
            for (const auto& [a, b] : boundary_pairs(p, i)) {
                const Weight dt =
                    idx.tilde->query(idx.overlay.pos(a), idx.overlay.pos(b));
                ++idx.counters.overlay_label_queries;
                const Vertex la = idx.local_of(i, a), lb = idx.local_of(i, b);
                const Weight old_w = idx.repaired[i]->graph().weight(la, lb);
                if (dt != old_w) per_part[i].push_back({la, lb, old_w, dt});
            }
        }
    }
    for (int i = 0; i < p.k; ++i) {
        if (per_part[i].empty()) continue;
        idx.repaired[i]->apply(per_part[i]);
        ++idx.counters.partition_engine_updates;
    }
}

void absorb(PSPIndex& idx, std::span<const EdgeChange> cs) {
    if (cs.empty()) return;
    switch (idx.strategy) {
        case Strategy::pre_boundary: absorb_pre(idx, cs); break;
        case Strategy::no_boundary: absorb_no(idx, cs); break;
        case Strategy::post_boundary: absorb_post(idx, cs); break;
    }
}

void expect_weight_kind(const WeightUpdate& u) {
    if (u.kind != UpdateKind::decrease && u.kind != UpdateKind::increase)
        throw ContractError(
            "weight maintenance handles decrease/increase only; use the "
            "structural path for inserts and deletions");
}

// Can this structural change be absorbed without re-partitioning? Evaluated
// against the CURRENT graph state (slot existence matters for pruned
// overlays: only brand-new adjacency can contradict the frozen
// classification).
bool absorbable(const PSPIndex& idx, const Graph& cur, Vertex u, Vertex v,
                UpdateKind kind) {
    const int hu = idx.part.part_of[u], hv = idx.part.part_of[v];
    if (idx.part.core_periphery) {
        if (hu == hv && hu != -1) return true; // inside one tree
        if (hu == -1 && hv == -1) return true; // core-core: overlay edge
        if (hu != -1 && hv != -1) return false; // would link two trees
        const int tree = hu == -1 ? hv : hu;
        const Vertex core = hu == -1 ? u : v;
        // a member-core edge is carried only if the tree already lists the
        // core vertex as an attachment
        return std::binary_search(idx.part.boundary[tree].begin(),
                                  idx.part.boundary[tree].end(), core);
    }
    if (hu != hv) // crossing edges need two boundary endpoints
        return idx.is_boundary(u) && idx.is_boundary(v);
    if (kind == UpdateKind::insert && idx.pruned && !cur.has_slot(u, v)) {
        // brand-new adjacency incident to a fully-surrounded boundary vertex
        // would change the frozen classification the pruned overlay relies on
        auto full = [&](Vertex x) {
            return idx.is_boundary(x) && !idx.cls.half[x];
        };
        if (full(u) || full(v)) return false;
    }
    return true;
}

} // namespace

void update_pre_boundary(PSPIndex& idx, const WeightUpdate& u) {
    if (idx.strategy != Strategy::pre_boundary)
        throw ContractError("index was not built pre-boundary");
    expect_weight_kind(u);
    const auto cs = apply_update(idx.g, u);
    absorb_pre(idx, cs);
}

void update_no_boundary(PSPIndex& idx, const WeightUpdate& u) {
    if (idx.strategy != Strategy::no_boundary)
        throw ContractError("index was not built no-boundary");
    expect_weight_kind(u);
    const auto cs = apply_update(idx.g, u);
    absorb_no(idx, cs);
}

void update_post_boundary(PSPIndex& idx, const WeightUpdate& u) {
    if (idx.strategy != Strategy::post_boundary)
        throw ContractError("index was not built post-boundary");
    expect_weight_kind(u);
    const auto cs = apply_update(idx.g, u);
    absorb_post(idx, cs);
}

UpdateOutcome structural_update(PSPIndex& idx, const WeightUpdate& u) {
    switch (u.kind) {
        case UpdateKind::decrease:
        case UpdateKind::increase:
            throw ContractError("not a structural update");
        case UpdateKind::vertex_insert:
            return UpdateOutcome::rebuild_required; // no partition to join
        case UpdateKind::vertex_erase: {
            const auto cs = apply_update(idx.g, u); // validates the vertex
            absorb(idx, cs);
            return UpdateOutcome::applied;
        }
        case UpdateKind::insert:
        case UpdateKind::erase: {
            idx.g.check_vertex(u.u);
            idx.g.check_vertex(u.v);
            const bool live = idx.g.has_edge(u.u, u.v);
            if (u.kind == UpdateKind::insert && live)
                throw ContractError("edge already present");
            if (u.kind == UpdateKind::erase && !live)
                throw ContractError("edge not present");
            if (!absorbable(idx, idx.g, u.u, u.v, u.kind))
                return UpdateOutcome::rebuild_required;
            const auto cs = apply_update(idx.g, u);
            absorb(idx, cs);
            return UpdateOutcome::applied;
        }
    }
    throw ContractError("unknown update kind");
}

UpdateOutcome psp_update(PSPIndex& idx, const WeightUpdate& u) {
    if (u.kind == UpdateKind::decrease || u.kind == UpdateKind::increase) {
        switch (idx.strategy) {
            case Strategy::pre_boundary: update_pre_boundary(idx, u); break;
            case Strategy::no_boundary: update_no_boundary(idx, u); break;
            case Strategy::post_boundary: update_post_boundary(idx, u); break;
        }
        return UpdateOutcome::applied;
    }
    return structural_update(idx, u);
}

UpdateOutcome batch_update(PSPIndex& idx, std::span<const WeightUpdate> us) {
    // Simulate sequentially on a scratch copy; the surviving net change per
    // edge is the last writer's state (conflicts resolve last-wins).
    Graph scratch = idx.g;
    std::map<std::pair<Vertex, Vertex>, EdgeChange> net;
    for (const auto& u : us) {
        if (u.kind == UpdateKind::vertex_insert)
            return UpdateOutcome::rebuild_required;
        for (const auto& c : apply_update(scratch, u)) {
            auto [it, fresh] = net.try_emplace(norm(c.u, c.v), c);
            if (!fresh) it->second.new_w = c.new_w;
        }
    }
    std::vector<EdgeChange> cs;
    for (const auto& [k, c] : net) {
        if (c.old_w == c.new_w) continue; // cancelled out within the batch
        const UpdateKind kind =
            c.old_w >= kInf ? UpdateKind::insert
                            : (c.new_w >= kInf ? UpdateKind::erase
                                               : UpdateKind::decrease);
        if (!absorbable(idx, idx.g, c.u, c.v, kind))
            return UpdateOutcome::rebuild_required;
        cs.push_back(c);
    }
    for (const auto& c : cs) { // realize on the live graph
        if (idx.g.has_slot(c.u, c.v))
            idx.g.set_weight(c.u, c.v, c.new_w);
        else if (c.new_w < kInf)
            idx.g.add_edge(c.u, c.v, c.new_w);
    }
    absorb(idx, cs);
    return UpdateOutcome::applied;
}

// ---- binary round trip ----------------------------------------------------

namespace {

void write_edge_list(std::ostream& out,
                     const std::vector<Graph::EdgeRef>& es) {
    io::write_u64(out, es.size());
    for (const auto& e : es) {
        io::write_u32(out, e.u);
        io::write_u32(out, e.v);
        io::write_u64(out, e.w);
    }
}

std::vector<Graph::EdgeRef> read_edge_list(std::istream& in) {
    std::vector<Graph::EdgeRef> es(io::read_u64(in));
    for (auto& e : es) {
        e.u = io::read_u32(in);
        e.v = io::read_u32(in);
        e.w = io::read_u64(in);
    }
    return es;
}

template <typename T>
T checked_enum(std::uint8_t raw, std::uint8_t max, const char* what) {
    if (raw > max) throw Error(std::string("corrupt index stream: ") + what);
    return T(raw);
}

} // namespace

void save_index(std::ostream& out, const PSPIndex& idx) {
    io::write_magic(out);
    io::write_tag(out, io::kTagIndex);
    io::write_u8(out, std::uint8_t(idx.strategy));
    io::write_u8(out, std::uint8_t(idx.part_kind));
    io::write_u8(out, std::uint8_t(idx.overlay_kind));
    io::write_u8(out, idx.pruned ? 1 : 0);
    io::write_graph(out, idx.g);

    const auto& p = idx.part;
    io::write_u64(out, p.n);
    io::write_u32(out, std::uint32_t(p.k));
    io::write_vec_i32(out, p.part_of);
    for (const auto& m : p.members) io::write_vec_u32(out, m);
    io::write_bytes(out, p.is_boundary);
    for (const auto& b : p.boundary) io::write_vec_u32(out, b);
    write_edge_list(out, p.inter_edges);
    io::write_u64(out, p.tree.size());
    for (const auto& node : p.tree) { // children/depth are re-derived
        io::write_u32(out, std::uint32_t(node.parent));
        io::write_u32(out, std::uint32_t(node.leaf_part));
    }
    io::write_vec_i32(out, p.leaf_node);
    io::write_vec_i32(out, p.boundary_level);
    io::write_u8(out, p.core_periphery ? 1 : 0);
    io::write_bytes(out, p.in_core);
    write_edge_list(out, p.core_edges);
    io::write_u64(out, p.tree_edges.size());
    for (const auto& te : p.tree_edges) write_edge_list(out, te);

    io::write_u64(out, idx.cls.n);
    io::write_bytes(out, idx.cls.half);

    io::write_vec_u32(out, idx.overlay.vertices);
    io::write_vec_u32(out, idx.overlay.pos_of);
    io::write_graph(out, idx.overlay.graph);
    io::write_u8(out, idx.overlay.pruned ? 1 : 0);
    io::write_u64(out, idx.overlay.part_pairs.size());
    for (const auto& pp : idx.overlay.part_pairs) {
        io::write_u64(out, pp.size());
        for (const auto& e : pp) {
            io::write_u32(out, e.a);
            io::write_u32(out, e.b);
            io::write_u8(out, e.clique ? 1 : 0);
        }
    }

    for (const auto& lv : idx.local_verts) io::write_vec_u32(out, lv);
    for (const auto& w : idx.pair_w) io::write_vec_u64(out, w);

    for (const auto& e : idx.parts) e->save(out);
    io::write_u8(out, idx.tilde ? 1 : 0);
    if (idx.tilde) idx.tilde->save(out);
    io::write_u64(out, idx.repaired.size());
    for (const auto& e : idx.repaired) e->save(out);

    io::write_u64(out, idx.counters.full_graph_dijkstra);
    io::write_u64(out, idx.counters.partition_label_queries);
    io::write_u64(out, idx.counters.overlay_label_queries);
    io::write_u64(out, idx.counters.partition_engine_updates);
    io::write_u64(out, idx.counters.overlay_engine_updates);
    io::write_u64(out, idx.counters.boundary_rechecks);
    if (!out) throw Error("index write failed");
}

PSPIndex load_index(std::istream& in) {
    io::expect_magic(in);
    io::expect_tag(in, io::kTagIndex);
    PSPIndex idx;
    idx.strategy = checked_enum<Strategy>(io::read_u8(in), 2, "strategy");
    idx.part_kind =
        checked_enum<EngineKind>(io::read_u8(in), 4, "engine kind");
    idx.overlay_kind =
        checked_enum<EngineKind>(io::read_u8(in), 4, "engine kind");
    idx.pruned = io::read_u8(in) != 0;
    idx.g = io::read_graph(in);

    auto& p = idx.part;
    p.n = io::read_u64(in);
    p.k = int(io::read_u32(in));
    if (p.n != idx.g.vertex_count() || p.k < 0)
        throw Error("corrupt index stream: partition shape");
    p.part_of = io::read_vec_i32(in);
    p.members.resize(p.k);
    for (auto& m : p.members) m = io::read_vec_u32(in);
    p.is_boundary = io::read_bytes(in);
    p.boundary.resize(p.k);
    for (auto& b : p.boundary) b = io::read_vec_u32(in);
    p.inter_edges = read_edge_list(in);
    p.tree.resize(io::read_u64(in));
    for (auto& node : p.tree) {
        node.parent = int(io::read_u32(in));
        node.leaf_part = int(io::read_u32(in));
    }
    for (std::size_t i = 0; i < p.tree.size(); ++i) { // parents come first
        const int parent = p.tree[i].parent;
        if (parent < 0) continue;
        if (std::size_t(parent) >= i)
            throw Error("corrupt index stream: partition tree order");
        p.tree[i].depth = p.tree[parent].depth + 1;
        p.tree[parent].children.push_back(int(i));
    }
    p.leaf_node = io::read_vec_i32(in);
    p.boundary_level = io::read_vec_i32(in);
    p.core_periphery = io::read_u8(in) != 0;
    p.in_core = io::read_bytes(in);
    p.core_edges = read_edge_list(in);
    p.tree_edges.resize(io::read_u64(in));
    for (auto& te : p.tree_edges) te = read_edge_list(in);

    idx.cls.n = io::read_u64(in);
    idx.cls.half = io::read_bytes(in);

    idx.overlay.vertices = io::read_vec_u32(in);
    idx.overlay.pos_of = io::read_vec_u32(in);
    idx.overlay.graph = io::read_graph(in);
    idx.overlay.pruned = io::read_u8(in) != 0;
    idx.overlay.part_pairs.resize(io::read_u64(in));
    for (auto& pp : idx.overlay.part_pairs) {
        pp.resize(io::read_u64(in));
        for (auto& e : pp) {
            e.a = io::read_u32(in);
            e.b = io::read_u32(in);
            e.clique = io::read_u8(in) != 0;
        }
    }

    idx.local_verts.resize(p.k);
    for (auto& lv : idx.local_verts) lv = io::read_vec_u32(in);
    idx.pair_w.resize(p.k);
    for (auto& w : idx.pair_w) w = io::read_vec_u64(in);

    idx.parts.reserve(p.k);
    for (int i = 0; i < p.k; ++i) idx.parts.push_back(load_engine(in));
    if (io::read_u8(in) != 0) idx.tilde = load_engine(in);
    const std::uint64_t repaired = io::read_u64(in);
    idx.repaired.reserve(repaired);
    for (std::uint64_t i = 0; i < repaired; ++i)
        idx.repaired.push_back(load_engine(in));

    idx.counters.full_graph_dijkstra = io::read_u64(in);
    idx.counters.partition_label_queries = io::read_u64(in);
    idx.counters.overlay_label_queries = io::read_u64(in);
    idx.counters.partition_engine_updates = io::read_u64(in);
    idx.counters.overlay_engine_updates = io::read_u64(in);
    idx.counters.boundary_rechecks = io::read_u64(in);
    if (!in) throw Error("index read failed");
    return idx;
}

} // namespace psp
