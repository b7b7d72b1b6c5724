#include "psp/td.hpp"

#include <algorithm>

#include "psp/serialize.hpp"

using namespace std;

namespace psp {

namespace {
VertexOrder order_for(const Graph& g, const EngineOptions& opt) {
    if (opt.custom_order) {
        if (opt.custom_order->size() != g.vertex_count())
            throw ContractError("supplied order does not cover the graph");
        return *opt.custom_order;
    }
    return build_order(g, opt.order);
}
} // namespace

TDEngine::TDEngine(const Graph& g, const EngineOptions& opt)
    : g_(g), h_(Hierarchy::build(g, order_for(g, opt))) {
    rebuild_structure();
}

void TDEngine::rebuild_structure() {
    const size_t n = g_.vertex_count();
    const auto& rank = h_.order().rank_of;
    parent_.assign(n, kNoVertex);
    depth_.assign(n, 0);
    kids_.assign(n, {});
    anc_.assign(n, {});
    dis_.assign(n, {});

    for (Vertex v = 0; v < n; ++v) {
        const auto& uv = h_.up(v);
        Vertex p = kNoVertex;
        for (const auto& e : uv)
            if (p == kNoVertex || rank[e.to] < rank[p]) p = e.to;
        parent_[v] = p;
    }
    for (Vertex v = 0; v < n; ++v)
        if (parent_[v] != kNoVertex) kids_[parent_[v]].push_back(v);

    // top-down: depths, ancestor chains, distance arrays
    for (size_t r = n; r-- > 0;) {
        Vertex v = h_.order().by_rank[r];
        Vertex p = parent_[v];
        if (p == kNoVertex) {
            depth_[v] = 0;
            anc_[v] = {v};
        } else {
            depth_[v] = depth_[p] + 1;
            anc_[v] = anc_[p];
            anc_[v].push_back(v);
        }
        recompute_array(v);
    }

    // Euler tour from a virtual super-root (id n) across all roots
    vector<pair<uint32_t, Vertex>> tour;
    tour.reserve(2 * (n + 1));
    first_.assign(n + 1, 0);
    tour.push_back({0, Vertex(n)});
    first_[n] = 0;
    for (Vertex root = 0; root < n; ++root) {
        if (parent_[root] != kNoVertex) continue;
        // iterative DFS emitting the tour of this tree
        vector<pair<Vertex, size_t>> stack{{root, 0}};
        first_[root] = uint32_t(tour.size());
        tour.push_back({depth_[root] + 1, root});
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            if (next < kids_[v].size()) {
                Vertex c = kids_[v][next++];
                first_[c] = uint32_t(tour.size());
                tour.push_back({depth_[c] + 1, c});
                stack.push_back({c, 0});
            } else {
                stack.pop_back();
                if (!stack.empty())
                    tour.push_back({depth_[stack.back().first] + 1,
                                    stack.back().first});
            }
        }
        tour.push_back({0, Vertex(n)});
    }

    // sparse table over the tour
    size_t m = tour.size(), levels = 1;
    while ((size_t(1) << levels) <= m) ++levels;
    rmq_.assign(levels, {});
    rmq_[0] = std::move(tour);
    for (size_t l = 1; l < levels; ++l) {
        size_t span = size_t(1) << l;
        if (m + 1 < span) break;
        rmq_[l].resize(m - span + 1);
        for (size_t i = 0; i + span <= m; ++i)
            rmq_[l][i] = min(rmq_[l - 1][i], rmq_[l - 1][i + span / 2]);
    }
}

void TDEngine::recompute_array(Vertex v) {
    const uint32_t d = depth_[v];
    auto& arr = dis_[v];
    arr.assign(d + 1, kInf);
    arr[d] = 0;
    for (uint32_t i = 0; i < d; ++i) {
        Weight best = kInf;
        for (const auto& e : h_.up(v)) {
            if (e.wh >= kInf) continue;
            uint32_t du = depth_[e.to];
            Weight tail = i <= du ? dis_[e.to][i] : dis_[anc_[v][i]][du];
            best = min(best, add(e.wh, tail));
        }
        arr[i] = best;
    }
}

Vertex TDEngine::ancestor_at(Vertex v, uint32_t d) const {
    g_.check_vertex(v);
    return d <= depth_[v] ? anc_[v][d] : kNoVertex;
}

Vertex TDEngine::lca(Vertex s, Vertex t) const {
    uint32_t l = first_[s], r = first_[t];
    if (l > r) swap(l, r);
    ++r;
    size_t lvl = 0;
    while ((size_t(2) << lvl) <= r - l) ++lvl;
    return min(rmq_[lvl][l], rmq_[lvl][r - (size_t(1) << lvl)]).second;
}

Weight TDEngine::query(Vertex s, Vertex t) const {
    g_.check_vertex(s);
    g_.check_vertex(t);
    ++stats_.queries;
    if (s == t) return 0;
    Vertex l = lca(s, t);
    if (l == Vertex(g_.vertex_count())) return kInf; // different components

    Weight best = add(dis_[s][depth_[l]], dis_[t][depth_[l]]);
    for (const auto& e : h_.up(l)) {
        uint32_t du = depth_[e.to];
        best = min(best, add(dis_[s][du], dis_[t][du]));
    }
    return best;
}

void TDEngine::apply(span<const EdgeChange> changes) {
    ++stats_.update_calls;
    for (const auto& c : changes) {
        if (c.new_w < kInf && !g_.has_slot(c.u, c.v))
            g_.add_edge(c.u, c.v, c.new_w);
        else
            g_.set_weight(c.u, c.v, c.new_w);
    }
    size_t pairs_before = h_.pair_count();
    auto report = h_.update(changes);
    if (h_.pair_count() != pairs_before) {
        // new pairs reshape the forest: full structural refresh (same order)
        rebuild_structure();
        return;
    }
    if (report.empty()) return;
    vector<Vertex> dirty;
    dirty.reserve(report.size());
    for (const auto& pc : report) dirty.push_back(pc.lo);
    sort(dirty.begin(), dirty.end());
    dirty.erase(unique(dirty.begin(), dirty.end()), dirty.end());
    refresh_subtrees(dirty);
}

bool TDEngine::refresh_subtrees(const vector<Vertex>& dirty) {
    const size_t n = g_.vertex_count();
    vector<char> is_dirty(n, 0), visited(n, 0);
    for (Vertex v : dirty) is_dirty[v] = 1;
    vector<Vertex> roots = dirty;
    sort(roots.begin(), roots.end(),
         [&](Vertex a, Vertex b) { return depth_[a] < depth_[b]; });

    bool any = false;
    for (Vertex r : roots) {
        if (visited[r]) continue;
        // (vertex, some ancestor array changed)
        vector<pair<Vertex, bool>> stack{{r, false}};
        while (!stack.empty()) {
            auto [v, anc_changed] = stack.back();
            stack.pop_back();
            if (visited[v]) continue;
            bool need = anc_changed || is_dirty[v];
            if (!need) continue;
            visited[v] = 1;
            auto old = dis_[v];
            recompute_array(v);
            bool changed = dis_[v] != old;
            any = any || changed;
            bool flag = anc_changed || changed;
            if (flag)
                for (Vertex c : kids_[v]) stack.push_back({c, true});
        }
    }
    return any;
}

unique_ptr<SPEngine> TDEngine::clone() const {
    return unique_ptr<SPEngine>(new TDEngine(*this));
}

IndexFootprint TDEngine::footprint() const {
    IndexFootprint f;
    f.shortcuts = h_.pair_count();
    for (Vertex v = 0; v < g_.vertex_count(); ++v) {
        f.label_entries += dis_[v].size();
        f.tree_height = max(f.tree_height, depth_[v] + 1);
        f.tree_width = max(f.tree_width, uint32_t(h_.up(v).size() + 1));
    }
    return f;
}

void TDEngine::save(ostream& out) const {
    io::write_tag(out, io::kTagTD);
    io::write_graph(out, g_);
    io::write_vec_u32(out, h_.order().rank_of);
}

unique_ptr<TDEngine> TDEngine::load(istream& in) {
    io::expect_tag(in, io::kTagTD);
    unique_ptr<TDEngine> e(new TDEngine());
    e->g_ = io::read_graph(in);
    VertexOrder ord;
    ord.rank_of = io::read_vec_u32(in);
    ord.by_rank.resize(ord.rank_of.size());
    for (Vertex v = 0; v < ord.rank_of.size(); ++v)
        ord.by_rank[ord.rank_of[v]] = v;
    e->h_ = Hierarchy::build(e->g_, std::move(ord));
    e->rebuild_structure();
    return e;
}

} // namespace psp
