#include "psp/table.hpp"

#include <algorithm>
#include <queue>

#include "psp/serialize.hpp"

using namespace std;

namespace psp {

// ---- DijkstraEngine -------------------------------------------------------

const vector<Weight>* DijkstraEngine::cached(Vertex s) const {
    auto it = cache_.find(s);
    return it == cache_.end() ? nullptr : &it->second;
}

Weight DijkstraEngine::query(Vertex s, Vertex t) const {
    g_.check_vertex(s);
    g_.check_vertex(t);
    ++stats_.queries;
    if (const auto* row = cached(s)) return (*row)[t];
    if (const auto* row = cached(t)) return (*row)[s];
    return dijkstra_distance(g_, s, t);
}

vector<Weight> DijkstraEngine::all_pairs(span<const Vertex> vs) const {
    const size_t k = vs.size();
    if (k) stats_.queries += k * (k - 1) / 2;
    for (Vertex v : vs) {
        g_.check_vertex(v);
        if (!cached(v)) cache_.emplace(v, dijkstra(g_, v));
    }
    vector<Weight> m(k * k);
    for (size_t i = 0; i < k; ++i) {
        const auto& row = *cached(vs[i]);
        for (size_t j = 0; j < k; ++j) m[i * k + j] = row[vs[j]];
    }
    return m;
}

vector<Weight> DijkstraEngine::one_to_many(Vertex s,
                                            span<const Vertex> targets) const {
    g_.check_vertex(s);
    stats_.queries += targets.size();
    const vector<Weight>* row = cached(s);
    vector<Weight> local;
    if (!row) {
        local = dijkstra(g_, s);
        row = &local;
    }
    vector<Weight> out(targets.size());
    for (size_t i = 0; i < targets.size(); ++i) {
        g_.check_vertex(targets[i]);
        out[i] = (*row)[targets[i]];
    }
    return out;
}

Weight DijkstraEngine::multi_query(
    span<const pair<Vertex, Weight>> sources,
    span<const pair<Vertex, Weight>> targets) const {
    ++stats_.queries;
    // one offset-seeded search instead of |sources| x |targets| point runs
    priority_queue<pair<Weight, Vertex>, vector<pair<Weight, Vertex>>, greater<>>
        pq;
    vector<Weight> dist(g_.vertex_count(), kInf);
    for (const auto& [v, off] : sources) {
        if (off >= kInf) continue;
        g_.check_vertex(v);
        if (off < dist[v]) {
            dist[v] = off;
            pq.push({off, v});
        }
    }
    while (!pq.empty()) {
        const auto [d, v] = pq.top();
        pq.pop();
        if (d != dist[v]) continue;
        for (const auto& e : g_.neighbors(v)) {
            if (e.w >= kInf) continue;
            const Weight nd = add(d, e.w);
            if (nd < dist[e.to]) {
                dist[e.to] = nd;
                pq.push({nd, e.to});
            }
        }
    }
    Weight best = kInf;
    for (const auto& [v, off] : targets) {
        if (off >= kInf) continue;
        g_.check_vertex(v);
        best = min(best, add(dist[v], off));
    }
    return best;
}

void DijkstraEngine::apply(span<const EdgeChange> changes) {
    ++stats_.update_calls;
    vector<Vertex> sources;
    sources.reserve(cache_.size());
    for (const auto& [s, _] : cache_) sources.push_back(s);
    cache_.clear();
    for (const auto& c : changes) {
        if (c.new_w < kInf && !g_.has_slot(c.u, c.v))
            g_.add_edge(c.u, c.v, c.new_w);
        else
            g_.set_weight(c.u, c.v, c.new_w);
    }
    // keep the advertised cache warm for the same sources
    for (Vertex s : sources) cache_.emplace(s, dijkstra(g_, s));
}

unique_ptr<SPEngine> DijkstraEngine::clone() const {
    return unique_ptr<SPEngine>(new DijkstraEngine(*this));
}

IndexFootprint DijkstraEngine::footprint() const {
    IndexFootprint f;
    f.label_entries = cache_.size() * g_.vertex_count();
    return f;
}

void DijkstraEngine::save(ostream& out) const {
    io::write_tag(out, io::kTagDijkstra);
    io::write_graph(out, g_);
    vector<uint32_t> sources;
    sources.reserve(cache_.size());
    for (const auto& [s, _] : cache_) sources.push_back(s);
    sort(sources.begin(), sources.end());
    io::write_vec_u32(out, sources);
}

unique_ptr<DijkstraEngine> DijkstraEngine::load(istream& in) {
    io::expect_tag(in, io::kTagDijkstra);
    Graph g = io::read_graph(in);
    auto e = make_unique<DijkstraEngine>(g);
    for (Vertex s : io::read_vec_u32(in)) e->cache_.emplace(s, dijkstra(e->g_, s));
    return e;
}

// ---- TableEngine ----------------------------------------------------------

namespace {
constexpr uint32_t kNoPos = 0xffffffffu;
}

TableEngine::TableEngine(const Graph& g) : g_(g) {
    subset_.resize(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v) subset_[v] = v;
    pos_of_.assign(g.vertex_count(), kNoPos);
    for (uint32_t i = 0; i < subset_.size(); ++i) pos_of_[subset_[i]] = i;
    rebuild();
}

TableEngine::TableEngine(const Graph& g, span<const Vertex> subset)
    : g_(g), subset_(subset.begin(), subset.end()) {
    sort(subset_.begin(), subset_.end());
    subset_.erase(unique(subset_.begin(), subset_.end()), subset_.end());
    pos_of_.assign(g.vertex_count(), kNoPos);
    for (uint32_t i = 0; i < subset_.size(); ++i) {
        g_.check_vertex(subset_[i]);
        pos_of_[subset_[i]] = i;
    }
    rebuild();
}

void TableEngine::rebuild() {
    const size_t k = subset_.size();
    table_.assign(k * k, kInf);
    for (size_t i = 0; i < k; ++i) {
        auto dist = dijkstra(g_, subset_[i]);
        for (size_t j = 0; j < k; ++j) table_[i * k + j] = dist[subset_[j]];
    }
}

size_t TableEngine::pos(Vertex v) const {
    g_.check_vertex(v);
    if (pos_of_[v] == kNoPos)
        throw Error("vertex " + to_string(v) + " is not indexed by the table");
    return pos_of_[v];
}

Weight TableEngine::query(Vertex s, Vertex t) const {
    ++stats_.queries;
    return table_[pos(s) * subset_.size() + pos(t)];
}

vector<Weight> TableEngine::all_pairs(span<const Vertex> vs) const {
    const size_t k = vs.size();
    if (k) stats_.queries += k * (k - 1) / 2;
    vector<Weight> m(k * k);
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j)
            m[i * k + j] = table_[pos(vs[i]) * subset_.size() + pos(vs[j])];
    return m;
}

void TableEngine::apply(span<const EdgeChange> changes) {
    ++stats_.update_calls;
    for (const auto& c : changes) {
        if (c.new_w < kInf && !g_.has_slot(c.u, c.v))
            g_.add_edge(c.u, c.v, c.new_w);
        else
            g_.set_weight(c.u, c.v, c.new_w);
    }
    rebuild();
}

unique_ptr<SPEngine> TableEngine::clone() const {
    return unique_ptr<SPEngine>(new TableEngine(*this));
}

IndexFootprint TableEngine::footprint() const {
    IndexFootprint f;
    f.label_entries = table_.size();
    return f;
}

void TableEngine::save(ostream& out) const {
    io::write_tag(out, io::kTagTable);
    io::write_graph(out, g_);
    io::write_vec_u32(out, subset_);
}

unique_ptr<TableEngine> TableEngine::load(istream& in) {
    io::expect_tag(in, io::kTagTable);
    unique_ptr<TableEngine> e(new TableEngine());
    e->g_ = io::read_graph(in);
    e->subset_ = io::read_vec_u32(in);
    e->pos_of_.assign(e->g_.vertex_count(), kNoPos);
    for (uint32_t i = 0; i < e->subset_.size(); ++i) e->pos_of_[e->subset_[i]] = i;
    e->rebuild();
    return e;
}

} // namespace psp
