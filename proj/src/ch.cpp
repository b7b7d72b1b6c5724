#include "psp/ch.hpp"

#include <algorithm>
#include <queue>
#include <unordered_map>

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

CHEngine::CHEngine(const Graph& g, const EngineOptions& opt)
    : g_(g), h_(Hierarchy::build(g, order_for(g, opt))) {}

// One-sided state of the upward bidirectional search.
namespace {
struct Side {
    using Heap = priority_queue<pair<Weight, Vertex>, vector<pair<Weight, Vertex>>,
                                greater<>>;
    Heap pq;
    unordered_map<Vertex, Weight> dist;
    bool stopped = false;

    void seed(Vertex s) {
        dist.emplace(s, 0);
        pq.push({0, s});
    }
};
} // namespace

namespace {
// Runs the meet-in-the-middle upward search over pre-seeded sides.
Weight run_upward_meet(const Hierarchy& h, Side& f, Side& b) {
    Weight best = kInf;

    auto step = [&](Side& mine, Side& other) {
        while (!mine.pq.empty()) {
            auto [d, v] = mine.pq.top();
            if (d > best) { // every later pop is no better
                mine.stopped = true;
                return;
            }
            mine.pq.pop();
            auto it = mine.dist.find(v);
            if (it->second != d) continue; // stale
            if (auto ot = other.dist.find(v); ot != other.dist.end())
                best = min(best, add(d, ot->second));
            for (const auto& e : h.up(v)) {
                if (e.wh >= kInf) continue;
                Weight nd = add(d, e.wh);
                auto [slot, fresh] = mine.dist.emplace(e.to, nd);
                if (!fresh) {
                    if (nd >= slot->second) continue;
                    slot->second = nd;
                }
                mine.pq.push({nd, e.to});
            }
            return; // one settled vertex per step
        }
        mine.stopped = true; // queue exhausted
    };

    while (true) {
        if (!f.stopped) step(f, b);
        if (!b.stopped) step(b, f);
        if (f.stopped && b.stopped) break;
    }
    return best;
}
} // namespace

Weight CHEngine::query(Vertex s, Vertex t) const {
    g_.check_vertex(s);
    g_.check_vertex(t);
    ++stats_.queries;
    if (s == t) return 0;

    Side f, b;
    f.seed(s);
    b.seed(t);
    return run_upward_meet(h_, f, b);
}

Weight CHEngine::multi_query(
    std::span<const std::pair<Vertex, Weight>> sources,
    std::span<const std::pair<Vertex, Weight>> targets) const {
    ++stats_.queries;
    Side f, b;
    for (const auto& [v, off] : sources) {
        if (off >= kInf) continue;
        g_.check_vertex(v);
        auto [slot, fresh] = f.dist.emplace(v, off);
        if (!fresh) {
            if (off >= slot->second) continue;
            slot->second = off;
        }
        f.pq.push({off, v});
    }
    for (const auto& [v, off] : targets) {
        if (off >= kInf) continue;
        g_.check_vertex(v);
        auto [slot, fresh] = b.dist.emplace(v, off);
        if (!fresh) {
            if (off >= slot->second) continue;
            slot->second = off;
        }
        b.pq.push({off, v});
    }
    if (f.dist.empty() || b.dist.empty()) return kInf;
    return run_upward_meet(h_, f, b);
}

vector<pair<Vertex, Weight>> CHEngine::upward_search(Vertex s) const {
    g_.check_vertex(s);
    Side f;
    f.seed(s);
    while (!f.pq.empty()) {
        auto [d, v] = f.pq.top();
        f.pq.pop();
        if (f.dist.find(v)->second != d) continue;
        for (const auto& e : h_.up(v)) {
            if (e.wh >= kInf) continue;
            Weight nd = add(d, e.wh);
            auto [slot, fresh] = f.dist.emplace(e.to, nd);
            if (!fresh) {
                if (nd >= slot->second) continue;
                slot->second = nd;
            }
            f.pq.push({nd, e.to});
        }
    }
    vector<pair<Vertex, Weight>> out(f.dist.begin(), f.dist.end());
    sort(out.begin(), out.end());
    return out;
}

vector<Weight> CHEngine::all_pairs(span<const Vertex> vs) const {
    const size_t k = vs.size();
    vector<vector<pair<Vertex, Weight>>> hubs(k);
    for (size_t i = 0; i < k; ++i) hubs[i] = upward_search(vs[i]);
    stats_.queries += k * (k - 1) / 2;

    vector<Weight> m(k * k, kInf);
    for (size_t i = 0; i < k; ++i) {
        m[i * k + i] = 0;
        for (size_t j = i + 1; j < k; ++j) {
            // merge-join the two sorted hub lists
            Weight d = kInf;
            auto a = hubs[i].begin(), ae = hubs[i].end();
            auto b = hubs[j].begin(), be = hubs[j].end();
            while (a != ae && b != be) {
                if (a->first < b->first) {
                    ++a;
                } else if (b->first < a->first) {
                    ++b;
                } else {
                    d = min(d, add(a->second, b->second));
                    ++a;
                    ++b;
                }
            }
            m[i * k + j] = m[j * k + i] = d;
        }
    }
    return m;
}

void CHEngine::apply(span<const EdgeChange> changes) {
    ++stats_.update_calls;
    for (const auto& c : changes) {
        if (c.new_w < kInf && !g_.has_slot(c.u, c.v))
            g_.add_edge(c.u, c.v, c.new_w);
        else
            g_.set_weight(c.u, c.v, c.new_w);
    }
    last_ = h_.update(changes);
}

unique_ptr<SPEngine> CHEngine::clone() const {
    return unique_ptr<SPEngine>(new CHEngine(*this));
}

IndexFootprint CHEngine::footprint() const {
    IndexFootprint f;
    f.label_entries = h_.pair_count();
    uint32_t width = 0;
    uint64_t shortcuts = 0;
    for (Vertex v = 0; v < g_.vertex_count(); ++v) {
        const auto& u = h_.up(v);
        width = max(width, uint32_t(u.size()));
        for (const auto& e : u)
            if (e.ow >= kInf && e.wh < kInf) ++shortcuts;
    }
    f.shortcuts = shortcuts;
    f.tree_width = width;
    return f;
}

void CHEngine::save(ostream& out) const {
    io::write_tag(out, io::kTagCH);
    io::write_graph(out, g_);
    io::write_vec_u32(out, h_.order().rank_of);
}

unique_ptr<CHEngine> CHEngine::load(istream& in) {
    io::expect_tag(in, io::kTagCH);
    unique_ptr<CHEngine> e(new CHEngine());
    e->g_ = io::read_graph(in);
    VertexOrder ord;
    ord.rank_of = io::read_vec_u32(in);
    ord.by_rank.resize(ord.rank_of.size());
    for (Vertex v = 0; v < ord.rank_of.size(); ++v)
        ord.by_rank[ord.rank_of[v]] = v;
    e->h_ = Hierarchy::build(e->g_, std::move(ord));
    return e;
}

} // namespace psp
