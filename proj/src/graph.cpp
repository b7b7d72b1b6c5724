#include "psp/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

using namespace std;

namespace psp {

void Graph::check_vertex(Vertex u) const {
    if (u >= adj_.size())
        throw ContractError("vertex id " + to_string(u) + " out of range (n=" +
                            to_string(adj_.size()) + ")");
}

Vertex Graph::add_vertex() {
    adj_.emplace_back();
    return Vertex(adj_.size() - 1);
}

static Edge* find_slot(vector<Edge>& list, Vertex v) {
    for (auto& e : list)
        if (e.to == v) return &e;
    return nullptr;
}

Weight Graph::add_edge(Vertex u, Vertex v, Weight w) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw ContractError("self-loop on vertex " + to_string(u));
    if (w >= kInf) throw ContractError("edge weight out of range");
    if (Edge* e = find_slot(adj_[u], v)) {
        Weight merged = min(e->w, w);
        bool was_dead = e->w >= kInf;
        e->w = merged;
        find_slot(adj_[v], u)->w = merged;
        if (was_dead) ++live_edges_;
        return merged;
    }
    adj_[u].push_back({v, w});
    adj_[v].push_back({u, w});
    ++live_edges_;
    return w;
}

void Graph::set_weight(Vertex u, Vertex v, Weight w) {
    check_vertex(u);
    check_vertex(v);
    Edge* e = find_slot(adj_[u], v);
    if (!e) throw ContractError("edge (" + to_string(u) + "," + to_string(v) + ") not present");
    bool was_live = e->w < kInf;
    bool is_live = w < kInf;
    e->w = w;
    find_slot(adj_[v], u)->w = w;
    if (was_live && !is_live) --live_edges_;
    if (!was_live && is_live) ++live_edges_;
}

Weight Graph::weight(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    for (const auto& e : adj_[u])
        if (e.to == v) return e.w;
    return kInf;
}

bool Graph::has_slot(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    for (const auto& e : adj_[u])
        if (e.to == v) return true;
    return false;
}

size_t Graph::degree(Vertex u) const {
    check_vertex(u);
    size_t d = 0;
    for (const auto& e : adj_[u])
        if (e.w < kInf) ++d;
    return d;
}

vector<Graph::EdgeRef> Graph::edges() const {
    vector<EdgeRef> out;
    out.reserve(live_edges_);
    for (Vertex u = 0; u < adj_.size(); ++u)
        for (const auto& e : adj_[u])
            if (u < e.to && e.w < kInf) out.push_back({u, e.to, e.w});
    sort(out.begin(), out.end(), [](const EdgeRef& a, const EdgeRef& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    return out;
}

bool Graph::operator==(const Graph& o) const {
    if (adj_.size() != o.adj_.size() || live_edges_ != o.live_edges_) return false;
    auto a = edges(), b = o.edges();
    return equal(a.begin(), a.end(), b.begin(), b.end(), [](const EdgeRef& x, const EdgeRef& y) {
        return x.u == y.u && x.v == y.v && x.w == y.w;
    });
}

// ---- parsing ----------------------------------------------------------

namespace {

struct LineReader {
    istream& in;
    size_t line_no = 0;
    string buf{};
    bool next() {
        while (getline(in, buf)) {
            ++line_no;
            if (!buf.empty()) return true;
        }
        return false;
    }
};

[[noreturn]] void bad_line(const string& what, size_t line_no) {
    throw ParseError(what, line_no);
}

} // namespace

Graph parse_graph(istream& in, GraphFormat format) {
    LineReader r{in};
    size_t n = 0, m_declared = 0;
    bool have_header = false;
    Graph g;
    size_t arcs_seen = 0;

    if (format == GraphFormat::dimacs) {
        while (r.next()) {
            istringstream ls(r.buf);
            char tag;
            if (!(ls >> tag)) continue;
            if (tag == 'c') continue;
            if (tag == 'p') {
                string kind;
                if (!(ls >> kind >> n >> m_declared))
                    bad_line("malformed problem line", r.line_no);
                if (have_header) bad_line("duplicate problem line", r.line_no);
                have_header = true;
                g = Graph(n);
                continue;
            }
            if (tag == 'a') {
                if (!have_header) bad_line("arc before problem line", r.line_no);
                unsigned long long u, v, w;
                if (!(ls >> u >> v >> w)) bad_line("malformed arc line", r.line_no);
                if (u < 1 || u > n || v < 1 || v > n)
                    bad_line("arc endpoint out of range", r.line_no);
                if (w >= kInf) bad_line("arc weight out of range", r.line_no);
                ++arcs_seen;
                if (u == v) continue; // drop self-loops
                g.add_edge(Vertex(u - 1), Vertex(v - 1), Weight(w));
                continue;
            }
            bad_line(string("unknown record type '") + tag + "'", r.line_no);
        }
        if (!have_header) bad_line("missing problem line", r.line_no ? r.line_no : 1);
        if (arcs_seen != m_declared)
            bad_line("header declares " + to_string(m_declared) + " arcs but file has " +
                         to_string(arcs_seen),
                     r.line_no);
        return g;
    }

    // edge list
    while (r.next()) {
        istringstream ls(r.buf);
        if (r.buf[0] == '#') continue;
        if (!have_header) {
            if (!(ls >> n >> m_declared)) bad_line("malformed header line", r.line_no);
            have_header = true;
            g = Graph(n);
            continue;
        }
        unsigned long long u, v, w;
        if (!(ls >> u >> v >> w)) bad_line("malformed edge line", r.line_no);
        if (u >= n || v >= n) bad_line("edge endpoint out of range", r.line_no);
        if (w >= kInf) bad_line("edge weight out of range", r.line_no);
        ++arcs_seen;
        if (u == v) continue;
        g.add_edge(Vertex(u), Vertex(v), Weight(w));
    }
    if (!have_header) bad_line("empty edge-list file", 1);
    if (arcs_seen != m_declared)
        bad_line("header declares " + to_string(m_declared) + " edges but file has " +
                     to_string(arcs_seen),
                 r.line_no);
    return g;
}

Graph load_graph(const string& path, GraphFormat format) {
    ifstream in(path);
    if (!in) throw Error("cannot open graph file: " + path);
    return parse_graph(in, format);
}

void serialize_graph(const Graph& g, ostream& out, GraphFormat format) {
    auto es = g.edges();
    if (format == GraphFormat::dimacs) {
        out << "p sp " << g.vertex_count() << " " << 2 * es.size() << "\n";
        for (const auto& e : es) {
            out << "a " << e.u + 1 << " " << e.v + 1 << " " << e.w << "\n";
            out << "a " << e.v + 1 << " " << e.u + 1 << " " << e.w << "\n";
        }
    } else {
        out << g.vertex_count() << " " << es.size() << "\n";
        for (const auto& e : es)
            out << e.u << " " << e.v << " " << e.w << "\n";
    }
}

Coordinates parse_coordinates(istream& in, size_t n) {
    LineReader r{in};
    Coordinates c;
    c.x.assign(n, 0);
    c.y.assign(n, 0);
    while (r.next()) {
        istringstream ls(r.buf);
        char tag;
        if (!(ls >> tag)) continue;
        if (tag == 'c' || tag == 'p') continue;
        if (tag == 'v') {
            unsigned long long id;
            long long x, y;
            if (!(ls >> id >> x >> y)) bad_line("malformed coordinate line", r.line_no);
            if (id < 1 || id > n) bad_line("coordinate id out of range", r.line_no);
            c.x[id - 1] = x;
            c.y[id - 1] = y;
            continue;
        }
        bad_line(string("unknown record type '") + tag + "'", r.line_no);
    }
    return c;
}

} // namespace psp
