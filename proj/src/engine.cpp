#include "psp/engine.hpp"

#include <algorithm>

#include "psp/ch.hpp"
#include "psp/pll.hpp"
#include "psp/serialize.hpp"
#include "psp/table.hpp"
#include "psp/td.hpp"

namespace psp {

std::vector<Weight> SPEngine::all_pairs(std::span<const Vertex> vs) const {
    std::vector<Weight> out(vs.size() * vs.size(), 0);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            const Weight d = query(vs[i], vs[j]);
            out[i * vs.size() + j] = d;
            out[j * vs.size() + i] = d;
        }
    }
    return out;
}

std::vector<Weight> SPEngine::one_to_many(Vertex s,
                                          std::span<const Vertex> targets) const {
    std::vector<Weight> out;
    out.reserve(targets.size());
    for (Vertex t : targets) out.push_back(query(s, t));
    return out;
}

Weight SPEngine::multi_query(
    std::span<const std::pair<Vertex, Weight>> sources,
    std::span<const std::pair<Vertex, Weight>> targets) const {
    Weight best = kInf;
    for (const auto& [a, da] : sources) {
        if (da >= kInf) continue;
        for (const auto& [b, db] : targets) {
            if (db >= kInf) continue;
            const Weight d = (a == b) ? da + db : add(da, query(a, b), db);
            best = std::min(best, d);
        }
    }
    return best;
}

std::string_view engine_kind_name(EngineKind k) {
    switch (k) {
        case EngineKind::dijkstra: return "dijkstra";
        case EngineKind::ch: return "ch";
        case EngineKind::td: return "td";
        case EngineKind::pll: return "pll";
        case EngineKind::table: return "table";
    }
    throw Error("unknown engine kind");
}

EngineKind engine_kind_from(std::string_view name) {
    if (name == "dijkstra") return EngineKind::dijkstra;
    if (name == "ch") return EngineKind::ch;
    if (name == "td") return EngineKind::td;
    if (name == "pll") return EngineKind::pll;
    if (name == "table") return EngineKind::table;
    throw Error("unknown engine kind: " + std::string(name));
}

std::unique_ptr<SPEngine> make_engine(EngineKind kind, const Graph& g,
                                      const EngineOptions& opt) {
    switch (kind) {
        case EngineKind::dijkstra: return std::make_unique<DijkstraEngine>(g);
        case EngineKind::ch: return std::make_unique<CHEngine>(g, opt);
        case EngineKind::td: return std::make_unique<TDEngine>(g, opt);
        case EngineKind::pll: return std::make_unique<PLLEngine>(g, opt);
        case EngineKind::table: return std::make_unique<TableEngine>(g);
    }
    throw Error("unknown engine kind");
}

std::unique_ptr<SPEngine> load_engine(std::istream& in) {
    switch (io::peek_tag(in)) {
        case io::kTagDijkstra: return DijkstraEngine::load(in);
        case io::kTagCH: return CHEngine::load(in);
        case io::kTagTD: return TDEngine::load(in);
        case io::kTagPLL: return PLLEngine::load(in);
        case io::kTagTable: return TableEngine::load(in);
        default: throw Error("stream does not hold a known engine");
    }
}

} // namespace psp
