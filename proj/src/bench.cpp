#include "psp/bench.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <iterator>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "psp/search.hpp"

namespace psp::bench {

namespace {

using Clock = std::chrono::steady_clock;
using njson = nlohmann::ordered_json;

double elapsed_ns(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double, std::nano>(b - a).count();
}

// Lower median and inclusive p99 over the sorted samples.
TimingStat make_stat(std::vector<double> ns, std::size_t reps,
                     std::uint64_t seed) {
    TimingStat t;
    t.samples = ns.size();
    t.reps = reps;
    t.seed = seed;
    if (!ns.empty()) {
        std::sort(ns.begin(), ns.end());
        t.median_ns = ns[ns.size() / 2];
        t.p99_ns = ns[std::min(ns.size() - 1, (ns.size() * 99) / 100)];
    }
    return t;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
    return base * 1000003ull + salt;
}

struct StratumSpec {
    const char* label;
    QueryStratum stratum;
};

constexpr StratumSpec kStrata[] = {
    {"any", QueryStratum::any},
    {"same-partition", QueryStratum::q1},
    {"both-boundary", QueryStratum::q2},
    {"one-boundary", QueryStratum::q3},
    {"cross-partition", QueryStratum::q4},
};

njson stat_json(const TimingStat& t) {
    return njson{{"median_ns", t.median_ns},
                 {"p99_ns", t.p99_ns},
                 {"samples", t.samples},
                 {"reps", t.reps},
                 {"seed", t.seed}};
}

std::string human_ns(double ns) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2);
    if (ns < 1e3)
        os << ns << " ns";
    else if (ns < 1e6)
        os << ns / 1e3 << " us";
    else if (ns < 1e9)
        os << ns / 1e6 << " ms";
    else
        os << ns / 1e9 << " s";
    return os.str();
}

std::string human_bytes(std::uint64_t b) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(1);
    if (b < 1024)
        os << b << " B";
    else if (b < 1024ull * 1024)
        os << double(b) / 1024 << " KiB";
    else
        os << double(b) / (1024 * 1024) << " MiB";
    return os.str();
}

} // namespace

std::string_view verify_mode_name(VerifyMode m) {
    switch (m) {
        case VerifyMode::on: return "on";
        case VerifyMode::off: return "off";
        case VerifyMode::exhaustive: return "exhaustive";
    }
    return "?";
}

VerifyMode verify_mode_from(std::string_view name) {
    if (name == "on") return VerifyMode::on;
    if (name == "off") return VerifyMode::off;
    if (name == "exhaustive") return VerifyMode::exhaustive;
    throw Error("unknown verify mode: " + std::string(name));
}

std::string_view graph_format_name(GraphFormat f) {
    return f == GraphFormat::dimacs ? "dimacs" : "edge-list";
}

GraphFormat graph_format_from(std::string_view name) {
    if (name == "dimacs") return GraphFormat::dimacs;
    if (name == "edge-list" || name == "edge_list" || name == "edges")
        return GraphFormat::edge_list;
    throw Error("unknown graph format: " + std::string(name));
}

Graph builtin_grid() {
    // 3x3 grid, row-major ids, deterministic mixed weights
    Graph g(9);
    const auto w = [](Vertex u, Vertex v) { return Weight(1 + (u + v) % 3); };
    for (Vertex r = 0; r < 3; ++r)
        for (Vertex c = 0; c < 3; ++c) {
            const Vertex v = r * 3 + c;
            if (c + 1 < 3) g.add_edge(v, v + 1, w(v, v + 1));
            if (r + 1 < 3) g.add_edge(v, v + 3, w(v, v + 3));
        }
    return g;
}

bool plant_fault(PSPIndex& idx) {
    const auto bend = [](SPEngine& e) {
        for (const auto& er : e.graph().edges())
            if (er.w > 0) {
                const EdgeChange c{er.u, er.v, er.w, 0};
                e.apply({&c, 1});
                return true;
            }
        return false;
    };
    // corrupt whichever family answers queries
    auto& family = idx.strategy == Strategy::post_boundary ? idx.repaired
                                                           : idx.parts;
    for (auto& e : family)
        if (e && bend(*e)) return true;
    return idx.tilde && bend(*idx.tilde);
}

VerifyOutcome cmd_verify(const PSPIndex& idx, const Graph& g, VerifyMode mode,
                         std::size_t sample, std::uint64_t seed) {
    VerifyOutcome out;
    out.seed = seed;
    if (mode == VerifyMode::off) {
        out.verdict = "skipped";
        return out;
    }
    const std::size_t n = g.vertex_count();
    out.exhaustive = mode == VerifyMode::exhaustive || n <= 500;
    const auto note = [&](Vertex s, Vertex t, Weight got, Weight want) {
        ++out.mismatches;
        if (out.failures.size() < 20) out.failures.push_back({s, t, got, want});
    };
    if (out.exhaustive) {
        for (Vertex s = 0; s + 1 < n; ++s) {
            const auto row = dijkstra(g, s);
            for (Vertex t = s + 1; t < n; ++t) {
                const Weight got = psp_query(idx, s, t);
                ++out.pairs_checked;
                if (got != row[t]) note(s, t, got, row[t]);
            }
        }
    } else {
        Rng rng(seed);
        for (std::size_t i = 0; i < sample; ++i) {
            const auto s = Vertex(rng.below(n));
            auto t = Vertex(rng.below(n));
            while (t == s) t = Vertex(rng.below(n));
            const Weight got = psp_query(idx, s, t);
            const Weight want = dijkstra_distance(g, s, t);
            ++out.pairs_checked;
            if (got != want) note(s, t, got, want);
        }
    }
    out.verdict = out.mismatches == 0 ? "verified" : "failed";
    return out;
}

BenchReport cmd_run(const RunConfig& cfg) {
    std::optional<PSPIndex> discard;
    return cmd_run(cfg, discard);
}

BenchReport cmd_run(const RunConfig& cfg, std::optional<PSPIndex>& keep) {
    BenchReport r;
    r.config = cfg;
    const Graph g = cfg.graph_file.empty()
                        ? builtin_grid()
                        : load_graph(cfg.graph_file, cfg.format);
    r.vertices = g.vertex_count();
    r.edges = g.edge_count();

    IndexDescriptor d = cfg.index;
    d.threads = cfg.threads;
    if (d.scheme == PartitionScheme::growing)
        d.k = int(std::min<std::size_t>(std::size_t(d.k), r.vertices));

    // timed construction: identical rebuilds, keep the last
    const std::size_t reps = std::max<std::size_t>(1, cfg.reps);
    std::optional<PSPIndex> idx;
    std::vector<double> build_ns;
    build_ns.reserve(reps);
    for (std::size_t rep = 0; rep < reps; ++rep) {
        const auto t0 = Clock::now();
        auto built = build_index(g, d, cfg.seed);
        const auto t1 = Clock::now();
        build_ns.push_back(elapsed_ns(t0, t1));
        idx.emplace(std::move(built));
    }
    r.build = make_stat(std::move(build_ns), reps, cfg.seed);
    r.k_effective = idx->part.k;
    r.partition = partition_metrics(g, idx->part);

    const auto absorb_footprint = [&](const SPEngine& e) {
        const auto f = e.footprint();
        r.label_entries += f.label_entries;
        r.shortcuts += f.shortcuts;
    };
    for (const auto& e : idx->parts) absorb_footprint(*e);
    for (const auto& e : idx->repaired) absorb_footprint(*e);
    if (idx->tilde) absorb_footprint(*idx->tilde);
    {
        std::ostringstream os;
        save_index(os, *idx);
        r.index_bytes = os.str().size();
    }

    // per-stratum query latency; strata this partition cannot produce are
    // skipped (a k=1 split has no cross-partition pair, a clique no inner one)
    if (cfg.queries > 0) {
        WorkloadContext ctx;
        ctx.part_of = &idx->part.part_of;
        ctx.is_boundary = &idx->part.is_boundary;
        for (std::size_t si = 0; si < std::size(kStrata); ++si) {
            const auto& spec = kStrata[si];
            const auto qseed = derive_seed(cfg.seed, 101 + si);
            std::vector<QueryPair> pairs;
            try {
                pairs = generate_queries(g, cfg.queries, qseed, spec.stratum,
                                         &ctx);
            } catch (const InfeasibleError&) {
                continue;
            }
            std::vector<double> lat;
            lat.reserve(pairs.size() * reps);
            Weight sink = 0;
            for (std::size_t rep = 0; rep < reps; ++rep)
                for (const auto& q : pairs) {
                    const auto t0 = Clock::now();
                    sink ^= psp_query(*idx, q.s, q.t);
                    const auto t1 = Clock::now();
                    lat.push_back(elapsed_ns(t0, t1));
                }
            (void)sink;
            r.query[spec.label] = make_stat(std::move(lat), reps, qseed);
        }
    }

    // update latency over one mutating stream (weight changes only, so every
    // outcome must be `applied`)
    if (cfg.updates > 0) {
        const auto useed = derive_seed(cfg.seed, 97);
        const auto stream = generate_updates(idx->g, cfg.updates, useed);
        std::map<std::string, std::vector<double>> buckets;
        if (cfg.batch <= 1) {
            for (const auto& u : stream) {
                const auto t0 = Clock::now();
                const auto outcome = psp_update(*idx, u);
                const auto t1 = Clock::now();
                if (outcome != UpdateOutcome::applied)
                    throw Error("weight update unexpectedly demanded a rebuild");
                const char* key = u.kind == UpdateKind::decrease ? "decrease"
                                                                 : "increase";
                buckets[key].push_back(elapsed_ns(t0, t1));
            }
        } else {
            for (std::size_t i = 0; i < stream.size(); i += cfg.batch) {
                const std::size_t len = std::min(cfg.batch, stream.size() - i);
                const std::span<const WeightUpdate> chunk(&stream[i], len);
                const auto t0 = Clock::now();
                const auto outcome = batch_update(*idx, chunk);
                const auto t1 = Clock::now();
                if (outcome != UpdateOutcome::applied)
                    throw Error("weight batch unexpectedly demanded a rebuild");
                buckets["batch"].push_back(elapsed_ns(t0, t1));
            }
        }
        for (auto& [key, ns] : buckets)
            r.update[key] = make_stat(std::move(ns), 1, useed);
    }

    if (cfg.plant_fault && !plant_fault(*idx))
        throw Error("fault injection found no label to corrupt");
    r.verification = cmd_verify(*idx, idx->g, cfg.verify, cfg.verify_sample,
                                derive_seed(cfg.seed, 98));
    r.counters = idx->counters;
    keep = std::move(idx);
    return r;
}

std::string to_json(const BenchReport& r) {
    const auto& c = r.config;
    njson j;
    j["config"] = njson{
        {"graph", c.graph_file.empty() ? "builtin:grid3" : c.graph_file},
        {"format", graph_format_name(c.format)},
        {"index", std::string(preset_label(c.index.name))},
        {"strategy", std::string(strategy_name(c.index.strategy))},
        {"scheme", std::string(partition_scheme_name(c.index.scheme))},
        {"k", c.index.k},
        {"bandwidth", c.index.bandwidth},
        {"fanout", c.index.fanout},
        {"leaf", c.index.tau},
        {"prune", c.index.prune},
        {"partition_engine", std::string(engine_kind_name(c.index.partition_engine))},
        {"overlay_engine", std::string(engine_kind_name(c.index.overlay_engine))},
        {"cache_partition_rows", c.index.cache_partition_rows},
        {"stratified_overlay_order", c.index.stratified_overlay_order},
        {"queries", c.queries},
        {"updates", c.updates},
        {"batch", c.batch},
        {"seed", c.seed},
        {"threads", c.threads},
        {"reps", c.reps},
        {"verify", std::string(verify_mode_name(c.verify))},
        {"verify_sample", c.verify_sample},
        {"plant_fault", c.plant_fault},
    };
    j["graph"] = njson{{"vertices", r.vertices}, {"edges", r.edges}};
    j["partition"] = njson{
        {"k", r.k_effective},
        {"total_boundary", r.partition.total_boundary},
        {"avg_boundary", r.partition.avg_boundary},
        {"connectivity_ratio", r.partition.connectivity_ratio},
    };
    j["index_size"] = njson{
        {"label_entries", r.label_entries},
        {"shortcuts", r.shortcuts},
        {"bytes", r.index_bytes},
    };
    j["counters"] = njson{
        {"full_graph_dijkstra", r.counters.full_graph_dijkstra},
        {"partition_label_queries", r.counters.partition_label_queries},
        {"overlay_label_queries", r.counters.overlay_label_queries},
        {"partition_engine_updates", r.counters.partition_engine_updates},
        {"overlay_engine_updates", r.counters.overlay_engine_updates},
        {"boundary_rechecks", r.counters.boundary_rechecks},
    };
    njson fails = njson::array();
    for (const auto& f : r.verification.failures)
        fails.push_back(njson{
            {"s", f.s}, {"t", f.t}, {"got", f.got}, {"want", f.want}});
    j["verification"] = njson{
        {"verdict", r.verification.verdict},
        {"pairs_checked", r.verification.pairs_checked},
        {"exhaustive", r.verification.exhaustive},
        {"seed", r.verification.seed},
        {"mismatches", r.verification.mismatches},
        {"failures", std::move(fails)},
    };
    njson queries = njson::object(), updates = njson::object();
    for (const auto& [key, stat] : r.query) queries[key] = stat_json(stat);
    for (const auto& [key, stat] : r.update) updates[key] = stat_json(stat);
    j["timings"] = njson{
        {"build", stat_json(r.build)},
        {"query", std::move(queries)},
        {"update", std::move(updates)},
    };
    return j.dump(2) + "\n";
}

void to_table(std::ostream& out, const BenchReport& r) {
    const auto& c = r.config;
    const auto row = [&](std::string_view key) -> std::ostream& {
        out << "  " << std::left << std::setw(14) << key << " ";
        return out;
    };
    row("graph") << (c.graph_file.empty() ? "builtin:grid3" : c.graph_file)
                 << "  (" << r.vertices << " vertices, " << r.edges
                 << " edges)\n";
    row("index") << preset_label(c.index.name) << ": "
                 << strategy_name(c.index.strategy) << " over "
                 << partition_scheme_name(c.index.scheme) << ", engines "
                 << engine_kind_name(c.index.partition_engine) << "/"
                 << engine_kind_name(c.index.overlay_engine)
                 << (c.index.prune ? ", pruned" : "") << "\n";
    row("knobs") << "k=" << c.index.k << " bandwidth=" << c.index.bandwidth
                 << " fanout=" << c.index.fanout << " leaf=" << c.index.tau
                 << " batch=" << c.batch << " seed=" << c.seed
                 << " threads=" << c.threads << "\n";
    if (r.k_effective > 0) {
        row("partition") << "k=" << r.k_effective
                         << " boundary=" << r.partition.total_boundary
                         << " (avg " << std::fixed << std::setprecision(1)
                         << r.partition.avg_boundary << ")"
                         << " connectivity=" << std::setprecision(2)
                         << r.partition.connectivity_ratio << "\n";
    }
    if (r.build.samples > 0)
        row("build") << human_ns(r.build.median_ns) << " median  ("
                     << r.build.samples << " reps, seed " << r.build.seed
                     << ")\n";
    if (r.index_bytes > 0)
        row("index size") << r.label_entries << " label entries, "
                          << r.shortcuts << " shortcuts, "
                          << human_bytes(r.index_bytes) << " serialized\n";
    const auto stat_rows = [&](std::string_view title, const auto& m) {
        if (m.empty()) return;
        row(title) << std::left << std::setw(18) << "class" << std::right
                   << std::setw(12) << "median" << std::setw(12) << "p99"
                   << std::setw(10) << "samples" << "\n";
        for (const auto& [key, st] : m) {
            out << "  " << std::setw(14) << "" << " " << std::left
                << std::setw(18) << key << std::right << std::setw(12)
                << human_ns(st.median_ns) << std::setw(12)
                << human_ns(st.p99_ns) << std::setw(10) << st.samples << "\n";
        }
    };
    stat_rows("queries", r.query);
    stat_rows("updates", r.update);
    row("counters") << "searches=" << r.counters.full_graph_dijkstra
                    << " partition_queries=" << r.counters.partition_label_queries
                    << " overlay_queries=" << r.counters.overlay_label_queries
                    << " partition_updates=" << r.counters.partition_engine_updates
                    << " overlay_updates=" << r.counters.overlay_engine_updates
                    << " rechecks=" << r.counters.boundary_rechecks << "\n";
    row("verdict") << r.verification.verdict;
    if (r.verification.verdict != "skipped") {
        out << "  (" << r.verification.pairs_checked << " pairs"
            << (r.verification.exhaustive ? ", exhaustive" : ", sampled")
            << ", seed " << r.verification.seed << ")";
    }
    out << "\n";
    for (const auto& f : r.verification.failures)
        out << "    wrong pair (" << f.s << ", " << f.t << "): got " << f.got
            << ", expected " << f.want << "\n";
}

} // namespace psp::bench
