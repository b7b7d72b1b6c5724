// Command-line workbench around the partitioned shortest-path index:
// partition, build, query, update, bench, and verify subcommands sharing one
// flag set (also loadable from a flat key=value config file; flags win).
//
// Exit codes: 0 success (verdict verified or skipped), 1 verification
// failed, 2 bad input (missing file, malformed config, contract violation).
#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "psp/bench.hpp"
#include "psp/search.hpp"

namespace {

using namespace psp;
using bench::BenchReport;
using bench::RunConfig;

bool is_count(const std::string& s) {
    if (s.empty()) return false;
    for (const char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

std::size_t parse_count(const std::string& s, const char* what) {
    if (!is_count(s))
        throw Error(std::string(what) +
                    " expects a number here, got: " + s);
    return std::stoull(s);
}

Graph load_or_builtin(const RunConfig& cfg) {
    return cfg.graph_file.empty() ? bench::builtin_grid()
                                  : load_graph(cfg.graph_file, cfg.format);
}

PSPIndex load_index_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open index file: " + path);
    return load_index(in);
}

void save_index_file(const PSPIndex& idx, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write index file: " + path);
    save_index(out, idx);
    if (!out) throw Error("short write on index file: " + path);
}

void write_report(const std::string& path, const BenchReport& r) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw Error("cannot write report file: " + path);
    out << bench::to_json(r);
}

std::vector<QueryPair> read_query_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open query file: " + path);
    std::vector<QueryPair> out;
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
        ++no;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first) || first[0] == '#') continue;
        QueryPair q;
        std::istringstream sv(first);
        if (!(sv >> q.s) || !(ls >> q.t))
            throw ParseError("query line must read 's t'", no);
        out.push_back(q);
    }
    return out;
}

UpdateKind update_kind_from(const std::string& name, std::size_t line_no) {
    if (name == "decrease") return UpdateKind::decrease;
    if (name == "increase") return UpdateKind::increase;
    if (name == "insert") return UpdateKind::insert;
    if (name == "erase" || name == "delete") return UpdateKind::erase;
    if (name == "vertex-insert" || name == "vertex_insert")
        return UpdateKind::vertex_insert;
    if (name == "vertex-erase" || name == "vertex_erase")
        return UpdateKind::vertex_erase;
    throw ParseError("unknown update kind: " + name, line_no);
}

std::vector<WeightUpdate> read_update_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open update file: " + path);
    std::vector<WeightUpdate> out;
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
        ++no;
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind) || kind[0] == '#') continue;
        WeightUpdate u;
        u.kind = update_kind_from(kind, no);
        if (!(ls >> u.u)) throw ParseError("update line needs a vertex", no);
        const bool vertex_op = u.kind == UpdateKind::vertex_insert ||
                               u.kind == UpdateKind::vertex_erase;
        if (!vertex_op) {
            if (!(ls >> u.v))
                throw ParseError("update line must read 'kind u v [w]'", no);
            if (u.kind != UpdateKind::erase && !(ls >> u.w))
                throw ParseError("this update kind needs a new weight", no);
        }
        out.push_back(u);
    }
    return out;
}

std::string weight_str(Weight w) {
    return w >= kInf ? "inf" : std::to_string(w);
}

// Skeleton report for subcommands that only exercise part of the pipeline.
BenchReport partial_report(const RunConfig& cfg, const Graph& g) {
    BenchReport r;
    r.config = cfg;
    r.vertices = g.vertex_count();
    r.edges = g.edge_count();
    r.verification.verdict = "skipped";
    r.verification.seed = cfg.seed;
    return r;
}

void fill_partition_section(BenchReport& r, const Graph& g,
                            const PartitionResult& p) {
    r.k_effective = p.k;
    r.partition = partition_metrics(g, p);
}

void fill_index_sections(BenchReport& r, const PSPIndex& idx) {
    fill_partition_section(r, idx.g, idx.part);
    for (const auto& e : idx.parts) {
        const auto f = e->footprint();
        r.label_entries += f.label_entries;
        r.shortcuts += f.shortcuts;
    }
    for (const auto& e : idx.repaired) {
        const auto f = e->footprint();
        r.label_entries += f.label_entries;
        r.shortcuts += f.shortcuts;
    }
    if (idx.tilde) {
        const auto f = idx.tilde->footprint();
        r.label_entries += f.label_entries;
        r.shortcuts += f.shortcuts;
    }
    std::ostringstream os;
    save_index(os, idx);
    r.index_bytes = os.str().size();
    r.counters = idx.counters;
}

int verdict_exit(const BenchReport& r) {
    return r.verification.verdict == "failed" ? 1 : 0;
}

struct Cli {
    RunConfig cfg;                 // resolved run configuration
    IndexDescriptor descriptor;    // cfg.index, kept in sync
    std::string queries_arg = "1000";
    std::string updates_arg = "200";
    std::string report_path, out_path, load_path;
    bool queries_given = false;

    // Builds a fresh index, or reads the one named by --load (whose embedded
    // graph then wins over --graph).
    PSPIndex make_index() const {
        if (!load_path.empty()) return load_index_file(load_path);
        const Graph g = load_or_builtin(cfg);
        IndexDescriptor d = descriptor;
        if (d.scheme == PartitionScheme::growing)
            d.k = int(std::min<std::size_t>(std::size_t(d.k),
                                            g.vertex_count()));
        return build_index(g, d, cfg.seed);
    }
};

int run_partition(const Cli& cli) {
    const Graph g = load_or_builtin(cli.cfg);
    IndexDescriptor d = cli.descriptor;
    if (d.scheme == PartitionScheme::growing)
        d.k = int(std::min<std::size_t>(std::size_t(d.k), g.vertex_count()));
    const auto p = make_partition(g, d, cli.cfg.seed);
    BenchReport r = partial_report(cli.cfg, g);
    fill_partition_section(r, g, p);
    bench::to_table(std::cout, r);
    write_report(cli.report_path, r);
    return 0;
}

int run_build(const Cli& cli) {
    RunConfig cfg = cli.cfg;
    cfg.queries = 0;
    cfg.updates = 0;
    std::optional<PSPIndex> idx;
    const BenchReport r = bench::cmd_run(cfg, idx);
    bench::to_table(std::cout, r);
    write_report(cli.report_path, r);
    if (!cli.out_path.empty()) save_index_file(*idx, cli.out_path);
    return verdict_exit(r);
}

int run_query(const Cli& cli) {
    PSPIndex idx = cli.make_index();
    std::vector<QueryPair> pairs;
    if (is_count(cli.queries_arg)) {
        pairs = generate_queries(idx.g, parse_count(cli.queries_arg, "--queries"),
                                 cli.cfg.seed, QueryStratum::any);
    } else {
        pairs = read_query_file(cli.queries_arg);
    }
    std::size_t wrong = 0;
    for (const auto& q : pairs) {
        const Weight got = psp_query(idx, q.s, q.t);
        std::cout << q.s << " " << q.t << " " << weight_str(got) << "\n";
        if (cli.cfg.verify != bench::VerifyMode::off &&
            got != dijkstra_distance(idx.g, q.s, q.t))
            ++wrong;
    }
    if (cli.cfg.verify == bench::VerifyMode::off) {
        std::cout << "verdict: skipped\n";
        return 0;
    }
    std::cout << "verdict: " << (wrong == 0 ? "verified" : "failed") << " ("
              << pairs.size() << " pairs)\n";
    return wrong == 0 ? 0 : 1;
}

int run_update(const Cli& cli) {
    PSPIndex idx = cli.make_index();
    std::vector<WeightUpdate> stream;
    if (is_count(cli.updates_arg)) {
        stream = generate_updates(
            idx.g, parse_count(cli.updates_arg, "--updates"), cli.cfg.seed);
    } else {
        stream = read_update_file(cli.updates_arg);
    }
    // A rebuild-required outcome is not applied in place; realize the change
    // on a graph copy and rebuild from scratch, like a real pipeline would.
    const auto rebuild_with = [&](const WeightUpdate& u) {
        Graph mutated = idx.g;
        apply_update(mutated, u);
        IndexDescriptor d = cli.descriptor;
        if (d.scheme == PartitionScheme::growing)
            d.k = int(std::min<std::size_t>(std::size_t(d.k),
                                            mutated.vertex_count()));
        idx = build_index(mutated, d, cli.cfg.seed);
    };
    std::size_t applied = 0, rebuilt = 0;
    if (cli.cfg.batch <= 1) {
        for (const auto& u : stream) {
            if (psp_update(idx, u) == UpdateOutcome::applied) {
                ++applied;
            } else {
                rebuild_with(u);
                ++rebuilt;
            }
        }
    } else {
        for (std::size_t i = 0; i < stream.size(); i += cli.cfg.batch) {
            const std::size_t len =
                std::min(cli.cfg.batch, stream.size() - i);
            const std::span<const WeightUpdate> chunk(&stream[i], len);
            if (batch_update(idx, chunk) == UpdateOutcome::applied) {
                applied += len;
            } else {
                for (const auto& u : chunk) rebuild_with(u);
                rebuilt += len;
            }
        }
    }
    std::cout << "updates: " << applied << " absorbed, " << rebuilt
              << " via rebuild\n";
    BenchReport r = partial_report(cli.cfg, idx.g);
    fill_index_sections(r, idx);
    if (cli.cfg.verify != bench::VerifyMode::off)
        r.verification =
            bench::cmd_verify(idx, idx.g, cli.cfg.verify,
                              cli.cfg.verify_sample, cli.cfg.seed);
    std::cout << "verdict: " << r.verification.verdict << "\n";
    for (const auto& f : r.verification.failures)
        std::cout << "  wrong pair (" << f.s << ", " << f.t << "): got "
                  << weight_str(f.got) << ", expected " << weight_str(f.want)
                  << "\n";
    write_report(cli.report_path, r);
    if (!cli.out_path.empty()) save_index_file(idx, cli.out_path);
    return verdict_exit(r);
}

int run_bench(const Cli& cli) {
    std::optional<PSPIndex> idx;
    const BenchReport r = bench::cmd_run(cli.cfg, idx);
    bench::to_table(std::cout, r);
    write_report(cli.report_path, r);
    if (!cli.out_path.empty()) save_index_file(*idx, cli.out_path);
    return verdict_exit(r);
}

int run_verify(const Cli& cli) {
    PSPIndex idx = cli.make_index();
    if (cli.cfg.plant_fault && !bench::plant_fault(idx))
        throw Error("fault injection found no label to corrupt");
    // default sample 10000 unless --queries was given explicitly
    const std::size_t sample =
        cli.queries_given ? parse_count(cli.queries_arg, "--queries") : 10000;
    BenchReport r = partial_report(cli.cfg, idx.g);
    fill_index_sections(r, idx);
    r.verification =
        bench::cmd_verify(idx, idx.g, cli.cfg.verify, sample, cli.cfg.seed);
    std::cout << "verdict: " << r.verification.verdict << " ("
              << r.verification.pairs_checked << " pairs"
              << (r.verification.exhaustive ? ", exhaustive" : ", sampled")
              << ")\n";
    for (const auto& f : r.verification.failures)
        std::cout << "  wrong pair (" << f.s << ", " << f.t << "): got "
                  << weight_str(f.got) << ", expected " << weight_str(f.want)
                  << "\n";
    write_report(cli.report_path, r);
    return verdict_exit(r);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"partitioned shortest-path index workbench"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "flat key=value file mirroring the flags; flags win");

    std::string graph_file, format = "dimacs", index_name = "n-ch-p";
    std::string strategy_arg, scheme_arg, pe_arg, oe_arg, verify_arg = "on";
    int k = 0, fanout = 0, threads = 1;
    std::size_t bandwidth = 0, leaf = 0, batch = 1, reps = 5;
    std::size_t verify_sample = 10000;
    std::uint64_t seed = 1;
    bool prune = false, plant = false;
    Cli cli;

    app.add_option("--graph", graph_file,
                   "graph file (omitted: a bundled 3x3 grid)");
    app.add_option("--format", format, "dimacs | edge-list")
        ->capture_default_str();
    app.add_option("--index", index_name,
                   "n-ch-p | p-td-p | p-pt-cp | n-pc-cp | n-ts-hp | custom")
        ->capture_default_str();
    app.add_option("--strategy", strategy_arg,
                   "pre-boundary | no-boundary | post-boundary (overrides "
                   "the preset)");
    app.add_option("--scheme", scheme_arg,
                   "growing | hierarchical | core-periphery (overrides the "
                   "preset)");
    app.add_option("--k", k, "growing scheme: partition count");
    app.add_option("--bandwidth", bandwidth,
                   "core-periphery scheme: contraction width");
    app.add_option("--fanout", fanout, "hierarchical scheme: split fanout");
    app.add_option("--leaf", leaf, "hierarchical scheme: max leaf size");
    app.add_flag("--prune", prune, "drop dominated overlay clique edges");
    app.add_option("--partition-engine", pe_arg,
                   "dijkstra | ch | td | pll | table (overrides the preset)");
    app.add_option("--overlay-engine", oe_arg,
                   "dijkstra | ch | td | pll | table (overrides the preset)");
    app.add_option("--queries", cli.queries_arg,
                   "pair count, or a file of 's t' lines (query subcommand); "
                   "doubles as the sample size for verify")
        ->capture_default_str();
    app.add_option("--updates", cli.updates_arg,
                   "update count, or a file of 'kind u v new_weight' lines "
                   "(update subcommand)")
        ->capture_default_str();
    app.add_option("--batch", batch, "apply updates in batches of this size")
        ->capture_default_str();
    app.add_option("--seed", seed, "partitioner + workload seed")
        ->capture_default_str();
    app.add_option("--threads", threads,
                   "worker threads for the per-partition engine builds")
        ->capture_default_str();
    app.add_option("--reps", reps, "timing repetitions per measurement")
        ->capture_default_str();
    app.add_option("--report", cli.report_path,
                   "write the machine-readable JSON report here");
    app.add_option("--verify", verify_arg, "on | off | exhaustive")
        ->capture_default_str();
    app.add_option("--verify-sample", verify_sample,
                   "pair count for sampled verification (bench)")
        ->capture_default_str();
    app.add_flag("--plant-fault", plant,
                 "testing aid: corrupt one label so verification must fail");
    app.add_option("--out", cli.out_path, "save the built index to this file");
    app.add_option("--load", cli.load_path,
                   "load an index saved by --out instead of building");

    auto* sub_partition = app.add_subcommand(
        "partition", "split the graph and report the cut metrics");
    auto* sub_build =
        app.add_subcommand("build", "build the index; report timing and size");
    auto* sub_query =
        app.add_subcommand("query", "answer point-to-point distance queries");
    auto* sub_update = app.add_subcommand(
        "update", "apply an update stream, absorbing or rebuilding");
    auto* sub_bench = app.add_subcommand(
        "bench", "full pipeline: timed build, queries, updates, verification");
    auto* sub_verify = app.add_subcommand(
        "verify", "check index answers against plain searches");
    for (auto* s : {sub_partition, sub_build, sub_query, sub_update,
                    sub_bench, sub_verify})
        s->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig& cfg = cli.cfg;
        cfg.graph_file = graph_file;
        cfg.format = bench::graph_format_from(format);
        IndexDescriptor d = make_preset(preset_from(index_name));
        if (app.count("--strategy")) d.strategy = strategy_from(strategy_arg);
        if (app.count("--scheme"))
            d.scheme = partition_scheme_from(scheme_arg);
        if (app.count("--k")) d.k = k;
        if (app.count("--bandwidth")) d.bandwidth = bandwidth;
        if (app.count("--fanout")) d.fanout = fanout;
        if (app.count("--leaf")) d.tau = leaf;
        if (app.count("--prune")) d.prune = prune;
        if (app.count("--partition-engine"))
            d.partition_engine = engine_kind_from(pe_arg);
        if (app.count("--overlay-engine"))
            d.overlay_engine = engine_kind_from(oe_arg);
        d.threads = threads;
        cfg.index = d;
        cli.descriptor = d;
        cfg.batch = batch;
        cfg.seed = seed;
        cfg.threads = threads;
        cfg.reps = reps;
        cfg.verify = bench::verify_mode_from(verify_arg);
        cfg.verify_sample = verify_sample;
        cfg.plant_fault = plant;
        cli.queries_given = app.count("--queries") > 0;
        if (sub_bench->parsed() || sub_build->parsed()) {
            cfg.queries = parse_count(cli.queries_arg, "--queries");
            cfg.updates = parse_count(cli.updates_arg, "--updates");
        }

        if (sub_partition->parsed()) return run_partition(cli);
        if (sub_build->parsed()) return run_build(cli);
        if (sub_query->parsed()) return run_query(cli);
        if (sub_update->parsed()) return run_update(cli);
        if (sub_bench->parsed()) return run_bench(cli);
        if (sub_verify->parsed()) return run_verify(cli);
        std::cerr << "pspbench: no subcommand selected\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "pspbench: " << e.what() << "\n";
        return 2;
    }
}
