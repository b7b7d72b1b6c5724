#pragma once
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "psp/presets.hpp"

namespace psp::bench {

enum class VerifyMode : std::uint8_t { on, off, exhaustive };

std::string_view verify_mode_name(VerifyMode m);
VerifyMode verify_mode_from(std::string_view name); // throws Error

std::string_view graph_format_name(GraphFormat f);
GraphFormat graph_format_from(std::string_view name); // throws Error

// Everything a run needs; flags and config files both fill this in.
struct RunConfig {
    std::string graph_file;          // empty -> the bundled 3x3 grid
    GraphFormat format = GraphFormat::dimacs;
    IndexDescriptor index;           // preset expansion with overrides applied
    std::size_t queries = 1000;      // per-stratum timed query pairs
    std::size_t updates = 200;       // timed weight updates
    std::size_t batch = 1;           // >1 groups the update stream into batches
    std::uint64_t seed = 1;          // drives partitioner + workloads
    int threads = 1;                 // per-partition build workers
    std::size_t reps = 5;            // timing repetitions per measured quantity
    VerifyMode verify = VerifyMode::on;
    std::size_t verify_sample = 10000; // pair count when not exhaustive
    bool plant_fault = false;        // testing aid: corrupt one label pre-verify
};

// One timed quantity: median/p99 over `samples` measurements taken across
// `reps` repetitions, with the seed that generated the workload.
struct TimingStat {
    double median_ns = 0.0;
    double p99_ns = 0.0;
    std::size_t samples = 0;
    std::size_t reps = 0;
    std::uint64_t seed = 0;
};

struct FailedPair {
    Vertex s = 0, t = 0;
    Weight got = 0, want = 0;
};

struct VerifyOutcome {
    std::string verdict;             // "verified" | "failed" | "skipped"
    std::size_t pairs_checked = 0;
    bool exhaustive = false;
    std::uint64_t seed = 0;
    std::size_t mismatches = 0;
    std::vector<FailedPair> failures; // first few offending pairs
};

struct BenchReport {
    RunConfig config;
    std::size_t vertices = 0, edges = 0;
    int k_effective = 0;             // partition count actually produced
    PartitionMetrics partition;
    std::uint64_t label_entries = 0; // summed over every engine
    std::uint64_t shortcuts = 0;
    std::uint64_t index_bytes = 0;   // serialized size
    IndexCounters counters;          // state after the whole pipeline
    VerifyOutcome verification;
    TimingStat build;
    // keyed "any", "same-partition", "both-boundary", "one-boundary",
    // "cross-partition"; strata the partition cannot produce are absent
    std::map<std::string, TimingStat> query;
    // keyed "decrease", "increase", or "batch" when batching
    std::map<std::string, TimingStat> update;
};

// Compares index answers against a plain search. `mode` off skips; exhaustive
// checks every unordered pair; `on` is exhaustive up to 500 vertices and a
// seeded `sample`-pair draw beyond that.
VerifyOutcome cmd_verify(const PSPIndex& idx, const Graph& g, VerifyMode mode,
                         std::size_t sample, std::uint64_t seed);

// The full pipeline: load, build (timed), per-stratum query timing, update
// timing, verification. Deterministic apart from the timing fields. The
// two-argument form hands the built (and then mutated) index back.
BenchReport cmd_run(const RunConfig& cfg);
BenchReport cmd_run(const RunConfig& cfg, std::optional<PSPIndex>& keep);

// The bundled fallback instance used when no graph file is named.
Graph builtin_grid();

// Rendering. The JSON document is deterministic: two runs with the same
// config and seeds differ only inside the "timings" subtree.
std::string to_json(const BenchReport& r);
void to_table(std::ostream& out, const BenchReport& r);

// Testing aid behind --plant-fault: corrupts one partition label so
// verification must fail; returns false when the index has no edge to bend.
bool plant_fault(PSPIndex& idx);

} // namespace psp::bench
