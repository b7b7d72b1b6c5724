#pragma once
#include <cstdint>
#include <vector>

#include "psp/graph.hpp"
#include "psp/types.hpp"

namespace psp {

// ---- deterministic rng -------------------------------------------------
// Thin wrapper so generated workloads are bit-identical across platforms
// (std::uniform_* distributions are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    std::uint64_t next();
    // uniform in [0, n), n > 0
    std::uint64_t below(std::uint64_t n) { return next() % n; }
    // uniform in [0, 1)
    double real01() { return double(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t s_;
};

// ---- weight and structure updates ---------------------------------------

enum class UpdateKind : std::uint8_t {
    decrease,      // existing edge, strictly smaller finite weight
    increase,      // existing edge, strictly larger finite weight
    insert,        // edge absent (or deleted); finite weight
    erase,         // existing edge -> weight becomes kInf
    vertex_insert, // u names the vertex (may extend n by one); no edges yet
    vertex_erase,  // u names the vertex; expands to erase of each live edge
};

struct WeightUpdate {
    UpdateKind kind;
    Vertex u = kNoVertex;
    Vertex v = kNoVertex;
    Weight w = kInf; // target weight for decrease/increase/insert
};

// One realized change on one edge, as applied to the graph.
struct EdgeChange {
    Vertex u, v;
    Weight old_w, new_w;
};

// Validates the update against g, applies it, and reports the per-edge
// changes (vertex_erase fans out to one change per live adjacent edge).
// Throws ContractError when the update contradicts the graph state.
std::vector<EdgeChange> apply_update(Graph& g, const WeightUpdate& upd);

// Random weight-update stream per the evaluation protocol: pick a live edge
// uniformly; draw a factor a in (0,2], redrawing a == 1 and any draw whose
// rounded result does not actually move the weight; new weight is
// max(1, round(a * w)), classified decrease (a < 1) or increase (a > 1).
// Updates are generated against a scratch copy applied in sequence, so the
// stream is valid when replayed in order.
std::vector<WeightUpdate> generate_updates(const Graph& g, std::size_t count,
                                           std::uint64_t seed);

// Re-weights every edge as ceil(C / max(deg(u), deg(v))) with C the maximum
// degree, the standard proxy that makes high-degree hubs cheap to cross in
// unweighted complex networks. Deterministic; the seed is accepted for
// interface symmetry but the formula has no tie randomness.
void assign_complex_weights(Graph& g, std::uint64_t seed = 0);

// ---- query workloads ----------------------------------------------------

enum class QueryStratum : std::uint8_t {
    any,
    q1, // same partition
    q2, // both endpoints boundary
    q3, // exactly one endpoint boundary
    q4, // endpoints in different partitions
    d_band, // oracle-distance band 1..10, see below
};

struct QueryPair {
    Vertex s, t;
};

// Context for the stratified generators. part_of/is_boundary are required
// for Q1..Q4. For distance bands: band d_i covers (l_min*x^(i-1), l_min*x^i]
// with x = (l_max/l_min)^(1/10); band 1 also admits d == l_min. l_min
// defaults to the smallest positive edge weight, or 1000 when the caller
// loaded coordinates (1 km in metre-scaled road data); l_max defaults to a
// double-sweep eccentricity estimate.
struct WorkloadContext {
    const std::vector<int>* part_of = nullptr;
    const std::vector<char>* is_boundary = nullptr;
    int band = 0;
    Weight l_min = 0;
    Weight l_max = 0;
};

// Draws `count` s != t pairs honoring the stratum exactly.
// Throws InfeasibleError when the graph/partition cannot produce the stratum.
std::vector<QueryPair> generate_queries(const Graph& g, std::size_t count,
                                        std::uint64_t seed,
                                        QueryStratum stratum = QueryStratum::any,
                                        const WorkloadContext* ctx = nullptr);

} // namespace psp
