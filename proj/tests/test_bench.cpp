#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"
#include "psp/bench.hpp"
#include "psp/search.hpp"

using namespace psp;
using namespace psp::bench;

namespace {

RunConfig tiny_config() {
    RunConfig cfg;
    cfg.queries = 12;
    cfg.updates = 8;
    cfg.reps = 2;
    return cfg;
}

} // namespace

TEST_CASE("the bundled grid exists and the default run verifies against it") {
    const Graph g = builtin_grid();
    CHECK(g.vertex_count() == 9);
    CHECK(g.edge_count() == 12);

    const auto r = cmd_run(tiny_config());
    CHECK(r.vertices == 9);
    CHECK(r.edges == 12);
    CHECK(r.verification.verdict == "verified");
    CHECK(r.verification.exhaustive);
    CHECK(r.verification.pairs_checked == 36);
    CHECK(r.build.samples == 2);
    CHECK(r.index_bytes > 0);
    CHECK(!r.query.empty());
    for (const auto& [key, stat] : r.query) {
        INFO("stratum ", key);
        CHECK(stat.samples > 0);
        CHECK(stat.seed != 0);
    }
    // the default grid run clamps k to n: singleton blocks, everything is
    // boundary, so inner-vertex strata cannot be drawn
    CHECK(!r.query.count("same-partition"));
    CHECK(r.query.count("any"));
}

TEST_CASE("verification modes: off skips, fault injection fails loudly") {
    RunConfig cfg = tiny_config();
    cfg.verify = VerifyMode::off;
    const auto skipped = cmd_run(cfg);
    CHECK(skipped.verification.verdict == "skipped");
    CHECK(skipped.verification.pairs_checked == 0);

    cfg.verify = VerifyMode::on;
    cfg.plant_fault = true;
    const auto failed = cmd_run(cfg);
    CHECK(failed.verification.verdict == "failed");
    CHECK(failed.verification.mismatches > 0);
    REQUIRE(!failed.verification.failures.empty());
    const auto& f = failed.verification.failures.front();
    CHECK(f.got < f.want); // the planted fault shrinks a label
}

TEST_CASE("cmd_verify is exhaustive on small graphs and sampled on large") {
    const Graph p4 = fix::path_graph(4);
    auto idx = build_no_boundary(p4, partition_growing(p4, 2, 3));
    const auto v = cmd_verify(idx, p4, VerifyMode::on, 100, 7);
    CHECK(v.verdict == "verified");
    CHECK(v.exhaustive);
    CHECK(v.pairs_checked == 6);

    const Graph big = fix::random_connected_graph(620, 400, 5);
    auto big_idx = build_no_boundary(big, partition_growing(big, 8, 5));
    const auto s = cmd_verify(big_idx, big, VerifyMode::on, 150, 7);
    CHECK(s.verdict == "verified");
    CHECK(!s.exhaustive);
    CHECK(s.pairs_checked == 150);

    const auto e = cmd_verify(big_idx, big, VerifyMode::exhaustive, 10, 7);
    CHECK(e.exhaustive);
    CHECK(e.pairs_checked == 620u * 619 / 2);
    CHECK(e.verdict == "verified");
}

TEST_CASE("identical configs give byte-identical reports except timings") {
    RunConfig cfg = tiny_config();
    cfg.index = make_preset(PresetName::p_td_p);
    cfg.index.k = 3;
    cfg.batch = 3;
    const std::string a = to_json(cmd_run(cfg));
    const std::string b = to_json(cmd_run(cfg));
    auto ja = nlohmann::json::parse(a);
    auto jb = nlohmann::json::parse(b);
    CHECK(ja.contains("timings"));
    CHECK(ja["timings"].contains("build"));
    CHECK(ja["timings"]["build"].contains("samples"));
    CHECK(ja["timings"]["build"].contains("seed"));
    ja.erase("timings");
    jb.erase("timings");
    CHECK(ja.dump() == jb.dump());
    CHECK(ja["config"]["k"] == 3);
    CHECK(ja["config"]["index"] == "p-td-p");
    CHECK(ja["verification"]["verdict"] == "verified");
}

TEST_CASE("parallel partition builds produce the identical index") {
    const Graph g = fix::random_connected_graph(140, 120, 31);
    IndexDescriptor d = make_preset(PresetName::n_ch_p);
    d.k = 6;
    d.threads = 1;
    const auto one = build_index(g, d, 9);
    d.threads = 4;
    const auto four = build_index(g, d, 9);
    std::ostringstream s1, s4;
    save_index(s1, one);
    save_index(s4, four);
    CHECK(s1.str() == s4.str());
    for (Vertex s = 0; s < 140; s += 13)
        for (Vertex t = 0; t < 140; ++t)
            REQUIRE(psp_query(one, s, t) == psp_query(four, s, t));
}

TEST_CASE("update timing buckets and batching both flow into the report") {
    RunConfig cfg = tiny_config();
    cfg.graph_file = ""; // builtin grid
    cfg.updates = 20;
    const auto singles = cmd_run(cfg);
    CHECK((singles.update.count("decrease") || singles.update.count("increase")));
    std::size_t total = 0;
    for (const auto& [key, stat] : singles.update) total += stat.samples;
    CHECK(total == 20);

    cfg.batch = 6;
    const auto batched = cmd_run(cfg);
    REQUIRE(batched.update.count("batch"));
    CHECK(batched.update.at("batch").samples == 4); // ceil(20 / 6)
    CHECK(batched.verification.verdict == "verified");
}

TEST_CASE("name mappings round trip and reject junk") {
    for (const auto m :
         {VerifyMode::on, VerifyMode::off, VerifyMode::exhaustive})
        CHECK(verify_mode_from(verify_mode_name(m)) == m);
    CHECK_THROWS_AS((void)verify_mode_from("sometimes"), Error);
    CHECK(graph_format_from("dimacs") == GraphFormat::dimacs);
    CHECK(graph_format_from("edge-list") == GraphFormat::edge_list);
    CHECK(graph_format_from("edges") == GraphFormat::edge_list);
    CHECK_THROWS_AS((void)graph_format_from("csv"), Error);
}

TEST_CASE("single-block splits keep only the strata they can produce") {
    RunConfig cfg = tiny_config();
    cfg.index.scheme = PartitionScheme::hierarchical;
    cfg.index.tau = 64; // 9-vertex grid fits in one leaf
    cfg.index.fanout = 2;
    const auto r = cmd_run(cfg);
    CHECK(r.k_effective == 1);
    CHECK(r.query.count("any"));
    CHECK(r.query.count("same-partition"));
    CHECK(!r.query.count("cross-partition"));
    CHECK(!r.query.count("both-boundary"));
    CHECK(r.verification.verdict == "verified");
}
