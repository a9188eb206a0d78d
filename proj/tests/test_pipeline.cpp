#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <numeric>

#include <json.hpp>

#include "citemap/error.hpp"
#include "citemap/fixture.hpp"
#include "citemap/pipeline.hpp"

using namespace citemap;
using nlohmann::json;

namespace {

const std::string kData = CITEMAP_TEST_DATA;

PipelineConfig fixture_config() {
  PipelineConfig c;
  c.corpus_path = kData + "/fixture_500.jsonl";
  c.vocabulary_path = kData + "/fixture_vocab.tsv";
  c.required_terms = {"D200"};
  c.output_dir = "unused";
  return c;
}

}  // namespace

TEST_SUITE("run_pipeline") {
  TEST_CASE("500-paper fixture end to end") {
    const auto r = run_pipeline(fixture_config());
    CHECK(r.corpus_size == 500);
    CHECK(r.selected_size == 100);
    CHECK(r.coverage > 0.75);
    CHECK(r.coverage < 0.90);
    CHECK(r.graph.node_count() <= r.largest_component);
    CHECK(r.partition.cluster_count() >= 2);
    REQUIRE(r.modularity);
    CHECK(*r.modularity > 0.3);

    const auto report = json::parse(r.artifacts.report);
    CHECK(report["version"] == kVersion);
    CHECK(report["corpus"]["papers"] == 500);
    CHECK(report["clustering"]["clusters"] == r.partition.cluster_count());

    std::size_t total = 0;
    for (const auto& p : report["profiles"]) {
      total += p["size"].get<std::size_t>();
      const auto c = p["cluster"].get<ClusterId>();
      for (const auto& list : {p["central_papers"]["by_hierarchy"], p["central_papers"]["by_effective_degree"]}) {
        CHECK(list.size() <= 5);
        for (const auto& paper : list) CHECK(r.partition.cluster(r.graph.index_of(paper["id"].get<std::string>())) == c);
      }
      CHECK(p["avg_year"].get<double>() >= p["year_range"][0].get<double>());
      CHECK(p["avg_year"].get<double>() <= p["year_range"][1].get<double>());
    }
    CHECK(total == r.graph.node_count());
    CHECK(r.meta.total_meta_weight() + r.meta.total_intra_edges() == r.graph.arcs().size());

    // Every network paper carries the required term.
    for (const auto& p : r.network_corpus.papers()) CHECK(p.terms.contains("D200"));
    const auto lines = std::count(r.artifacts.partition_tsv.begin(), r.artifacts.partition_tsv.end(), '\n');
    CHECK(static_cast<std::size_t>(lines) == r.graph.node_count());
    CHECK(r.artifacts.svg.starts_with("<?xml"));
    CHECK(r.artifacts.graphml.find("<graphml") != std::string::npos);
  }

  TEST_CASE("identical configuration gives byte-identical artifacts") {
    const auto a = run_pipeline(fixture_config());
    const auto b = run_pipeline(fixture_config());
    CHECK(a.artifacts.report == b.artifacts.report);
    CHECK(a.artifacts.svg == b.artifacts.svg);
    CHECK(a.artifacts.graphml == b.artifacts.graphml);
    CHECK(a.artifacts.partition_tsv == b.artifacts.partition_tsv);
    CHECK(a.artifacts.centrality_tsv == b.artifacts.centrality_tsv);
    CHECK(a.artifacts.edges_tsv == b.artifacts.edges_tsv);
  }

  TEST_CASE("bundled 40-paper fixture is byte-identical across runs") {
    PipelineConfig c;
    c.corpus_path = kData + "/fixture_corpus.jsonl";
    c.vocabulary_path = kData + "/fixture_vocab.tsv";
    const auto a = run_pipeline(c);
    const auto b = run_pipeline(c);
    CHECK(a.corpus_size == 40);
    CHECK(a.selected_size == 8);
    CHECK(a.artifacts.report == b.artifacts.report);
    CHECK(a.artifacts.svg == b.artifacts.svg);
  }

  TEST_CASE("fraction 1.0 keeps full coverage") {
    auto c = fixture_config();
    c.fraction = 1.0;
    c.layout_iterations = 50;
    const auto r = run_pipeline(c);
    CHECK(r.selected_size == r.corpus_size);
    CHECK(r.coverage == 1.0);
  }

  TEST_CASE("greedy method is selectable and both scores are reported") {
    auto c = fixture_config();
    c.method = ClusterMethod::kGreedy;
    const auto r = run_pipeline(c);
    REQUIRE(r.modularity_greedy);
    REQUIRE(r.modularity_multilevel);
    CHECK(*r.modularity == *r.modularity_greedy);
    CHECK(json::parse(r.artifacts.report)["clustering"]["method"] == "greedy");
  }

  TEST_CASE("filter removing everything is a pipeline error") {
    auto c = fixture_config();
    c.required_terms = {"NOT-A-TERM"};
    try {
      run_pipeline(c);
      FAIL("expected an error");
    } catch (const PipelineError& e) {
      CHECK(e.stage() == "filter");
    }
  }

  TEST_CASE("tagged export input") {
    PipelineConfig c;
    c.tagged_export_path = kData + "/sample_export.txt";
    c.vocabulary_path = kData + "/fixture_vocab.tsv";
    c.fraction = 1.0;
    const auto r = run_pipeline(c);
    CHECK(r.corpus_size == 8);
    CHECK(r.graph.arcs().size() == 14);
    const auto report = json::parse(r.artifacts.report);
    CHECK(report["corpus"]["ingest"]["format"] == "tagged");
    CHECK(report["corpus"]["ingest"]["references"]["resolved"] == 14);
    CHECK(report["corpus"]["ingest"]["references"]["unresolved"] == 1);
  }

  TEST_CASE("in-memory corpus with an all-clinical fixture") {
    FixtureOptions opts;
    opts.clinical_share_start = 1.0;
    opts.clinical_share_end = 1.0;
    opts.core_term_share = 0.0;
    const auto f = generate_fixture(200, 1.1, 4, opts);
    PipelineConfig c;
    c.corpus_path = "memory";
    c.vocabulary_path = "memory";
    c.layout_iterations = 50;
    const auto r = run_pipeline(c, f.corpus, load_vocabulary(f.vocabulary_text));
    for (const auto& p : r.profiles) {
      REQUIRE(p.clinical_rate);
      CHECK(*p.clinical_rate == 1.0);
      CHECK(p.stage == Stage::kClinical);
    }
  }
}

TEST_SUITE("configuration") {
  TEST_CASE("invalid settings are input errors") {
    auto both = fixture_config();
    both.tagged_export_path = "x";
    CHECK_THROWS_AS(both.validate(), InputError);
    auto none = fixture_config();
    none.corpus_path.clear();
    CHECK_THROWS_AS(none.validate(), InputError);
    auto fraction = fixture_config();
    fraction.fraction = 0.0;
    CHECK_THROWS_AS(fraction.validate(), InputError);
    auto thresholds = fixture_config();
    thresholds.thresholds = {0.5, 0.2};
    CHECK_THROWS_AS(thresholds.validate(), InputError);
    auto vocab = fixture_config();
    vocab.vocabulary_path.clear();
    CHECK_THROWS_AS(vocab.validate(), InputError);
    CHECK_THROWS_AS(parse_cluster_method("random"), InputError);
    CHECK(parse_cluster_method("greedy") == ClusterMethod::kGreedy);
  }

  TEST_CASE("missing input file is an input error") {
    auto c = fixture_config();
    c.corpus_path = kData + "/does_not_exist.jsonl";
    CHECK_THROWS_AS(run_pipeline(c), InputError);
  }
}

TEST_SUITE("fixture generator") {
  TEST_CASE("deterministic per seed and parseable") {
    const auto a = generate_fixture(120, 1.1, 9);
    const auto b = generate_fixture(120, 1.1, 9);
    CHECK(a.corpus == b.corpus);
    CHECK_FALSE(a.corpus == generate_fixture(120, 1.1, 10).corpus);
    CHECK(parse_corpus(serialize_corpus(a.corpus)) == a.corpus);
    CHECK_NOTHROW(load_vocabulary(a.vocabulary_text));
    CHECK_THROWS_AS(generate_fixture(5, 1.1, 1), DomainError);
  }

  TEST_CASE("citations point to older papers") {
    const auto f = generate_fixture(300, 1.1, 3);
    for (const auto& p : f.corpus.papers()) {
      for (const auto& ref : p.cited_refs) CHECK(f.corpus.at(ref).year <= p.year);
    }
  }

  TEST_CASE("planted partition sizes") {
    const auto g = planted_partition(4, 16, 0.6, 0.02, 1);
    CHECK(g.graph.node_count() == 64);
    CHECK(g.truth.size() == 64);
    CHECK(std::count(g.truth.begin(), g.truth.end(), std::size_t{3}) == 16);
  }
}

TEST_CASE("artifacts are written to disk") {
  const auto dir = std::filesystem::temp_directory_path() / "citemap_test_artifacts";
  std::filesystem::remove_all(dir);
  auto c = fixture_config();
  c.layout_iterations = 20;
  const auto r = run_pipeline(c);
  write_artifacts(r.artifacts, dir.string());
  for (const char* name : {"report.json", "map.svg", "network.graphml", "partition.tsv", "centrality.tsv", "edges.tsv"}) {
    CHECK(std::filesystem::file_size(dir / name) > 0);
  }
  std::filesystem::remove_all(dir);
}
