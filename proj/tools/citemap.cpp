// citemap: literature-network mapping from a citation corpus.
//
//   citemap run --corpus papers.jsonl --vocab vocab.tsv --out results/
//   citemap fixture --n 40 --seed 7 --corpus papers.jsonl --vocab vocab.tsv

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "citemap/corpus.hpp"
#include "citemap/error.hpp"
#include "citemap/fixture.hpp"
#include "citemap/pipeline.hpp"
#include "citemap/text.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitPipeline = 3;

citemap::StageThresholds parse_thresholds(const std::string& value) {
  const auto parts = citemap::text::split(value, ',');
  if (parts.size() != 2) throw citemap::InputError("--thresholds expects 'translational,clinical'");
  citemap::StageThresholds t;
  try {
    t.translational = std::stod(parts[0]);
    t.clinical = std::stod(parts[1]);
  } catch (const std::exception&) {
    throw citemap::InputError("--thresholds expects two numbers");
  }
  return t;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw citemap::InputError("cannot write '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Citation-network mapping: top-cited core, modularity clusters, clinical-term stages, maps"};
  app.require_subcommand(1);

  citemap::PipelineConfig config;
  std::string method = "multilevel";
  std::string thresholds = "0.15,0.33";
  std::string color_low = "#ff0000";
  std::string color_high = "#0000ff";
  std::vector<std::string> required;

  auto* run = app.add_subcommand("run", "Run the full pipeline and write report and map artifacts");
  auto* input = run->add_option_group("input");
  input->add_option("--corpus", config.corpus_path, "Native corpus (one JSON record per line)");
  input->add_option("--tagged-export", config.tagged_export_path, "Tagged citation-index export (TI/PY/TC/CR/RP/ER)");
  input->require_option(1);
  run->add_option("--vocab", config.vocabulary_path, "Controlled vocabulary file")->required();
  run->add_option("--fraction", config.fraction, "Share of most-cited papers to keep")->capture_default_str();
  run->add_option("--require-term", required, "Term every network paper must carry (repeatable)");
  run->add_option("--method", method, "Clustering method: multilevel or greedy")->capture_default_str();
  run->add_option("--seed", config.seed, "Seed for clustering order and layout")->capture_default_str();
  run->add_option("--thresholds", thresholds, "Stage cut points 'translational,clinical'")->capture_default_str();
  run->add_option("--top-k", config.top_k, "Entries per top-terms/institutions/central-paper list")->capture_default_str();
  run->add_option("--out", config.output_dir, "Output directory")->required();
  run->add_option("--iterations", config.layout_iterations, "Spring layout iterations")->capture_default_str();
  run->add_flag("--include-ties", config.include_ties, "Keep every paper tied at the selection cutoff");
  run->add_flag("--strict-terms", config.strict_terms, "Drop terms unknown to the vocabulary from rate denominators");
  run->add_flag("--per-cluster", config.per_cluster, "Effective degree over intra-cluster edges only");
  run->add_option("--color-low", color_low, "Colour of the lowest clinical rate")->capture_default_str();
  run->add_option("--color-high", color_high, "Colour of the highest clinical rate")->capture_default_str();

  std::size_t fixture_n = 40;
  double exponent = 1.1;
  std::uint64_t fixture_seed = 7;
  std::string fixture_corpus;
  std::string fixture_vocab;
  auto* fixture = app.add_subcommand("fixture", "Generate a synthetic corpus and its vocabulary");
  fixture->add_option("--n", fixture_n, "Number of papers (>= 10)")->capture_default_str();
  fixture->add_option("--exponent", exponent, "Zipf exponent of index citation counts")->capture_default_str();
  fixture->add_option("--seed", fixture_seed, "Generator seed")->capture_default_str();
  fixture->add_option("--corpus", fixture_corpus, "Output corpus path")->required();
  fixture->add_option("--vocab", fixture_vocab, "Output vocabulary path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*fixture) {
      const auto f = citemap::generate_fixture(fixture_n, exponent, fixture_seed);
      write_text(fixture_corpus, citemap::serialize_corpus(f.corpus));
      write_text(fixture_vocab, f.vocabulary_text);
      std::cout << "wrote " << f.corpus.size() << " papers to " << fixture_corpus << "\n";
      return kExitOk;
    }

    config.method = citemap::parse_cluster_method(method);
    config.thresholds = parse_thresholds(thresholds);
    config.required_terms.insert(required.begin(), required.end());
    try {
      config.colors.low = citemap::parse_hex_color(color_low);
      config.colors.high = citemap::parse_hex_color(color_high);
    } catch (const citemap::DomainError& e) {
      throw citemap::InputError(e.what());
    }

    const auto result = citemap::run_pipeline(config);
    citemap::write_artifacts(result.artifacts, config.output_dir);
    std::cout << result.corpus_size << " papers -> " << result.selected_size << " selected (coverage "
              << citemap::text::fixed(result.coverage, 3) << ") -> " << result.largest_component
              << " in largest component -> " << result.graph.node_count() << " after filter -> "
              << result.partition.cluster_count() << " clusters\n";
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
    return kExitOk;
  } catch (const citemap::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const citemap::PipelineError& e) {
    std::cerr << "pipeline error in stage " << e.what() << "\n";
    return kExitPipeline;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPipeline;
  }
}
