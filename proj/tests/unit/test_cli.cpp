#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <json.hpp>

#include "antsyn/extraction.hpp"
#include "commands.hpp"
#include "fixtures.hpp"

using namespace antsyn;
using namespace antsyn::testing;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + ANTSYN_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return status == 0 ? 0 : 1;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST(Cli, ExtractGolden) {
  const fs::path out = scratch_dir("cli_golden");
  ASSERT_EQ(run_cli("extract --corpus " + q(data_path("golden.conllu")) + " --pairs " +
                    q(data_path("golden_pairs.tsv")) + " --out " + q(out) + " --strict"),
            0);
  EXPECT_EQ(read_file(out / cli::kPatternsFile), std::string("old\tnew\t") + kGoldenKey + "\t1\n");
  const auto config = nlohmann::json::parse(read_file(out / cli::kRunConfigFile));
  EXPECT_EQ(config.at("subcommand"), "extract");
}

TEST(Cli, EmptyPairsGiveEmptyPatterns) {
  const fs::path out = scratch_dir("cli_empty");
  write_text(out / "pairs.tsv", "");
  cli::ExtractOptions o;
  o.corpus = data_path("golden.conllu");
  o.pairs = out / "pairs.tsv";
  o.out = out / "run";
  cli::cmd_extract(o);
  EXPECT_EQ(read_file(o.out / cli::kPatternsFile), "");
}

TEST(Cli, StrictModeRejectsMalformedCorpus) {
  const fs::path out = scratch_dir("cli_bad");
  write_text(out / "bad.conllu", "1\told\told\tADJ\tJJ\t_\t7\tamod\t_\t_\n\n");
  const std::string args = "extract --corpus " + q(out / "bad.conllu") + " --pairs " +
                           q(data_path("golden_pairs.tsv")) + " --out " + q(out / "run");
  EXPECT_NE(run_cli(args + " --strict"), 0);
  EXPECT_EQ(run_cli(args), 0);
}

TEST(Cli, UnknownOptionFails) {
  EXPECT_NE(run_cli("train --no-such-flag"), 0);
  EXPECT_NE(run_cli(""), 0);
  EXPECT_NE(run_cli("extract --feature sideways --corpus a --pairs b --out c"), 0);
}

TEST(Cli, SynthIsDeterministicAndParses) {
  const fs::path a = scratch_dir("cli_synth_a");
  const fs::path b = scratch_dir("cli_synth_b");
  cli::SynthOptions o;
  o.pairs = 40;
  o.fillers = 10;
  o.dim = 5;
  o.out = a;
  cli::cmd_synth(o);
  o.out = b;
  cli::cmd_synth(o);
  for (const char* f : {cli::kCorpusFile, cli::kPairsFile, cli::kEmbeddingsFile}) {
    EXPECT_EQ(read_file(a / f), read_file(b / f)) << f;
  }
  std::ifstream in(a / cli::kCorpusFile);
  const auto parsed = parse_conllu(in, ErrorMode::Strict);
  EXPECT_TRUE(parsed.diagnostics.empty());

  std::ifstream pairs_in(a / cli::kPairsFile);
  const auto pairs = load_pairs(pairs_in);
  ASSERT_EQ(pairs.size(), 40u);
  int antonyms = 0;
  for (const auto& p : pairs) antonyms += p.label == Label::Antonym;
  EXPECT_EQ(antonyms, 20);

  // every pair reaches the filter thresholds
  const auto extracted = extract_corpus_patterns(parsed.sentences, word_pairs(pairs));
  EXPECT_EQ(assemble(pairs, filter_patterns(extracted.patterns, 5), 5).size(), 40u);

  std::ifstream vin(a / cli::kEmbeddingsFile);
  const auto vectors = read_vector_file(vin, 5);
  for (const auto& p : pairs) {
    EXPECT_TRUE(vectors.vectors.count(p.x));
    EXPECT_TRUE(vectors.vectors.count(p.y));
  }
}

TEST(Cli, AntonymShapeFromTo) {
  cli::SynthOptions o;
  o.pairs = 20;
  o.fillers = 0;
  const auto corpus = cli::generate_synthetic(o);
  bool found = false;
  for (const auto& p : corpus.pairs) {
    if (p.label != Label::Antonym) continue;
    const auto r = extract_corpus_patterns(corpus.sentences, {{p.x, p.y}});
    for (const auto& [key, count] : r.patterns.at({p.x, p.y})) {
      if (key.find("from/IN/prep/1") != std::string::npos) {
        EXPECT_EQ(key.substr(0, 12), "X/JJ/pobj/2 ");
        found = true;
      }
    }
  }
  EXPECT_TRUE(found);
}

TEST(Cli, BuildTrainEvalSmoke) {
  const fs::path root = scratch_dir("cli_pipeline");
  cli::SynthOptions s;
  s.pairs = 40;
  s.fillers = 10;
  s.dim = 6;
  s.out = root / "synth";
  cli::cmd_synth(s);

  cli::ExtractOptions e;
  e.corpus = s.out / cli::kCorpusFile;
  e.pairs = s.out / cli::kPairsFile;
  e.out = root / "extract";
  e.threads = 2;
  cli::cmd_extract(e);

  cli::BuildOptions b;
  b.patterns = e.out / cli::kPatternsFile;
  b.pairs = e.pairs;
  b.out = root / "build";
  cli::cmd_build(b);
  ASSERT_TRUE(fs::exists(b.out / cli::kManifestFile));
  ASSERT_TRUE(fs::exists(b.out / cli::kVocabFile));

  cli::TrainOptions t;
  t.manifest = b.out / cli::kManifestFile;
  t.embeddings = s.out / cli::kEmbeddingsFile;
  t.out = root / "train";
  t.model.lemma_dim = 6;
  t.model.label_dim = 2;
  t.model.hidden_dim = 4;
  t.model.epochs = 2;
  cli::cmd_train(t);
  const std::string log = read_file(t.out / cli::kEpochLogFile);
  EXPECT_EQ(std::count(log.begin(), log.end(), '\n'), 3);

  cli::EvalOptions v;
  v.checkpoint = t.out / cli::kCheckpointFile;
  v.manifest = t.manifest;
  v.out = root / "eval";
  const EvalReport report = cli::cmd_eval(v);
  EXPECT_EQ(report.tp + report.fp + report.fn + report.tn, 10);
  EXPECT_TRUE(fs::exists(v.out / cli::kResultsFile));

  cli::BaselineOptions bl;
  bl.manifest = t.manifest;
  bl.embeddings = t.embeddings;
  bl.out = root / "baseline";
  const EvalReport base = cli::cmd_baseline(bl);
  EXPECT_EQ(base.model, "sp-baseline");
}
