#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "antsyn/dataset.hpp"
#include "antsyn/embeddings.hpp"
#include "antsyn/evaluation.hpp"
#include "antsyn/gradcheck.hpp"
#include "antsyn/model.hpp"
#include "antsyn/pattern.hpp"
#include "antsyn/treebank.hpp"

namespace antsyn::cli {

namespace fs = std::filesystem;

// Output file names inside --out.
inline constexpr const char* kRunConfigFile = "run_config.json";
inline constexpr const char* kPatternsFile = "patterns.tsv";
inline constexpr const char* kStatsFile = "stats.tsv";
inline constexpr const char* kManifestFile = "manifest.tsv";
inline constexpr const char* kVocabFile = "vocab.tsv";
inline constexpr const char* kSummaryFile = "summary.tsv";
inline constexpr const char* kCheckpointFile = "checkpoint.txt";
inline constexpr const char* kEpochLogFile = "epoch_log.tsv";
inline constexpr const char* kResultsFile = "results.tsv";
inline constexpr const char* kGradcheckFile = "gradcheck.tsv";
inline constexpr const char* kCorpusFile = "corpus.conllu";
inline constexpr const char* kPairsFile = "pairs.tsv";
inline constexpr const char* kEmbeddingsFile = "embeddings.txt";

struct ExtractOptions {
  fs::path corpus;
  fs::path pairs;
  fs::path out;
  FeatureMode feature = FeatureMode::Distance;
  int max_path_len = 10;
  bool strict = false;
  int threads = 0;  // 0 = all cores
};

// corpus + pairs -> patterns.tsv (unfiltered counts) and stats.tsv.
void cmd_extract(const ExtractOptions& o);

struct BuildOptions {
  fs::path patterns;
  fs::path pairs;
  fs::path out;
  std::int64_t min_count = 5;
  std::size_t min_patterns = 5;
  SplitRatios ratios;
  std::uint64_t seed = 1;
  WordClass word_class = WordClass::Adjective;
};

// Filters, balances and splits; writes manifest.tsv, patterns.tsv (the kept
// pairs' surviving patterns), vocab.tsv and summary.tsv.
void cmd_build(const BuildOptions& o);

struct TrainOptions {
  fs::path manifest;
  fs::path embeddings;  // optional; random lemma/word vectors when empty
  fs::path out;
  ModelConfig model;
};

// Writes checkpoint.txt, epoch_log.tsv and a copy of the dataset's vocab.tsv.
void cmd_train(const TrainOptions& o);

struct EvalOptions {
  fs::path checkpoint;  // vocab.tsv is read from the same directory
  fs::path manifest;
  fs::path out;
  Split split = Split::Test;
};

EvalReport cmd_eval(const EvalOptions& o);

struct GradcheckOptions {
  fs::path out;  // optional report directory
  GradCheckConfig config;
  int runs = 1;  // seeds config.seed .. config.seed + runs - 1
};

// True when every run passes.
bool cmd_gradcheck(const GradcheckOptions& o);

struct BaselineOptions {
  fs::path manifest;
  fs::path embeddings;
  fs::path out;
};

EvalReport cmd_baseline(const BaselineOptions& o);

struct SynthOptions {
  fs::path out;
  std::uint64_t seed = 1;
  int pairs = 400;  // split evenly between antonyms and synonyms
  int dim = 100;    // embedding file dimension
  int fillers = 200;
};

struct SynthCorpus {
  std::vector<Sentence> sentences;
  std::vector<LabeledPair> pairs;
  VectorFile vectors;
};

SynthCorpus generate_synthetic(const SynthOptions& o);

// Writes corpus.conllu, pairs.tsv and embeddings.txt.
void cmd_synth(const SynthOptions& o);

}  // namespace antsyn::cli
