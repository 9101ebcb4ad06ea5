#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <unordered_set>

#include <json.hpp>

#include "antsyn/baseline.hpp"
#include "antsyn/error.hpp"
#include "antsyn/extraction.hpp"
#include "antsyn/log.hpp"
#include "antsyn/text.hpp"
#include "antsyn/trainer.hpp"

namespace antsyn::cli {

namespace {

using json = nlohmann::ordered_json;

std::ifstream open_in(const fs::path& p, const char* what) {
  if (p.empty()) throw ConfigError(std::string("missing --") + what);
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot open " + p.string());
  return in;
}

template <typename Fn>
void write_file(const fs::path& p, Fn&& fn) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write " + p.string());
  fn(out);
  out.flush();
  if (!out) throw Error("write failed: " + p.string());
}

fs::path prepare_out(const fs::path& out) {
  if (out.empty()) throw ConfigError("missing --out");
  fs::create_directories(out);
  return out;
}

void write_run_config(const fs::path& out, const json& j) {
  write_file(out / kRunConfigFile, [&](std::ostream& s) { s << j.dump(2) << '\n'; });
}

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

json model_json(const ModelConfig& c) {
  return {{"variant", to_string(c.variant)},
          {"feature", to_string(c.feature_mode)},
          {"lemma_dim", c.lemma_dim},
          {"label_dim", c.label_dim},
          {"word_dim", c.word_dim},
          {"hidden_dim", c.hidden_dim},
          {"dropout", c.dropout},
          {"epochs", c.epochs},
          {"batch_size", c.batch_size},
          {"seed", c.seed},
          {"adadelta_rho", c.adadelta_rho},
          {"adadelta_eps", c.adadelta_eps},
          {"max_path_len", c.max_path_len},
          {"threads", c.threads}};
}

struct LoadedDataset {
  Manifest manifest;
  SplitDataset data;
};

LoadedDataset load_dataset(const fs::path& manifest_path) {
  LoadedDataset d;
  {
    auto in = open_in(manifest_path, "manifest");
    d.manifest = read_manifest(in);
  }
  const fs::path patterns_path = manifest_path.parent_path() / d.manifest.patterns_file;
  auto in = open_in(patterns_path, "patterns");
  d.data = load_split_dataset(d.manifest, read_patterns(in));
  return d;
}

Vocabulary load_vocab(const fs::path& p) {
  auto in = open_in(p, "vocab");
  return read_vocabulary(in);
}

// Dimension from a word2vec "count dim" header or the first vector line.
int detect_vector_dim(const fs::path& p) {
  auto in = open_in(p, "embeddings");
  std::string line;
  while (std::getline(in, line)) {
    const auto fields = text::split_whitespace(line);
    if (fields.empty()) continue;
    if (fields.size() == 2 && text::parse_number<long>(fields[0]) &&
        text::parse_number<long>(fields[1])) {
      return static_cast<int>(*text::parse_number<long>(fields[1]));
    }
    return static_cast<int>(fields.size()) - 1;
  }
  throw Error("empty vector file " + p.string());
}

}  // namespace

void cmd_extract(const ExtractOptions& o) {
  const fs::path out = prepare_out(o.out);
  const int threads = resolve_threads(o.threads);
  write_run_config(out, {{"subcommand", "extract"},
                         {"corpus", o.corpus.string()},
                         {"pairs", o.pairs.string()},
                         {"out", o.out.string()},
                         {"feature", to_string(o.feature)},
                         {"max_path_len", o.max_path_len},
                         {"strict", o.strict},
                         {"threads", threads}});

  std::vector<LabeledPair> labeled;
  {
    auto in = open_in(o.pairs, "pairs");
    labeled = load_pairs(in);
  }
  if (labeled.empty()) log::warn("pairs file is empty; writing empty output");

  auto in = open_in(o.corpus, "corpus");
  ConlluReader reader(in, o.strict ? ErrorMode::Strict : ErrorMode::Lenient);
  PatternOptions popt;
  popt.feature_mode = o.feature;
  popt.max_path_len = o.max_path_len;
  const ExtractionResult r =
      extract_corpus_patterns(reader, word_pairs(labeled), popt, threads);
  for (const auto& d : reader.diagnostics()) {
    log::warn("corpus line " + std::to_string(d.line) + ": " + d.message);
  }
  write_file(out / kPatternsFile, [&](std::ostream& s) { write_patterns(s, r.patterns); });
  write_file(out / kStatsFile, [&](std::ostream& s) { write_stats(s, r.stats); });
  log::info("extracted patterns for " + std::to_string(r.patterns.size()) + " pairs");
}

void cmd_build(const BuildOptions& o) {
  const fs::path out = prepare_out(o.out);
  write_run_config(out, {{"subcommand", "build"},
                         {"patterns", o.patterns.string()},
                         {"pairs", o.pairs.string()},
                         {"out", o.out.string()},
                         {"min_count", o.min_count},
                         {"min_patterns", o.min_patterns},
                         {"ratios", {o.ratios.train, o.ratios.test, o.ratios.validation}},
                         {"seed", o.seed},
                         {"word_class", to_string(o.word_class)}});

  std::vector<LabeledPair> labeled;
  {
    auto in = open_in(o.pairs, "pairs");
    labeled = load_pairs(in);
  }
  ExtractionMap raw;
  {
    auto in = open_in(o.patterns, "patterns");
    raw = read_patterns(in);
  }
  const ExtractionMap filtered = filter_patterns(raw, o.min_count);
  AssembleStats stats;
  auto examples = assemble(labeled, filtered, o.min_patterns, &stats);
  log::info("pairs kept " + std::to_string(stats.kept) + ", without patterns " +
            std::to_string(stats.dropped_absent) + ", too few patterns " +
            std::to_string(stats.dropped_too_few));
  const SplitDataset data = balance_and_split(std::move(examples), o.ratios, o.seed, o.word_class);

  std::vector<PairExample> all;
  ExtractionMap kept;
  for (Split s : {Split::Train, Split::Test, Split::Validation}) {
    for (const auto& e : data.split(s)) {
      all.push_back(e);
      kept[WordPair{e.x, e.y}] = filtered.at(WordPair{e.x, e.y});
    }
  }
  const Vocabulary vocab = build_vocabulary(data.train, all);

  write_file(out / kPatternsFile, [&](std::ostream& s) { write_patterns(s, kept); });
  write_file(out / kManifestFile,
             [&](std::ostream& s) { write_manifest(s, make_manifest(data, kPatternsFile)); });
  write_file(out / kVocabFile, [&](std::ostream& s) { write_vocabulary(s, vocab); });
  write_file(out / kSummaryFile, [&](std::ostream& s) {
    write_summary(s, data);
    s << "pairs_dropped_absent\t" << stats.dropped_absent << '\n'
      << "pairs_dropped_too_few\t" << stats.dropped_too_few << '\n';
  });
}

void cmd_train(const TrainOptions& o) {
  const fs::path out = prepare_out(o.out);
  o.model.validate();
  json cfg = {{"subcommand", "train"},
              {"manifest", o.manifest.string()},
              {"embeddings", o.embeddings.string()},
              {"out", o.out.string()}};
  cfg["model"] = model_json(o.model);
  write_run_config(out, cfg);

  const LoadedDataset d = load_dataset(o.manifest);
  const fs::path vocab_path = o.manifest.parent_path() / kVocabFile;
  const Vocabulary vocab = load_vocab(vocab_path);

  ModelParams initial;
  if (!o.embeddings.empty()) {
    std::unordered_set<std::string> wanted(vocab.lemma.symbols().begin(),
                                           vocab.lemma.symbols().end());
    wanted.insert(vocab.word.symbols().begin(), vocab.word.symbols().end());
    auto in = open_in(o.embeddings, "embeddings");
    const VectorFile vectors = read_vector_file(in, o.model.lemma_dim, &wanted);
    initial = init_model(o.model, vocab, &vectors);
  } else {
    initial = init_model(o.model, vocab, nullptr);
  }

  const TrainResult r = train(initial, d.data, vocab);
  log::info("best epoch " + std::to_string(r.best_epoch));
  write_file(out / kCheckpointFile, [&](std::ostream& s) { write_checkpoint(s, r.params); });
  write_file(out / kEpochLogFile, [&](std::ostream& s) { write_epoch_log(s, r.log); });
  fs::copy_file(vocab_path, out / kVocabFile, fs::copy_options::overwrite_existing);
}

EvalReport cmd_eval(const EvalOptions& o) {
  const fs::path out = prepare_out(o.out);
  write_run_config(out, {{"subcommand", "eval"},
                         {"checkpoint", o.checkpoint.string()},
                         {"manifest", o.manifest.string()},
                         {"out", o.out.string()},
                         {"split", to_string(o.split)}});
  ModelParams params;
  {
    auto in = open_in(o.checkpoint, "checkpoint");
    params = read_checkpoint(in);
  }
  const Vocabulary vocab = load_vocab(o.checkpoint.parent_path() / kVocabFile);
  const LoadedDataset d = load_dataset(o.manifest);
  const auto& examples = d.data.split(o.split);
  if (examples.empty()) {
    throw ConfigError("split '" + std::string(to_string(o.split)) + "' is empty");
  }
  EvalReport r = evaluate(params, examples, vocab);
  r.word_class = d.manifest.word_class;
  ResultsTable table;
  table.add(r);
  table.add_note("split " + std::string(to_string(o.split)) + ", " +
                 std::to_string(r.total()) + " pairs");
  write_file(out / kResultsFile, [&](std::ostream& s) { table.write(s); });
  return r;
}

bool cmd_gradcheck(const GradcheckOptions& o) {
  if (o.runs < 1) throw ConfigError("--runs must be at least 1");
  std::vector<std::pair<std::uint64_t, GradCheckReport>> reports;
  bool ok = true;
  for (int k = 0; k < o.runs; ++k) {
    GradCheckConfig c = o.config;
    c.seed = o.config.seed + static_cast<std::uint64_t>(k);
    const GradCheckReport r = gradient_check(c);
    ok = ok && r.passed;
    reports.emplace_back(c.seed, r);
  }
  if (!o.out.empty()) {
    const fs::path out = prepare_out(o.out);
    const auto& c = o.config;
    write_run_config(out, {{"subcommand", "gradcheck"},
                           {"out", o.out.string()},
                           {"variant", to_string(c.variant)},
                           {"feature", to_string(c.feature_mode)},
                           {"lemma_dim", c.lemma_dim},
                           {"label_dim", c.label_dim},
                           {"word_dim", c.word_dim},
                           {"hidden_dim", c.hidden_dim},
                           {"batch_size", c.batch_size},
                           {"dropout", c.dropout},
                           {"step", c.step},
                           {"tolerance", c.tolerance},
                           {"seed", c.seed},
                           {"runs", o.runs},
                           {"zero_params", c.zero_params},
                           {"flip_block", c.flip_block}});
    write_file(out / kGradcheckFile, [&](std::ostream& s) {
      s << "seed\tchecked\tmax_rel_error\tworst\tpassed\n";
      for (const auto& [seed, r] : reports) {
        s << seed << '\t' << r.checked << '\t' << text::format_double(r.max_relative_error)
          << '\t' << r.worst_parameter << '\t' << (r.passed ? "yes" : "no") << '\n';
      }
    });
  }
  for (const auto& [seed, r] : reports) {
    std::cout << "seed " << seed << ": max relative error "
              << text::format_double(r.max_relative_error) << " at " << r.worst_parameter << " (analytic "
              << text::format_double(r.worst_analytic) << ", numeric "
              << text::format_double(r.worst_numeric) << ")"
              << " over " << r.checked << " parameters: " << (r.passed ? "PASS" : "FAIL")
              << '\n';
  }
  return ok;
}

EvalReport cmd_baseline(const BaselineOptions& o) {
  const fs::path out = prepare_out(o.out);
  write_run_config(out, {{"subcommand", "baseline"},
                         {"manifest", o.manifest.string()},
                         {"embeddings", o.embeddings.string()},
                         {"out", o.out.string()}});
  const LoadedDataset d = load_dataset(o.manifest);
  std::unordered_set<std::string> wanted;
  for (Split s : {Split::Train, Split::Test, Split::Validation}) {
    for (const auto& e : d.data.split(s)) {
      wanted.insert(e.x);
      wanted.insert(e.y);
    }
  }
  const int dim = detect_vector_dim(o.embeddings);
  auto in = open_in(o.embeddings, "embeddings");
  const VectorFile vectors = read_vector_file(in, dim, &wanted);
  const BaselineResult r = baseline_classify(cosine_features(d.data.train, vectors),
                                             cosine_features(d.data.validation, vectors),
                                             cosine_features(d.data.test, vectors));
  EvalReport report = r.test;
  report.word_class = d.manifest.word_class;
  ResultsTable table;
  table.add(report);
  table.add_note("sp-baseline: 1-feature logistic regression on cosine, threshold " +
                 text::format_fixed(r.threshold, 4) + " tuned on validation F1");
  table.add_note("pairs with a missing vector scored as cosine 0: " +
                 std::to_string(r.missing));
  write_file(out / kResultsFile, [&](std::ostream& s) { table.write(s); });
  if (r.missing > 0) {
    log::warn(std::to_string(r.missing) + " pairs lack a vector and were scored as cosine 0");
  }
  return report;
}

void cmd_synth(const SynthOptions& o) {
  const fs::path out = prepare_out(o.out);
  write_run_config(out, {{"subcommand", "synth"},
                         {"out", o.out.string()},
                         {"seed", o.seed},
                         {"pairs", o.pairs},
                         {"dim", o.dim},
                         {"fillers", o.fillers}});
  const SynthCorpus c = generate_synthetic(o);
  write_file(out / kCorpusFile, [&](std::ostream& s) {
    for (const auto& sentence : c.sentences) write_conllu(s, sentence);
  });
  write_file(out / kPairsFile, [&](std::ostream& s) {
    for (const auto& p : c.pairs) {
      s << p.x << '\t' << p.y << '\t' << (p.label == Label::Antonym ? 1 : 0) << '\n';
    }
  });
  std::vector<std::string> words;
  for (const auto& [w, v] : c.vectors.vectors) words.push_back(w);
  std::sort(words.begin(), words.end());
  write_file(out / kEmbeddingsFile, [&](std::ostream& s) {
    s << words.size() << ' ' << c.vectors.dim << '\n';
    for (const auto& w : words) {
      s << w;
      for (double v : c.vectors.vectors.at(w)) s << ' ' << text::format_fixed(v, 6);
      s << '\n';
    }
  });
}

}  // namespace antsyn::cli
