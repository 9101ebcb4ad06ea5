#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "antsyn/error.hpp"
#include "antsyn/log.hpp"
#include "antsyn/text.hpp"
#include "commands.hpp"

using namespace antsyn;
using namespace antsyn::cli;

namespace {

const std::vector<std::string> kVariants = {"pattern", "combined"};
const std::vector<std::string> kFeatures = {"distance", "direction"};
const std::vector<std::string> kWordClasses = {"adjective", "verb", "noun"};
const std::vector<std::string> kSplits = {"train", "test", "validation"};

void print_report(const EvalReport& r) {
  std::cout << "P " << text::format_fixed(r.precision, 4) << " R "
            << text::format_fixed(r.recall, 4) << " F1 " << text::format_fixed(r.f1, 4)
            << " (tp " << r.tp << " fp " << r.fp << " fn " << r.fn << " tn " << r.tn << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"antonym/synonym pattern toolkit"};
  app.require_subcommand(1);

  ExtractOptions ex;
  std::string ex_feature = "distance";
  auto* extract = app.add_subcommand("extract", "extract path patterns for word pairs");
  extract->add_option("--corpus", ex.corpus, "CoNLL-U corpus")->required();
  extract->add_option("--pairs", ex.pairs, "pairs TSV (x, y, label)")->required();
  extract->add_option("--out", ex.out, "output directory")->required();
  extract->add_option("--feature", ex_feature, "distance|direction")
      ->check(CLI::IsMember(kFeatures));
  extract->add_option("--max-path-len", ex.max_path_len, "longest path kept, in nodes");
  extract->add_flag("--strict", ex.strict, "fail on the first malformed sentence");
  extract->add_option("--threads", ex.threads, "worker threads (0 = all cores)");

  BuildOptions bd;
  std::string bd_word_class = "adjective";
  std::string ratios = "0.70,0.25,0.05";
  auto* build = app.add_subcommand("build", "filter, balance and split a dataset");
  build->add_option("--patterns", bd.patterns, "patterns TSV from extract")->required();
  build->add_option("--pairs", bd.pairs, "pairs TSV")->required();
  build->add_option("--out", bd.out, "output directory")->required();
  build->add_option("--min-count", bd.min_count, "minimum pattern frequency per pair");
  build->add_option("--min-patterns", bd.min_patterns, "minimum patterns per pair");
  build->add_option("--ratios", ratios, "train,test,validation");
  build->add_option("--seed", bd.seed, "shuffle seed");
  build->add_option("--word-class", bd_word_class, "adjective|verb|noun")
      ->check(CLI::IsMember(kWordClasses));

  TrainOptions tr;
  std::string tr_variant = "pattern", tr_feature = "distance";
  auto* trn = app.add_subcommand("train", "train a classifier");
  trn->add_option("--manifest", tr.manifest, "dataset manifest from build")->required();
  trn->add_option("--embeddings", tr.embeddings, "pretrained vectors (text format)");
  trn->add_option("--out", tr.out, "output directory")->required();
  trn->add_option("--variant", tr_variant, "pattern|combined")
      ->check(CLI::IsMember(kVariants));
  trn->add_option("--feature", tr_feature, "distance|direction")
      ->check(CLI::IsMember(kFeatures));
  trn->add_option("--epochs", tr.model.epochs);
  trn->add_option("--dropout", tr.model.dropout);
  trn->add_option("--hidden-dim", tr.model.hidden_dim);
  trn->add_option("--lemma-dim", tr.model.lemma_dim);
  trn->add_option("--label-dim", tr.model.label_dim);
  trn->add_option("--word-dim", tr.model.word_dim);
  trn->add_option("--batch-size", tr.model.batch_size);
  trn->add_option("--seed", tr.model.seed);
  trn->add_option("--threads", tr.model.threads, "threads per batch");

  EvalOptions ev;
  std::string ev_split = "test";
  auto* eval = app.add_subcommand("eval", "score a checkpoint on a split");
  eval->add_option("--checkpoint", ev.checkpoint, "checkpoint from train")->required();
  eval->add_option("--manifest", ev.manifest, "dataset manifest")->required();
  eval->add_option("--out", ev.out, "output directory")->required();
  eval->add_option("--split", ev_split, "train|test|validation")
      ->check(CLI::IsMember(kSplits));

  GradcheckOptions gc;
  std::string gc_variant = "pattern", gc_feature = "distance";
  auto* grad = app.add_subcommand("gradcheck", "compare analytic and numeric gradients");
  grad->add_option("--out", gc.out, "report directory");
  grad->add_option("--variant", gc_variant, "pattern|combined")
      ->check(CLI::IsMember(kVariants));
  grad->add_option("--feature", gc_feature, "distance|direction")
      ->check(CLI::IsMember(kFeatures));
  grad->add_option("--hidden-dim", gc.config.hidden_dim);
  grad->add_option("--batch-size", gc.config.batch_size);
  grad->add_option("--dropout", gc.config.dropout);
  grad->add_option("--seed", gc.config.seed);
  grad->add_option("--runs", gc.runs, "number of consecutive seeds");
  grad->add_option("--tolerance", gc.config.tolerance);
  grad->add_flag("--zero-params", gc.config.zero_params);
  grad->add_option("--flip-block", gc.config.flip_block,
                   "negate one block's analytic gradient (negative control)");

  SynthOptions sy;
  auto* synth = app.add_subcommand("synth", "generate a synthetic corpus and pairs");
  synth->add_option("--out", sy.out, "output directory")->required();
  synth->add_option("--seed", sy.seed);
  synth->add_option("--pairs", sy.pairs, "number of pairs (even)");
  synth->add_option("--dim", sy.dim, "embedding dimension");
  synth->add_option("--fillers", sy.fillers, "sentences without a pair");

  BaselineOptions bl;
  auto* base = app.add_subcommand("baseline", "cosine-similarity baseline");
  base->add_option("--manifest", bl.manifest, "dataset manifest")->required();
  base->add_option("--embeddings", bl.embeddings, "vectors (text format)")->required();
  base->add_option("--out", bl.out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*extract) {
      ex.feature = feature_mode_from_string(ex_feature);
      cmd_extract(ex);
    } else if (*build) {
      bd.ratios = parse_ratios(ratios);
      bd.word_class = word_class_from_string(bd_word_class);
      cmd_build(bd);
    } else if (*trn) {
      tr.model.variant = variant_from_string(tr_variant);
      tr.model.feature_mode = feature_mode_from_string(tr_feature);
      cmd_train(tr);
    } else if (*eval) {
      ev.split = split_from_string(ev_split);
      print_report(cmd_eval(ev));
    } else if (*grad) {
      gc.config.variant = variant_from_string(gc_variant);
      gc.config.feature_mode = feature_mode_from_string(gc_feature);
      return cmd_gradcheck(gc) ? 0 : 1;
    } else if (*synth) {
      cmd_synth(sy);
    } else if (*base) {
      print_report(cmd_baseline(bl));
    }
  } catch (const std::exception& e) {
    log::error(e.what());
    return 1;
  }
  return 0;
}
