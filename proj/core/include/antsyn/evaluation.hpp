#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "antsyn/dataset.hpp"

namespace antsyn {

struct LabeledPrediction {
  Label predicted = Label::Synonym;
  Label gold = Label::Synonym;
};

// Precision/recall/F1 of the antonym class. Zero denominators give 0.
struct EvalReport {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t tn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  WordClass word_class = WordClass::Adjective;
  std::string model;

  std::int64_t total() const { return tp + fp + fn + tn; }
};

// Throws Error on an empty list.
EvalReport score(std::span<const LabeledPrediction> predictions);

// Rows are models, column groups are word classes (adjective, verb, noun,
// whichever are present), each with P, R and F1 at three decimals.
class ResultsTable {
 public:
  void add(const EvalReport& report);
  void add_note(std::string note);

  void write(std::ostream& out) const;
  // Reads a table produced by write(); counts are not stored, so only the
  // metrics round-trip.
  static ResultsTable read(std::istream& in);

  const std::map<std::string, std::map<WordClass, EvalReport>>& rows() const {
    return rows_;
  }

 private:
  std::map<std::string, std::map<WordClass, EvalReport>> rows_;
  std::vector<std::string> notes_;
};

}  // namespace antsyn
