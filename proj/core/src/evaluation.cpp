#include "antsyn/evaluation.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>

#include "antsyn/error.hpp"
#include "antsyn/text.hpp"

namespace antsyn {

EvalReport score(std::span<const LabeledPrediction> predictions) {
  if (predictions.empty()) throw Error("cannot score an empty prediction list");
  EvalReport r;
  for (const auto& p : predictions) {
    const bool pred = p.predicted == Label::Antonym;
    const bool gold = p.gold == Label::Antonym;
    if (pred && gold) {
      ++r.tp;
    } else if (pred) {
      ++r.fp;
    } else if (gold) {
      ++r.fn;
    } else {
      ++r.tn;
    }
  }
  const auto ratio = [](std::int64_t num, std::int64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  r.precision = ratio(r.tp, r.tp + r.fp);
  r.recall = ratio(r.tp, r.tp + r.fn);
  r.f1 = r.precision + r.recall == 0.0
             ? 0.0
             : 2.0 * r.precision * r.recall / (r.precision + r.recall);
  return r;
}

void ResultsTable::add(const EvalReport& report) {
  rows_[report.model][report.word_class] = report;
}

void ResultsTable::add_note(std::string note) {
  if (std::find(notes_.begin(), notes_.end(), note) == notes_.end()) {
    notes_.push_back(std::move(note));
  }
}

void ResultsTable::write(std::ostream& out) const {
  std::set<WordClass> classes;
  for (const auto& [model, by_class] : rows_) {
    for (const auto& [wc, report] : by_class) classes.insert(wc);
  }
  out << "model";
  for (WordClass wc : classes) {
    for (const char* m : {"P", "R", "F1"}) out << '\t' << to_string(wc) << '_' << m;
  }
  out << '\n';
  for (const auto& [model, by_class] : rows_) {
    out << model;
    for (WordClass wc : classes) {
      const auto it = by_class.find(wc);
      if (it == by_class.end()) {
        out << "\t-\t-\t-";
        continue;
      }
      out << '\t' << text::format_fixed(it->second.precision, 3) << '\t'
          << text::format_fixed(it->second.recall, 3) << '\t'
          << text::format_fixed(it->second.f1, 3);
    }
    out << '\n';
  }
  for (const auto& note : notes_) out << "# " << note << '\n';
}

ResultsTable ResultsTable::read(std::istream& in) {
  ResultsTable table;
  std::string line;
  std::size_t line_no = 0;
  std::vector<WordClass> classes;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      table.notes_.push_back(line.substr(2));
      continue;
    }
    const auto cols = text::split(line, '\t');
    if (!header) {
      if (cols.empty() || cols[0] != "model" || (cols.size() - 1) % 3 != 0) {
        throw ParseError(line_no, "bad results table header");
      }
      for (std::size_t i = 1; i < cols.size(); i += 3) {
        const auto name = cols[i].substr(0, cols[i].find('_'));
        classes.push_back(word_class_from_string(name));
      }
      header = true;
      continue;
    }
    if (cols.size() != 1 + 3 * classes.size()) {
      throw ParseError(line_no, "results row has the wrong number of columns");
    }
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (cols[1 + 3 * c] == "-") continue;
      EvalReport r;
      r.model = std::string(cols[0]);
      r.word_class = classes[c];
      const auto p = text::parse_number<double>(cols[1 + 3 * c]);
      const auto rc = text::parse_number<double>(cols[2 + 3 * c]);
      const auto f = text::parse_number<double>(cols[3 + 3 * c]);
      if (!p || !rc || !f) throw ParseError(line_no, "bad metric value");
      r.precision = *p;
      r.recall = *rc;
      r.f1 = *f;
      table.add(r);
    }
  }
  return table;
}

}  // namespace antsyn
