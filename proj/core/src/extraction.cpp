#include "antsyn/extraction.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <thread>
#include <unordered_set>

#include "antsyn/error.hpp"
#include "antsyn/text.hpp"

namespace antsyn {

ExtractionStats& ExtractionStats::operator+=(const ExtractionStats& o) {
  sentences_scanned += o.sentences_scanned;
  sentences_skipped += o.sentences_skipped;
  occurrences_found += o.occurrences_found;
  paths_skipped += o.paths_skipped;
  return *this;
}

PatternExtractor::PatternExtractor(const std::vector<WordPair>& pairs,
                                   PatternOptions options)
    : options_(options) {
  for (const WordPair& p : pairs) by_x_[p.x].push_back(p.y);
  for (auto& [x, ys] : by_x_) {
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  }
}

void PatternExtractor::add_sentence(const Sentence& s,
                                    ExtractionResult& into) const {
  ++into.stats.sentences_scanned;
  std::unordered_set<std::string_view> lemmas;
  for (const Token& t : s.tokens) lemmas.insert(t.lemma);

  for (const std::string_view x : lemmas) {
    const auto it = by_x_.find(std::string(x));
    if (it == by_x_.end()) continue;
    for (const std::string& y : it->second) {
      if (y == x || !lemmas.contains(y)) continue;
      for (const auto& [ix, iy] : find_pair_occurrences(s, x, y)) {
        ++into.stats.occurrences_found;
        auto pattern = build_pattern(s, ix, iy, options_);
        if (!pattern) {
          ++into.stats.paths_skipped;
          continue;
        }
        into.patterns[WordPair{std::string(x), y}][pattern->key] += 1;
      }
    }
  }
}

void merge_into(ExtractionResult& total, const ExtractionResult& part) {
  total.stats += part.stats;
  for (const auto& [pair, counts] : part.patterns) {
    auto& dst = total.patterns[pair];
    for (const auto& [key, count] : counts) dst[key] += count;
  }
}

namespace {

ExtractionResult extract_range(const PatternExtractor& extractor,
                               const Sentence* begin, const Sentence* end,
                               int threads) {
  const auto n = static_cast<std::size_t>(end - begin);
  threads = std::max(1, std::min<int>(threads, static_cast<int>(n)));
  if (threads <= 1) {
    ExtractionResult result;
    for (const Sentence* s = begin; s != end; ++s) extractor.add_sentence(*s, result);
    return result;
  }
  std::vector<ExtractionResult> parts(static_cast<std::size_t>(threads));
  std::vector<std::thread> workers;
  const std::size_t chunk = (n + static_cast<std::size_t>(threads) - 1) /
                            static_cast<std::size_t>(threads);
  for (int t = 0; t < threads; ++t) {
    const std::size_t lo = std::min(n, chunk * static_cast<std::size_t>(t));
    const std::size_t hi = std::min(n, lo + chunk);
    workers.emplace_back([&, t, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) {
        extractor.add_sentence(begin[i], parts[static_cast<std::size_t>(t)]);
      }
    });
  }
  for (auto& w : workers) w.join();
  ExtractionResult result;
  for (const auto& part : parts) merge_into(result, part);
  return result;
}

}  // namespace

ExtractionResult extract_corpus_patterns(const std::vector<Sentence>& corpus,
                                         const std::vector<WordPair>& pairs,
                                         const PatternOptions& options,
                                         int threads) {
  const PatternExtractor extractor(pairs, options);
  return extract_range(extractor, corpus.data(), corpus.data() + corpus.size(),
                       threads);
}

ExtractionResult extract_corpus_patterns(ConlluReader& reader,
                                         const std::vector<WordPair>& pairs,
                                         const PatternOptions& options,
                                         int threads, std::size_t batch_size) {
  const PatternExtractor extractor(pairs, options);
  ExtractionResult total;
  std::vector<Sentence> batch;
  batch.reserve(batch_size);
  Sentence s;
  bool more = true;
  while (more) {
    batch.clear();
    while (batch.size() < batch_size && (more = reader.next(s))) {
      batch.push_back(std::move(s));
    }
    if (batch.empty()) break;
    merge_into(total, extract_range(extractor, batch.data(),
                                    batch.data() + batch.size(), threads));
  }
  total.stats.sentences_skipped += static_cast<std::int64_t>(reader.sentences_skipped());
  return total;
}

ExtractionMap filter_patterns(const ExtractionMap& map, std::int64_t min_count) {
  if (min_count < 1) throw ConfigError("min_count must be at least 1");
  ExtractionMap out;
  for (const auto& [pair, counts] : map) {
    PatternCounts kept;
    for (const auto& [key, count] : counts) {
      if (count >= min_count) kept.emplace(key, count);
    }
    if (!kept.empty()) out.emplace(pair, std::move(kept));
  }
  return out;
}

void write_patterns(std::ostream& out, const ExtractionMap& map) {
  for (const auto& [pair, counts] : map) {
    for (const auto& [key, count] : counts) {
      out << pair.x << '\t' << pair.y << '\t' << key << '\t' << count << '\n';
    }
  }
}

ExtractionMap read_patterns(std::istream& in) {
  ExtractionMap map;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    const auto cols = text::split(line, '\t');
    if (cols.size() != 4) {
      throw ParseError(line_no, "expected 4 tab-separated columns in pattern file");
    }
    const auto count = text::parse_number<std::int64_t>(cols[3]);
    if (!count || *count < 1) {
      throw ParseError(line_no, "pattern count must be a positive integer");
    }
    try {
      parse_key(cols[2]);
    } catch (const ParseError& e) {
      throw ParseError(line_no, e.what());
    }
    map[WordPair{std::string(cols[0]), std::string(cols[1])}][std::string(cols[2])] +=
        *count;
  }
  return map;
}

void write_stats(std::ostream& out, const ExtractionStats& stats) {
  out << "sentences_scanned\t" << stats.sentences_scanned << '\n'
      << "sentences_skipped\t" << stats.sentences_skipped << '\n'
      << "occurrences_found\t" << stats.occurrences_found << '\n'
      << "paths_skipped\t" << stats.paths_skipped << '\n';
}

std::vector<Pattern> to_patterns(const PatternCounts& counts) {
  std::vector<Pattern> out;
  out.reserve(counts.size());
  for (const auto& [key, count] : counts) {
    Pattern p;
    p.nodes = parse_key(key);
    p.key = key;
    p.count = count;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace antsyn
