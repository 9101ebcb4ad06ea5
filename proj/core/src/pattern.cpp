#include "antsyn/pattern.hpp"

#include <algorithm>
#include <cstdlib>

#include "antsyn/error.hpp"
#include "antsyn/text.hpp"

namespace antsyn {

std::string_view to_string(FeatureMode mode) {
  return mode == FeatureMode::Distance ? "distance" : "direction";
}

FeatureMode feature_mode_from_string(std::string_view s) {
  if (s == "distance") return FeatureMode::Distance;
  if (s == "direction") return FeatureMode::Direction;
  throw ConfigError("unknown feature mode '" + std::string(s) +
                    "' (expected distance or direction)");
}

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::Up:
      return "up";
    case Direction::Anchor:
      return "anchor";
    case Direction::Down:
      return "down";
  }
  return "up";
}

std::optional<Direction> direction_from_string(std::string_view s) {
  if (s == "up") return Direction::Up;
  if (s == "anchor") return Direction::Anchor;
  if (s == "down") return Direction::Down;
  return std::nullopt;
}

std::string PatternNode::label() const {
  return dir ? std::string(to_string(*dir)) : std::to_string(dist);
}

std::string render_key(const std::vector<PatternNode>& nodes) {
  std::string key;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i > 0) key += kNodeSeparator;
    const PatternNode& n = nodes[i];
    key += n.lemma_slot;
    key += kFieldSeparator;
    key += n.pos;
    key += kFieldSeparator;
    key += n.deprel;
    key += kFieldSeparator;
    key += n.label();
  }
  return key;
}

std::vector<PatternNode> parse_key(std::string_view key) {
  std::vector<PatternNode> nodes;
  std::size_t start = 0;
  while (true) {
    const auto end = key.find(kNodeSeparator, start);
    const auto part = key.substr(start, end == std::string_view::npos
                                            ? std::string_view::npos
                                            : end - start);
    const auto fields = text::split(part, kFieldSeparator);
    if (fields.size() != 4 || fields[0].empty() || fields[1].empty() ||
        fields[2].empty() || fields[3].empty()) {
      throw ParseError(0, "malformed pattern node '" + std::string(part) + "'");
    }
    PatternNode node;
    node.lemma_slot = std::string(fields[0]);
    node.pos = std::string(fields[1]);
    node.deprel = std::string(fields[2]);
    if (auto dir = direction_from_string(fields[3])) {
      node.dir = dir;
    } else if (auto dist = text::parse_number<int>(fields[3]); dist && *dist >= 0) {
      node.dist = *dist;
    } else {
      throw ParseError(0, "bad node label '" + std::string(fields[3]) + "'");
    }
    nodes.push_back(std::move(node));
    if (end == std::string_view::npos) break;
    start = end + kNodeSeparator.size();
  }
  if (nodes.size() < 2) throw ParseError(0, "pattern needs at least two nodes");
  return nodes;
}

FeatureMode key_feature_mode(std::string_view key) {
  const auto first = key.substr(0, key.find(kNodeSeparator));
  const auto label = first.substr(first.rfind(kFieldSeparator) + 1);
  return direction_from_string(label) ? FeatureMode::Direction
                                      : FeatureMode::Distance;
}

std::vector<std::pair<int, int>> find_pair_occurrences(const Sentence& s,
                                                       std::string_view lemma_x,
                                                       std::string_view lemma_y) {
  std::vector<int> xs;
  std::vector<int> ys;
  for (const Token& t : s.tokens) {
    if (t.lemma == lemma_x) xs.push_back(t.id);
    if (t.lemma == lemma_y) ys.push_back(t.id);
  }
  std::vector<std::pair<int, int>> out;
  out.reserve(xs.size() * ys.size());
  for (int ix : xs) {
    for (int iy : ys) {
      if (ix != iy) out.emplace_back(ix, iy);
    }
  }
  return out;
}

std::vector<int> simple_path(const Sentence& s, int ix, int iy) {
  const int lca = lowest_common_ancestor(s, ix, iy);
  std::vector<int> path;
  for (int v = ix; v != lca; v = s.head(v)) path.push_back(v);
  path.push_back(lca);
  std::vector<int> down;
  for (int v = iy; v != lca; v = s.head(v)) down.push_back(v);
  path.insert(path.end(), down.rbegin(), down.rend());
  return path;
}

std::size_t anchor_position(const std::vector<int>& path, const Sentence& s) {
  const int lca = lowest_common_ancestor(s, path.front(), path.back());
  return static_cast<std::size_t>(
      std::find(path.begin(), path.end(), lca) - path.begin());
}

std::vector<int> annotate_distance(const std::vector<int>& path,
                                   const Sentence& s) {
  const auto anchor = static_cast<long>(anchor_position(path, s));
  std::vector<int> dist(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) {
    dist[i] = static_cast<int>(std::labs(static_cast<long>(i) - anchor));
  }
  return dist;
}

std::vector<Direction> annotate_direction(const std::vector<int>& path,
                                          const Sentence& s) {
  const auto anchor = anchor_position(path, s);
  std::vector<Direction> dirs(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) {
    dirs[i] = i < anchor ? Direction::Up
                         : (i == anchor ? Direction::Anchor : Direction::Down);
  }
  return dirs;
}

std::optional<Pattern> build_pattern(const Sentence& s, int ix, int iy,
                                     const PatternOptions& options) {
  const auto path = simple_path(s, ix, iy);
  if (static_cast<int>(path.size()) > options.max_path_len) return std::nullopt;

  Pattern p;
  p.nodes.resize(path.size());
  if (options.feature_mode == FeatureMode::Distance) {
    const auto dist = annotate_distance(path, s);
    for (std::size_t i = 0; i < path.size(); ++i) p.nodes[i].dist = dist[i];
  } else {
    const auto dirs = annotate_direction(path, s);
    for (std::size_t i = 0; i < path.size(); ++i) p.nodes[i].dir = dirs[i];
  }
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Token& t = s.token(path[i]);
    PatternNode& n = p.nodes[i];
    if (i == 0) {
      n.lemma_slot = kSlotX;
    } else if (i + 1 == path.size()) {
      n.lemma_slot = kSlotY;
    } else {
      n.lemma_slot = t.lemma;
    }
    n.pos = t.pos;
    n.deprel = t.deprel;
  }
  p.key = render_key(p.nodes);
  p.count = 1;
  return p;
}

}  // namespace antsyn
