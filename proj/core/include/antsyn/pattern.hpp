#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "antsyn/treebank.hpp"

namespace antsyn {

// Which per-node label is attached to a path: edge distance to the anchor
// (LCA), or the up/anchor/down orientation of the node relative to it.
enum class FeatureMode { Distance, Direction };

enum class Direction { Up, Anchor, Down };

std::string_view to_string(FeatureMode mode);
FeatureMode feature_mode_from_string(std::string_view s);
std::string_view to_string(Direction d);
std::optional<Direction> direction_from_string(std::string_view s);

inline constexpr std::string_view kSlotX = "X";
inline constexpr std::string_view kSlotY = "Y";
inline constexpr std::string_view kNodeSeparator = " -- ";
inline constexpr char kFieldSeparator = '/';

struct PatternNode {
  std::string lemma_slot;  // "X", "Y", or a lowercased lemma
  std::string pos;
  std::string deprel;
  int dist = 0;
  std::optional<Direction> dir;  // set only in direction mode

  // The fourth key field: the distance integer or the direction label.
  std::string label() const;

  bool operator==(const PatternNode&) const = default;
};

struct Pattern {
  std::vector<PatternNode> nodes;
  std::string key;
  std::int64_t count = 1;

  bool operator==(const Pattern&) const = default;
};

std::string render_key(const std::vector<PatternNode>& nodes);

// Inverse of render_key. Throws ParseError (line 0) on a malformed key. The
// feature mode is recovered from the fourth field of each node.
std::vector<PatternNode> parse_key(std::string_view key);

// Feature mode of a rendered key, judged by its first node.
FeatureMode key_feature_mode(std::string_view key);

// Every (ix, iy) with lemma(ix) == lemma_x and lemma(iy) == lemma_y, ordered.
std::vector<std::pair<int, int>> find_pair_occurrences(const Sentence& s,
                                                       std::string_view lemma_x,
                                                       std::string_view lemma_y);

// Tokens on the unique path from ix up to the LCA and down to iy.
std::vector<int> simple_path(const Sentence& s, int ix, int iy);

// Index into `path` of its anchor, the path element that is the LCA.
std::size_t anchor_position(const std::vector<int>& path, const Sentence& s);

std::vector<int> annotate_distance(const std::vector<int>& path, const Sentence& s);
std::vector<Direction> annotate_direction(const std::vector<int>& path,
                                          const Sentence& s);

struct PatternOptions {
  FeatureMode feature_mode = FeatureMode::Distance;
  int max_path_len = 10;  // in nodes
};

// std::nullopt when the path is longer than options.max_path_len.
std::optional<Pattern> build_pattern(const Sentence& s, int ix, int iy,
                                     const PatternOptions& options = {});

}  // namespace antsyn
