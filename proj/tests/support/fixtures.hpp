#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "antsyn/treebank.hpp"

namespace antsyn::testing {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(ANTSYN_TEST_DATA_DIR) / name;
}

inline Sentence golden_sentence() {
  std::ifstream in(data_path("golden.conllu"));
  auto parsed = parse_conllu(in, ErrorMode::Strict);
  return parsed.sentences.at(0);
}

inline constexpr const char* kGoldenKey =
    "X/JJ/amod/2 -- village/NN/nsubj/1 -- provide/VBN/ROOT/0 -- with/IN/prep/1 -- "
    "service/NNS/pobj/2 -- Y/JJ/amod/3";

// Uniform-ish random tree: a random node order, each later node attached to
// a random earlier one.
inline Sentence random_tree(std::mt19937_64& rng, int n) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 1);
  std::shuffle(order.begin(), order.end(), rng);
  Sentence s;
  s.tokens.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& t = s.tokens[static_cast<std::size_t>(i)];
    t.id = i + 1;
    t.form = "w" + std::to_string(i + 1);
    t.lemma = t.form;
    t.pos = "NN";
    t.deprel = "dep";
  }
  s.root_id = order[0];
  s.tokens[static_cast<std::size_t>(order[0] - 1)].head = 0;
  s.tokens[static_cast<std::size_t>(order[0] - 1)].deprel = "ROOT";
  for (int k = 1; k < n; ++k) {
    std::uniform_int_distribution<int> pick(0, k - 1);
    s.tokens[static_cast<std::size_t>(order[static_cast<std::size_t>(k)] - 1)].head =
        order[static_cast<std::size_t>(pick(rng))];
  }
  return s;
}

// Shortest path on the undirected tree by breadth-first search.
inline std::vector<int> bfs_path(const Sentence& s, int from, int to) {
  const int n = s.size();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n + 1));
  for (const auto& t : s.tokens) {
    if (t.head == 0) continue;
    adj[static_cast<std::size_t>(t.id)].push_back(t.head);
    adj[static_cast<std::size_t>(t.head)].push_back(t.id);
  }
  std::vector<int> parent(static_cast<std::size_t>(n + 1), -1);
  std::queue<int> q;
  q.push(from);
  parent[static_cast<std::size_t>(from)] = from;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int w : adj[static_cast<std::size_t>(v)]) {
      if (parent[static_cast<std::size_t>(w)] == -1) {
        parent[static_cast<std::size_t>(w)] = v;
        q.push(w);
      }
    }
  }
  std::vector<int> path;
  for (int v = to; v != from; v = parent[static_cast<std::size_t>(v)]) path.push_back(v);
  path.push_back(from);
  std::reverse(path.begin(), path.end());
  return path;
}

inline int bfs_distance(const Sentence& s, int from, int to) {
  return static_cast<int>(bfs_path(s, from, to).size()) - 1;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

// A fresh directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("antsyn_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace antsyn::testing
