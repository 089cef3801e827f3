#pragma once

#include <optional>
#include <span>
#include <vector>

#include "smc/model.hpp"

namespace smc {

struct BipartiteGraph {
  int left = 0;
  int right = 0;
  std::vector<std::vector<int>> adj;  // left vertex -> right neighbours

  BipartiteGraph() = default;
  BipartiteGraph(int l, int r) : left(l), right(r), adj(l) {}
  void add_edge(int u, int v) { adj[u].push_back(v); }
  static BipartiteGraph from_instance(const SmcInstance& inst);  // men on the left
};

struct BipartiteMatching {
  std::vector<int> left_partner;
  std::vector<int> right_partner;
  int size = 0;
};

// Hopcroft-Karp.
BipartiteMatching max_matching(const BipartiteGraph& g);

// A matching covering W* and M* in which every edge touches a distinguished
// person, or nullopt when no matching covers all distinguished persons.
std::optional<Matching> cover_distinguished(const SmcInstance& inst);

struct WeightedEdge {
  int left = 0;
  int right = 0;
  long long weight = 0;
};

struct WeightedGraph {
  int left = 0;
  int right = 0;
  std::vector<WeightedEdge> edges;
};

struct CoverMatching {
  std::vector<int> left_partner;  // kUnmatched for left vertices left out
  long long weight = 0;
};

// Minimum total weight matching that saturates every vertex in must_cover
// (left side). Weights must be nonnegative.
std::optional<CoverMatching> min_weight_cover_matching(const WeightedGraph& g, std::span<const int> must_cover);

}  // namespace smc
