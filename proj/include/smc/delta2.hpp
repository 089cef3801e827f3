#pragma once

#include <optional>
#include <vector>

#include "smc/model.hpp"

namespace smc {

// An alternating path from an uncovered woman. seq alternates women (even
// positions) and men (odd positions); it ends at a man unmatched by M_s or,
// after an M_s edge, at a non-distinguished woman.
struct AugPath {
  int start = 0;
  std::vector<int> seq;
  bool ends_in_m0 = false;
  int cost = 0;          // blocking pairs of M_s△P
  int special_cost = 0;  // the same without special pairs

  int end() const { return seq.back(); }
  bool operator==(const AugPath&) const = default;
};

// Restrictions for the path search; empty masks mean no restriction.
struct Delta2Options {
  std::vector<int> starts;             // women to cover; all of them must be unmatched in M_s
  std::vector<char> forbidden_men;     // by man index
  std::vector<char> forbidden_women;   // by woman index
  std::vector<char> forbidden_edges;   // by edge id
};

struct Delta2Stats {
  int truncations = 0;  // paths rewritten while removing blocking special pairs
};

// (m, w) with m unmatched by M_s and w the second woman of a two-entry list.
bool is_special(const SmcInstance& inst, const Matching& ms, int man, int woman);

// Every augmenting path from `start` (men's lists of length at most 2).
std::vector<AugPath> enumerate_aug_paths(const SmcInstance& inst, const Matching& ms, int start,
                                         const Delta2Options& opt = {});

// Path graph: left vertex i is opt.starts[i]; right vertices are the men
// unmatched by M_s (index = man) followed by one copy per start
// (index = num_men + i). Each edge keeps the cheapest representative path.
struct PathGraph {
  int left = 0;
  int right = 0;
  struct Arc {
    int left = 0;
    int right = 0;
    AugPath path;
  };
  std::vector<Arc> arcs;
};
PathGraph build_path_graph(const SmcInstance& inst, const std::vector<int>& starts,
                           const std::vector<std::vector<AugPath>>& paths);

Matching apply_paths(const Matching& ms, const std::vector<AugPath>& paths);

// Disjoint paths covering opt.starts whose union has the fewest blocking
// pairs; nullopt if the starts cannot all be covered.
std::optional<std::vector<AugPath>> delta2_paths(const SmcInstance& inst, const Matching& ms,
                                                 const Delta2Options& opt, Delta2Stats* stats = nullptr);

// Optimal for Δ_M ≤ 2 and no distinguished men.
SolveResult solve_delta2(const SmcInstance& inst, Delta2Stats* stats = nullptr);

// The same with the sides exchanged (Δ_W ≤ 2, distinguished men as starts).
// Paths avoid the forbidden persons and edges; distinguished women left
// unmatched by the stable matching must be forbidden.
SolveResult solve_delta2_swapped(const SmcInstance& inst, const std::vector<char>& forbidden_men = {},
                                 const std::vector<char>& forbidden_women = {},
                                 const std::vector<char>& forbidden_edges = {});

}  // namespace smc
