#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "smc/model.hpp"

namespace smc {

// Vertices are 0..n-1 in the order given; names are used for generated persons.
struct Graph {
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> edges;

  int num_vertices() const { return static_cast<int>(names.size()); }
  static Graph with_vertices(int n);  // named 1..n
};

// Vertices are numbered part by part; parts[i] lists the vertices of part i.
struct ColoredGraph {
  std::vector<std::string> names;
  std::vector<std::vector<int>> parts;
  std::vector<std::pair<int, int>> edges;

  int num_vertices() const { return static_cast<int>(names.size()); }
  int num_parts() const { return static_cast<int>(parts.size()); }
};

// Elements are 1..n; every set has three distinct elements.
struct X3cInstance {
  int n = 0;
  std::vector<std::vector<int>> sets;
};

enum class ReductionKind { MulticoloredClique, ForcingGadget, TwoWomen, VertexCover, ExactCover };

struct ReductionOutput {
  SmcInstance instance;  // carries the budget as well
  int budget = 0;
  ReductionKind kind = ReductionKind::MulticoloredClique;
  // (woman, man) pairs a lifted witness adds to the base matching.
  std::vector<std::pair<std::string, std::string>> extra_pairs;

  int man(std::string_view name) const;    // throws std::out_of_range
  int woman(std::string_view name) const;  // throws std::out_of_range
};

// Parsers for the source formats; throw ParseError.
//   colored graph: `part NAME: v ...` lines and `edge u v` lines
//   graph:         `vertices: v ...` and `edge u v` lines
//   exact cover:   `universe n` and `set: a b c` lines
ColoredGraph parse_colored_graph(std::string_view text);
Graph parse_graph(std::string_view text);
X3cInstance parse_x3c(std::string_view text);

// Brute-force answers for the source problems.
std::optional<std::vector<int>> find_multicolored_clique(const ColoredGraph& g);  // one vertex per part
std::optional<std::vector<int>> find_vertex_cover(const Graph& g, int k);       // size at most k
std::optional<std::vector<int>> find_exact_cover(const X3cInstance& x);         // set indices

// SMC-1 instance with budget 2k + C(k,2); k must equal the number of parts.
ReductionOutput reduce_multicolored_clique(const ColoredGraph& g, int k);
// Replaces the distinguished women by one woman s; needs |L(w)| = 1 for w in W*.
ReductionOutput reduce_forcing_gadget(const ReductionOutput& out);
// Replaces the distinguished women by two women z1, z2; same precondition.
ReductionOutput reduce_two_women_masterlist(const ReductionOutput& out);
// SMC-1 instance with budget |V| + |E| + k.
ReductionOutput reduce_vertex_cover(const Graph& g, int k);
// Instance with W* = {x0}, budget 2m + 2n/3 + 1.
ReductionOutput reduce_x3c(const X3cInstance& x);

// Feasible matchings within the budget built from a source solution.
Matching clique_witness(const ReductionOutput& out, const ColoredGraph& g, const std::vector<int>& clique);
// Lifts a matching of the base instance through the forcing or two-women gadgets.
Matching lift_witness(const ReductionOutput& lifted, const ReductionOutput& base, const Matching& m);
Matching vertex_cover_witness(const ReductionOutput& out, const Graph& g, const std::vector<int>& cover);
Matching exact_cover_witness(const ReductionOutput& out, const X3cInstance& x, const std::vector<int>& chosen);

// True iff (optimum <= budget) == source_answer, decided by the exact DP with
// the budget as cap. Throws SizeCapError when the DP exceeds state_limit.
bool verify_reduction(const ReductionOutput& out, bool source_answer, std::size_t state_limit = 4'000'000);

}  // namespace smc
