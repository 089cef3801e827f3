#pragma once

#include <climits>
#include <optional>
#include <random>

#include "smc/hrlq.hpp"
#include "smc/model.hpp"
#include "smc/reductions.hpp"

namespace smc::gen {

struct SmcOptions {
  int men = 4;
  int women = 4;
  double density = 0.5;
  int max_deg_m = INT_MAX;
  int max_deg_w = INT_MAX;
  int star_women = 0;
  int star_men = 0;
};

SmcInstance random_smc(std::mt19937_64& rng, const SmcOptions& opt);

// Every person on `short_side` accepts one or two random partners (two with
// probability 3/4); the other side's lists are unbounded.
SmcInstance random_short_side(std::mt19937_64& rng, int men, int women, Side short_side, int star_women,
                              int star_men);

// The base instance with `star_women` women and `star_men` men that the
// men-proposing stable matching leaves single marked distinguished, chosen at
// random among those whose marking keeps the instance feasible; nullopt if
// there are too few.
std::optional<SmcInstance> mark_uncovered(std::mt19937_64& rng, const SmcInstance& base, int star_women,
                                          int star_men);

struct HrlqOptions {
  int residents = 4;
  int hospitals = 2;
  int max_upper = 2;
  double density = 0.6;
};

HrlqInstance random_hrlq(std::mt19937_64& rng, const HrlqOptions& opt);

// Every colored graph with these part sizes and no isolated vertex; parts
// are numbered in order and vertices are named v1, v2, ...
std::vector<ColoredGraph> all_colored_graphs(const std::vector<int>& part_sizes);
// Every simple graph on vertices 1..n.
std::vector<Graph> all_graphs(int n);
// Random colored graph with k >= 2 parts of 1..max_part vertices and no
// isolated vertex.
ColoredGraph random_colored_graph(std::mt19937_64& rng, int k, int max_part, double density);

int uniform(std::mt19937_64& rng, int lo, int hi);

}  // namespace smc::gen
