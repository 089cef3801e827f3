#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "smc/model.hpp"

namespace smc {

using BudgetedResult = std::variant<SolveResult, NoSolutionWithin>;

// Size cap of the enumeration oracle; SMC_ORACLE_CAP overrides the default 16.
int oracle_cap();

// Exhaustive search over all matchings. Throws SizeCapError above the cap.
SolveResult enumerate_oracle(const SmcInstance& inst);
SolveResult enumerate_oracle(const SmcInstance& inst, int cap);

// Feasible matching with at most b blocking pairs, by deleting every edge set
// of size at most b and running Gale-Shapley on the rest.
BudgetedResult solve_guess_delete(const SmcInstance& inst, int b, int threads = 1);
SolveResult solve_min_guess_delete(const SmcInstance& inst, int threads = 1);

// Lexicographically first s-subset D of edge ids {0..num_edges-1} such that
// test(mask of D) holds; runs blocks of subsets on several threads.
using DeletionTest = std::function<bool(const std::vector<char>& removed)>;
std::optional<std::vector<int>> first_deletion_set(int num_edges, int size, int threads, const DeletionTest& test);

// Both sides have lists of length at most 2.
SolveResult solve_degree2(const SmcInstance& inst);

// Exact DP over a vertex order; persons are numbered men first, then women.
// With a cap, partial solutions above it are pruned and nullopt means the
// optimum exceeds the cap. Throws SizeCapError when the state count passes
// state_limit.
struct FrontierStats {
  std::size_t max_states = 0;
  std::size_t max_frontier = 0;
};
std::optional<SolveResult> solve_frontier_dp(const SmcInstance& inst, std::span<const int> order,
                                             std::optional<int> cap = std::nullopt,
                                             std::size_t state_limit = 4'000'000, FrontierStats* stats = nullptr);
// A vertex order that keeps the frontier small.
std::vector<int> frontier_order(const SmcInstance& inst);
std::optional<SolveResult> solve_exact(const SmcInstance& inst, std::optional<int> cap = std::nullopt,
                                       std::size_t state_limit = 4'000'000, FrontierStats* stats = nullptr);

bool is_no_solution(const BudgetedResult& r);
const SolveResult& solution(const BudgetedResult& r);

}  // namespace smc
