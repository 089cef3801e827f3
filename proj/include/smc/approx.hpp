#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "smc/exact.hpp"
#include "smc/hrlq.hpp"
#include "smc/model.hpp"

namespace smc {

// One re-assignment of a greedy loop: pivot (a hospital or a distinguished
// person) dropped `replaced` and took `replacing`. Persons use the unified
// numbering (men first, then women); for HRLQ the pivot is a hospital and
// both others are residents. kUnmatched marks an empty slot.
struct TraceStep {
  int step = 0;
  int replaced = kUnmatched;
  int replacing = kUnmatched;
  int pivot = kUnmatched;
};
using GreedyTrace = std::vector<TraceStep>;

// Residents reserved for each hospital: exactly lower(h) of them, with every
// resident h prefers to its worst reserved one reserved at another hospital.
// nullopt when the lower quotas cannot be met.
std::optional<std::vector<std::vector<int>>> reserve_lower_quotas(const HrlqInstance& inst,
                                                                 GreedyTrace* trace = nullptr);

// Feasible assignment whose blocking pairs all involve reserved residents, at
// most (Δ_R−1)·q̲_Σ of them. Returns the stable assignment when it is feasible.
HrlqResult hrlq_approx(const HrlqInstance& inst, GreedyTrace* trace = nullptr);

// A matching covering all distinguished persons in which every edge has a
// distinguished endpoint and no distinguished person with a non-distinguished
// partner blocks with anyone whose partner is non-distinguished.
std::optional<Matching> smc_cover_greedy(const SmcInstance& inst, GreedyTrace* trace = nullptr);

// Feasible matching with at most (Δ_W−1)|M⋆|+(Δ_M−1)|W⋆| blocking pairs.
SolveResult smc_approx(const SmcInstance& inst, GreedyTrace* trace = nullptr);

int hrlq_bound(const HrlqInstance& inst);  // (Δ_R−1)·q̲_Σ
int smc_bound(const SmcInstance& inst);    // (Δ_W−1)|M⋆|+(Δ_M−1)|W⋆|

using HrlqBudgetedResult = std::variant<HrlqResult, NoSolutionWithin>;

// Deletes every set of at most b resident-hospital pairs (in hr_edges order)
// and runs resident-proposing Gale-Shapley on the rest.
HrlqBudgetedResult hrlq_guess_delete(const HrlqInstance& inst, int b, int threads = 1);
HrlqResult hrlq_min_guess_delete(const HrlqInstance& inst, int threads = 1);

// Approximation when b reaches its bound, guess and delete otherwise.
HrlqBudgetedResult hrlq_constant_dispatch(const HrlqInstance& inst, int b, int threads = 1);
BudgetedResult smc_constant_dispatch(const SmcInstance& inst, int b, int threads = 1);

bool is_no_solution(const HrlqBudgetedResult& r);
const HrlqResult& solution(const HrlqBudgetedResult& r);

}  // namespace smc
