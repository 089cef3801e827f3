#pragma once

#include <span>
#include <utility>
#include <vector>

#include "smc/hrlq.hpp"
#include "smc/model.hpp"

namespace smc {

enum class ProposalSide { MenPropose, WomenPropose };

Matching gale_shapley(const SmcInstance& inst, ProposalSide side = ProposalSide::MenPropose);
// Runs on the instance with every edge e where removed[e] != 0 deleted.
Matching gale_shapley(const SmcInstance& inst, ProposalSide side, std::span<const char> removed);

// Resident-proposing; lower quotas are ignored. removed is indexed like
// hr_edge_index.
Assignment gale_shapley_hr(const HrlqInstance& inst);
Assignment gale_shapley_hr(const HrlqInstance& inst, std::span<const char> removed);

// Edges of an HRLQ instance in (resident, list position) order.
std::vector<HrPair> hr_edges(const HrlqInstance& inst);

// Unmatched men and women of the men-proposing stable matching.
std::pair<std::vector<int>, std::vector<int>> unmatched_profile(const SmcInstance& inst);

}  // namespace smc
