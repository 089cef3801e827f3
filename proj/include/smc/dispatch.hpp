#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "smc/approx.hpp"
#include "smc/exact.hpp"
#include "smc/model.hpp"

namespace smc {

enum class AlgoKind { GaleShapley, GuessDelete, Degree2, Delta2, FptDeltaW2, SmcApprox, HrlqApprox, OracleOnly };

std::string_view algo_name(AlgoKind k);
std::optional<AlgoKind> parse_algo_name(std::string_view s);

// Numbers standing in for "constant" in the complexity classification.
struct DispatchThresholds {
  int const_b = 3;
  int const_delta = 3;  // bounds |W⋆|, |M⋆|, Δ_M and Δ_W
};

struct AlgoChoice {
  AlgoKind kind = AlgoKind::GuessDelete;
  bool swapped = false;      // run on the instance with men and women exchanged
  bool exponential = false;  // no polynomial or FPT branch applies
  std::string rationale;
};

// Walks the classification: small budget, no distinguished persons, short
// lists on either side, then constant parameters. SmcApprox stands for the
// constant-parameter dispatch, which is exact.
AlgoChoice select_algorithm(const ParamProfile& p, std::optional<int> budget, const DispatchThresholds& t = {});

// Reason the solver cannot run on instances with this profile, or nullopt.
std::optional<std::string> precondition_failure(AlgoKind k, bool swapped, const ParamProfile& p);
inline bool satisfies_preconditions(const AlgoChoice& c, const ParamProfile& p) {
  return !precondition_failure(c.kind, c.swapped, p).has_value();
}

// Choice for an explicit solver request; picks the orientation whose
// preconditions hold and throws PreconditionError if neither does.
AlgoChoice forced_choice(AlgoKind k, const ParamProfile& p);

// Runs the choice. Without a budget the result minimizes blocking pairs
// (optimal is false only for the plain approximation). With a budget the
// result is a matching within it or NoSolutionWithin. SmcApprox from the
// dispatcher runs the constant-parameter dispatch; pass exact_approx = false
// for the bare approximation. OracleOnly enumerates up to the oracle cap and
// uses the frontier DP above it (SizeCapError past its state limit).
BudgetedResult run_choice(const SmcInstance& inst, const AlgoChoice& c, std::optional<int> budget, int threads = 1,
                          bool exact_approx = true);

// Hospitals/residents counterpart. HrlqApprox runs the constant-parameter
// dispatch (exact) unless exact_approx is false; GuessDelete is exact as well.
HrlqBudgetedResult run_hrlq(const HrlqInstance& inst, AlgoKind k, std::optional<int> budget, int threads = 1,
                            bool exact_approx = true);

}  // namespace smc
