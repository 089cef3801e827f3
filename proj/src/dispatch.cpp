#include "smc/dispatch.hpp"

#include <array>
#include <utility>

#include "smc/approx.hpp"
#include "smc/delta2.hpp"
#include "smc/fpt.hpp"
#include "smc/stable.hpp"

namespace smc {

namespace {

constexpr std::array<std::pair<AlgoKind, std::string_view>, 8> kNames{{
    {AlgoKind::GaleShapley, "gale-shapley"},
    {AlgoKind::GuessDelete, "guess-delete"},
    {AlgoKind::Degree2, "degree2"},
    {AlgoKind::Delta2, "delta2"},
    {AlgoKind::FptDeltaW2, "fpt"},
    {AlgoKind::SmcApprox, "smc-approx"},
    {AlgoKind::HrlqApprox, "hrlq-approx"},
    {AlgoKind::OracleOnly, "oracle"},
}};

AlgoChoice choice(AlgoKind k, bool swapped, std::string rationale, bool exponential = false) {
  return AlgoChoice{k, swapped, exponential, std::move(rationale)};
}

SolveResult unswap(const SmcInstance& inst, const SolveResult& r) {
  if (r.infeasible) return make_infeasible(inst, r.algorithm);
  Matching m = Matching::from_partners(r.matching.women(), r.matching.men());
  return make_result(inst, std::move(m), r.algorithm, r.optimal);
}

BudgetedResult within(const SolveResult& r, std::optional<int> budget) {
  if (budget && !r.infeasible && r.optimal && r.blocking_count() > *budget) return NoSolutionWithin{*budget};
  return r;
}

// Smallest b accepted by the constant-parameter dispatch; the last step
// returns the approximation, which is optimal once every smaller b failed.
SolveResult min_constant_dispatch(const SmcInstance& inst, int threads) {
  int bound = smc_bound(inst);
  for (int b = 0; b < bound; ++b) {
    BudgetedResult r = smc_constant_dispatch(inst, b, threads);
    if (!is_no_solution(r)) return solution(r);
  }
  SolveResult r = smc_approx(inst);
  r.optimal = true;
  return r;
}

HrlqResult min_hrlq_dispatch(const HrlqInstance& inst, int threads) {
  int bound = hrlq_bound(inst);
  for (int b = 0; b < bound; ++b) {
    HrlqBudgetedResult r = hrlq_constant_dispatch(inst, b, threads);
    if (!is_no_solution(r)) return solution(r);
  }
  HrlqResult r = hrlq_approx(inst);
  r.optimal = true;
  return r;
}

}  // namespace

std::string_view algo_name(AlgoKind k) {
  for (const auto& [kind, name] : kNames)
    if (kind == k) return name;
  return "?";
}

std::optional<AlgoKind> parse_algo_name(std::string_view s) {
  for (const auto& [kind, name] : kNames)
    if (name == s) return kind;
  return std::nullopt;
}

AlgoChoice select_algorithm(const ParamProfile& p, std::optional<int> budget, const DispatchThresholds& t) {
  if (budget && *budget <= t.const_b) return choice(AlgoKind::GuessDelete, false, "budget is a small constant");
  if (p.n_star_women == 0 && p.n_star_men == 0)
    return choice(AlgoKind::GaleShapley, false, "no distinguished persons: a stable matching is optimal");
  if (p.delta_m <= 2 || p.delta_w <= 2) {
    if (p.n_star_men == 0 && p.delta_m <= 2)
      return choice(AlgoKind::Delta2, false, "men's lists have length at most 2 and no man is distinguished");
    if (p.n_star_women == 0 && p.delta_w <= 2)
      return choice(AlgoKind::Delta2, true, "women's lists have length at most 2 and no woman is distinguished");
    if (p.delta_m <= 2 && p.delta_w <= 2)
      return choice(AlgoKind::Degree2, false, "all lists have length at most 2");
    if (p.delta_w <= 2)
      return choice(AlgoKind::FptDeltaW2, false, "women's lists have length at most 2: FPT in |W*|+|M*|");
    return choice(AlgoKind::FptDeltaW2, true, "men's lists have length at most 2: FPT in |W*|+|M*|");
  }
  int c = t.const_delta;
  bool women_side = p.n_star_women <= c && p.delta_m <= c;
  bool men_side = p.n_star_men <= c && p.delta_w <= c;
  if ((women_side && (p.n_star_men == 0 || men_side)) || (men_side && p.n_star_women == 0))
    return choice(AlgoKind::SmcApprox, false, "constant parameters: approximation bound is a constant");
  return choice(AlgoKind::GuessDelete, false, "no tractable case applies: exponential in the optimum", true);
}

std::optional<std::string> precondition_failure(AlgoKind k, bool swapped, const ParamProfile& p) {
  int dm = swapped ? p.delta_w : p.delta_m;
  int dw = swapped ? p.delta_m : p.delta_w;
  int star_men = swapped ? p.n_star_women : p.n_star_men;
  switch (k) {
    case AlgoKind::GaleShapley:
      if (p.n_star_women > 0 || p.n_star_men > 0) return "needs an instance without distinguished persons";
      return std::nullopt;
    case AlgoKind::Degree2:
      if (p.delta_m > 2 || p.delta_w > 2) return "needs all lists of length at most 2";
      return std::nullopt;
    case AlgoKind::Delta2:
      if (dm > 2) return swapped ? "needs women's lists of length at most 2" : "needs men's lists of length at most 2";
      if (star_men > 0) return swapped ? "needs no distinguished women" : "needs no distinguished men";
      return std::nullopt;
    case AlgoKind::FptDeltaW2:
      if (dw > 2) return swapped ? "needs men's lists of length at most 2" : "needs women's lists of length at most 2";
      return std::nullopt;
    case AlgoKind::HrlqApprox:
      return "needs a hospitals/residents instance";
    case AlgoKind::GuessDelete:
    case AlgoKind::SmcApprox:
    case AlgoKind::OracleOnly:
      if (swapped) return "has no swapped form";
      return std::nullopt;
  }
  return "unknown algorithm";
}

AlgoChoice forced_choice(AlgoKind k, const ParamProfile& p) {
  auto why = precondition_failure(k, false, p);
  if (!why) return choice(k, false, "requested");
  if ((k == AlgoKind::Delta2 || k == AlgoKind::FptDeltaW2) && !precondition_failure(k, true, p))
    return choice(k, true, "requested, sides exchanged");
  throw PreconditionError(std::string(algo_name(k)) + " " + *why);
}

BudgetedResult run_choice(const SmcInstance& inst, const AlgoChoice& c, std::optional<int> budget, int threads,
                          bool exact_approx) {
  if (auto why = precondition_failure(c.kind, c.swapped, param_profile(inst)))
    throw PreconditionError(std::string(algo_name(c.kind)) + " " + *why);
  if (budget && *budget < 0) throw PreconditionError("budget must be nonnegative");
  switch (c.kind) {
    case AlgoKind::GaleShapley:
      return within(make_result(inst, gale_shapley(inst, ProposalSide::MenPropose), Algorithm::GaleShapley, true),
                    budget);
    case AlgoKind::GuessDelete:
      if (budget) return solve_guess_delete(inst, *budget, threads);
      return solve_min_guess_delete(inst, threads);
    case AlgoKind::Degree2:
      return within(solve_degree2(inst), budget);
    case AlgoKind::Delta2:
      return within(c.swapped ? solve_delta2_swapped(inst) : solve_delta2(inst), budget);
    case AlgoKind::FptDeltaW2: {
      if (!c.swapped) return within(solve_fpt(inst, nullptr, threads), budget);
      return within(unswap(inst, solve_fpt(inst.swapped(), nullptr, threads)), budget);
    }
    case AlgoKind::SmcApprox:
      if (!exact_approx) return smc_approx(inst);
      if (budget) return smc_constant_dispatch(inst, *budget, threads);
      return min_constant_dispatch(inst, threads);
    case AlgoKind::OracleOnly:
      if (inst.num_persons() <= oracle_cap()) return within(enumerate_oracle(inst), budget);
      if (auto r = solve_exact(inst, budget)) return *r;
      if (budget) return NoSolutionWithin{*budget};
      return make_infeasible(inst, Algorithm::FrontierDp);
    case AlgoKind::HrlqApprox:
      break;
  }
  throw PreconditionError("unsupported algorithm");
}

HrlqBudgetedResult run_hrlq(const HrlqInstance& inst, AlgoKind k, std::optional<int> budget, int threads,
                            bool exact_approx) {
  if (budget && *budget < 0) throw PreconditionError("budget must be nonnegative");
  if (k == AlgoKind::GuessDelete) {
    if (budget) return hrlq_guess_delete(inst, *budget, threads);
    return hrlq_min_guess_delete(inst, threads);
  }
  if (k != AlgoKind::HrlqApprox)
    throw PreconditionError(std::string(algo_name(k)) + " does not take hospitals/residents instances");
  if (!exact_approx) return hrlq_approx(inst);
  if (budget) return hrlq_constant_dispatch(inst, *budget, threads);
  return min_hrlq_dispatch(inst, threads);
}

}  // namespace smc
