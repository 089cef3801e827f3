#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "generators.hpp"
#include "smc/approx.hpp"
#include "smc/dispatch.hpp"
#include "smc/exact.hpp"

using namespace smc;
using namespace smc::fixtures;

namespace {

ParamProfile profile(int dm, int dw, int sw, int sm) {
  ParamProfile p;
  p.delta_m = dm;
  p.delta_w = dw;
  p.n_star_women = sw;
  p.n_star_men = sm;
  return p;
}

ParamProfile random_profile(std::mt19937_64& rng) {
  auto pick = [&](int hi) { return gen::uniform(rng, 0, 3) == 0 ? gen::uniform(rng, 0, hi) : gen::uniform(rng, 0, 4); };
  ParamProfile p = profile(pick(50), pick(50), pick(40), pick(40));
  p.delta_star = gen::uniform(rng, 0, std::max(p.delta_m, p.delta_w));
  p.has_master_list_men = gen::uniform(rng, 0, 1);
  p.has_master_list_women = gen::uniform(rng, 0, 1);
  return p;
}

int optimum(const BudgetedResult& r) {
  const SolveResult& s = solution(r);
  return s.infeasible ? -1 : s.blocking_count();
}

}  // namespace

TEST_CASE("fixture profiles route to the expected solvers") {
  AlgoChoice a = select_algorithm(param_profile(fix_a()), std::nullopt);
  CHECK(a.kind == AlgoKind::Delta2);
  CHECK_FALSE(a.swapped);

  // Short lists on both sides, distinguished persons on both sides.
  CHECK(select_algorithm(profile(2, 2, 1, 1), std::nullopt).kind == AlgoKind::Degree2);

  // The mirrored fixture has no distinguished women and short women's lists,
  // so the polynomial solver with sides exchanged applies before the FPT one.
  ParamProfile e = param_profile(fix_e());
  AlgoChoice ce = select_algorithm(e, std::nullopt);
  CHECK(ce.kind == AlgoKind::Delta2);
  CHECK(ce.swapped);
  CHECK_FALSE(precondition_failure(AlgoKind::FptDeltaW2, false, e));
  CHECK(select_algorithm(profile(3, 2, 1, 1), std::nullopt).kind == AlgoKind::FptDeltaW2);
}

TEST_CASE("every tractable classification row maps to its solver") {
  CHECK(select_algorithm(profile(9, 9, 0, 0), std::nullopt).kind == AlgoKind::GaleShapley);
  CHECK(select_algorithm(profile(3, 40, 2, 0), std::nullopt).kind == AlgoKind::SmcApprox);
  CHECK(select_algorithm(profile(3, 3, 3, 3), std::nullopt).kind == AlgoKind::SmcApprox);
  CHECK(select_algorithm(profile(2, 30, 25, 0), std::nullopt).kind == AlgoKind::Delta2);
  CHECK(select_algorithm(profile(2, 2, 20, 20), std::nullopt).kind == AlgoKind::Degree2);
  CHECK(select_algorithm(profile(30, 30, 20, 20), 2).kind == AlgoKind::GuessDelete);
  CHECK(select_algorithm(profile(30, 2, 20, 20), std::nullopt).kind == AlgoKind::FptDeltaW2);
  CHECK(select_algorithm(profile(30, 2, 20, 20), 10).kind == AlgoKind::FptDeltaW2);
  AlgoChoice mirrored = select_algorithm(profile(2, 30, 20, 20), std::nullopt);
  CHECK(mirrored.kind == AlgoKind::FptDeltaW2);
  CHECK(mirrored.swapped);
}

TEST_CASE("intractable profiles fall back with a warning") {
  AlgoChoice c = select_algorithm(profile(3, 3, 4, 0), std::nullopt);
  CHECK(c.kind == AlgoKind::GuessDelete);
  CHECK(c.exponential);
  CHECK(select_algorithm(profile(3, 3, 4, 0), 3).kind == AlgoKind::GuessDelete);
  CHECK_FALSE(select_algorithm(profile(3, 3, 4, 0), 3).exponential);
  DispatchThresholds wide{5, 5};
  CHECK(select_algorithm(profile(3, 3, 4, 0), std::nullopt, wide).kind == AlgoKind::SmcApprox);
  CHECK(select_algorithm(profile(3, 3, 4, 0), 5, wide).kind == AlgoKind::GuessDelete);
}

TEST_CASE("fuzzed profiles always get a runnable choice") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10000; ++i) {
    ParamProfile p = random_profile(rng);
    std::optional<int> b;
    if (gen::uniform(rng, 0, 1)) b = gen::uniform(rng, 0, 10);
    DispatchThresholds t{gen::uniform(rng, 0, 5), gen::uniform(rng, 2, 6)};
    AlgoChoice c = select_algorithm(p, b, t);
    CHECK_MESSAGE(satisfies_preconditions(c, p), c.rationale);
    CHECK_FALSE(c.rationale.empty());
    CHECK(c.kind != AlgoKind::OracleOnly);
  }
}

TEST_CASE("forced choices honor preconditions") {
  ParamProfile e = param_profile(fix_e());
  CHECK(forced_choice(AlgoKind::Delta2, e).swapped);
  CHECK_FALSE(forced_choice(AlgoKind::FptDeltaW2, e).swapped);
  CHECK_THROWS_AS(forced_choice(AlgoKind::GaleShapley, e), PreconditionError);
  CHECK_THROWS_AS(forced_choice(AlgoKind::Degree2, profile(3, 2, 1, 0)), PreconditionError);
  CHECK_THROWS_AS(forced_choice(AlgoKind::HrlqApprox, e), PreconditionError);
  CHECK_THROWS_AS(run_choice(fix_a(), AlgoChoice{AlgoKind::GaleShapley}, std::nullopt), PreconditionError);
  for (auto k : {AlgoKind::GaleShapley, AlgoKind::GuessDelete, AlgoKind::Degree2, AlgoKind::Delta2,
                 AlgoKind::FptDeltaW2, AlgoKind::SmcApprox, AlgoKind::HrlqApprox, AlgoKind::OracleOnly})
    CHECK(parse_algo_name(algo_name(k)) == k);
  CHECK_FALSE(parse_algo_name("nope"));
}

TEST_CASE("running the fixtures") {
  BudgetedResult a = run_choice(fix_a(), select_algorithm(param_profile(fix_a()), std::nullopt), std::nullopt);
  CHECK(optimum(a) == 1);
  CHECK(solution(a).optimal);
  CHECK(is_no_solution(run_choice(fix_a(), select_algorithm(param_profile(fix_a()), 0), 0)));
  CHECK(is_no_solution(run_choice(fix_a(), forced_choice(AlgoKind::Delta2, param_profile(fix_a())), 0)));
  BudgetedResult e = run_choice(fix_e(), forced_choice(AlgoKind::FptDeltaW2, param_profile(fix_e())), std::nullopt);
  CHECK(optimum(e) == 1);
  CHECK(solution(run_choice(fix_b(), select_algorithm(param_profile(fix_b()), std::nullopt), std::nullopt))
            .infeasible);
}

TEST_CASE("dispatched solvers agree with the oracle") {
  std::mt19937_64 rng(5);
  int counts[8] = {};
  for (int i = 0; i < 1500; ++i) {
    int men = gen::uniform(rng, 1, 6), women = gen::uniform(rng, 1, 6);
    SmcInstance inst = [&] {
      switch (i % 3) {
        case 0:
          return gen::random_short_side(rng, men, women, Side::Woman, gen::uniform(rng, 0, std::min(2, women)),
                                        gen::uniform(rng, 0, std::min(1, men)));
        case 1:
          return gen::random_short_side(rng, men, women, Side::Man, gen::uniform(rng, 0, std::min(2, women)),
                                        gen::uniform(rng, 0, std::min(2, men)));
        default:
          return gen::random_smc(rng, {men, women, 0.6, 4, 4, gen::uniform(rng, 0, std::min(2, women)),
                                       gen::uniform(rng, 0, std::min(1, men))});
      }
    }();
    AlgoChoice c = select_algorithm(param_profile(inst), std::nullopt);
    ++counts[static_cast<int>(c.kind)];
    SolveResult oracle = enumerate_oracle(inst);
    int want = oracle.infeasible ? -1 : oracle.blocking_count();
    BudgetedResult got = run_choice(inst, c, std::nullopt);
    REQUIRE_MESSAGE(optimum(got) == want, c.rationale);
    if (want >= 0) {
      CHECK(is_feasible(inst, solution(got).matching));
      CHECK(count_blocking_pairs(inst, solution(got).matching) == want);
      BudgetedResult tight = run_choice(inst, c, want);
      CHECK_FALSE(is_no_solution(tight));
      if (want > 0) CHECK(is_no_solution(run_choice(inst, c, want - 1)));
    }
  }
  for (auto k : {AlgoKind::GaleShapley, AlgoKind::Delta2, AlgoKind::Degree2, AlgoKind::FptDeltaW2,
                 AlgoKind::SmcApprox})
    CHECK(counts[static_cast<int>(k)] > 0);
}

TEST_CASE("hospitals/residents runs agree with guess-delete") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 300; ++i) {
    HrlqInstance inst = gen::random_hrlq(rng, {gen::uniform(rng, 1, 5), gen::uniform(rng, 1, 3), 2, 0.6});
    HrlqResult exact = hrlq_min_guess_delete(inst);
    HrlqResult got = solution(run_hrlq(inst, AlgoKind::HrlqApprox, std::nullopt));
    REQUIRE(got.infeasible == exact.infeasible);
    if (exact.infeasible) continue;
    CHECK(got.blocking_count() == exact.blocking_count());
    CHECK(got.optimal);
    CHECK(is_feasible_hrlq(inst, got.assignment));
    if (exact.blocking_count() > 0)
      CHECK(is_no_solution(run_hrlq(inst, AlgoKind::HrlqApprox, exact.blocking_count() - 1)));
  }
  CHECK_THROWS_AS(run_hrlq(fix_c(), AlgoKind::Delta2, std::nullopt), PreconditionError);
  CHECK(solution(run_hrlq(fix_c(), AlgoKind::GuessDelete, std::nullopt)).blocking_count() == 1);
}
