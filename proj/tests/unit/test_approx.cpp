#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "generators.hpp"
#include "naive.hpp"
#include "smc/approx.hpp"
#include "smc/stable.hpp"

using namespace smc;

namespace {

int max_list(const HrlqInstance& inst) {
  int d = inst.delta_r();
  for (int h = 0; h < inst.num_hospitals(); ++h) d = std::max(d, static_cast<int>(inst.hospital(h).prefs.size()));
  return d;
}

// Every resident h prefers to its worst reserved one is reserved elsewhere.
bool dagger_holds(const HrlqInstance& inst, const std::vector<std::vector<int>>& reserved) {
  std::vector<int> owner(inst.num_residents(), -1);
  for (int h = 0; h < inst.num_hospitals(); ++h)
    for (int r : reserved[h]) owner[r] = h;
  for (int h = 0; h < inst.num_hospitals(); ++h) {
    if (static_cast<int>(reserved[h].size()) != inst.hospital(h).lower) return false;
    if (reserved[h].empty()) continue;
    int worst = 0;
    for (int r : reserved[h]) worst = std::max(worst, inst.hospital_rank(h, r));
    for (int k = 0; k < worst; ++k) {
      int r = inst.hospital(h).prefs[k];
      if (owner[r] == -1) return false;
    }
  }
  return true;
}

// No distinguished person with a non-distinguished partner blocks with
// someone whose partner is non-distinguished or missing.
bool maltese_holds(const SmcInstance& inst, const Matching& m) {
  for (const Edge& e : blocking_pairs(inst, m)) {
    int pw = m.partner_of_woman(e.woman), pm = m.partner_of_man(e.man);
    bool man_side = inst.is_star_man(e.man) && !(pm != kUnmatched && inst.is_star_woman(pm));
    bool woman_side = inst.is_star_woman(e.woman) && !(pw != kUnmatched && inst.is_star_man(pw));
    if (man_side && !(pw != kUnmatched && inst.is_star_man(pw))) return false;
    if (woman_side && !(pm != kUnmatched && inst.is_star_woman(pm))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("HRLQ approximation examples") {
  auto c = fixtures::fix_c();
  CHECK(hrlq_bound(c) == 2);
  auto r = hrlq_approx(c);
  CHECK_FALSE(r.infeasible);
  CHECK(is_feasible_hrlq(c, r.assignment));
  CHECK(r.blocking_count() == 1);
  CHECK(r.assignment.hospital_of_resident == std::vector<int>{1, 0});
  CHECK(r.optimal);

  // No lower quotas: the stable assignment comes back.
  HrlqInstance plain({{0, 1}, {0}}, {{{0, 1}, 0, 1}, {{0}, 0, 1}});
  auto p = hrlq_approx(plain);
  CHECK(p.blocking_count() == 0);
  CHECK(p.assignment == gale_shapley_hr(plain));

  // Hall violation.
  HrlqInstance short_of({{0}}, {{{0}, 2, 2}});
  CHECK(hrlq_approx(short_of).infeasible);
  CHECK_FALSE(reserve_lower_quotas(short_of));
}

TEST_CASE("HRLQ approximation bounds on random instances") {
  std::mt19937_64 rng(61);
  int checked = 0;
  for (int iter = 0; iter < 600; ++iter) {
    auto inst = gen::random_hrlq(rng, {gen::uniform(rng, 1, 6), gen::uniform(rng, 1, 3), 2, 0.6});
    auto opt = naive::hrlq_min_blocking(inst);
    GreedyTrace trace;
    auto r = hrlq_approx(inst, &trace);
    REQUIRE(r.infeasible == !opt.has_value());
    if (!opt) continue;
    ++checked;
    CHECK(is_feasible_hrlq(inst, r.assignment));
    CHECK(r.blocking_count() <= hrlq_bound(inst));
    CHECK(r.blocking_count() >= *opt);
    CHECK(r.blocking_count() == naive::hrlq_blocking_count(inst, r.assignment.hospital_of_resident));
    std::set<int> involved;
    for (auto [res, h] : r.blocking) involved.insert(res);
    CHECK(static_cast<int>(involved.size()) <= inst.lower_sum());

    GreedyTrace t2;
    auto reserved = reserve_lower_quotas(inst, &t2);
    REQUIRE(reserved);
    CHECK(dagger_holds(inst, *reserved));
    CHECK(static_cast<int>(t2.size()) <= (inst.num_residents() + inst.num_hospitals()) * max_list(inst));
    for (const TraceStep& s : t2)
      CHECK(inst.hospital_rank(s.pivot, s.replacing) < inst.hospital_rank(s.pivot, s.replaced));
  }
  CHECK(checked >= 300);
}

TEST_CASE("SMC approximation examples") {
  auto a = fixtures::fix_a();
  CHECK(smc_bound(a) == 1);
  auto r = smc_approx(a);
  CHECK(is_feasible(a, r.matching));
  CHECK(r.blocking_count() == 1);

  SmcInstance plain({{0, 1}, {1, 0}}, {{1, 0}, {0, 1}});
  auto p = smc_approx(plain);
  CHECK(p.blocking_count() == 0);
  CHECK(p.matching == gale_shapley(plain, ProposalSide::MenPropose));

  CHECK(smc_approx(fixtures::fix_b()).infeasible);
  CHECK(smc_approx(fixtures::fix_e()).blocking_count() == 1);
}

TEST_CASE("SMC approximation bounds on random instances") {
  std::mt19937_64 rng(67);
  int checked = 0;
  for (int iter = 0; iter < 600; ++iter) {
    auto inst = gen::random_smc(rng, {gen::uniform(rng, 1, 6), gen::uniform(rng, 1, 6), 0.5, INT_MAX, INT_MAX,
                                      gen::uniform(rng, 0, 3), gen::uniform(rng, 0, 3)});
    auto opt = naive::min_blocking(inst);
    auto r = smc_approx(inst);
    REQUIRE(r.infeasible == !opt.has_value());
    if (!opt) continue;
    ++checked;
    CHECK(is_feasible(inst, r.matching));
    CHECK(r.blocking_count() <= smc_bound(inst));
    CHECK(r.blocking_count() >= *opt);

    GreedyTrace trace;
    auto mq = smc_cover_greedy(inst, &trace);
    REQUIRE(mq);
    CHECK(is_feasible(inst, *mq));
    CHECK(maltese_holds(inst, *mq));
    for (const Edge& e : mq->pairs()) CHECK((inst.is_star_man(e.man) || inst.is_star_woman(e.woman)));
    int delta = std::max(param_profile(inst).delta_m, param_profile(inst).delta_w);
    CHECK(static_cast<int>(trace.size()) <= inst.num_persons() * delta);
  }
  CHECK(checked >= 200);
}

TEST_CASE("constant-parameter dispatchers") {
  auto c = fixtures::fix_c();
  auto two = hrlq_constant_dispatch(c, 2);
  REQUIRE_FALSE(is_no_solution(two));
  CHECK(solution(two).algorithm == Algorithm::HrlqApprox);
  CHECK(solution(two).blocking_count() <= 2);
  CHECK(is_no_solution(hrlq_constant_dispatch(c, 0)));
  auto one = hrlq_constant_dispatch(c, 1);
  REQUIRE_FALSE(is_no_solution(one));
  CHECK(solution(one).algorithm == Algorithm::HrlqGuessDelete);
  CHECK(solution(one).blocking_count() == 1);

  auto a = fixtures::fix_a();
  auto a1 = smc_constant_dispatch(a, 1);
  REQUIRE_FALSE(is_no_solution(a1));
  CHECK(solution(a1).algorithm == Algorithm::SmcApprox);
  CHECK(is_no_solution(smc_constant_dispatch(a, 0)));
  auto e = fixtures::fix_e();
  CHECK(smc_bound(e) == 1);
  auto e1 = smc_constant_dispatch(e, 1);
  REQUIRE_FALSE(is_no_solution(e1));
  CHECK(solution(e1).algorithm == Algorithm::SmcApprox);
  CHECK(solution(e1).blocking_count() == 1);
}

TEST_CASE("HRLQ guess and delete against brute force") {
  std::mt19937_64 rng(71);
  for (int iter = 0; iter < 300; ++iter) {
    auto inst = gen::random_hrlq(rng, {gen::uniform(rng, 1, 5), gen::uniform(rng, 1, 3), 2, 0.6});
    auto opt = naive::hrlq_min_blocking(inst);
    auto m = hrlq_min_guess_delete(inst, iter % 2 + 1);
    REQUIRE(m.infeasible == !opt.has_value());
    if (!opt) continue;
    CHECK(m.blocking_count() == *opt);
    for (int b = 0; b <= 3; ++b) {
      auto r = hrlq_constant_dispatch(inst, b);
      CHECK(is_no_solution(r) == (*opt > b));
      if (!is_no_solution(r)) CHECK(solution(r).blocking_count() <= b);
    }
  }
}

TEST_CASE("SMC dispatcher against brute force") {
  std::mt19937_64 rng(73);
  for (int iter = 0; iter < 300; ++iter) {
    auto inst = gen::random_smc(rng, {gen::uniform(rng, 1, 5), gen::uniform(rng, 1, 5), 0.5, INT_MAX, INT_MAX,
                                      gen::uniform(rng, 0, 2), gen::uniform(rng, 0, 2)});
    auto opt = naive::min_blocking(inst);
    if (!opt) continue;
    for (int b = 0; b <= 3; ++b) {
      auto r = smc_constant_dispatch(inst, b);
      CHECK(is_no_solution(r) == (*opt > b));
      if (!is_no_solution(r)) CHECK(solution(r).blocking_count() <= b);
    }
  }
}
