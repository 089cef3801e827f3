#include <doctest.h>

#include <cstdlib>
#include <random>

#include "fixtures.hpp"
#include "generators.hpp"
#include "naive.hpp"
#include "smc/exact.hpp"

using namespace smc;

TEST_CASE("enumeration oracle on the fixtures") {
  auto a = fixtures::fix_a();
  // Hand enumeration: FIX-A has five matchings; only {m1-w2} and
  // {m1-w2, m2-w1} cover w2, with 2 and 1 blocking pairs.
  CHECK(naive::all_matchings(a).size() == 5);
  auto r = enumerate_oracle(a);
  CHECK_FALSE(r.infeasible);
  CHECK(r.blocking_count() == 1);
  CHECK(r.matching.pairs() == std::vector<Edge>{{0, 1}, {1, 0}});
  CHECK(r.optimal);

  auto b = enumerate_oracle(fixtures::fix_b());
  CHECK(b.infeasible);
  CHECK(b.matching.empty());

  SmcInstance plain({{0, 1}, {1}}, {{0}, {1, 0}});
  CHECK(enumerate_oracle(plain).blocking_count() == 0);
}

TEST_CASE("enumeration oracle refuses large instances") {
  SmcInstance big(std::vector<PrefList>(9), std::vector<PrefList>(9));
  CHECK_THROWS_AS(enumerate_oracle(big), SizeCapError);
  CHECK_NOTHROW(enumerate_oracle(big, 18));
  setenv("SMC_ORACLE_CAP", "20", 1);
  CHECK(oracle_cap() == 20);
  CHECK_NOTHROW(enumerate_oracle(big));
  unsetenv("SMC_ORACLE_CAP");
  CHECK(oracle_cap() == 16);
}

TEST_CASE("enumeration oracle against plain enumeration") {
  std::mt19937_64 rng(41);
  for (int iter = 0; iter < 600; ++iter) {
    auto inst = gen::random_smc(rng, {gen::uniform(rng, 0, 5), gen::uniform(rng, 0, 5), 0.5, INT_MAX, INT_MAX,
                                      gen::uniform(rng, 0, 2), gen::uniform(rng, 0, 2)});
    auto want = naive::min_blocking(inst);
    auto got = enumerate_oracle(inst);
    REQUIRE(got.infeasible == !want.has_value());
    if (want) {
      CHECK(got.blocking_count() == *want);
      CHECK(is_feasible(inst, got.matching));
    }
  }
}

TEST_CASE("guess and delete on the fixtures") {
  auto a = fixtures::fix_a();
  auto one = solve_guess_delete(a, 1);
  REQUIRE_FALSE(is_no_solution(one));
  CHECK(solution(one).blocking_count() == 1);
  auto zero = solve_guess_delete(a, 0);
  REQUIRE(is_no_solution(zero));
  CHECK(std::get<NoSolutionWithin>(zero).budget == 0);

  SmcInstance plain({{0, 1}, {1}}, {{0}, {1, 0}});
  CHECK(solution(solve_guess_delete(plain, 0)).blocking_count() == 0);

  CHECK(solve_min_guess_delete(a).blocking_count() == 1);
  CHECK(solve_min_guess_delete(fixtures::fix_b()).infeasible);
  auto e = solve_min_guess_delete(fixtures::fix_e());
  CHECK(e.blocking_count() == 1);
  CHECK(e.matching.pairs() == std::vector<Edge>{{0, 1}, {1, 0}});
  CHECK(e.blocking == std::vector<Edge>{{0, 0}});
}

TEST_CASE("guess and delete succeeds exactly when the optimum fits the budget") {
  std::mt19937_64 rng(43);
  for (int iter = 0; iter < 300; ++iter) {
    auto inst = gen::random_smc(rng, {gen::uniform(rng, 1, 5), gen::uniform(rng, 1, 5), 0.5, INT_MAX, INT_MAX,
                                      gen::uniform(rng, 0, 2), gen::uniform(rng, 0, 2)});
    auto opt = enumerate_oracle(inst);
    bool prev = false;
    for (int b = 0; b <= 3; ++b) {
      auto r = solve_guess_delete(inst, b, iter % 3 == 0 ? 2 : 1);
      bool ok = !is_no_solution(r) && !solution(r).infeasible;
      CHECK(ok == (!opt.infeasible && opt.blocking_count() <= b));
      if (ok) {
        CHECK(solution(r).blocking_count() <= b);
        CHECK(is_feasible(inst, solution(r).matching));
      }
      CHECK((!prev || ok));  // monotone in b
      prev = ok;
    }
    auto m = solve_min_guess_delete(inst);
    CHECK(m.infeasible == opt.infeasible);
    if (!opt.infeasible) CHECK(m.blocking_count() == opt.blocking_count());
  }
}

TEST_CASE("degree-two solver") {
  CHECK(solve_degree2(fixtures::fix_a()).blocking_count() == 1);

  SmcInstance cycle({{0, 1}, {1, 0}}, {{0, 1}, {1, 0}}, {0, 1});
  CHECK(enumerate_oracle(cycle).blocking_count() == 0);
  CHECK(solve_degree2(cycle).blocking_count() == 0);

  SmcInstance edge({{0}}, {{0}}, {0}, {0});
  auto r = solve_degree2(edge);
  CHECK(r.matching.pairs() == std::vector<Edge>{{0, 0}});
  CHECK(r.blocking_count() == 0);

  SmcInstance wide({{0, 1, 2}}, {{0}, {0}, {0}});
  CHECK_THROWS_AS(solve_degree2(wide), PreconditionError);
}

TEST_CASE("degree-two solver against the oracle") {
  std::mt19937_64 rng(47);
  for (int iter = 0; iter < 500; ++iter) {
    auto inst = gen::random_smc(rng, {gen::uniform(rng, 1, 8), gen::uniform(rng, 1, 8), 0.5, 2, 2,
                                      gen::uniform(rng, 0, 3), gen::uniform(rng, 0, 3)});
    auto want = enumerate_oracle(inst);
    auto got = solve_degree2(inst);
    REQUIRE(got.infeasible == want.infeasible);
    if (!want.infeasible) {
      CHECK(got.blocking_count() == want.blocking_count());
      CHECK(is_feasible(inst, got.matching));
    }
  }
}

TEST_CASE("frontier DP against the oracle") {
  std::mt19937_64 rng(53);
  for (int iter = 0; iter < 400; ++iter) {
    auto inst = gen::random_smc(rng, {gen::uniform(rng, 1, 7), gen::uniform(rng, 1, 7), 0.4, INT_MAX, INT_MAX,
                                      gen::uniform(rng, 0, 3), gen::uniform(rng, 0, 3)});
    auto want = enumerate_oracle(inst);
    auto got = solve_exact(inst);
    REQUIRE(got.has_value() == !want.infeasible);
    if (!got) continue;
    CHECK(got->blocking_count() == want.blocking_count());
    CHECK(is_feasible(inst, got->matching));
    // With the optimum as cap the DP still succeeds; one below, it must not.
    CHECK(solve_exact(inst, want.blocking_count()).has_value());
    if (want.blocking_count() > 0) CHECK_FALSE(solve_exact(inst, want.blocking_count() - 1).has_value());
  }
}
