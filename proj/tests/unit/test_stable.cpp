#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "generators.hpp"
#include "naive.hpp"
#include "smc/stable.hpp"

using namespace smc;

TEST_CASE("Gale-Shapley on FIX-A") {
  auto a = fixtures::fix_a();
  Matching men = gale_shapley(a, ProposalSide::MenPropose);
  CHECK(men.pairs() == std::vector<Edge>{{0, 0}});
  Matching women = gale_shapley(a, ProposalSide::WomenPropose);
  CHECK(women == men);
  // Enumeration confirms that this is the only stable matching.
  CHECK(naive::stable_matchings(a).size() == 1);
  CHECK(gale_shapley(SmcInstance({{}, {}}, {{}})).empty());
}

TEST_CASE("Hospitals/Residents Gale-Shapley") {
  auto c = fixtures::fix_c();
  CHECK(gale_shapley_hr(c).hospital_of_resident == std::vector<int>{0, kUnmatched});

  // Large quotas and complete lists: everyone gets a first choice.
  HrlqInstance open({{1, 0}, {0, 1}}, {Hospital{{0, 1}, 0, 2}, Hospital{{1, 0}, 0, 2}});
  CHECK(gale_shapley_hr(open).hospital_of_resident == std::vector<int>{1, 0});

  HrlqInstance none({{}, {}}, {Hospital{{}, 0, 1}});
  CHECK(gale_shapley_hr(none).hospital_of_resident == std::vector<int>{kUnmatched, kUnmatched});
}

TEST_CASE("unmatched profile") {
  auto [men, women] = unmatched_profile(fixtures::fix_a());
  CHECK(men == std::vector<int>{1});
  CHECK(women == std::vector<int>{1});

  SmcInstance market({{0, 1}, {0, 1}}, {{0, 1}, {0, 1}});
  auto [m2, w2] = unmatched_profile(market);
  CHECK(m2.empty());
  CHECK(w2.empty());

  auto [mb, wb] = unmatched_profile(fixtures::fix_b());
  CHECK(mb.empty());
  CHECK(wb == std::vector<int>{1});
  CHECK(naive::stable_matchings(fixtures::fix_b()).size() == 1);
}

TEST_CASE("stability, rural hospitals and proposer optimality on random instances") {
  std::mt19937_64 rng(101);
  for (int iter = 0; iter < 1000; ++iter) {
    auto inst = gen::random_smc(rng, {gen::uniform(rng, 0, 8), gen::uniform(rng, 0, 8), 0.45});
    Matching mp = gale_shapley(inst, ProposalSide::MenPropose);
    Matching wp = gale_shapley(inst, ProposalSide::WomenPropose);
    REQUIRE(blocking_pairs(inst, mp).empty());
    REQUIRE(blocking_pairs(inst, wp).empty());
    for (int m = 0; m < inst.num_men(); ++m) {
      CHECK((mp.partner_of_man(m) == kUnmatched) == (wp.partner_of_man(m) == kUnmatched));
      if (mp.partner_of_man(m) != kUnmatched)
        CHECK(inst.man_rank(m, mp.partner_of_man(m)) <= inst.man_rank(m, wp.partner_of_man(m)));
    }
    for (int w = 0; w < inst.num_women(); ++w)
      CHECK((mp.partner_of_woman(w) == kUnmatched) == (wp.partner_of_woman(w) == kUnmatched));
  }
}

TEST_CASE("resident-proposing assignments are stable and within quota") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 500; ++iter) {
    auto inst = gen::random_hrlq(rng, {gen::uniform(rng, 0, 7), gen::uniform(rng, 1, 4), 3, 0.5});
    Assignment a = gale_shapley_hr(inst);
    CHECK_NOTHROW(validate_assignment(inst, a));
    CHECK(blocking_pairs_hrlq(inst, a).empty());
  }
}
