#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "generators.hpp"
#include "naive.hpp"
#include "smc/bipartite.hpp"

using namespace smc;

TEST_CASE("maximum matching examples") {
  auto g = BipartiteGraph::from_instance(fixtures::fix_a());
  CHECK(max_matching(g).size == 2);
  CHECK(naive::max_matching_size(g) == 2);
  CHECK(max_matching(BipartiteGraph(3, 3)).size == 0);
  BipartiteGraph k33(3, 3);
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v) k33.add_edge(u, v);
  CHECK(max_matching(k33).size == 3);
}

TEST_CASE("maximum matching against brute force") {
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 600; ++iter) {
    BipartiteGraph g(gen::uniform(rng, 0, 5), gen::uniform(rng, 0, 5));
    for (int u = 0; u < g.left; ++u)
      for (int v = 0; v < g.right; ++v)
        if (gen::uniform(rng, 0, 2) == 0) g.add_edge(u, v);
    auto m = max_matching(g);
    CHECK(m.size == naive::max_matching_size(g));
    for (int u = 0; u < g.left; ++u)
      if (m.left_partner[u] != kUnmatched) CHECK(m.right_partner[m.left_partner[u]] == u);
  }
}

TEST_CASE("covering the distinguished persons") {
  auto a = fixtures::fix_a();
  auto m = cover_distinguished(a);
  REQUIRE(m.has_value());
  CHECK(m->pairs() == std::vector<Edge>{{0, 1}});
  CHECK_FALSE(cover_distinguished(fixtures::fix_b()).has_value());
  SmcInstance plain({{0}}, {{0}});
  CHECK(cover_distinguished(plain)->empty());
}

TEST_CASE("covering matchings on random two-sided instances") {
  std::mt19937_64 rng(19);
  for (int iter = 0; iter < 800; ++iter) {
    auto inst = gen::random_smc(rng, {gen::uniform(rng, 1, 5), gen::uniform(rng, 1, 5), 0.4, INT_MAX, INT_MAX,
                                      gen::uniform(rng, 0, 3), gen::uniform(rng, 0, 3)});
    auto m = cover_distinguished(inst);
    // A covering matching exists iff some matching of the instance is feasible.
    CHECK(m.has_value() == naive::min_blocking(inst).has_value());
    if (!m) continue;
    CHECK_NOTHROW(validate_matching(inst, *m));
    CHECK(is_feasible(inst, *m));
    for (const Edge& e : m->pairs()) CHECK((inst.is_star_man(e.man) || inst.is_star_woman(e.woman)));
  }
}

TEST_CASE("minimum weight covering matching examples") {
  WeightedGraph star{1, 2, {{0, 0, 3}, {0, 1, 1}}};
  std::vector<int> center{0};
  auto r = min_weight_cover_matching(star, center);
  REQUIRE(r.has_value());
  CHECK(r->weight == 1);
  CHECK(r->left_partner[0] == 1);

  auto none = min_weight_cover_matching(star, {});
  REQUIRE(none.has_value());
  CHECK(none->weight == 0);

  WeightedGraph shared{2, 1, {{0, 0, 1}, {1, 0, 1}}};
  std::vector<int> both{0, 1};
  CHECK_FALSE(min_weight_cover_matching(shared, both).has_value());
}

TEST_CASE("minimum weight covering matching against brute force") {
  std::mt19937_64 rng(29);
  for (int iter = 0; iter < 600; ++iter) {
    WeightedGraph g{gen::uniform(rng, 0, 5), gen::uniform(rng, 0, 5), {}};
    for (int u = 0; u < g.left; ++u)
      for (int v = 0; v < g.right; ++v)
        if (gen::uniform(rng, 0, 2) == 0) g.edges.push_back({u, v, gen::uniform(rng, 0, 9)});
    std::vector<int> must;
    for (int u = 0; u < g.left; ++u)
      if (gen::uniform(rng, 0, 1)) must.push_back(u);
    auto got = min_weight_cover_matching(g, must);
    auto want = naive::min_cover_weight(g, must);
    REQUIRE(got.has_value() == want.has_value());
    if (!got) continue;
    CHECK(got->weight == *want);
    for (int u : must) CHECK(got->left_partner[u] != kUnmatched);
  }
}
