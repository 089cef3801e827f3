#include "smc/approx.hpp"

#include <algorithm>

#include "smc/bipartite.hpp"
#include "smc/stable.hpp"

namespace smc {

namespace {

HrlqResult hrlq_infeasible(const HrlqInstance& inst, Algorithm alg) {
  HrlqResult r;
  r.assignment = Assignment(inst.num_residents());
  r.algorithm = alg;
  r.optimal = true;
  r.infeasible = true;
  return r;
}

// Residents on the left, lower(h) slots per hospital on the right.
std::optional<std::vector<std::vector<int>>> fill_lower_quotas(const HrlqInstance& inst) {
  std::vector<int> first(inst.num_hospitals() + 1, 0);
  for (int h = 0; h < inst.num_hospitals(); ++h) first[h + 1] = first[h] + inst.hospital(h).lower;
  BipartiteGraph g(inst.num_residents(), first.back());
  for (int r = 0; r < inst.num_residents(); ++r)
    for (int h : inst.resident_list(r))
      for (int s = first[h]; s < first[h + 1]; ++s) g.add_edge(r, s);
  BipartiteMatching bm = max_matching(g);
  if (bm.size < inst.lower_sum()) return std::nullopt;
  std::vector<std::vector<int>> reserved(inst.num_hospitals());
  for (int h = 0; h < inst.num_hospitals(); ++h)
    for (int s = first[h]; s < first[h + 1]; ++s) reserved[h].push_back(bm.right_partner[s]);
  return reserved;
}

bool all_stable_is_feasible(const HrlqInstance& inst, Assignment& out) {
  out = gale_shapley_hr(inst);
  return is_feasible_hrlq(inst, out);
}

}  // namespace

std::optional<std::vector<std::vector<int>>> reserve_lower_quotas(const HrlqInstance& inst, GreedyTrace* trace) {
  auto reserved = fill_lower_quotas(inst);
  if (!reserved) return std::nullopt;
  std::vector<int> owner(inst.num_residents(), kUnmatched);
  for (int h = 0; h < inst.num_hospitals(); ++h)
    for (int r : (*reserved)[h]) owner[r] = h;

  int step = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (int h = 0; h < inst.num_hospitals(); ++h) {
      auto& mine = (*reserved)[h];
      if (mine.empty()) continue;
      auto worst = std::max_element(mine.begin(), mine.end(), [&](int a, int b) {
        return inst.hospital_rank(h, a) < inst.hospital_rank(h, b);
      });
      const PrefList& prefs = inst.hospital(h).prefs;
      for (int k = 0; k < inst.hospital_rank(h, *worst); ++k) {
        int r = prefs[k];
        if (owner[r] != kUnmatched) continue;
        if (trace) trace->push_back({step, *worst, r, h});
        ++step;
        owner[*worst] = kUnmatched;
        owner[r] = h;
        *worst = r;
        changed = true;
        break;
      }
    }
  }
  for (auto& mine : *reserved) std::sort(mine.begin(), mine.end());
  return reserved;
}

HrlqResult hrlq_approx(const HrlqInstance& inst, GreedyTrace* trace) {
  Assignment stable;
  if (all_stable_is_feasible(inst, stable)) return make_hrlq_result(inst, stable, Algorithm::HrlqApprox, true);
  auto reserved = reserve_lower_quotas(inst, trace);
  if (!reserved) return hrlq_infeasible(inst, Algorithm::HrlqApprox);

  // I': reserved residents removed, hospitals keep upper - lower places;
  // hospitals without places are dropped.
  Assignment out(inst.num_residents());
  for (int h = 0; h < inst.num_hospitals(); ++h)
    for (int r : (*reserved)[h]) out.hospital_of_resident[r] = h;
  std::vector<int> new_index(inst.num_hospitals(), kUnmatched), old_index;
  for (int h = 0; h < inst.num_hospitals(); ++h) {
    if (inst.hospital(h).upper - inst.hospital(h).lower > 0) {
      new_index[h] = static_cast<int>(old_index.size());
      old_index.push_back(h);
    }
  }
  std::vector<PrefList> residents(inst.num_residents());
  for (int r = 0; r < inst.num_residents(); ++r) {
    if (out.hospital_of_resident[r] != kUnmatched) continue;
    for (int h : inst.resident_list(r))
      if (new_index[h] != kUnmatched) residents[r].push_back(new_index[h]);
  }
  std::vector<Hospital> hospitals;
  for (int h : old_index) {
    Hospital hp;
    hp.upper = inst.hospital(h).upper - inst.hospital(h).lower;
    for (int r : inst.hospital(h).prefs)
      if (out.hospital_of_resident[r] == kUnmatched) hp.prefs.push_back(r);
    hospitals.push_back(std::move(hp));
  }
  Assignment rest = gale_shapley_hr(HrlqInstance(std::move(residents), std::move(hospitals)));
  for (int r = 0; r < inst.num_residents(); ++r)
    if (rest.hospital_of_resident[r] != kUnmatched) out.hospital_of_resident[r] = old_index[rest.hospital_of_resident[r]];

  HrlqResult res = make_hrlq_result(inst, std::move(out), Algorithm::HrlqApprox, false);
  // The stable assignment is infeasible, so every feasible one has a blocking pair.
  res.optimal = res.blocking_count() <= 1;
  return res;
}

std::optional<Matching> smc_cover_greedy(const SmcInstance& inst, GreedyTrace* trace) {
  auto cover = cover_distinguished(inst);
  if (!cover) return std::nullopt;
  Matching& m = *cover;
  const int nm = inst.num_men();
  std::vector<int> pivots;
  for (int w : inst.star_women()) pivots.push_back(nm + w);
  for (int x : inst.star_men()) pivots.push_back(x);
  auto is_star = [&](int v) { return v < nm ? inst.is_star_man(v) : inst.is_star_woman(v - nm); };
  auto partner = [&](int v) {
    if (v < nm) {
      int w = m.partner_of_man(v);
      return w == kUnmatched ? kUnmatched : nm + w;
    }
    return m.partner_of_woman(v - nm);
  };

  int step = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (int x : pivots) {
      int p = partner(x);
      if (p == kUnmatched || is_star(p)) continue;  // x in U*
      const PrefList& l = x < nm ? inst.man_list(x) : inst.woman_list(x - nm);
      for (int other : l) {
        int y = x < nm ? nm + other : other;
        if (y == p) break;  // only partners x prefers to p
        int q = partner(y);
        if (q != kUnmatched && is_star(q)) continue;
        bool y_prefers = x < nm ? inst.woman_prefers(y - nm, x, m.partner_of_woman(y - nm))
                                : inst.man_prefers(y, x - nm, m.partner_of_man(y));
        if (!y_prefers) continue;
        if (trace) trace->push_back({step, p, y, x});
        ++step;
        if (x < nm) {
          m.match(x, y - nm);
        } else {
          m.match(y, x - nm);
        }
        changed = true;
        break;
      }
    }
  }
  return m;
}

SolveResult smc_approx(const SmcInstance& inst, GreedyTrace* trace) {
  Matching stable = gale_shapley(inst, ProposalSide::MenPropose);
  if (is_feasible(inst, stable)) return make_result(inst, std::move(stable), Algorithm::SmcApprox, true);
  auto mq = smc_cover_greedy(inst, trace);
  if (!mq) return make_infeasible(inst, Algorithm::SmcApprox);

  std::vector<char> removed(inst.num_edges(), 0);
  for (int e = 0; e < inst.num_edges(); ++e) {
    const Edge& edge = inst.edges()[e];
    if (mq->partner_of_man(edge.man) != kUnmatched || mq->partner_of_woman(edge.woman) != kUnmatched) removed[e] = 1;
  }
  Matching out = *mq;
  Matching rest = gale_shapley(inst, ProposalSide::MenPropose, removed);
  for (const Edge& e : rest.pairs()) out.match(e.man, e.woman);

  SolveResult res = make_result(inst, std::move(out), Algorithm::SmcApprox, false);
  res.optimal = res.blocking_count() <= 1;
  return res;
}

int hrlq_bound(const HrlqInstance& inst) { return std::max(0, inst.delta_r() - 1) * inst.lower_sum(); }

int smc_bound(const SmcInstance& inst) {
  ParamProfile p = param_profile(inst);
  return std::max(0, p.delta_w - 1) * p.n_star_men + std::max(0, p.delta_m - 1) * p.n_star_women;
}

HrlqBudgetedResult hrlq_guess_delete(const HrlqInstance& inst, int b, int threads) {
  if (b < 0) throw PreconditionError("budget must be nonnegative");
  if (!fill_lower_quotas(inst)) return hrlq_infeasible(inst, Algorithm::HrlqGuessDelete);
  const int n = inst.num_edges();
  auto feasible = [&](const std::vector<char>& removed) {
    return is_feasible_hrlq(inst, gale_shapley_hr(inst, removed));
  };
  for (int s = 0; s <= std::min(b, n); ++s) {
    if (auto combo = first_deletion_set(n, s, threads, feasible)) {
      std::vector<char> removed(n, 0);
      for (int e : *combo) removed[e] = 1;
      return make_hrlq_result(inst, gale_shapley_hr(inst, removed), Algorithm::HrlqGuessDelete, true);
    }
  }
  return NoSolutionWithin{b};
}

HrlqResult hrlq_min_guess_delete(const HrlqInstance& inst, int threads) {
  // Sizes are tried in increasing order, and deleting the blocking pairs of
  // an optimal assignment always succeeds.
  return solution(hrlq_guess_delete(inst, inst.num_edges(), threads));
}

HrlqBudgetedResult hrlq_constant_dispatch(const HrlqInstance& inst, int b, int threads) {
  if (b < 0) throw PreconditionError("budget must be nonnegative");
  if (b >= hrlq_bound(inst)) return hrlq_approx(inst);
  return hrlq_guess_delete(inst, b, threads);
}

BudgetedResult smc_constant_dispatch(const SmcInstance& inst, int b, int threads) {
  if (b < 0) throw PreconditionError("budget must be nonnegative");
  if (b >= smc_bound(inst)) return smc_approx(inst);
  return solve_guess_delete(inst, b, threads);
}

bool is_no_solution(const HrlqBudgetedResult& r) { return std::holds_alternative<NoSolutionWithin>(r); }
const HrlqResult& solution(const HrlqBudgetedResult& r) { return std::get<HrlqResult>(r); }

}  // namespace smc
