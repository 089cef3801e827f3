#include "smc/delta2.hpp"

#include <algorithm>
#include <map>

#include "smc/bipartite.hpp"
#include "smc/stable.hpp"

namespace smc {

namespace {

bool masked(const std::vector<char>& mask, int i) { return !mask.empty() && mask[i]; }

bool edge_forbidden(const SmcInstance& inst, const Delta2Options& opt, int man, int woman) {
  return !opt.forbidden_edges.empty() && opt.forbidden_edges[inst.edge_id(man, woman)];
}

void check_short_men(const SmcInstance& inst) {
  for (int m = 0; m < inst.num_men(); ++m)
    if (inst.man_list(m).size() > 2) throw PreconditionError("every man's list must have length at most 2");
}

void fill_costs(const SmcInstance& inst, const Matching& ms, AugPath& p) {
  Matching m = apply_paths(ms, {p});
  p.cost = 0;
  p.special_cost = 0;
  for (const Edge& e : blocking_pairs(inst, m)) {
    ++p.cost;
    if (!is_special(inst, ms, e.man, e.woman)) ++p.special_cost;
  }
}

struct Search {
  const SmcInstance& inst;
  const Matching& ms;
  const Delta2Options& opt;
  std::vector<char> on_path_men;
  std::vector<AugPath> out;
  AugPath cur;

  void record(bool in_m0) {
    AugPath p = cur;
    p.ends_in_m0 = in_m0;
    fill_costs(inst, ms, p);
    out.push_back(std::move(p));
  }

  void from_woman(int x) {
    for (int m : inst.woman_list(x)) {
      if (m == ms.partner_of_woman(x) || on_path_men[m] || masked(opt.forbidden_men, m)) continue;
      if (edge_forbidden(inst, opt, m, x)) continue;
      int next = ms.partner_of_man(m);
      cur.seq.push_back(m);
      if (next == kUnmatched) {
        if (!inst.is_star_man(m)) record(true);
      } else if (!masked(opt.forbidden_women, next) && !edge_forbidden(inst, opt, m, next)) {
        on_path_men[m] = 1;
        cur.seq.push_back(next);
        if (!inst.is_star_woman(next)) record(false);
        from_woman(next);
        cur.seq.pop_back();
        on_path_men[m] = 0;
      }
      cur.seq.pop_back();
    }
  }
};

bool lex_better(const AugPath& a, const AugPath& b) {
  if (a.special_cost != b.special_cost) return a.special_cost < b.special_cost;
  return a.seq < b.seq;
}

}  // namespace

bool is_special(const SmcInstance& inst, const Matching& ms, int man, int woman) {
  const PrefList& l = inst.man_list(man);
  return ms.partner_of_man(man) == kUnmatched && l.size() == 2 && l[1] == woman;
}

Matching apply_paths(const Matching& ms, const std::vector<AugPath>& paths) {
  Matching m = ms;
  for (const AugPath& p : paths) {
    // Unmatch first so that a path ending at a woman leaves her single.
    for (std::size_t i = 1; i + 1 < p.seq.size(); i += 2) m.unmatch_man(p.seq[i]);
    for (std::size_t i = 0; i + 1 < p.seq.size(); i += 2) m.match(p.seq[i + 1], p.seq[i]);
  }
  return m;
}

std::vector<AugPath> enumerate_aug_paths(const SmcInstance& inst, const Matching& ms, int start,
                                         const Delta2Options& opt) {
  Search s{inst, ms, opt, std::vector<char>(inst.num_men(), 0), {}, {}};
  s.cur.start = start;
  s.cur.seq = {start};
  if (ms.partner_of_woman(start) == kUnmatched && !masked(opt.forbidden_women, start)) s.from_woman(start);
  return s.out;
}

PathGraph build_path_graph(const SmcInstance& inst, const std::vector<int>& starts,
                           const std::vector<std::vector<AugPath>>& paths) {
  PathGraph g;
  g.left = static_cast<int>(starts.size());
  g.right = inst.num_men() + g.left;
  for (int i = 0; i < g.left; ++i) {
    std::map<int, const AugPath*> best;  // right vertex -> cheapest path
    for (const AugPath& p : paths[i]) {
      int r = p.ends_in_m0 ? p.end() : inst.num_men() + i;
      auto it = best.find(r);
      if (it == best.end() || lex_better(p, *it->second)) best[r] = &p;
    }
    for (const auto& [r, p] : best) g.arcs.push_back({i, r, *p});
  }
  return g;
}

std::optional<std::vector<AugPath>> delta2_paths(const SmcInstance& inst, const Matching& ms,
                                                 const Delta2Options& opt, Delta2Stats* stats) {
  check_short_men(inst);
  std::vector<std::vector<AugPath>> all;
  for (int w : opt.starts) all.push_back(enumerate_aug_paths(inst, ms, w, opt));
  PathGraph pg = build_path_graph(inst, opt.starts, all);

  WeightedGraph wg{pg.left, pg.right, {}};
  for (const auto& a : pg.arcs) wg.edges.push_back({a.left, a.right, a.path.special_cost});
  std::vector<int> cover(pg.left);
  for (int i = 0; i < pg.left; ++i) cover[i] = i;
  auto cm = min_weight_cover_matching(wg, cover);
  if (!cm) return std::nullopt;

  std::vector<AugPath> act;
  for (int i = 0; i < pg.left; ++i)
    for (const auto& a : pg.arcs)
      if (a.left == i && a.right == cm->left_partner[i]) act.push_back(a.path);

  // Remove blocking special pairs by rerouting the path through w* to m*.
  for (bool changed = true; changed;) {
    changed = false;
    Matching cur = apply_paths(ms, act);
    for (const Edge& e : inst.edges()) {
      if (!is_special(inst, ms, e.man, e.woman) || !is_blocking(inst, cur, e.man, e.woman)) continue;
      if (masked(opt.forbidden_men, e.man) || inst.is_star_man(e.man) || edge_forbidden(inst, opt, e.man, e.woman))
        continue;
      for (AugPath& p : act) {
        auto pos = std::find(p.seq.begin(), p.seq.end(), e.woman);
        // Women sit at even positions; a man with the same index is not her.
        while (pos != p.seq.end() && (pos - p.seq.begin()) % 2 != 0) pos = std::find(pos + 1, p.seq.end(), e.woman);
        if (pos == p.seq.end()) continue;
        p.seq.erase(pos + 1, p.seq.end());
        p.seq.push_back(e.man);
        p.ends_in_m0 = true;
        fill_costs(inst, ms, p);
        if (stats) ++stats->truncations;
        changed = true;
        break;
      }
      if (changed) break;
    }
  }
  return act;
}

SolveResult solve_delta2(const SmcInstance& inst, Delta2Stats* stats) {
  check_short_men(inst);
  if (!inst.star_men().empty()) throw PreconditionError("distinguished men are not supported here");
  Matching ms = gale_shapley(inst, ProposalSide::MenPropose);
  Delta2Options opt;
  for (int w : inst.star_women())
    if (ms.partner_of_woman(w) == kUnmatched) opt.starts.push_back(w);
  auto paths = delta2_paths(inst, ms, opt, stats);
  if (!paths) return make_infeasible(inst, Algorithm::Delta2);
  return make_result(inst, apply_paths(ms, *paths), Algorithm::Delta2, true);
}

SolveResult solve_delta2_swapped(const SmcInstance& inst, const std::vector<char>& forbidden_men,
                                 const std::vector<char>& forbidden_women, const std::vector<char>& forbidden_edges) {
  for (int w = 0; w < inst.num_women(); ++w)
    if (inst.woman_list(w).size() > 2) throw PreconditionError("every woman's list must have length at most 2");
  Matching ms = gale_shapley(inst, ProposalSide::MenPropose);
  for (int w : inst.star_women())
    if (ms.partner_of_woman(w) == kUnmatched && !masked(forbidden_women, w))
      throw PreconditionError("uncovered distinguished women must be forbidden");

  SmcInstance sw = inst.swapped();
  Matching mss = Matching::from_partners(ms.women(), ms.men());
  Delta2Options opt;
  opt.forbidden_men = forbidden_women;
  opt.forbidden_women = forbidden_men;
  if (!forbidden_edges.empty()) {
    opt.forbidden_edges.assign(sw.num_edges(), 0);
    for (int e = 0; e < inst.num_edges(); ++e)
      if (forbidden_edges[e]) opt.forbidden_edges[sw.edge_id(inst.edges()[e].woman, inst.edges()[e].man)] = 1;
  }
  for (int m : inst.star_men())
    if (ms.partner_of_man(m) == kUnmatched && !masked(forbidden_men, m)) opt.starts.push_back(m);
  auto paths = delta2_paths(sw, mss, opt);
  if (!paths) return make_infeasible(inst, Algorithm::Delta2Swapped);
  Matching out = apply_paths(mss, *paths);
  bool restricted = !forbidden_men.empty() || !forbidden_women.empty() || !forbidden_edges.empty();
  return make_result(inst, Matching::from_partners(out.women(), out.men()), Algorithm::Delta2Swapped, !restricted);
}

}  // namespace smc
