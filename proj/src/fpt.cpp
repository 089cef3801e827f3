#include "smc/fpt.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "smc/bipartite.hpp"
#include "smc/delta2.hpp"
#include "smc/stable.hpp"

namespace smc {

namespace {

struct Unified {
  const SmcInstance& inst;
  int nm;
  explicit Unified(const SmcInstance& i) : inst(i), nm(i.num_men()) {}
  bool is_man(int v) const { return v < nm; }
  int woman(int w) const { return nm + w; }
  bool star(int v) const { return v < nm ? inst.is_star_man(v) : inst.is_star_woman(v - nm); }
  int partner(const Matching& m, int v) const {
    if (v < nm) {
      int w = m.partner_of_man(v);
      return w == kUnmatched ? kUnmatched : nm + w;
    }
    return m.partner_of_woman(v - nm);
  }
  Edge edge(int a, int b) const { return a < nm ? Edge{a, b - nm} : Edge{b, a - nm}; }
};

std::vector<Edge> component_edges(const Unified& u, const Component& c) {
  std::vector<Edge> out;
  for (std::size_t i = 0; i + 1 < c.seq.size(); ++i) out.push_back(u.edge(c.seq[i], c.seq[i + 1]));
  if (c.cycle && c.seq.size() > 2) out.push_back(u.edge(c.seq.back(), c.seq.front()));
  return out;
}

// The woman's other man in her list of length at most 2.
int other_man(const SmcInstance& inst, int w, int man) {
  for (int m : inst.woman_list(w))
    if (m != man) return m;
  return kUnmatched;
}

// Forced alternating walk from a woman through her guessed man: a man moves
// to his M_s partner, a woman to her other man.
struct Walk {
  std::vector<int> seq;  // unified
  int loop_at = -1;      // position of the man the last woman's other man repeats
};

Walk forced_walk(const SmcInstance& inst, const Matching& ms, int w, int first_man) {
  Unified u(inst);
  Walk walk;
  walk.seq = {u.woman(w), first_man};
  std::map<int, int> pos_of_man{{first_man, 1}};
  while (true) {
    int man = walk.seq.back();
    int x = ms.partner_of_man(man);
    if (x == kUnmatched) break;
    walk.seq.push_back(u.woman(x));
    int next = other_man(inst, x, man);
    if (next == kUnmatched) break;
    if (auto it = pos_of_man.find(next); it != pos_of_man.end()) {
      walk.loop_at = it->second;
      break;
    }
    pos_of_man[next] = static_cast<int>(walk.seq.size());
    walk.seq.push_back(next);
  }
  return walk;
}

Component prefix(const std::vector<int>& seq, std::size_t len) { return {{seq.begin(), seq.begin() + len}, false}; }

// Enumerates set partitions of the universe extended by one extra element;
// the blocks not holding the extra element form a family of disjoint sets.
void families(const std::vector<int>& universe, std::size_t i, std::vector<std::vector<int>>& blocks,
              const std::function<void(const std::vector<std::vector<int>>&)>& emit) {
  if (i == universe.size() + 1) {
    std::vector<std::vector<int>> out;
    for (const auto& b : blocks)
      if (b.front() != -1) out.push_back(b);
    emit(out);
    return;
  }
  int x = i == 0 ? -1 : universe[i - 1];
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    blocks[b].push_back(x);
    families(universe, i + 1, blocks, emit);
    blocks[b].pop_back();
  }
  blocks.push_back({x});
  families(universe, i + 1, blocks, emit);
  blocks.pop_back();
}

long long bell(int n) {
  std::vector<std::vector<long long>> t(n + 1, std::vector<long long>(n + 1, 0));
  t[0][0] = 1;
  for (int i = 1; i <= n; ++i) {
    t[i][0] = t[i - 1][i - 1];
    for (int j = 1; j <= i; ++j) t[i][j] = t[i][j - 1] + t[i - 1][j - 1];
  }
  return t[n][0];
}

std::vector<char> vertex_mask(const Unified& u, const std::vector<Component>& comps) {
  std::vector<char> mask(u.inst.num_persons(), 0);
  for (const auto& c : comps)
    for (int v : c.seq) mask[v] = 1;
  return mask;
}

}  // namespace

std::optional<Matching> apply_components(const SmcInstance& inst, const Matching& ms,
                                         const std::vector<Component>& comps) {
  Unified u(inst);
  std::vector<char> seen(inst.num_persons(), 0);
  for (const auto& c : comps)
    for (int v : c.seq) {
      if (seen[v]) return std::nullopt;
      seen[v] = 1;
    }
  Matching m = ms;
  std::vector<Edge> adds;
  for (const auto& c : comps) {
    for (const Edge& e : component_edges(u, c)) {
      if (inst.edge_id(e.man, e.woman) < 0) return std::nullopt;
      if (ms.partner_of_man(e.man) == e.woman) {
        m.unmatch_man(e.man);
      } else {
        adds.push_back(e);
      }
    }
  }
  for (const Edge& e : adds) {
    if (m.partner_of_man(e.man) != kUnmatched || m.partner_of_woman(e.woman) != kUnmatched) return std::nullopt;
    m.match(e.man, e.woman);
  }
  return m;
}

std::vector<Component> difference_components(const SmcInstance& inst, const Matching& ms, const Matching& m) {
  Unified u(inst);
  const int n = inst.num_persons();
  // Each person has at most one M_s edge and one m edge in the difference.
  std::vector<std::vector<int>> adj(n);
  for (int man = 0; man < inst.num_men(); ++man) {
    int a = ms.partner_of_man(man), b = m.partner_of_man(man);
    if (a == b) continue;
    if (a != kUnmatched) {
      adj[man].push_back(u.woman(a));
      adj[u.woman(a)].push_back(man);
    }
    if (b != kUnmatched) {
      adj[man].push_back(u.woman(b));
      adj[u.woman(b)].push_back(man);
    }
  }
  std::vector<char> done(n, 0);
  std::vector<Component> out;
  auto walk_from = [&](int s) {
    Component c;
    int prev = -1, cur = s;
    while (true) {
      c.seq.push_back(cur);
      done[cur] = 1;
      int next = -1;
      for (int x : adj[cur])
        if (x != prev && !done[x]) next = x;
      if (next < 0) {
        c.cycle = adj[cur].size() == 2 && c.seq.size() > 2;
        break;
      }
      prev = cur;
      cur = next;
    }
    return c;
  };
  // Paths from their endpoints first, then the cycles.
  for (int v = 0; v < n; ++v)
    if (!done[v] && adj[v].size() == 1) out.push_back(walk_from(v));
  for (int v = 0; v < n; ++v)
    if (!done[v] && !adj[v].empty()) out.push_back(walk_from(v));
  std::sort(out.begin(), out.end(), [](const Component& a, const Component& b) {
    return *std::min_element(a.seq.begin(), a.seq.end()) < *std::min_element(b.seq.begin(), b.seq.end());
  });
  return out;
}

SmcInstance first_edge_instance(const SmcInstance& inst, const std::vector<int>& stars,
                                const std::vector<WomanGuess>& guess) {
  std::vector<int> drop;
  for (std::size_t i = 0; i < stars.size(); ++i) {
    const PrefList& l = inst.woman_list(stars[i]);
    for (std::size_t k = guess[i].first_edge + 1; k < l.size(); ++k) drop.push_back(inst.edge_id(l[k], stars[i]));
  }
  return inst.without_edges(drop);
}

std::vector<FamilyF> phase1_paths(const SmcInstance& inst, const Matching& ms, const std::vector<int>& stars,
                                  const std::vector<WomanGuess>& guess) {
  Unified u(inst);
  const std::size_t k = stars.size();
  std::vector<Walk> walks(k);
  std::set<int> first_men;
  for (std::size_t i = 0; i < k; ++i) {
    const PrefList& l = inst.woman_list(stars[i]);
    if (guess[i].first_edge >= static_cast<int>(l.size())) return {};
    int man = l[guess[i].first_edge];
    if (!first_men.insert(man).second) return {};
    walks[i] = forced_walk(inst, ms, stars[i], man);
  }
  auto valid_woman_end = [&](const std::vector<int>& seq, std::size_t pos) {
    return pos >= 2 && pos % 2 == 0 && pos < seq.size() && !u.star(seq[pos]);
  };

  // A relying path stops before the first of its men on the other path. The
  // walks may share a cycle, so that man is either the first shared man or
  // the man where the other walk loops back.
  std::vector<std::vector<std::size_t>> cut_options(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (guess[i].kind != PathKind::ReliesOn) continue;
    int y = guess[i].relies_on;
    if (y < 0 || y >= static_cast<int>(k) || y == static_cast<int>(i)) return {};
    const auto& seq = walks[i].seq;
    const auto& other = walks[y].seq;
    std::vector<int> men;
    for (std::size_t p = 1; p < seq.size(); p += 2)
      if (std::find(other.begin(), other.end(), seq[p]) != other.end()) {
        men.push_back(seq[p]);
        break;
      }
    if (walks[y].loop_at >= 0) men.push_back(other[walks[y].loop_at]);
    for (int m : men) {
      auto it = std::find(seq.begin(), seq.end(), m);
      std::size_t p = it - seq.begin();
      if (it != seq.end() && valid_woman_end(seq, p - 1) &&
          std::find(cut_options[i].begin(), cut_options[i].end(), p) == cut_options[i].end())
        cut_options[i].push_back(p);
    }
    if (cut_options[i].empty()) return {};
  }

  std::vector<FamilyF> out;
  std::vector<std::size_t> cut(k, 0);
  std::function<void(std::size_t)> choose = [&](std::size_t i) {
    if (i < k && guess[i].kind == PathKind::ReliesOn) {
      for (std::size_t p : cut_options[i]) {
        cut[i] = p;
        choose(i + 1);
      }
      return;
    }
    if (i < k) {
      choose(i + 1);
      return;
    }

    std::vector<std::optional<Component>> paths(k);
    std::vector<Component> cycles;
    std::vector<std::vector<int>> obligatory(k);
    for (std::size_t j = 0; j < k; ++j) {
      const Walk& w = walks[j];
      switch (guess[j].kind) {
        case PathKind::Cycle: {
          int at = w.loop_at;
          if (at < 3 || !valid_woman_end(w.seq, at - 1)) return;
          paths[j] = prefix(w.seq, at);
          Component c{{w.seq.begin() + at, w.seq.end()}, true};
          if (std::find(cycles.begin(), cycles.end(), c) == cycles.end()) cycles.push_back(c);
          break;
        }
        case PathKind::Neutral: {
          int last = w.seq.back();
          if (!u.is_man(last) || ms.partner_of_man(last) != kUnmatched || !u.star(last)) return;
          paths[j] = Component{w.seq, false};
          break;
        }
        case PathKind::ReliesOn:
          paths[j] = prefix(w.seq, cut[j]);
          obligatory[guess[j].relies_on].push_back(w.seq[cut[j]]);
          break;
        case PathKind::Q1:
        case PathKind::Q2:
          break;
      }
    }

    for (std::size_t j = 0; j < k; ++j) {
      if (guess[j].kind != PathKind::Q1 && guess[j].kind != PathKind::Q2) continue;
      const auto& seq = walks[j].seq;
      std::size_t need = 0;
      for (int m : obligatory[j]) {
        auto it = std::find(seq.begin(), seq.end(), m);
        if (it == seq.end()) return;
        need = std::max<std::size_t>(need, it - seq.begin());
      }
      auto valid_end = [&](std::size_t pos) {
        if (pos + 1 == seq.size() && u.is_man(seq[pos]))
          return ms.partner_of_man(seq[pos]) == kUnmatched && !u.star(seq[pos]);
        return valid_woman_end(seq, pos);
      };
      auto blocking_of = [&](std::size_t pos) {
        return count_blocking_pairs(inst, *apply_components(inst, ms, {prefix(seq, pos + 1)}));
      };
      std::size_t q1 = need;
      while (q1 < seq.size() && !valid_end(q1)) ++q1;
      if (q1 >= seq.size()) return;
      std::size_t end = q1;
      if (guess[j].kind == PathKind::Q2) {
        int base = blocking_of(q1);
        std::size_t q2 = q1 + 1;
        while (q2 < seq.size() && !(valid_end(q2) && blocking_of(q2) < base)) ++q2;
        if (q2 >= seq.size()) return;
        end = q2;
      }
      paths[j] = prefix(seq, end + 1);
    }

    for (std::size_t y = 0; y < k; ++y)
      for (int m : obligatory[y])
        if (std::find(paths[y]->seq.begin(), paths[y]->seq.end(), m) == paths[y]->seq.end()) return;

    FamilyF f;
    for (auto& p : paths) f.comps.push_back(std::move(*p));
    for (auto& c : cycles) f.comps.push_back(std::move(c));
    auto applied = apply_components(inst, ms, f.comps);
    if (!applied) return;
    f.applied = std::move(*applied);
    out.push_back(std::move(f));
  };
  choose(0);
  return out;
}

std::vector<DependentEdge> classify_dependent(const SmcInstance& inst, const Matching& ms, const Matching& m) {
  Unified u(inst);
  auto comps = difference_components(inst, ms, m);
  std::vector<int> comp_of(inst.num_persons(), -1);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (int v : comps[c].seq) comp_of[v] = static_cast<int>(c);
  auto is_path_end = [&](int c, int v) {
    return !comps[c].cycle && (comps[c].seq.front() == v || comps[c].seq.back() == v);
  };
  auto blocking_with = [&](const std::vector<int>& which) {
    std::vector<Component> sel;
    for (int c : which) sel.push_back(comps[c]);
    return count_blocking_pairs(inst, *apply_components(inst, ms, sel));
  };

  std::vector<DependentEdge> out;
  for (const Edge& e : inst.edges()) {
    int cm = comp_of[e.man], cw = comp_of[u.woman(e.woman)];
    if (cm < 0 || cw < 0 || cm == cw) continue;
    int man = e.man, w = e.woman;
    int ms_m = ms.partner_of_man(man), opt_m = m.partner_of_man(man);
    int opt_w = m.partner_of_woman(w);
    std::optional<DependentEdge> d;
    // Type A: w ends the supporting path; the man's component relies on it.
    if (is_path_end(cw, u.woman(w)) && ms.partner_of_woman(w) == kUnmatched && inst.man_prefers(man, ms_m, w) &&
        inst.man_prefers(man, w, opt_m) && inst.woman_prefers(w, opt_w, man))
      d = DependentEdge{e, DependentKind::TypeA, cm, cw};
    // Type B: w ends the relying path and is single in m.
    else if (is_path_end(cw, u.woman(w)) && opt_w == kUnmatched && inst.man_prefers(man, opt_m, w) &&
             inst.man_prefers(man, w, ms_m))
      d = DependentEdge{e, DependentKind::TypeB, cw, cm};
    if (d && blocking_with({d->relying}) > blocking_with({d->relying, d->supporting})) out.push_back(*d);
  }
  return out;
}

bool is_volatile(const SmcInstance& inst, const Matching& ms, int man, int woman) {
  const PrefList& l = inst.woman_list(woman);
  return ms.partner_of_woman(woman) == kUnmatched && l.size() == 2 && l[1] == man;
}

std::optional<Component> volatile_path(const SmcInstance& inst, const Matching& ms, const Edge& f,
                                       const std::vector<char>& forbidden) {
  Unified u(inst);
  int w = f.woman;
  if (forbidden[u.woman(w)] || inst.woman_list(w).empty()) return std::nullopt;
  std::vector<int> back{u.woman(w)};
  std::set<int> seen{u.woman(w)};
  int man = inst.woman_list(w)[0];
  while (true) {
    if (forbidden[man] || !seen.insert(man).second) return std::nullopt;
    back.push_back(man);
    int x = ms.partner_of_man(man);
    if (x == kUnmatched) {
      if (!inst.is_star_man(man)) return std::nullopt;
      break;
    }
    if (forbidden[u.woman(x)] || !seen.insert(u.woman(x)).second) return std::nullopt;
    back.push_back(u.woman(x));
    man = other_man(inst, x, man);
    if (man == kUnmatched) return std::nullopt;
  }
  std::reverse(back.begin(), back.end());
  return Component{back, false};
}

std::optional<std::vector<Component>> elimination_paths(const SmcInstance& inst, const Matching& ms,
                                                        const std::vector<char>& forbidden, const Edge& f) {
  auto first = volatile_path(inst, ms, f, forbidden);
  if (!first) return std::nullopt;
  std::vector<Component> set{*first};
  for (std::size_t i = 0; i < set.size(); ++i) {
    Matching m = *apply_components(inst, ms, {set[i]});
    for (const Edge& e : blocking_pairs(inst, m)) {
      if (!is_volatile(inst, ms, e.man, e.woman)) continue;
      auto q = volatile_path(inst, ms, e, forbidden);
      if (!q) return std::nullopt;
      if (std::find(set.begin(), set.end(), *q) == set.end()) set.push_back(*q);
    }
  }
  return set;
}

std::optional<Matching> phase2_assemble(const SmcInstance& inst, const Matching& ms, const FamilyF& family,
                                        const std::vector<std::vector<int>>& elimination_sets) {
  Unified u(inst);
  std::vector<char> forbidden = vertex_mask(u, family.comps);
  std::vector<int> open_men;  // uncovered distinguished men not on F
  for (int m : inst.star_men())
    if (ms.partner_of_man(m) == kUnmatched && !forbidden[m]) open_men.push_back(m);

  std::vector<Component> elim;
  std::set<int> in_sets;
  if (!elimination_sets.empty()) {
    // Candidate volatile edges with their elimination paths.
    struct Option {
      Edge f;
      std::vector<Component> paths;
      std::vector<int> starts;
      int blocking = 0;
    };
    std::vector<Option> options;
    for (const Edge& e : inst.edges()) {
      if (!is_volatile(inst, ms, e.man, e.woman) || !is_blocking(inst, family.applied, e.man, e.woman)) continue;
      auto paths = elimination_paths(inst, ms, forbidden, e);
      if (!paths) continue;
      std::vector<Component> all = family.comps;
      all.insert(all.end(), paths->begin(), paths->end());
      auto m = apply_components(inst, ms, all);
      if (!m) continue;
      Option o{e, *paths, {}, count_blocking_pairs(inst, *m)};
      for (const auto& p : *paths) o.starts.push_back(p.seq.front());
      std::sort(o.starts.begin(), o.starts.end());
      options.push_back(std::move(o));
    }
    for (const auto& r : elimination_sets) {
      std::vector<int> want = r;
      std::sort(want.begin(), want.end());
      const Option* best = nullptr;
      for (const auto& o : options)
        if (o.starts == want && (!best || o.blocking < best->blocking)) best = &o;
      if (!best) return std::nullopt;
      elim.insert(elim.end(), best->paths.begin(), best->paths.end());
      in_sets.insert(want.begin(), want.end());
    }
  }
  for (int m : in_sets)
    if (std::find(open_men.begin(), open_men.end(), m) == open_men.end()) return std::nullopt;

  std::vector<Component> all = family.comps;
  all.insert(all.end(), elim.begin(), elim.end());
  if (!apply_components(inst, ms, all)) return std::nullopt;

  // Remaining men: the one-sided solver with the sides exchanged.
  Delta2Options opt;
  for (int m : open_men)
    if (!in_sets.count(m)) opt.starts.push_back(m);
  if (!opt.starts.empty()) {
    std::vector<char> used = vertex_mask(u, all);
    SmcInstance sw = inst.swapped();
    Matching mss = Matching::from_partners(ms.women(), ms.men());
    opt.forbidden_women.assign(used.begin(), used.begin() + u.nm);
    opt.forbidden_men.assign(used.begin() + u.nm, used.end());
    auto paths = delta2_paths(sw, mss, opt);
    if (!paths) return std::nullopt;
    for (const AugPath& p : *paths) {
      Component c;
      for (std::size_t i = 0; i < p.seq.size(); ++i) c.seq.push_back(i % 2 == 0 ? p.seq[i] : u.woman(p.seq[i]));
      all.push_back(std::move(c));
    }
  }
  return apply_components(inst, ms, all);
}

long long fpt_guess_count(int women, int men) {
  long long per_woman = 2LL * (women + 3);
  long long n = 1;
  for (int i = 0; i < women; ++i) n *= per_woman;
  return n * bell(men + 1);
}

SolveResult solve_fpt(const SmcInstance& inst, FptStats* stats, int threads) {
  for (int w = 0; w < inst.num_women(); ++w)
    if (inst.woman_list(w).size() > 2) throw PreconditionError("every woman's list must have length at most 2");
  Matching ms = gale_shapley(inst, ProposalSide::MenPropose);
  std::vector<int> stars, star_men;
  for (int w : inst.star_women())
    if (ms.partner_of_woman(w) == kUnmatched) stars.push_back(w);
  for (int m : inst.star_men())
    if (ms.partner_of_man(m) == kUnmatched) star_men.push_back(m);
  FptStats local;
  local.parameter = static_cast<int>(stars.size() + star_men.size());
  if (!cover_distinguished(inst)) {
    if (stats) *stats = local;
    return make_infeasible(inst, Algorithm::Fpt);
  }

  const int k = static_cast<int>(stars.size());
  std::vector<WomanGuess> options;
  for (int fe = 0; fe < 2; ++fe) {
    for (PathKind kind : {PathKind::Cycle, PathKind::Neutral, PathKind::Q1, PathKind::Q2})
      options.push_back({fe, kind, -1});
    for (int y = 0; y < k; ++y) options.push_back({fe, PathKind::ReliesOn, y});
  }
  // options has 2(k+4) entries; ReliesOn on oneself is skipped (and counted)
  // so that every woman has 2(k+3) real choices.
  std::vector<std::vector<std::vector<int>>> fams;
  {
    std::vector<std::vector<int>> blocks;
    families(star_men, 0, blocks, [&](const auto& f) { fams.push_back(f); });
  }

  long long total = 1;
  for (int i = 0; i < k; ++i) total *= static_cast<long long>(options.size());
  std::atomic<long long> next{0}, guesses{0}, candidates{0};
  std::mutex mu;
  std::optional<Matching> best;
  int best_count = 0;

  auto worker = [&] {
    while (true) {
      long long idx = next.fetch_add(1);
      if (idx >= total) return;
      std::vector<WomanGuess> guess(k);
      bool self_reliance = false;
      long long rest = idx;
      for (int i = 0; i < k; ++i) {
        guess[i] = options[rest % options.size()];
        rest /= static_cast<long long>(options.size());
        if (guess[i].kind == PathKind::ReliesOn && guess[i].relies_on == i) self_reliance = true;
      }
      if (self_reliance) continue;
      guesses += static_cast<long long>(fams.size());
      SmcInstance i1 = first_edge_instance(inst, stars, guess);
      for (const FamilyF& family : phase1_paths(i1, ms, stars, guess)) {
        for (const auto& fam : fams) {
          auto m = phase2_assemble(i1, ms, family, fam);
          if (!m || !is_feasible(inst, *m)) continue;
          ++candidates;
          int c = count_blocking_pairs(inst, *m);
          std::lock_guard lock(mu);
          if (!best || c < best_count || (c == best_count && m->pairs() < best->pairs())) {
            best = *m;
            best_count = c;
          }
        }
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  local.guesses = guesses;
  local.candidates = candidates;
  if (stats) *stats = local;
  if (!best) return make_infeasible(inst, Algorithm::Fpt);
  return make_result(inst, std::move(*best), Algorithm::Fpt, true);
}

SolveResult solve_fpt_b(const SmcInstance& inst, FptStats* stats, int threads) {
  FptStats local;
  SolveResult r = solve_fpt(inst, &local, threads);
  if (!r.infeasible && local.parameter > 2 * r.blocking_count())
    throw std::logic_error("parameter exceeds twice the optimum");
  if (stats) *stats = local;
  return r;
}

}  // namespace smc
