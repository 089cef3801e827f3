#include "smc/exact.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>
#include <unordered_map>

#include "smc/bipartite.hpp"
#include "smc/stable.hpp"

namespace smc {

int oracle_cap() {
  if (const char* env = std::getenv("SMC_ORACLE_CAP")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v < 1000) return static_cast<int>(v);
  }
  return 16;
}

namespace {

class OracleSearch {
 public:
  explicit OracleSearch(const SmcInstance& inst)
      : inst_(inst), pm_(inst.num_men(), kUnmatched), pw_(inst.num_women(), kUnmatched) {
    closing_at_.resize(inst.num_men());
    close_step_.assign(inst.num_women(), -1);
    for (int w = 0; w < inst.num_women(); ++w) {
      for (int m : inst.woman_list(w)) close_step_[w] = std::max(close_step_[w], m);
      if (close_step_[w] >= 0) closing_at_[close_step_[w]].push_back(w);
    }
  }

  bool run() {
    for (int w : inst_.star_women())
      if (inst_.woman_list(w).empty()) return false;
    search(0, 0);
    return best_ < INT_MAX;
  }

  Matching best_matching() const {
    Matching m(inst_.num_men(), inst_.num_women());
    for (int x = 0; x < inst_.num_men(); ++x)
      if (best_pm_[x] != kUnmatched) m.match(x, best_pm_[x]);
    return m;
  }

 private:
  bool blocks(int m, int w) const {
    return inst_.man_prefers(m, w, pm_[m]) && inst_.woman_prefers(w, m, pw_[w]);
  }

  void try_option(int i, int cost) {
    for (int w : closing_at_[i])
      if (inst_.is_star_woman(w) && pw_[w] == kUnmatched) return;
    int delta = 0;
    for (int w : inst_.man_list(i))
      if (close_step_[w] <= i && blocks(i, w)) ++delta;
    for (int w : closing_at_[i])
      for (int m : inst_.woman_list(w))
        if (m < i && blocks(m, w)) ++delta;
    if (cost + delta < best_) search(i + 1, cost + delta);
  }

  void search(int i, int cost) {
    if (i == inst_.num_men()) {
      best_ = cost;
      best_pm_ = pm_;
      return;
    }
    for (int w : inst_.man_list(i)) {
      if (pw_[w] != kUnmatched) continue;
      pm_[i] = w;
      pw_[w] = i;
      try_option(i, cost);
      pm_[i] = kUnmatched;
      pw_[w] = kUnmatched;
    }
    if (!inst_.is_star_man(i)) try_option(i, cost);
  }

  const SmcInstance& inst_;
  std::vector<int> pm_, pw_;
  std::vector<int> close_step_;
  std::vector<std::vector<int>> closing_at_;
  int best_ = INT_MAX;
  std::vector<int> best_pm_;
};

using u64 = unsigned long long;

u64 binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > static_cast<unsigned __int128>(ULLONG_MAX / 2)) return ULLONG_MAX / 2;
  }
  return static_cast<u64>(r);
}

// Lexicographic unranking of s-subsets of {0..n-1}.
std::vector<int> unrank(int n, int s, u64 rank) {
  std::vector<int> c;
  int next = 0;
  for (int i = 0; i < s; ++i) {
    for (int x = next;; ++x) {
      u64 cnt = binom(n - x - 1, s - i - 1);
      if (rank < cnt) {
        c.push_back(x);
        next = x + 1;
        break;
      }
      rank -= cnt;
    }
  }
  return c;
}

bool next_combination(std::vector<int>& c, int n) {
  int s = static_cast<int>(c.size());
  int i = s - 1;
  while (i >= 0 && c[i] == n - s + i) --i;
  if (i < 0) return false;
  ++c[i];
  for (int j = i + 1; j < s; ++j) c[j] = c[j - 1] + 1;
  return true;
}

}  // namespace

std::optional<std::vector<int>> first_deletion_set(int num_edges, int size, int threads, const DeletionTest& test) {
  const int n = num_edges, s = size;
  if (s > n) return std::nullopt;
  const u64 total = binom(n, s);
  auto check = [&](const std::vector<int>& combo, std::vector<char>& removed) {
    for (int e : combo) removed[e] = 1;
    bool ok = test(removed);
    for (int e : combo) removed[e] = 0;
    return ok;
  };
  if (threads <= 1 || total < 1024) {
    std::vector<char> removed(n, 0);
    std::vector<int> combo(s);
    for (int i = 0; i < s; ++i) combo[i] = i;
    do {
      if (check(combo, removed)) return combo;
    } while (next_combination(combo, n));
    return std::nullopt;
  }
  constexpr u64 kBlock = 256;
  std::atomic<u64> next_block{0};
  std::atomic<u64> best{ULLONG_MAX};
  auto worker = [&] {
    std::vector<char> removed(n, 0);
    while (true) {
      u64 start = next_block.fetch_add(1) * kBlock;
      if (start >= total || start >= best.load()) return;
      std::vector<int> combo = unrank(n, s, start);
      for (u64 r = start; r < std::min(total, start + kBlock); ++r) {
        if (check(combo, removed)) {
          u64 cur = best.load();
          while (r < cur && !best.compare_exchange_weak(cur, r)) {
          }
          break;
        }
        next_combination(combo, n);
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (best.load() == ULLONG_MAX) return std::nullopt;
  return unrank(n, s, best.load());
}

namespace {

std::optional<Matching> try_size(const SmcInstance& inst, int s, int threads) {
  auto feasible = [&](const std::vector<char>& removed) {
    return is_feasible(inst, gale_shapley(inst, ProposalSide::MenPropose, removed));
  };
  auto combo = first_deletion_set(inst.num_edges(), s, threads, feasible);
  if (!combo) return std::nullopt;
  std::vector<char> removed(inst.num_edges(), 0);
  for (int e : *combo) removed[e] = 1;
  return gale_shapley(inst, ProposalSide::MenPropose, removed);
}

}  // namespace

SolveResult enumerate_oracle(const SmcInstance& inst) { return enumerate_oracle(inst, oracle_cap()); }

SolveResult enumerate_oracle(const SmcInstance& inst, int cap) {
  if (inst.num_persons() > cap)
    throw SizeCapError("oracle refuses " + std::to_string(inst.num_persons()) + " persons (cap " +
                       std::to_string(cap) + ")");
  OracleSearch search(inst);
  if (!search.run()) return make_infeasible(inst, Algorithm::Enumerate);
  return make_result(inst, search.best_matching(), Algorithm::Enumerate, true);
}

BudgetedResult solve_guess_delete(const SmcInstance& inst, int b, int threads) {
  if (b < 0) throw PreconditionError("budget must be nonnegative");
  if (!cover_distinguished(inst)) return make_infeasible(inst, Algorithm::GuessDelete);
  for (int s = 0; s <= std::min(b, inst.num_edges()); ++s)
    if (auto m = try_size(inst, s, threads)) return make_result(inst, std::move(*m), Algorithm::GuessDelete, true);
  return NoSolutionWithin{b};
}

SolveResult solve_min_guess_delete(const SmcInstance& inst, int threads) {
  if (!cover_distinguished(inst)) return make_infeasible(inst, Algorithm::GuessDelete);
  for (int s = 0;; ++s)
    if (auto m = try_size(inst, s, threads)) return make_result(inst, std::move(*m), Algorithm::GuessDelete, true);
}

bool is_no_solution(const BudgetedResult& r) { return std::holds_alternative<NoSolutionWithin>(r); }
const SolveResult& solution(const BudgetedResult& r) { return std::get<SolveResult>(r); }

namespace {

// Persons as one index space: men 0..nm-1, women nm..
struct UnifiedGraph {
  int nm = 0;
  std::vector<std::vector<int>> nbr;  // in preference order
  std::vector<std::vector<int>> rev;  // rev[v][i] = rank of v in nbr[nbr[v][i]]
  std::vector<char> star;

  explicit UnifiedGraph(const SmcInstance& inst) : nm(inst.num_men()) {
    const int n = inst.num_persons();
    nbr.resize(n);
    rev.resize(n);
    star.assign(n, 0);
    for (int m = 0; m < nm; ++m) {
      for (int w : inst.man_list(m)) nbr[m].push_back(nm + w);
      star[m] = inst.is_star_man(m);
    }
    for (int w = 0; w < inst.num_women(); ++w) {
      for (int m : inst.woman_list(w)) nbr[nm + w].push_back(m);
      star[nm + w] = inst.is_star_woman(w);
    }
    for (int v = 0; v < n; ++v)
      for (int x : nbr[v])
        rev[v].push_back(x < nm ? inst.man_rank(x, v - nm) : inst.woman_rank(x - nm, v));
  }
  int size() const { return static_cast<int>(nbr.size()); }
  int deg(int v) const { return static_cast<int>(nbr[v].size()); }
};

struct Layer {
  std::vector<int> parent;
  std::vector<int> choice;
};

}  // namespace

std::optional<SolveResult> solve_frontier_dp(const SmcInstance& inst, std::span<const int> order,
                                             std::optional<int> cap, std::size_t state_limit,
                                             FrontierStats* stats) {
  UnifiedGraph g(inst);
  const int n = g.size();
  if (static_cast<int>(order.size()) != n) throw PreconditionError("frontier order must list every person once");
  std::vector<int> pos(n, -1);
  for (int t = 0; t < n; ++t) {
    if (order[t] < 0 || order[t] >= n || pos[order[t]] >= 0)
      throw PreconditionError("frontier order must list every person once");
    pos[order[t]] = t;
  }
  std::vector<int> leave(n);
  for (int v = 0; v < n; ++v) {
    leave[v] = pos[v];
    for (int x : g.nbr[v]) leave[v] = std::max(leave[v], pos[x]);
  }

  // One byte per frontier slot when every list is short, which keeps most
  // keys within the small-string buffer.
  int max_deg = 0;
  for (int v = 0; v < n; ++v) max_deg = std::max(max_deg, g.deg(v));
  const bool wide = max_deg >= 255;
  auto enc = [wide](std::string& key, int c) {
    key.push_back(static_cast<char>(c & 0xff));
    if (wide) key.push_back(static_cast<char>(c >> 8));
  };
  auto dec = [wide](const std::string& key, int i) {
    if (!wide) return static_cast<int>(static_cast<unsigned char>(key[i]));
    return static_cast<int>(static_cast<unsigned char>(key[2 * i])) |
           (static_cast<int>(static_cast<unsigned char>(key[2 * i + 1])) << 8);
  };

  // Only the current keys and costs are kept; parents and choices are kept
  // for every layer to rebuild the matching.
  std::vector<Layer> layers(n + 1);
  std::vector<std::string> keys{std::string()};
  std::vector<int> costs{0};
  std::vector<int> frontier;
  std::vector<int> fpos(n, -1);
  FrontierStats local;

  for (int t = 0; t < n; ++t) {
    const int v = order[t];
    Layer& nxt = layers[t + 1];
    std::vector<std::string> next_keys;
    std::vector<int> next_costs;
    std::vector<int> new_frontier;
    for (int u : frontier)
      if (leave[u] > t) new_frontier.push_back(u);
    const bool v_stays = leave[v] > t;
    if (v_stays) new_frontier.push_back(v);

    // Introduced neighbours of v and their index into v's list.
    std::vector<std::pair<int, int>> back;  // (frontier slot, index in v's list)
    for (int i = 0; i < g.deg(v); ++i) {
      int x = g.nbr[v][i];
      if (pos[x] < t) back.emplace_back(fpos[x], i);
    }
    std::unordered_map<std::string, int> seen;
    std::string key;
    for (std::size_t s = 0; s < keys.size(); ++s) {
      const std::string& k = keys[s];
      int forced = -1;
      bool bad = false;
      for (auto [slot, i] : back) {
        if (dec(k, slot) == g.rev[v][i]) {
          if (forced >= 0) bad = true;
          forced = i;
        }
      }
      if (bad) continue;
      // Unintroduced persons already promised to someone on the frontier.
      auto claimed = [&](int x) {
        for (std::size_t f = 0; f < frontier.size(); ++f) {
          int u = frontier[f];
          int c = dec(k, static_cast<int>(f));
          if (c < g.deg(u) && g.nbr[u][c] == x) return true;
        }
        return false;
      };
      auto consider = [&](int c) {
        int cost = costs[s];
        for (auto [slot, i] : back)
          if (g.rev[v][i] < dec(k, slot) && i < c) ++cost;
        if (cap && cost > *cap) return;
        key.clear();
        for (int u : new_frontier) enc(key, u == v ? c : dec(k, fpos[u]));
        auto [it, inserted] = seen.emplace(key, static_cast<int>(next_keys.size()));
        if (inserted) {
          next_keys.push_back(key);
          next_costs.push_back(cost);
          nxt.parent.push_back(static_cast<int>(s));
          nxt.choice.push_back(c);
        } else if (cost < next_costs[it->second]) {
          next_costs[it->second] = cost;
          nxt.parent[it->second] = static_cast<int>(s);
          nxt.choice[it->second] = c;
        }
      };
      if (forced >= 0) {
        consider(forced);
        continue;
      }
      for (int i = 0; i < g.deg(v); ++i) {
        int x = g.nbr[v][i];
        if (pos[x] > t && !claimed(x)) consider(i);
      }
      if (!g.star[v]) consider(g.deg(v));
    }
    for (int u : frontier) fpos[u] = -1;
    frontier = std::move(new_frontier);
    for (std::size_t f = 0; f < frontier.size(); ++f) fpos[frontier[f]] = static_cast<int>(f);
    keys = std::move(next_keys);
    costs = std::move(next_costs);
    local.max_states = std::max(local.max_states, keys.size());
    local.max_frontier = std::max(local.max_frontier, frontier.size());
    if (keys.size() > state_limit)
      throw SizeCapError("frontier DP exceeded " + std::to_string(state_limit) + " states");
  }
  if (stats) *stats = local;
  if (keys.empty()) return std::nullopt;

  std::vector<int> choice(n, -1);
  int s = 0;
  for (int t = n; t > 0; --t) {
    choice[order[t - 1]] = layers[t].choice[s];
    s = layers[t].parent[s];
  }
  Matching m(inst.num_men(), inst.num_women());
  for (int v = 0; v < g.nm; ++v)
    if (choice[v] < g.deg(v)) m.match(v, g.nbr[v][choice[v]] - g.nm);
  return make_result(inst, std::move(m), Algorithm::FrontierDp, true);
}

std::vector<int> frontier_order(const SmcInstance& inst) {
  UnifiedGraph g(inst);
  const int n = g.size();
  if (n == 0) return {};

  auto build = [&](int start, double& width) {
    std::vector<char> in(n, 0), on_front(n, 0);
    std::vector<int> remaining(n), order;
    for (int v = 0; v < n; ++v) remaining[v] = g.deg(v);
    double front_weight = 0;
    width = 0;
    int front_size = 0;
    auto add = [&](int v) {
      in[v] = 1;
      order.push_back(v);
      for (int x : g.nbr[v]) {
        --remaining[x];
        if (in[x] && remaining[x] == 0 && on_front[x]) {
          on_front[x] = 0;
          --front_size;
          front_weight -= std::log2(g.deg(x) + 1.0);
        }
      }
      if (remaining[v] > 0) {
        on_front[v] = 1;
        ++front_size;
        front_weight += std::log2(g.deg(v) + 1.0);
      }
      width = std::max(width, front_weight);
    };
    add(start);
    while (static_cast<int>(order.size()) < n) {
      int best = -1;
      long best_score = LONG_MAX;
      for (int v = 0; v < n; ++v) {
        if (in[v]) continue;
        int touching = 0, closes = 0;
        for (int x : g.nbr[v])
          if (in[x]) {
            ++touching;
            if (remaining[x] == 1) ++closes;
          }
        if (touching == 0 && front_size > 0) continue;
        int opens = remaining[v] - touching > 0 ? 1 : 0;
        long score = (static_cast<long>(opens - closes) * 64 - touching) * 4096 + g.deg(v);
        if (score < best_score) {
          best_score = score;
          best = v;
        }
      }
      if (best < 0) {
        // New component: start from a person of minimum degree.
        for (int v = 0; v < n; ++v)
          if (!in[v] && (best < 0 || g.deg(v) < g.deg(best))) best = v;
      }
      add(best);
    }
    return order;
  };

  std::vector<int> starts(n);
  for (int v = 0; v < n; ++v) starts[v] = v;
  std::stable_sort(starts.begin(), starts.end(), [&](int a, int b) { return g.deg(a) < g.deg(b); });
  const int tries = std::min(n, n <= 120 ? n : 24);
  std::vector<int> best_order;
  double best_width = 1e300;
  for (int i = 0; i < tries; ++i) {
    double width = 0;
    auto ord = build(starts[i], width);
    if (width < best_width) {
      best_width = width;
      best_order = std::move(ord);
    }
  }
  return best_order;
}

std::optional<SolveResult> solve_exact(const SmcInstance& inst, std::optional<int> cap, std::size_t state_limit,
                                       FrontierStats* stats) {
  auto order = frontier_order(inst);
  return solve_frontier_dp(inst, order, cap, state_limit, stats);
}

SolveResult solve_degree2(const SmcInstance& inst) {
  ParamProfile p = param_profile(inst);
  if (p.delta_m > 2 || p.delta_w > 2)
    throw PreconditionError("degree2 solver needs lists of length at most 2 on both sides");
  // Walk each path from an end and each cycle from any vertex, so the DP
  // frontier never holds more than two persons.
  UnifiedGraph g(inst);
  const int n = g.size();
  std::vector<char> seen(n, 0);
  std::vector<int> order;
  auto walk = [&](int v) {
    int prev = -1;
    while (v >= 0 && !seen[v]) {
      seen[v] = 1;
      order.push_back(v);
      int next = -1;
      for (int x : g.nbr[v])
        if (x != prev && !seen[x]) next = x;
      prev = v;
      v = next;
    }
  };
  for (int v = 0; v < n; ++v)
    if (!seen[v] && g.deg(v) <= 1) walk(v);
  for (int v = 0; v < n; ++v)
    if (!seen[v]) walk(v);
  auto r = solve_frontier_dp(inst, order);
  if (!r) return make_infeasible(inst, Algorithm::Degree2);
  r->algorithm = Algorithm::Degree2;
  return *r;
}

}  // namespace smc
