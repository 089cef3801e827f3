#include "smc/bipartite.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>

namespace smc {

BipartiteGraph BipartiteGraph::from_instance(const SmcInstance& inst) {
  BipartiteGraph g(inst.num_men(), inst.num_women());
  for (int m = 0; m < inst.num_men(); ++m)
    for (int w : inst.man_list(m)) g.add_edge(m, w);
  return g;
}

BipartiteMatching max_matching(const BipartiteGraph& g) {
  constexpr int kInf = std::numeric_limits<int>::max();
  BipartiteMatching res{std::vector<int>(g.left, kUnmatched), std::vector<int>(g.right, kUnmatched), 0};
  std::vector<int> dist(g.left);
  std::vector<std::size_t> it(g.left);

  auto bfs = [&] {
    std::queue<int> q;
    bool found = false;
    for (int u = 0; u < g.left; ++u) {
      if (res.left_partner[u] == kUnmatched) {
        dist[u] = 0;
        q.push(u);
      } else {
        dist[u] = kInf;
      }
    }
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : g.adj[u]) {
        int w = res.right_partner[v];
        if (w == kUnmatched) {
          found = true;
        } else if (dist[w] == kInf) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  };

  // Iterative DFS along the BFS layers.
  auto dfs = [&](int root) {
    std::vector<int> stack{root};
    std::vector<int> via;  // right vertex used to reach stack[i+1]
    while (!stack.empty()) {
      int u = stack.back();
      if (it[u] == g.adj[u].size()) {
        dist[u] = kInf;
        stack.pop_back();
        if (!via.empty()) via.pop_back();
        continue;
      }
      int v = g.adj[u][it[u]++];
      int w = res.right_partner[v];
      if (w == kUnmatched) {
        via.push_back(v);
        for (std::size_t i = 0; i < stack.size(); ++i) {
          res.left_partner[stack[i]] = via[i];
          res.right_partner[via[i]] = stack[i];
        }
        return true;
      }
      if (dist[w] == dist[u] + 1) {
        via.push_back(v);
        stack.push_back(w);
      }
    }
    return false;
  };

  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    for (int u = 0; u < g.left; ++u)
      if (res.left_partner[u] == kUnmatched && dfs(u)) ++res.size;
  }
  return res;
}

std::optional<Matching> cover_distinguished(const SmcInstance& inst) {
  // Vertices: men 0..nm-1, women nm..nm+nw-1.
  const int nm = inst.num_men(), n = inst.num_persons();
  auto neighbours = [&](int v) -> std::vector<int> {
    std::vector<int> out;
    if (v < nm) {
      for (int w : inst.man_list(v)) out.push_back(nm + w);
    } else {
      for (int m : inst.woman_list(v - nm)) out.push_back(m);
    }
    return out;
  };
  std::vector<int> mate(n, kUnmatched);
  std::vector<char> required(n, 0);
  std::vector<int> order;
  for (int w : inst.star_women()) order.push_back(nm + w);
  for (int m : inst.star_men()) order.push_back(m);

  for (int root : order) {
    if (mate[root] != kUnmatched) {
      required[root] = 1;
      continue;
    }
    // Alternating BFS; an augmentation may end at an unmatched vertex or
    // strip the partner of a vertex that is not required.
    std::vector<int> parent(n, -2);
    parent[root] = -1;
    std::queue<int> q;
    q.push(root);
    int end = -1;
    bool strip = false;
    while (!q.empty() && end < 0) {
      int x = q.front();
      q.pop();
      for (int y : neighbours(x)) {
        if (parent[y] != -2) continue;
        parent[y] = x;
        if (mate[y] == kUnmatched) {
          end = y;
          break;
        }
        int z = mate[y];
        if (parent[z] != -2) continue;
        parent[z] = y;
        if (!required[z]) {
          end = y;
          strip = true;
          break;
        }
        q.push(z);
      }
    }
    if (end < 0) return std::nullopt;
    if (strip) {
      int z = mate[end];
      mate[z] = kUnmatched;
      mate[end] = kUnmatched;
    }
    int cur = end;
    while (true) {
      int x = parent[cur];
      int next = mate[x];
      mate[x] = cur;
      mate[cur] = x;
      if (x == root) break;
      cur = next;
    }
    required[root] = 1;
  }

  Matching out(inst.num_men(), inst.num_women());
  for (int m = 0; m < nm; ++m) {
    if (mate[m] == kUnmatched) continue;
    int w = mate[m] - nm;
    if (inst.is_star_man(m) || inst.is_star_woman(w)) out.match(m, w);
  }
  return out;
}

std::optional<CoverMatching> min_weight_cover_matching(const WeightedGraph& g, std::span<const int> must_cover) {
  using ll = long long;
  constexpr ll kInf = std::numeric_limits<ll>::max() / 4;
  // Keep the cheapest edge per pair.
  std::map<std::pair<int, int>, ll> best;
  for (const WeightedEdge& e : g.edges) {
    if (e.weight < 0) throw PreconditionError("min_weight_cover_matching: negative weight");
    auto key = std::make_pair(e.left, e.right);
    auto it = best.find(key);
    if (it == best.end() || e.weight < it->second) best[key] = e.weight;
  }
  std::vector<std::vector<std::pair<int, ll>>> adj(g.left);
  for (const auto& [key, w] : best) adj[key.first].emplace_back(key.second, w);

  std::vector<ll> pot_l(g.left, 0), pot_r(g.right, 0);
  std::vector<int> mate_l(g.left, kUnmatched), mate_r(g.right, kUnmatched);
  std::vector<ll> mate_w(g.right, 0);
  CoverMatching res;

  for (int root : must_cover) {
    if (mate_l[root] != kUnmatched) continue;
    std::vector<ll> dist_l(g.left, kInf), dist_r(g.right, kInf);
    std::vector<int> prev_r(g.right, -1);  // left vertex preceding right vertex
    std::vector<char> done_l(g.left, 0), done_r(g.right, 0);
    using Item = std::pair<ll, int>;  // (dist, vertex); right vertices encoded as -(v+1)
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist_l[root] = 0;
    pq.emplace(0, root);
    int target = -1;
    while (!pq.empty()) {
      auto [d, code] = pq.top();
      pq.pop();
      if (code >= 0) {
        int u = code;
        if (done_l[u] || d != dist_l[u]) continue;
        done_l[u] = 1;
        for (auto [v, w] : adj[u]) {
          if (mate_l[u] == v) continue;
          ll nd = d + w + pot_l[u] - pot_r[v];
          if (nd < dist_r[v]) {
            dist_r[v] = nd;
            prev_r[v] = u;
            pq.emplace(nd, -(v + 1));
          }
        }
      } else {
        int v = -code - 1;
        if (done_r[v] || d != dist_r[v]) continue;
        done_r[v] = 1;
        if (mate_r[v] == kUnmatched) {
          target = v;
          break;
        }
        int u = mate_r[v];
        ll nd = d - mate_w[v] + pot_r[v] - pot_l[u];
        if (nd < dist_l[u]) {
          dist_l[u] = nd;
          pq.emplace(nd, u);
        }
      }
    }
    if (target < 0) return std::nullopt;
    ll limit = dist_r[target];
    for (int u = 0; u < g.left; ++u) pot_l[u] += std::min(dist_l[u], limit);
    for (int v = 0; v < g.right; ++v) pot_r[v] += std::min(dist_r[v], limit);
    int v = target;
    while (v >= 0) {
      int u = prev_r[v];
      int next = mate_l[u];
      ll w = 0;
      for (auto [vv, ww] : adj[u])
        if (vv == v) w = ww;
      mate_l[u] = v;
      mate_r[v] = u;
      mate_w[v] = w;
      v = u == root ? -1 : next;
    }
  }
  res.left_partner = mate_l;
  for (int v = 0; v < g.right; ++v)
    if (mate_r[v] != kUnmatched) res.weight += mate_w[v];
  return res;
}

}  // namespace smc
