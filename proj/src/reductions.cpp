#include "smc/reductions.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "smc/exact.hpp"
#include "smc/io.hpp"

namespace smc {

namespace {

// Persons are declared by name; lists refer to names and are resolved at build time.
class Builder {
 public:
  Builder() = default;
  explicit Builder(const SmcInstance& inst) {
    for (int w = 0; w < inst.num_women(); ++w) add_woman(inst.woman_name(w), inst.is_star_woman(w));
    for (int m = 0; m < inst.num_men(); ++m) add_man(inst.man_name(m), inst.is_star_man(m));
    for (int w = 0; w < inst.num_women(); ++w)
      for (int m : inst.woman_list(w)) wl_[w].push_back(inst.man_name(m));
    for (int m = 0; m < inst.num_men(); ++m)
      for (int w : inst.man_list(m)) ml_[m].push_back(inst.woman_name(w));
  }

  void add_woman(const std::string& name, bool star = false) { add(name, star, wn_, wi_, wl_, ws_); }
  void add_man(const std::string& name, bool star = false) { add(name, star, mn_, mi_, ml_, ms_); }
  void woman_list(const std::string& w, std::vector<std::string> men) { wl_[index(wi_, w)] = std::move(men); }
  void man_list(const std::string& m, std::vector<std::string> women) { ml_[index(mi_, m)] = std::move(women); }
  std::vector<std::string>& woman_list_ref(const std::string& w) { return wl_[index(wi_, w)]; }
  std::vector<std::string>& man_list_ref(const std::string& m) { return ml_[index(mi_, m)]; }
  void set_star_woman(const std::string& w, bool star) { ws_[index(wi_, w)] = star; }

  // `base` with primes appended until it is unused on both sides.
  std::string fresh(std::string base) const {
    while (wi_.count(base) || mi_.count(base)) base += '\'';
    return base;
  }

  SmcInstance build(int budget) const {
    std::vector<PrefList> men(mn_.size()), women(wn_.size());
    for (std::size_t m = 0; m < mn_.size(); ++m)
      for (const auto& w : ml_[m]) men[m].push_back(index(wi_, w));
    for (std::size_t w = 0; w < wn_.size(); ++w)
      for (const auto& m : wl_[w]) women[w].push_back(index(mi_, m));
    std::vector<int> sw, sm;
    for (std::size_t w = 0; w < wn_.size(); ++w)
      if (ws_[w]) sw.push_back(static_cast<int>(w));
    for (std::size_t m = 0; m < mn_.size(); ++m)
      if (ms_[m]) sm.push_back(static_cast<int>(m));
    SmcInstance inst(std::move(men), std::move(women), std::move(sw), std::move(sm), budget);
    inst.set_names(mn_, wn_);
    return inst;
  }

 private:
  using Index = std::unordered_map<std::string, int>;
  static int index(const Index& idx, const std::string& name) {
    auto it = idx.find(name);
    if (it == idx.end()) throw std::logic_error("reduction refers to unknown person '" + name + "'");
    return it->second;
  }
  void add(const std::string& name, bool star, std::vector<std::string>& names, Index& idx,
           std::vector<std::vector<std::string>>& lists, std::vector<char>& stars) {
    if (wi_.count(name) || mi_.count(name)) throw ValidationError("duplicate person name '" + name + "'");
    idx.emplace(name, static_cast<int>(names.size()));
    names.push_back(name);
    lists.emplace_back();
    stars.push_back(star);
  }

  std::vector<std::string> wn_, mn_;
  Index wi_, mi_;
  std::vector<std::vector<std::string>> wl_, ml_;
  std::vector<char> ws_, ms_;
};

std::string hat(const std::string& w) { return w + "^"; }
std::string dummy(const std::string& w) { return w + "~"; }
std::string str(int i) { return std::to_string(i); }

ReductionOutput finish(const Builder& b, int budget, ReductionKind kind) {
  ReductionOutput out{b.build(budget), budget, kind, {}};
  return out;
}

// Partner of each woman in the hat matching, where hats exist.
Matching hat_matching(const ReductionOutput& out) {
  const SmcInstance& inst = out.instance;
  Matching m(inst.num_men(), inst.num_women());
  std::unordered_map<std::string, int> men;
  for (int x = 0; x < inst.num_men(); ++x) men.emplace(inst.man_name(x), x);
  for (int w = 0; w < inst.num_women(); ++w)
    if (auto it = men.find(hat(inst.woman_name(w))); it != men.end()) m.match(it->second, w);
  return m;
}

// Flips an alternating path given as woman, man, woman, man, ... by names.
void flip_path(const ReductionOutput& out, Matching& m, const std::vector<std::string>& seq) {
  for (std::size_t i = 0; i + 1 < seq.size(); i += 2) m.match(out.man(seq[i + 1]), out.woman(seq[i]));
}

// Neighbours sorted by vertex position.
std::vector<std::vector<int>> neighbour_lists(int n, const std::vector<std::pair<int, int>>& edges,
                                              const std::vector<int>& pos) {
  std::vector<std::vector<int>> nb(n);
  for (auto [u, v] : edges) {
    nb[u].push_back(v);
    nb[v].push_back(u);
  }
  for (auto& l : nb) std::sort(l.begin(), l.end(), [&](int a, int b) { return pos[a] < pos[b]; });
  return nb;
}

void check_simple(int n, const std::vector<std::pair<int, int>>& edges) {
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw ValidationError("edge endpoint out of range");
    if (u == v) throw ValidationError("self-loop on a vertex");
    if (!seen.insert(std::minmax(u, v)).second) throw ValidationError("duplicate edge");
  }
}

// Line-based source formats.
struct SrcLine {
  int no = 0;
  std::vector<std::pair<std::string, int>> toks;  // text, column
};

std::vector<SrcLine> split_lines(std::string_view text) {
  std::vector<SrcLine> out;
  int no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    ++no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    SrcLine line{no, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      std::size_t start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i > start) line.toks.emplace_back(std::string(raw.substr(start, i - start)), static_cast<int>(start) + 1);
    }
    if (!line.toks.empty()) out.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

int to_int(const std::pair<std::string, int>& tok, int line) {
  int v = 0;
  const std::string& t = tok.first;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size())
    throw ParseError(line, tok.second, "expected an integer, got '" + t + "'");
  return v;
}

// Reads `edge u v` lines against a vertex index.
void read_edge(const SrcLine& l, const std::unordered_map<std::string, int>& idx,
               std::vector<std::pair<int, int>>& edges) {
  if (l.toks.size() != 3) throw ParseError(l.no, l.toks[0].second, "expected 'edge u v'");
  int ends[2];
  for (int i = 0; i < 2; ++i) {
    auto it = idx.find(l.toks[i + 1].first);
    if (it == idx.end()) throw ParseError(l.no, l.toks[i + 1].second, "unknown vertex '" + l.toks[i + 1].first + "'");
    ends[i] = it->second;
  }
  edges.emplace_back(ends[0], ends[1]);
}

}  // namespace

int ReductionOutput::man(std::string_view name) const {
  const auto& names = instance.man_names();
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw std::out_of_range("no man named '" + std::string(name) + "'");
  return static_cast<int>(it - names.begin());
}

int ReductionOutput::woman(std::string_view name) const {
  const auto& names = instance.woman_names();
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw std::out_of_range("no woman named '" + std::string(name) + "'");
  return static_cast<int>(it - names.begin());
}

Graph Graph::with_vertices(int n) {
  Graph g;
  for (int i = 1; i <= n; ++i) g.names.push_back(str(i));
  return g;
}

ColoredGraph parse_colored_graph(std::string_view text) {
  ColoredGraph g;
  std::unordered_map<std::string, int> idx;
  std::vector<const SrcLine*> edge_lines;
  auto lines = split_lines(text);
  for (const SrcLine& l : lines) {
    const auto& head = l.toks[0];
    if (head.first == "part") {
      if (l.toks.size() < 2 || l.toks[1].first.back() != ':')
        throw ParseError(l.no, head.second, "expected 'part NAME: v ...'");
      std::vector<int> part;
      for (std::size_t i = 2; i < l.toks.size(); ++i) {
        const auto& [name, col] = l.toks[i];
        if (!idx.emplace(name, g.num_vertices()).second) throw ParseError(l.no, col, "vertex '" + name + "' repeated");
        part.push_back(g.num_vertices());
        g.names.push_back(name);
      }
      g.parts.push_back(std::move(part));
    } else if (head.first == "edge") {
      edge_lines.push_back(&l);
    } else {
      throw ParseError(l.no, head.second, "expected 'part' or 'edge'");
    }
  }
  for (const SrcLine* l : edge_lines) read_edge(*l, idx, g.edges);
  return g;
}

Graph parse_graph(std::string_view text) {
  Graph g;
  std::unordered_map<std::string, int> idx;
  auto lines = split_lines(text);
  auto vertex = [&](const std::string& name) {
    if (idx.emplace(name, g.num_vertices()).second) g.names.push_back(name);
  };
  for (const SrcLine& l : lines) {
    const auto& head = l.toks[0];
    if (head.first == "vertices:") {
      for (std::size_t i = 1; i < l.toks.size(); ++i) vertex(l.toks[i].first);
    } else if (head.first == "edge") {
      if (l.toks.size() == 3) {
        vertex(l.toks[1].first);
        vertex(l.toks[2].first);
      }
      read_edge(l, idx, g.edges);
    } else {
      throw ParseError(l.no, head.second, "expected 'vertices:' or 'edge'");
    }
  }
  return g;
}

X3cInstance parse_x3c(std::string_view text) {
  X3cInstance x;
  bool have_universe = false;
  for (const SrcLine& l : split_lines(text)) {
    const auto& head = l.toks[0];
    if (head.first == "universe") {
      if (l.toks.size() != 2 || have_universe) throw ParseError(l.no, head.second, "expected one 'universe n' line");
      x.n = to_int(l.toks[1], l.no);
      if (x.n < 0) throw ParseError(l.no, l.toks[1].second, "universe size must be nonnegative");
      have_universe = true;
    } else if (head.first == "set:") {
      std::vector<int> s;
      for (std::size_t i = 1; i < l.toks.size(); ++i) s.push_back(to_int(l.toks[i], l.no));
      x.sets.push_back(std::move(s));
    } else {
      throw ParseError(l.no, head.second, "expected 'universe' or 'set:'");
    }
  }
  if (!have_universe) throw ParseError(1, 1, "missing 'universe n' line");
  return x;
}

std::optional<std::vector<int>> find_multicolored_clique(const ColoredGraph& g) {
  std::set<std::pair<int, int>> adj;
  for (auto [u, v] : g.edges) adj.insert(std::minmax(u, v));
  std::vector<int> pick;
  auto rec = [&](auto&& self, int i) -> bool {
    if (i == g.num_parts()) return true;
    for (int v : g.parts[i]) {
      bool ok = true;
      for (int u : pick) ok = ok && adj.count(std::minmax(u, v));
      if (!ok) continue;
      pick.push_back(v);
      if (self(self, i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  if (rec(rec, 0)) return pick;
  return std::nullopt;
}

std::optional<std::vector<int>> find_vertex_cover(const Graph& g, int k) {
  const int n = g.num_vertices();
  if (n > 24) throw SizeCapError("vertex cover brute force is limited to 24 vertices");
  std::optional<std::vector<int>> best;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) > k) continue;
    bool ok = true;
    for (auto [u, v] : g.edges) ok = ok && (((mask >> u) & 1) || ((mask >> v) & 1));
    if (!ok) continue;
    if (!best || std::popcount(mask) < static_cast<int>(best->size())) {
      best.emplace();
      for (int v = 0; v < n; ++v)
        if ((mask >> v) & 1) best->push_back(v);
    }
  }
  return best;
}

std::optional<std::vector<int>> find_exact_cover(const X3cInstance& x) {
  std::vector<char> covered(x.n + 1, 0);
  std::vector<int> chosen;
  auto rec = [&](auto&& self) -> bool {
    int first = 1;
    while (first <= x.n && covered[first]) ++first;
    if (first > x.n) return true;
    for (int j = 0; j < static_cast<int>(x.sets.size()); ++j) {
      const auto& s = x.sets[j];
      if (std::find(s.begin(), s.end(), first) == s.end()) continue;
      bool ok = true;
      for (int e : s) ok = ok && !covered[e];
      if (!ok) continue;
      for (int e : s) covered[e] = 1;
      chosen.push_back(j);
      if (self(self)) return true;
      chosen.pop_back();
      for (int e : s) covered[e] = 0;
    }
    return false;
  };
  if (rec(rec)) return chosen;
  return std::nullopt;
}

namespace {

// Shared layout of the clique construction.
struct CliqueLayout {
  int k = 0;
  int b = 0;
  std::vector<int> part_of, pos;
  std::vector<std::vector<int>> nb;
  // Edges per part pair (i < j), each stored with its earlier endpoint first.
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> pair_edges;

  explicit CliqueLayout(const ColoredGraph& g, int k_) : k(k_) {
    const int n = g.num_vertices();
    if (k != g.num_parts()) throw ValidationError("k must equal the number of parts");
    if (k < 1) throw ValidationError("need at least one part");
    part_of.assign(n, -1);
    pos.assign(n, -1);
    int p = 0;
    for (int i = 0; i < k; ++i) {
      if (g.parts[i].empty()) throw ValidationError("part " + str(i + 1) + " is empty");
      for (int v : g.parts[i]) {
        if (v < 0 || v >= n || part_of[v] >= 0) throw ValidationError("parts must partition the vertices");
        part_of[v] = i;
        pos[v] = p++;
      }
    }
    if (p != n) throw ValidationError("parts must partition the vertices");
    check_simple(n, g.edges);
    for (auto [u, v] : g.edges)
      if (part_of[u] == part_of[v]) throw ValidationError("edge inside a part");
    nb = neighbour_lists(n, g.edges, pos);
    for (int v = 0; v < n; ++v)
      if (nb[v].empty()) throw ValidationError("vertex '" + g.names[v] + "' is isolated");
    b = 2 * k + k * (k - 1) / 2;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) pair_edges[{i, j}];
    for (auto [u, v] : g.edges) {
      if (pos[u] > pos[v]) std::swap(u, v);
      pair_edges[{part_of[u], part_of[v]}].emplace_back(u, v);
    }
    for (auto& [key, list] : pair_edges)
      std::sort(list.begin(), list.end(),
                [&](auto a, auto c) { return std::pair(pos[a.first], pos[a.second]) < std::pair(pos[c.first], pos[c.second]); });
  }

  int deg(int v) const { return static_cast<int>(nb[v].size()); }
  int index_of(int x, int y) const {  // h with y = n(x, h)
    return static_cast<int>(std::find(nb[x].begin(), nb[x].end(), y) - nb[x].begin()) + 1;
  }
};

struct CliqueNames {
  const ColoredGraph& g;
  const CliqueLayout& L;
  std::string A(int x) const { return "a[" + g.names[x] + "]"; }
  std::string B(int x, int h) const {
    if (h == 0) return A(x);
    if (h == L.deg(x) + 1) return C(x, 1);
    return "b[" + g.names[x] + "," + str(h) + "]";
  }
  std::string C(int x, int h) const { return h == 0 ? B(x, L.deg(x)) : "c[" + g.names[x] + "," + str(h) + "]"; }
  std::string S(int i) const { return "s[" + str(i + 1) + "]"; }
  std::string T(int i) const { return "t[" + str(i + 1) + "]"; }
  std::string U(int i, int h) const { return "u[" + str(i + 1) + "," + str(h) + "]"; }
  std::string S2(int i, int j) const { return "s[" + str(i + 1) + "," + str(j + 1) + "]"; }
  std::string T2(int i, int j) const { return "t[" + str(i + 1) + "," + str(j + 1) + "]"; }
  std::string AE(std::pair<int, int> e) const { return "a[" + g.names[e.first] + "|" + g.names[e.second] + "]"; }
  std::string BE(int x, int y) const { return "b[" + g.names[x] + ">" + g.names[y] + "]"; }
};

}  // namespace

ReductionOutput reduce_multicolored_clique(const ColoredGraph& g, int k) {
  CliqueLayout L(g, k);
  CliqueNames N{g, L};
  const int b = L.b;
  Builder bl;

  // Women first, then hats in the same order, then dummies.
  std::vector<std::string> hatted, dummied;
  auto woman = [&](const std::string& w, bool star, bool has_hat) {
    bl.add_woman(w, star);
    if (has_hat) hatted.push_back(w);
  };
  for (int i = 0; i < k; ++i) {
    woman(N.S(i), true, false);
    woman(N.T(i), true, true);
    for (int h = 1; h <= b + 1; ++h) woman(N.U(i, h), true, true);
    for (int x : g.parts[i]) {
      woman(N.A(x), false, true);
      for (int h = 1; h <= L.deg(x); ++h) {
        woman(N.B(x, h), false, true);
        dummied.push_back(N.B(x, h));
      }
      for (int h = 1; h <= b + 1; ++h) woman(N.C(x, h), false, true);
      dummied.push_back(N.C(x, b + 1));
    }
  }
  for (const auto& [key, list] : L.pair_edges) {
    auto [i, j] = key;
    woman(N.S2(i, j), true, false);
    woman(N.T2(i, j), true, true);
    for (auto e : list) {
      woman(N.AE(e), false, true);
      woman(N.BE(e.first, e.second), false, true);
      woman(N.BE(e.second, e.first), false, true);
      dummied.push_back(N.BE(e.second, e.first));
    }
  }
  for (const auto& w : hatted) bl.add_man(hat(w));
  for (const auto& w : dummied) {
    bl.add_man(dummy(w));
    bl.man_list(dummy(w), {w});
  }

  // Node selecting gadgets.
  for (int i = 0; i < k; ++i) {
    const auto& V = g.parts[i];
    const int last = V.back();
    for (std::size_t p = 0; p < V.size(); ++p) {
      const int x = V[p];
      const bool is_first = p == 0, is_last = p + 1 == V.size();
      const int suc = is_last ? -1 : V[p + 1], pre = is_first ? -1 : V[p - 1];
      const int d = L.deg(x);
      bl.woman_list(N.A(x), {hat(is_last ? N.T(i) : N.A(suc)), hat(N.A(x)), hat(N.B(x, 1))});
      bl.man_list(hat(N.A(x)), {N.A(x), is_first ? N.S(i) : N.A(pre)});
      for (int h = 1; h <= d; ++h) {
        bl.woman_list(N.B(x, h), {hat(N.B(x, h)), hat(N.B(x, h + 1)), dummy(N.B(x, h))});
        bl.man_list(hat(N.B(x, h)), {N.B(x, h - 1), N.BE(x, L.nb[x][h - 1]), N.B(x, h)});
      }
      for (int h = 1; h <= b + 1; ++h) {
        std::string next = is_last ? hat(N.U(i, h)) : hat(N.C(suc, h));
        std::string third = h <= b ? hat(N.C(x, h + 1)) : dummy(N.C(x, h));
        bl.woman_list(N.C(x, h), {hat(N.C(x, h)), next, third});
        if (is_first)
          bl.man_list(hat(N.C(x, h)), {N.C(x, h - 1), N.C(x, h)});
        else
          bl.man_list(hat(N.C(x, h)), {N.C(x, h - 1), N.C(pre, h), N.C(x, h)});
      }
    }
    bl.woman_list(N.S(i), {hat(N.A(V.front()))});
    bl.woman_list(N.T(i), {hat(N.T(i))});
    bl.man_list(hat(N.T(i)), {N.T(i), N.A(last)});
    for (int h = 1; h <= b + 1; ++h) {
      bl.woman_list(N.U(i, h), {hat(N.U(i, h))});
      bl.man_list(hat(N.U(i, h)), {N.C(last, h), N.U(i, h)});
    }
  }

  // Edge selecting gadgets.
  for (const auto& [key, list] : L.pair_edges) {
    auto [i, j] = key;
    const std::string s = N.S2(i, j), t = N.T2(i, j);
    for (std::size_t p = 0; p < list.size(); ++p) {
      const auto e = list[p];
      const auto [x, y] = e;
      const std::string a = N.AE(e), bxy = N.BE(x, y), byx = N.BE(y, x);
      bl.woman_list(a, {hat(p + 1 == list.size() ? t : N.AE(list[p + 1])), hat(a), hat(bxy)});
      bl.man_list(hat(a), {a, p == 0 ? s : N.AE(list[p - 1])});
      bl.woman_list(bxy, {hat(bxy), hat(N.B(x, L.index_of(x, y))), hat(byx)});
      bl.woman_list(byx, {hat(byx), hat(N.B(y, L.index_of(y, x))), dummy(byx)});
      bl.man_list(hat(bxy), {a, bxy});
      bl.man_list(hat(byx), {bxy, byx});
    }
    if (!list.empty()) bl.woman_list(s, {hat(N.AE(list.front()))});
    bl.woman_list(t, {hat(t)});
    if (list.empty())
      bl.man_list(hat(t), {t});
    else
      bl.man_list(hat(t), {t, N.AE(list.back())});
  }
  return finish(bl, b, ReductionKind::MulticoloredClique);
}

Matching clique_witness(const ReductionOutput& out, const ColoredGraph& g, const std::vector<int>& clique) {
  CliqueLayout L(g, g.num_parts());
  CliqueNames N{g, L};
  if (static_cast<int>(clique.size()) != L.k) throw PreconditionError("clique needs one vertex per part");
  Matching m = hat_matching(out);
  for (int i = 0; i < L.k; ++i) {
    const int xi = clique[i];
    std::vector<std::string> seq{N.S(i)};
    for (int v : g.parts[i]) {
      seq.push_back(hat(N.A(v)));
      seq.push_back(N.A(v));
      if (v == xi) break;
    }
    for (int h = 1; h <= L.deg(xi); ++h) {
      seq.push_back(hat(N.B(xi, h)));
      seq.push_back(N.B(xi, h));
    }
    seq.push_back(dummy(N.B(xi, L.deg(xi))));
    flip_path(out, m, seq);
  }
  for (const auto& [key, list] : L.pair_edges) {
    auto [i, j] = key;
    std::pair<int, int> target = std::minmax(clique[i], clique[j], [&](int a, int c) { return L.pos[a] < L.pos[c]; });
    std::vector<std::string> seq{N.S2(i, j)};
    bool found = false;
    for (auto e : list) {
      seq.push_back(hat(N.AE(e)));
      seq.push_back(N.AE(e));
      if (e == target) {
        found = true;
        break;
      }
    }
    if (!found) throw PreconditionError("clique vertices are not adjacent");
    auto [x, y] = target;
    for (const auto& p : {hat(N.BE(x, y)), N.BE(x, y), hat(N.BE(y, x)), N.BE(y, x), dummy(N.BE(y, x))}) seq.push_back(p);
    flip_path(out, m, seq);
  }
  return m;
}

namespace {

// Distinguished women of a base instance, each with exactly one acceptable man.
std::vector<int> single_choice_stars(const SmcInstance& inst) {
  for (int w : inst.star_women())
    if (inst.woman_list(w).size() != 1)
      throw ValidationError("distinguished woman '" + inst.woman_name(w) + "' must have exactly one acceptable man");
  return inst.star_women();
}

}  // namespace

ReductionOutput reduce_forcing_gadget(const ReductionOutput& in) {
  const SmcInstance& base = in.instance;
  std::vector<int> stars = single_choice_stars(base);
  Builder bl(base);
  const std::string s = bl.fresh("s"), t = bl.fresh("t");
  bl.add_woman(s, true);
  bl.add_man(t);
  std::vector<std::pair<std::string, std::string>> extra{{s, t}};
  std::vector<std::string> y;
  for (int wi : stars) {
    const std::string w = base.woman_name(wi), n = base.man_name(base.woman_list(wi)[0]);
    const std::string a = "a@" + w, b = "b@" + w, c = "c@" + w, d = "d@" + w;
    const std::string a1 = "a'@" + w, b1 = "b'@" + w, c1 = "c'@" + w, d1 = "d'@" + w;
    for (const auto& x : {a, b, c, d}) bl.add_woman(x);
    for (const auto& x : {a1, b1, c1, d1}) bl.add_man(x);
    bl.set_star_woman(w, false);
    bl.woman_list(a, {b1, t, a1});
    bl.man_list(a1, {a, d});
    bl.woman_list(b, {c1, b1});
    bl.man_list(b1, {b, w, a});
    bl.woman_list(c, {d1, t, c1});
    bl.man_list(c1, {c, b});
    bl.woman_list(d, {a1, d1});
    bl.man_list(d1, {d, w, c});
    bl.woman_list(w, {n, b1, d1});
    y.push_back(a);
    y.push_back(c);
    extra.insert(extra.end(), {{a, b1}, {b, c1}, {c, d1}, {d, a1}});
  }
  bl.woman_list(s, {t});
  y.push_back(s);
  bl.man_list(t, y);
  ReductionOutput out = finish(bl, in.budget, ReductionKind::ForcingGadget);
  out.extra_pairs = std::move(extra);
  return out;
}

ReductionOutput reduce_two_women_masterlist(const ReductionOutput& in) {
  const SmcInstance& base = in.instance;
  std::vector<int> stars = single_choice_stars(base);
  if (auto order = master_list(base, Side::Woman)) {
    std::vector<int> pos(base.num_women());
    for (std::size_t p = 0; p < order->size(); ++p) pos[(*order)[p]] = static_cast<int>(p);
    std::sort(stars.begin(), stars.end(), [&](int a, int b) { return pos[a] < pos[b]; });
  }
  Builder bl(base);
  const std::string z1 = bl.fresh("z1"), z2 = bl.fresh("z2"), m1 = bl.fresh("m1"), m2 = bl.fresh("m2");
  bl.add_woman(z1, true);
  bl.add_woman(z2, true);
  bl.add_man(m1);
  bl.add_man(m2);
  std::vector<std::string> star_names;
  for (int w : stars) {
    star_names.push_back(base.woman_name(w));
    bl.set_star_woman(base.woman_name(w), false);
    auto& l = bl.woman_list_ref(base.woman_name(w));
    l.push_back(m1);
    l.push_back(m2);
  }
  bl.woman_list(z1, {m1});
  bl.woman_list(z2, {m2});
  star_names.push_back(z1);
  bl.man_list(m1, star_names);
  star_names.back() = z2;
  bl.man_list(m2, star_names);
  ReductionOutput out = finish(bl, in.budget, ReductionKind::TwoWomen);
  out.extra_pairs = {{z1, m1}, {z2, m2}};
  return out;
}

Matching lift_witness(const ReductionOutput& lifted, const ReductionOutput& base, const Matching& m) {
  Matching out(lifted.instance.num_men(), lifted.instance.num_women());
  for (const Edge& e : m.pairs())
    out.match(lifted.man(base.instance.man_name(e.man)), lifted.woman(base.instance.woman_name(e.woman)));
  for (const auto& [w, x] : lifted.extra_pairs) out.match(lifted.man(x), lifted.woman(w));
  return out;
}

namespace {

struct CoverNames {
  const Graph& g;
  std::string S(int x) const { return "s[" + g.names[x] + "]"; }
  std::string A(int x, int h) const { return "a[" + g.names[x] + "," + str(h) + "]"; }
  std::string Bm(int x, int h) const { return "b[" + g.names[x] + "," + str(h) + "]"; }
  std::string C(int x, int h) const { return "c[" + g.names[x] + "," + str(h) + "]"; }
  std::string D(int x) const { return "d[" + g.names[x] + "]"; }
  std::string SE(int x, int y) const { return "s[" + g.names[x] + "|" + g.names[y] + "]"; }
  std::string AE(int x, int y) const { return "a[" + g.names[x] + ">" + g.names[y] + "]"; }
  std::string BE(int x, int y) const { return "b[" + g.names[x] + ">" + g.names[y] + "]"; }
};

std::vector<std::vector<int>> vertex_order_neighbours(const Graph& g) {
  std::vector<int> pos(g.num_vertices());
  std::iota(pos.begin(), pos.end(), 0);
  return neighbour_lists(g.num_vertices(), g.edges, pos);
}

}  // namespace

ReductionOutput reduce_vertex_cover(const Graph& g, int k) {
  const int n = g.num_vertices();
  check_simple(n, g.edges);
  if (k < 0) throw ValidationError("k must be nonnegative");
  auto nb = vertex_order_neighbours(g);
  CoverNames N{g};
  Builder bl;
  auto h_of = [&](int x, int y) { return static_cast<int>(std::find(nb[x].begin(), nb[x].end(), y) - nb[x].begin()) + 1; };

  for (int x = 0; x < n; ++x) {
    const int d = static_cast<int>(nb[x].size());
    bl.add_woman(N.S(x), true);
    for (int h = 0; h <= d; ++h) bl.add_woman(N.A(x, h), h < d);
    bl.add_woman(N.C(x, 1));
    bl.add_woman(N.C(x, 2));
    for (int h = 0; h <= d; ++h) bl.add_man(N.Bm(x, h));
    bl.add_man(N.D(x));
  }
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : g.edges) edges.emplace_back(std::min(u, v), std::max(u, v));
  std::sort(edges.begin(), edges.end());
  for (auto [x, y] : edges) {
    bl.add_woman(N.SE(x, y), true);
    bl.add_woman(N.AE(x, y));
    bl.add_woman(N.AE(y, x));
    bl.add_man(N.BE(x, y));
    bl.add_man(N.BE(y, x));
  }

  for (int x = 0; x < n; ++x) {
    const int d = static_cast<int>(nb[x].size());
    bl.woman_list(N.S(x), {N.Bm(x, 0), N.D(x)});
    bl.man_list(N.Bm(x, 0), {N.A(x, 0), N.S(x)});
    for (int h = 1; h <= d; ++h) bl.man_list(N.Bm(x, h), {N.A(x, h), N.AE(x, nb[x][h - 1]), N.A(x, h - 1)});
    for (int h = 0; h < d; ++h) bl.woman_list(N.A(x, h), {N.Bm(x, h + 1), N.Bm(x, h)});
    bl.woman_list(N.A(x, d), {N.Bm(x, d)});
    bl.woman_list(N.C(x, 1), {N.D(x)});
    bl.woman_list(N.C(x, 2), {N.D(x)});
    bl.man_list(N.D(x), {N.C(x, 1), N.C(x, 2), N.S(x)});
  }
  for (auto [x, y] : edges) {
    bl.woman_list(N.SE(x, y), {N.BE(x, y), N.BE(y, x)});
    for (auto [u, v] : {std::pair(x, y), std::pair(y, x)}) {
      bl.man_list(N.BE(u, v), {N.AE(u, v), N.SE(x, y)});
      bl.woman_list(N.AE(u, v), {N.BE(u, v), N.Bm(u, h_of(u, v))});
    }
  }
  // Each edge gadget keeps one blocking pair in every feasible matching: s[x|y]
  // takes a man whose first choice is then left single. Hence the |E| term.
  return finish(bl, n + static_cast<int>(edges.size()) + k, ReductionKind::VertexCover);
}

Matching vertex_cover_witness(const ReductionOutput& out, const Graph& g, const std::vector<int>& cover) {
  const int n = g.num_vertices();
  auto nb = vertex_order_neighbours(g);
  CoverNames N{g};
  std::vector<char> in(n, 0);
  for (int v : cover) in.at(v) = 1;
  Matching m(out.instance.num_men(), out.instance.num_women());
  auto pair = [&](const std::string& w, const std::string& x) { m.match(out.man(x), out.woman(w)); };
  for (int x = 0; x < n; ++x) {
    const int d = static_cast<int>(nb[x].size());
    if (in[x]) {
      pair(N.S(x), N.D(x));
      for (int h = 0; h <= d; ++h) pair(N.A(x, h), N.Bm(x, h));
    } else {
      pair(N.S(x), N.Bm(x, 0));
      pair(N.C(x, 1), N.D(x));
      for (int h = 0; h < d; ++h) pair(N.A(x, h), N.Bm(x, h + 1));
    }
  }
  for (auto [u, v] : g.edges) {
    const int x = std::min(u, v), y = std::max(u, v);
    if (!in[x] && !in[y]) throw PreconditionError("not a vertex cover");
    if (in[y]) {
      pair(N.SE(x, y), N.BE(y, x));
      pair(N.AE(x, y), N.BE(x, y));
    } else {
      pair(N.SE(x, y), N.BE(x, y));
      pair(N.AE(y, x), N.BE(y, x));
    }
  }
  return m;
}

namespace {

struct X3cNames {
  std::string X(int j) const { return "x[" + str(j) + "]"; }
  std::string S(int j) const { return "s[" + str(j) + "]"; }
  std::string P(int j, int h) const { return "p[" + str(j) + "," + str(h) + "]"; }
  std::string Q(int j) const { return "q[" + str(j) + "]"; }
  std::string A(int i, int j) const { return "a[" + str(i) + "," + str(j) + "]"; }
  std::string B(int i, int j) const { return "b[" + str(i) + "," + str(j) + "]"; }
  std::string T(int j) const { return "t[" + str(j) + "]"; }
  std::string C(int i) const { return "c[" + str(i) + "]"; }
  std::string Y() const { return "y"; }
};

void check_x3c(const X3cInstance& x) {
  if (x.n < 0 || x.n % 3 != 0) throw ValidationError("universe size must be a multiple of 3");
  std::vector<int> occ(x.n + 1, 0);
  for (const auto& s : x.sets) {
    if (s.size() != 3) throw ValidationError("every set needs exactly three elements");
    for (int e : s)
      if (e < 1 || e > x.n) throw ValidationError("set element " + str(e) + " outside the universe");
    if (s[0] == s[1] || s[0] == s[2] || s[1] == s[2]) throw ValidationError("set with a repeated element");
    for (int e : s)
      if (++occ[e] > 3) throw ValidationError("element " + str(e) + " occurs in more than three sets");
  }
}

}  // namespace

ReductionOutput reduce_x3c(const X3cInstance& x) {
  check_x3c(x);
  const int m = static_cast<int>(x.sets.size()), n = x.n;
  X3cNames N;
  Builder bl;
  for (int j = 0; j <= m; ++j) bl.add_woman(N.X(j), j == 0);
  for (int j = 1; j <= m; ++j) {
    bl.add_woman(N.S(j));
    for (int h = 1; h <= 3; ++h) bl.add_woman(N.P(j, h));
    bl.add_woman(N.Q(j));
    for (int i : x.sets[j - 1]) {
      bl.add_woman(N.A(i, j));
      bl.add_woman(N.B(i, j));
    }
  }
  for (int j = 1; j <= m; ++j) {
    bl.add_man(hat(N.X(j)), true);
    for (int h = 1; h <= 3; ++h) bl.add_man(hat(N.P(j, h)));
    bl.add_man(hat(N.Q(j)));
    bl.add_man(N.T(j), true);
    for (int i : x.sets[j - 1]) bl.add_man(hat(N.B(i, j)));
  }
  for (int i = 1; i <= n; ++i) bl.add_man(N.C(i), true);
  bl.add_man(N.Y(), true);

  for (int j = 0; j <= m; ++j) {
    std::vector<std::string> l;
    if (j < m) l.push_back(hat(N.X(j + 1)));
    if (j > 0) l.push_back(hat(N.X(j)));
    if (j == m) l.push_back(N.Y());
    bl.woman_list(N.X(j), l);
  }
  bl.man_list(N.Y(), {N.X(m)});
  std::vector<std::vector<std::string>> c_lists(n + 1);
  for (int j = 1; j <= m; ++j) {
    const auto& set = x.sets[j - 1];
    bl.woman_list(N.S(j), {hat(N.P(j, 3)), hat(N.X(j))});
    bl.woman_list(N.P(j, 1), {hat(N.P(j, 1)), N.T(j)});
    for (int h = 2; h <= 3; ++h) bl.woman_list(N.P(j, h), {hat(N.P(j, h - 1)), hat(N.P(j, h))});
    bl.woman_list(N.Q(j), {hat(N.Q(j)), N.T(j)});
    bl.man_list(hat(N.X(j)), {N.X(j), N.S(j), N.X(j - 1)});
    bl.man_list(N.T(j), {N.P(j, 1), N.Q(j)});
    for (int h = 1; h <= 3; ++h) {
      const int i = set[h - 1];
      bl.woman_list(N.A(i, j), {hat(N.B(i, j)), hat(N.P(j, h))});
      bl.woman_list(N.B(i, j), {hat(N.B(i, j)), N.C(i)});
      bl.man_list(hat(N.P(j, h)), {N.P(j, h), N.A(i, j), h < 3 ? N.P(j, h + 1) : N.S(j)});
      bl.man_list(hat(N.B(i, j)), {N.B(i, j), N.A(i, j)});
      c_lists[i].push_back(N.B(i, j));
    }
    bl.man_list(hat(N.Q(j)), {N.Q(j)});
  }
  for (int i = 1; i <= n; ++i) bl.man_list(N.C(i), c_lists[i]);
  return finish(bl, 2 * m + 2 * n / 3 + 1, ReductionKind::ExactCover);
}

Matching exact_cover_witness(const ReductionOutput& out, const X3cInstance& x, const std::vector<int>& chosen) {
  const int m = static_cast<int>(x.sets.size()), n = x.n;
  X3cNames N;
  std::vector<char> in(m + 1, 0);
  std::vector<int> sigma(n + 1, 0);
  for (int j0 : chosen) {
    in.at(j0 + 1) = 1;
    for (int i : x.sets[j0]) {
      if (sigma[i]) throw PreconditionError("chosen sets overlap");
      sigma[i] = j0 + 1;
    }
  }
  for (int i = 1; i <= n; ++i)
    if (!sigma[i]) throw PreconditionError("chosen sets do not cover the universe");
  const SmcInstance& inst = out.instance;
  Matching mt(inst.num_men(), inst.num_women());
  auto pair = [&](const std::string& w, const std::string& man) { mt.match(out.man(man), out.woman(w)); };
  for (int j = 1; j <= m; ++j) pair(N.X(j - 1), hat(N.X(j)));
  pair(N.X(m), N.Y());
  for (int i = 1; i <= n; ++i) {
    pair(N.B(i, sigma[i]), N.C(i));
    pair(N.A(i, sigma[i]), hat(N.B(i, sigma[i])));
  }
  for (int j = 1; j <= m; ++j) {
    if (in[j]) {
      pair(N.P(j, 1), N.T(j));
      pair(N.P(j, 2), hat(N.P(j, 1)));
      pair(N.P(j, 3), hat(N.P(j, 2)));
      pair(N.S(j), hat(N.P(j, 3)));
    } else {
      pair(N.Q(j), N.T(j));
    }
  }
  const auto& men = inst.man_names();
  for (int w = 0; w < inst.num_women(); ++w) {
    if (mt.partner_of_woman(w) != kUnmatched) continue;
    auto it = std::find(men.begin(), men.end(), hat(inst.woman_name(w)));
    if (it == men.end()) continue;
    int h = static_cast<int>(it - men.begin());
    if (mt.partner_of_man(h) == kUnmatched) mt.match(h, w);
  }
  return mt;
}

bool verify_reduction(const ReductionOutput& out, bool source_answer, std::size_t state_limit) {
  auto r = solve_exact(out.instance, out.budget, state_limit);
  return r.has_value() == source_answer;
}

}  // namespace smc
