#include "smc/model.hpp"

#include <algorithm>
#include <queue>

namespace smc {

namespace {

void check_list(const PrefList& list, int bound, const char* who, int index) {
  std::vector<char> seen(bound, 0);
  for (int x : list) {
    if (x < 0 || x >= bound)
      throw ValidationError(std::string(who) + " " + std::to_string(index) + ": list entry " +
                            std::to_string(x) + " out of range");
    if (seen[x])
      throw ValidationError(std::string(who) + " " + std::to_string(index) + ": duplicate entry " +
                            std::to_string(x));
    seen[x] = 1;
  }
}

std::vector<int> normalize_set(std::vector<int> v, int bound, const char* what) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  for (int x : v)
    if (x < 0 || x >= bound)
      throw ValidationError(std::string(what) + ": index " + std::to_string(x) + " out of range");
  return v;
}

std::vector<std::string> default_names(char prefix, int n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i + 1));
  return out;
}

}  // namespace

SmcInstance::SmcInstance(std::vector<PrefList> men, std::vector<PrefList> women,
                         std::vector<int> star_women, std::vector<int> star_men,
                         std::optional<int> budget)
    : men_(std::move(men)), women_(std::move(women)), budget_(budget) {
  const int nm = num_men(), nw = num_women();
  for (int m = 0; m < nm; ++m) check_list(men_[m], nw, "man", m);
  for (int w = 0; w < nw; ++w) check_list(women_[w], nm, "woman", w);
  star_women_ = normalize_set(std::move(star_women), nw, "distinguished women");
  star_men_ = normalize_set(std::move(star_men), nm, "distinguished men");
  if (budget_ && *budget_ < 0) throw ValidationError("budget must be nonnegative");
  star_woman_flag_.assign(nw, 0);
  star_man_flag_.assign(nm, 0);
  for (int w : star_women_) star_woman_flag_[w] = 1;
  for (int m : star_men_) star_man_flag_[m] = 1;

  man_slots_.resize(nm);
  woman_slots_.resize(nw);
  for (int m = 0; m < nm; ++m) {
    for (int r = 0; r < static_cast<int>(men_[m].size()); ++r)
      man_slots_[m].push_back({men_[m][r], r, -1});
    std::sort(man_slots_[m].begin(), man_slots_[m].end(),
              [](const Slot& a, const Slot& b) { return a.partner < b.partner; });
  }
  for (int w = 0; w < nw; ++w) {
    for (int r = 0; r < static_cast<int>(women_[w].size()); ++r)
      woman_slots_[w].push_back({women_[w][r], r, -1});
    std::sort(woman_slots_[w].begin(), woman_slots_[w].end(),
              [](const Slot& a, const Slot& b) { return a.partner < b.partner; });
  }
  for (int m = 0; m < nm; ++m) {
    for (auto& s : man_slots_[m]) {
      if (lookup(woman_slots_[s.partner], m, false) < 0)
        throw ValidationError("acceptability not mutual: man " + std::to_string(m) +
                              " lists woman " + std::to_string(s.partner));
      s.edge = static_cast<int>(edges_.size());
      edges_.push_back({m, s.partner});
    }
  }
  for (int w = 0; w < nw; ++w) {
    for (auto& s : woman_slots_[w]) {
      int e = lookup(man_slots_[s.partner], w, true);
      if (e < 0)
        throw ValidationError("acceptability not mutual: woman " + std::to_string(w) +
                              " lists man " + std::to_string(s.partner));
      s.edge = e;
    }
  }
  man_names_ = default_names('m', nm);
  woman_names_ = default_names('w', nw);
}

int SmcInstance::lookup(const std::vector<Slot>& slots, int partner, bool want_edge) {
  auto it = std::lower_bound(slots.begin(), slots.end(), partner,
                             [](const Slot& s, int p) { return s.partner < p; });
  if (it == slots.end() || it->partner != partner) return -1;
  return want_edge ? it->edge : it->rank;
}

int SmcInstance::man_rank(int m, int w) const { return lookup(man_slots_[m], w, false); }
int SmcInstance::woman_rank(int w, int m) const { return lookup(woman_slots_[w], m, false); }
int SmcInstance::edge_id(int m, int w) const { return lookup(man_slots_[m], w, true); }

bool SmcInstance::man_prefers(int m, int a, int b) const {
  if (a == kUnmatched) return false;
  if (b == kUnmatched) return true;
  return man_rank(m, a) < man_rank(m, b);
}

bool SmcInstance::woman_prefers(int w, int a, int b) const {
  if (a == kUnmatched) return false;
  if (b == kUnmatched) return true;
  return woman_rank(w, a) < woman_rank(w, b);
}

void SmcInstance::set_names(std::vector<std::string> men, std::vector<std::string> women) {
  if (static_cast<int>(men.size()) != num_men() || static_cast<int>(women.size()) != num_women())
    throw ValidationError("name count does not match person count");
  man_names_ = std::move(men);
  woman_names_ = std::move(women);
}

SmcInstance SmcInstance::swapped() const {
  SmcInstance out(women_, men_, star_men_, star_women_, budget_);
  out.set_names(woman_names_, man_names_);
  return out;
}

SmcInstance SmcInstance::without_edges(std::span<const int> edge_ids) const {
  std::vector<char> drop(edges_.size(), 0);
  for (int e : edge_ids) drop.at(e) = 1;
  std::vector<PrefList> men(men_.size()), women(women_.size());
  for (int m = 0; m < num_men(); ++m)
    for (int w : men_[m])
      if (!drop[edge_id(m, w)]) men[m].push_back(w);
  for (int w = 0; w < num_women(); ++w)
    for (int m : women_[w])
      if (!drop[edge_id(m, w)]) women[w].push_back(m);
  SmcInstance out(std::move(men), std::move(women), star_women_, star_men_, budget_);
  out.set_names(man_names_, woman_names_);
  return out;
}

Matching Matching::from_partners(std::vector<int> partner_of_man, std::vector<int> partner_of_woman) {
  const int nm = static_cast<int>(partner_of_man.size());
  const int nw = static_cast<int>(partner_of_woman.size());
  for (int m = 0; m < nm; ++m) {
    int w = partner_of_man[m];
    if (w == kUnmatched) continue;
    if (w < 0 || w >= nw || partner_of_woman[w] != m)
      throw ValidationError("matching is not symmetric at man " + std::to_string(m));
  }
  for (int w = 0; w < nw; ++w) {
    int m = partner_of_woman[w];
    if (m == kUnmatched) continue;
    if (m < 0 || m >= nm || partner_of_man[m] != w)
      throw ValidationError("matching is not symmetric at woman " + std::to_string(w));
  }
  Matching out;
  out.man_ = std::move(partner_of_man);
  out.woman_ = std::move(partner_of_woman);
  return out;
}

Matching Matching::from_pairs(int men, int women, std::span<const Edge> pairs) {
  std::vector<int> pm(men, kUnmatched), pw(women, kUnmatched);
  for (const Edge& e : pairs) {
    if (e.man < 0 || e.man >= men || e.woman < 0 || e.woman >= women)
      throw ValidationError("matched pair out of range");
    if (pm[e.man] != kUnmatched || pw[e.woman] != kUnmatched)
      throw ValidationError("person matched twice");
    pm[e.man] = e.woman;
    pw[e.woman] = e.man;
  }
  return from_partners(std::move(pm), std::move(pw));
}

void Matching::match(int m, int w) {
  unmatch_man(m);
  unmatch_woman(w);
  man_[m] = w;
  woman_[w] = m;
}

void Matching::unmatch_man(int m) {
  if (man_[m] != kUnmatched) woman_[man_[m]] = kUnmatched;
  man_[m] = kUnmatched;
}

void Matching::unmatch_woman(int w) {
  if (woman_[w] != kUnmatched) man_[woman_[w]] = kUnmatched;
  woman_[w] = kUnmatched;
}

int Matching::size() const {
  return static_cast<int>(std::count_if(man_.begin(), man_.end(), [](int w) { return w != kUnmatched; }));
}

std::vector<Edge> Matching::pairs() const {
  std::vector<Edge> out;
  for (int m = 0; m < num_men(); ++m)
    if (man_[m] != kUnmatched) out.push_back({m, man_[m]});
  return out;
}

void validate_matching(const SmcInstance& inst, const Matching& m) {
  if (m.num_men() != inst.num_men() || m.num_women() != inst.num_women())
    throw ValidationError("matching size does not match instance");
  for (int man = 0; man < inst.num_men(); ++man) {
    int w = m.partner_of_man(man);
    if (w == kUnmatched) continue;
    if (m.partner_of_woman(w) != man)
      throw ValidationError("matching is not symmetric at man " + inst.man_name(man));
    if (!inst.acceptable(man, w))
      throw ValidationError("unacceptable pair " + inst.man_name(man) + " " + inst.woman_name(w));
  }
  for (int w = 0; w < inst.num_women(); ++w) {
    int man = m.partner_of_woman(w);
    if (man != kUnmatched && m.partner_of_man(man) != w)
      throw ValidationError("matching is not symmetric at woman " + inst.woman_name(w));
  }
}

bool is_blocking(const SmcInstance& inst, const Matching& m, int man, int woman) {
  return inst.man_prefers(man, woman, m.partner_of_man(man)) &&
         inst.woman_prefers(woman, man, m.partner_of_woman(woman));
}

std::vector<Edge> blocking_pairs(const SmcInstance& inst, const Matching& m) {
  validate_matching(inst, m);
  std::vector<Edge> out;
  for (const Edge& e : inst.edges())
    if (is_blocking(inst, m, e.man, e.woman)) out.push_back(e);
  return out;
}

int count_blocking_pairs(const SmcInstance& inst, const Matching& m) {
  int n = 0;
  for (const Edge& e : inst.edges())
    if (is_blocking(inst, m, e.man, e.woman)) ++n;
  return n;
}

bool is_feasible(const SmcInstance& inst, const Matching& m) {
  for (int w : inst.star_women())
    if (m.partner_of_woman(w) == kUnmatched) return false;
  for (int man : inst.star_men())
    if (m.partner_of_man(man) == kUnmatched) return false;
  return true;
}

std::optional<std::vector<int>> master_list(const SmcInstance& inst, Side side) {
  // Persons on `side` are ordered by the lists of the other side.
  const Side other = side == Side::Man ? Side::Woman : Side::Man;
  const int n = side == Side::Man ? inst.num_men() : inst.num_women();
  const int n_other = side == Side::Man ? inst.num_women() : inst.num_men();
  std::vector<std::vector<int>> succ(n);
  std::vector<int> indeg(n, 0);
  for (int i = 0; i < n_other; ++i) {
    const PrefList& l = inst.list(other, i);
    for (std::size_t k = 0; k + 1 < l.size(); ++k) {
      succ[l[k]].push_back(l[k + 1]);
      ++indeg[l[k + 1]];
    }
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.push(v);
  std::vector<int> order;
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int u : succ[v])
      if (--indeg[u] == 0) ready.push(u);
  }
  if (static_cast<int>(order.size()) != n) return std::nullopt;
  return order;
}

ParamProfile param_profile(const SmcInstance& inst) {
  ParamProfile p;
  for (int m = 0; m < inst.num_men(); ++m)
    p.delta_m = std::max(p.delta_m, static_cast<int>(inst.man_list(m).size()));
  for (int w = 0; w < inst.num_women(); ++w)
    p.delta_w = std::max(p.delta_w, static_cast<int>(inst.woman_list(w).size()));
  for (int w : inst.star_women())
    p.delta_star = std::max(p.delta_star, static_cast<int>(inst.woman_list(w).size()));
  for (int m : inst.star_men())
    p.delta_star = std::max(p.delta_star, static_cast<int>(inst.man_list(m).size()));
  p.n_star_women = static_cast<int>(inst.star_women().size());
  p.n_star_men = static_cast<int>(inst.star_men().size());
  p.has_master_list_men = master_list(inst, Side::Man).has_value();
  p.has_master_list_women = master_list(inst, Side::Woman).has_value();
  return p;
}

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::GaleShapley: return "gale-shapley";
    case Algorithm::Enumerate: return "oracle";
    case Algorithm::GuessDelete: return "guess-delete";
    case Algorithm::Degree2: return "degree2";
    case Algorithm::FrontierDp: return "frontier-dp";
    case Algorithm::Delta2: return "delta2";
    case Algorithm::Delta2Swapped: return "delta2-swapped";
    case Algorithm::Fpt: return "fpt";
    case Algorithm::SmcApprox: return "smc-approx";
    case Algorithm::HrlqApprox: return "hrlq-approx";
    case Algorithm::HrlqGuessDelete: return "hrlq-guess-delete";
  }
  return "unknown";
}

SolveResult make_result(const SmcInstance& inst, Matching m, Algorithm a, bool optimal) {
  SolveResult r;
  r.blocking = blocking_pairs(inst, m);
  r.matching = std::move(m);
  r.algorithm = a;
  r.optimal = optimal;
  return r;
}

SolveResult make_infeasible(const SmcInstance& inst, Algorithm a) {
  SolveResult r;
  r.matching = Matching(inst.num_men(), inst.num_women());
  r.algorithm = a;
  r.optimal = true;
  r.infeasible = true;
  return r;
}

}  // namespace smc
