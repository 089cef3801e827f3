#include "smc/stable.hpp"

#include <algorithm>
#include <queue>

namespace smc {

namespace {

using MinQueue = std::priority_queue<int, std::vector<int>, std::greater<>>;

Matching run_men_propose(const SmcInstance& inst, std::span<const char> removed) {
  const int nm = inst.num_men();
  Matching m(nm, inst.num_women());
  std::vector<int> next(nm, 0);
  MinQueue free;
  for (int man = 0; man < nm; ++man) free.push(man);
  while (!free.empty()) {
    int man = free.top();
    free.pop();
    const PrefList& l = inst.man_list(man);
    while (next[man] < static_cast<int>(l.size())) {
      int w = l[next[man]++];
      if (!removed.empty() && removed[inst.edge_id(man, w)]) continue;
      int cur = m.partner_of_woman(w);
      if (cur == kUnmatched) {
        m.match(man, w);
        break;
      }
      if (inst.woman_rank(w, man) < inst.woman_rank(w, cur)) {
        m.match(man, w);
        free.push(cur);
        break;
      }
    }
  }
  return m;
}

Matching run_women_propose(const SmcInstance& inst, std::span<const char> removed) {
  const int nw = inst.num_women();
  Matching m(inst.num_men(), nw);
  std::vector<int> next(nw, 0);
  MinQueue free;
  for (int w = 0; w < nw; ++w) free.push(w);
  while (!free.empty()) {
    int w = free.top();
    free.pop();
    const PrefList& l = inst.woman_list(w);
    while (next[w] < static_cast<int>(l.size())) {
      int man = l[next[w]++];
      if (!removed.empty() && removed[inst.edge_id(man, w)]) continue;
      int cur = m.partner_of_man(man);
      if (cur == kUnmatched) {
        m.match(man, w);
        break;
      }
      if (inst.man_rank(man, w) < inst.man_rank(man, cur)) {
        m.match(man, w);
        free.push(cur);
        break;
      }
    }
  }
  return m;
}

}  // namespace

Matching gale_shapley(const SmcInstance& inst, ProposalSide side) { return gale_shapley(inst, side, {}); }

Matching gale_shapley(const SmcInstance& inst, ProposalSide side, std::span<const char> removed) {
  return side == ProposalSide::MenPropose ? run_men_propose(inst, removed) : run_women_propose(inst, removed);
}

std::vector<HrPair> hr_edges(const HrlqInstance& inst) {
  std::vector<HrPair> out;
  for (int r = 0; r < inst.num_residents(); ++r)
    for (int h : inst.resident_list(r)) out.emplace_back(r, h);
  return out;
}

Assignment gale_shapley_hr(const HrlqInstance& inst) { return gale_shapley_hr(inst, {}); }

Assignment gale_shapley_hr(const HrlqInstance& inst, std::span<const char> removed) {
  const int nr = inst.num_residents(), nh = inst.num_hospitals();
  std::vector<int> offset(nr + 1, 0);
  for (int r = 0; r < nr; ++r) offset[r + 1] = offset[r] + static_cast<int>(inst.resident_list(r).size());
  Assignment a(nr);
  // Each hospital keeps its assignees in a max-heap on hospital rank.
  auto worse_first = [](const std::pair<int, int>& x, const std::pair<int, int>& y) { return x.first < y.first; };
  std::vector<std::priority_queue<std::pair<int, int>, std::vector<std::pair<int, int>>, decltype(worse_first)>> held(
      nh, decltype(held)::value_type(worse_first));
  std::vector<int> next(nr, 0);
  MinQueue free;
  for (int r = 0; r < nr; ++r) free.push(r);
  while (!free.empty()) {
    int r = free.top();
    free.pop();
    const PrefList& l = inst.resident_list(r);
    while (next[r] < static_cast<int>(l.size())) {
      int pos = next[r]++;
      int h = l[pos];
      if (!removed.empty() && removed[offset[r] + pos]) continue;
      int rank = inst.hospital_rank(h, r);
      auto& q = held[h];
      if (static_cast<int>(q.size()) < inst.hospital(h).upper) {
        q.emplace(rank, r);
        a.hospital_of_resident[r] = h;
        break;
      }
      if (rank < q.top().first) {
        int out = q.top().second;
        q.pop();
        a.hospital_of_resident[out] = kUnmatched;
        free.push(out);
        q.emplace(rank, r);
        a.hospital_of_resident[r] = h;
        break;
      }
    }
  }
  return a;
}

std::pair<std::vector<int>, std::vector<int>> unmatched_profile(const SmcInstance& inst) {
  Matching m = gale_shapley(inst, ProposalSide::MenPropose);
  std::vector<int> men, women;
  for (int x = 0; x < inst.num_men(); ++x)
    if (m.partner_of_man(x) == kUnmatched) men.push_back(x);
  for (int w = 0; w < inst.num_women(); ++w)
    if (m.partner_of_woman(w) == kUnmatched) women.push_back(w);
  return {men, women};
}

}  // namespace smc
