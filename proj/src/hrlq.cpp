#include "smc/hrlq.hpp"

#include <algorithm>

namespace smc {

HrlqInstance::HrlqInstance(std::vector<PrefList> residents, std::vector<Hospital> hospitals,
                           std::optional<int> budget)
    : residents_(std::move(residents)), hospitals_(std::move(hospitals)), budget_(budget) {
  const int nr = num_residents(), nh = num_hospitals();
  resident_rank_.assign(nr, std::vector<int>(nh, -1));
  hospital_rank_.assign(nh, std::vector<int>(nr, -1));
  for (int r = 0; r < nr; ++r) {
    for (int k = 0; k < static_cast<int>(residents_[r].size()); ++k) {
      int h = residents_[r][k];
      if (h < 0 || h >= nh) throw ValidationError("resident " + std::to_string(r) + ": hospital out of range");
      if (resident_rank_[r][h] >= 0) throw ValidationError("resident " + std::to_string(r) + ": duplicate entry");
      resident_rank_[r][h] = k;
    }
  }
  for (int h = 0; h < nh; ++h) {
    const Hospital& hp = hospitals_[h];
    if (hp.lower < 0 || hp.upper < 1 || hp.lower > hp.upper)
      throw ValidationError("hospital " + std::to_string(h) + ": need 0 <= lower <= upper and upper >= 1");
    for (int k = 0; k < static_cast<int>(hp.prefs.size()); ++k) {
      int r = hp.prefs[k];
      if (r < 0 || r >= nr) throw ValidationError("hospital " + std::to_string(h) + ": resident out of range");
      if (hospital_rank_[h][r] >= 0) throw ValidationError("hospital " + std::to_string(h) + ": duplicate entry");
      hospital_rank_[h][r] = k;
    }
  }
  for (int r = 0; r < nr; ++r)
    for (int h = 0; h < nh; ++h)
      if ((resident_rank_[r][h] >= 0) != (hospital_rank_[h][r] >= 0))
        throw ValidationError("acceptability not mutual: resident " + std::to_string(r) + ", hospital " +
                              std::to_string(h));
  if (budget_ && *budget_ < 0) throw ValidationError("budget must be nonnegative");
  for (int r = 0; r < nr; ++r) resident_names_.push_back("r" + std::to_string(r + 1));
  for (int h = 0; h < nh; ++h) hospital_names_.push_back("h" + std::to_string(h + 1));
}

int HrlqInstance::resident_rank(int r, int h) const { return resident_rank_[r][h]; }
int HrlqInstance::hospital_rank(int h, int r) const { return hospital_rank_[h][r]; }

int HrlqInstance::lower_sum() const {
  int s = 0;
  for (const auto& h : hospitals_) s += h.lower;
  return s;
}

int HrlqInstance::delta_r() const {
  int d = 0;
  for (const auto& l : residents_) d = std::max(d, static_cast<int>(l.size()));
  return d;
}

int HrlqInstance::num_edges() const {
  int e = 0;
  for (const auto& l : residents_) e += static_cast<int>(l.size());
  return e;
}

void HrlqInstance::set_names(std::vector<std::string> residents, std::vector<std::string> hospitals) {
  if (static_cast<int>(residents.size()) != num_residents() ||
      static_cast<int>(hospitals.size()) != num_hospitals())
    throw ValidationError("name count does not match person count");
  resident_names_ = std::move(residents);
  hospital_names_ = std::move(hospitals);
}

std::vector<std::vector<int>> Assignment::by_hospital(int hospitals) const {
  std::vector<std::vector<int>> out(hospitals);
  for (int r = 0; r < static_cast<int>(hospital_of_resident.size()); ++r)
    if (hospital_of_resident[r] != kUnmatched) out[hospital_of_resident[r]].push_back(r);
  return out;
}

void validate_assignment(const HrlqInstance& inst, const Assignment& a) {
  if (static_cast<int>(a.hospital_of_resident.size()) != inst.num_residents())
    throw ValidationError("assignment size does not match instance");
  std::vector<int> load(inst.num_hospitals(), 0);
  for (int r = 0; r < inst.num_residents(); ++r) {
    int h = a.hospital_of_resident[r];
    if (h == kUnmatched) continue;
    if (h < 0 || h >= inst.num_hospitals() || !inst.acceptable(r, h))
      throw ValidationError("unacceptable assignment of " + inst.resident_name(r));
    ++load[h];
  }
  for (int h = 0; h < inst.num_hospitals(); ++h)
    if (load[h] > inst.hospital(h).upper)
      throw ValidationError("upper quota exceeded at " + inst.hospital_name(h));
}

std::vector<HrPair> blocking_pairs_hrlq(const HrlqInstance& inst, const Assignment& a) {
  validate_assignment(inst, a);
  const auto members = a.by_hospital(inst.num_hospitals());
  std::vector<int> worst(inst.num_hospitals(), -1);  // rank of least preferred assignee
  for (int h = 0; h < inst.num_hospitals(); ++h)
    for (int r : members[h]) worst[h] = std::max(worst[h], inst.hospital_rank(h, r));
  std::vector<HrPair> out;
  for (int r = 0; r < inst.num_residents(); ++r) {
    int cur = a.hospital_of_resident[r];
    for (int h : inst.resident_list(r)) {
      if (h == cur) break;  // remaining hospitals are worse for r
      bool under = static_cast<int>(members[h].size()) < inst.hospital(h).upper;
      if (under || inst.hospital_rank(h, r) < worst[h]) out.emplace_back(r, h);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_feasible_hrlq(const HrlqInstance& inst, const Assignment& a) {
  const auto members = a.by_hospital(inst.num_hospitals());
  for (int h = 0; h < inst.num_hospitals(); ++h)
    if (static_cast<int>(members[h].size()) < inst.hospital(h).lower) return false;
  return true;
}

HrlqResult make_hrlq_result(const HrlqInstance& inst, Assignment a, Algorithm alg, bool optimal) {
  HrlqResult r;
  r.blocking = blocking_pairs_hrlq(inst, a);
  r.assignment = std::move(a);
  r.algorithm = alg;
  r.optimal = optimal;
  return r;
}

ClonedInstance clone_hospitals(const HrlqInstance& inst) {
  CloneMap map;
  for (int h = 0; h < inst.num_hospitals(); ++h) {
    map.first_clone.push_back(static_cast<int>(map.hospital_of_clone.size()));
    for (int c = 0; c < inst.hospital(h).upper; ++c) map.hospital_of_clone.push_back(h);
  }
  const int nclones = static_cast<int>(map.hospital_of_clone.size());
  std::vector<PrefList> men(inst.num_residents()), women(nclones);
  for (int r = 0; r < inst.num_residents(); ++r)
    for (int h : inst.resident_list(r))
      for (int c = 0; c < inst.hospital(h).upper; ++c) men[r].push_back(map.first_clone[h] + c);
  std::vector<int> star;
  std::vector<std::string> clone_names;
  for (int w = 0; w < nclones; ++w) {
    int h = map.hospital_of_clone[w];
    int c = w - map.first_clone[h];
    women[w] = inst.hospital(h).prefs;
    if (c < inst.hospital(h).lower) star.push_back(w);
    clone_names.push_back(inst.hospital_name(h) + "." + std::to_string(c + 1));
  }
  std::vector<std::string> resident_names;
  for (int r = 0; r < inst.num_residents(); ++r) resident_names.push_back(inst.resident_name(r));
  SmcInstance out(std::move(men), std::move(women), std::move(star), {}, inst.budget());
  out.set_names(std::move(resident_names), std::move(clone_names));
  return {std::move(out), std::move(map)};
}

Assignment assignment_from_clones(const ClonedInstance& c, const Matching& m) {
  Assignment a(c.instance.num_men());
  for (int r = 0; r < c.instance.num_men(); ++r)
    if (m.partner_of_man(r) != kUnmatched) a.hospital_of_resident[r] = c.map.hospital_of_clone[m.partner_of_man(r)];
  return a;
}

Matching matching_from_assignment(const HrlqInstance& inst, const ClonedInstance& c, const Assignment& a) {
  validate_assignment(inst, a);
  Matching m(c.instance.num_men(), c.instance.num_women());
  auto members = a.by_hospital(inst.num_hospitals());
  for (int h = 0; h < inst.num_hospitals(); ++h) {
    auto& rs = members[h];
    std::sort(rs.begin(), rs.end(), [&](int x, int y) { return inst.hospital_rank(h, x) < inst.hospital_rank(h, y); });
    for (int k = 0; k < static_cast<int>(rs.size()); ++k) m.match(rs[k], c.map.first_clone[h] + k);
  }
  return m;
}

}  // namespace smc
