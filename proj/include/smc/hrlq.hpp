#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "smc/model.hpp"

namespace smc {

struct Hospital {
  PrefList prefs;  // resident indices, most preferred first
  int lower = 0;
  int upper = 1;
};

class HrlqInstance {
 public:
  HrlqInstance() = default;
  // Validates ranges, duplicates, quotas and mutual acceptability.
  HrlqInstance(std::vector<PrefList> residents, std::vector<Hospital> hospitals,
               std::optional<int> budget = std::nullopt);

  int num_residents() const { return static_cast<int>(residents_.size()); }
  int num_hospitals() const { return static_cast<int>(hospitals_.size()); }
  const PrefList& resident_list(int r) const { return residents_[r]; }
  const Hospital& hospital(int h) const { return hospitals_[h]; }

  int resident_rank(int r, int h) const;
  int hospital_rank(int h, int r) const;
  bool acceptable(int r, int h) const { return resident_rank(r, h) >= 0; }

  int lower_sum() const;
  int delta_r() const;
  int num_edges() const;

  std::optional<int> budget() const { return budget_; }
  void set_budget(std::optional<int> b) { budget_ = b; }

  const std::string& resident_name(int r) const { return resident_names_[r]; }
  const std::string& hospital_name(int h) const { return hospital_names_[h]; }
  void set_names(std::vector<std::string> residents, std::vector<std::string> hospitals);

 private:
  std::vector<PrefList> residents_;
  std::vector<Hospital> hospitals_;
  std::vector<std::vector<int>> resident_rank_, hospital_rank_;  // dense rank tables
  std::optional<int> budget_;
  std::vector<std::string> resident_names_, hospital_names_;
};

struct Assignment {
  std::vector<int> hospital_of_resident;  // kUnmatched when unassigned

  explicit Assignment(int residents = 0) : hospital_of_resident(residents, kUnmatched) {}
  std::vector<std::vector<int>> by_hospital(int hospitals) const;
  bool operator==(const Assignment&) const = default;
};

// (resident, hospital) pair
using HrPair = std::pair<int, int>;

void validate_assignment(const HrlqInstance& inst, const Assignment& a);
std::vector<HrPair> blocking_pairs_hrlq(const HrlqInstance& inst, const Assignment& a);
bool is_feasible_hrlq(const HrlqInstance& inst, const Assignment& a);

struct HrlqResult {
  Assignment assignment;
  std::vector<HrPair> blocking;
  Algorithm algorithm = Algorithm::HrlqApprox;
  bool optimal = false;
  bool infeasible = false;

  int blocking_count() const { return static_cast<int>(blocking.size()); }
};

HrlqResult make_hrlq_result(const HrlqInstance& inst, Assignment a, Algorithm alg, bool optimal);

struct CloneMap {
  std::vector<int> hospital_of_clone;  // clone woman -> hospital
  std::vector<int> first_clone;        // hospital -> index of its first clone
};

struct ClonedInstance {
  SmcInstance instance;  // men are residents, women are hospital clones
  CloneMap map;
};

ClonedInstance clone_hospitals(const HrlqInstance& inst);
Assignment assignment_from_clones(const ClonedInstance& c, const Matching& m);
// Places each hospital's residents on its clones in the hospital's order.
Matching matching_from_assignment(const HrlqInstance& inst, const ClonedInstance& c, const Assignment& a);

}  // namespace smc
