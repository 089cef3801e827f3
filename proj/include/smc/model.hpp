#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace smc {

inline constexpr int kUnmatched = -1;

enum class Side { Man, Woman };

struct PersonId {
  Side side = Side::Man;
  int index = 0;
  auto operator<=>(const PersonId&) const = default;
};

// A man-woman pair; used for edges, matched pairs and blocking pairs alike.
struct Edge {
  int man = 0;
  int woman = 0;
  auto operator<=>(const Edge&) const = default;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when a solver is called on an instance outside its domain.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class SizeCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using PrefList = std::vector<int>;

class SmcInstance {
 public:
  SmcInstance() = default;
  // Validates duplicate-freeness, index ranges and mutual acceptability.
  SmcInstance(std::vector<PrefList> men, std::vector<PrefList> women,
              std::vector<int> star_women = {}, std::vector<int> star_men = {},
              std::optional<int> budget = std::nullopt);

  int num_men() const { return static_cast<int>(men_.size()); }
  int num_women() const { return static_cast<int>(women_.size()); }
  int num_persons() const { return num_men() + num_women(); }

  const PrefList& man_list(int m) const { return men_[m]; }
  const PrefList& woman_list(int w) const { return women_[w]; }
  const PrefList& list(Side s, int i) const { return s == Side::Man ? men_[i] : women_[i]; }

  // Position of the partner in the person's list, or -1 if unacceptable.
  int man_rank(int m, int w) const;
  int woman_rank(int w, int m) const;
  bool acceptable(int m, int w) const { return man_rank(m, w) >= 0; }

  // True if m prefers a to b; kUnmatched is worse than any acceptable partner.
  bool man_prefers(int m, int a, int b) const;
  bool woman_prefers(int w, int a, int b) const;

  bool is_star_woman(int w) const { return star_woman_flag_[w] != 0; }
  bool is_star_man(int m) const { return star_man_flag_[m] != 0; }
  const std::vector<int>& star_women() const { return star_women_; }
  const std::vector<int>& star_men() const { return star_men_; }

  // All acceptable pairs sorted by (man, woman); the position is the edge id.
  const std::vector<Edge>& edges() const { return edges_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int edge_id(int m, int w) const;

  std::optional<int> budget() const { return budget_; }
  void set_budget(std::optional<int> b) { budget_ = b; }

  const std::string& man_name(int m) const { return man_names_[m]; }
  const std::string& woman_name(int w) const { return woman_names_[w]; }
  const std::vector<std::string>& man_names() const { return man_names_; }
  const std::vector<std::string>& woman_names() const { return woman_names_; }
  // Names default to m1.. and w1..; sizes must match.
  void set_names(std::vector<std::string> men, std::vector<std::string> women);

  // Men become women and vice versa, including names and distinguished sets.
  SmcInstance swapped() const;
  // Same persons with the given edges removed from both lists.
  SmcInstance without_edges(std::span<const int> edge_ids) const;

 private:
  struct Slot {
    int partner;
    int rank;
    int edge;
  };
  static int lookup(const std::vector<Slot>& slots, int partner, bool want_edge);

  std::vector<PrefList> men_, women_;
  std::vector<int> star_women_, star_men_;
  std::vector<char> star_woman_flag_, star_man_flag_;
  std::optional<int> budget_;
  std::vector<std::string> man_names_, woman_names_;
  std::vector<std::vector<Slot>> man_slots_, woman_slots_;
  std::vector<Edge> edges_;
};

class Matching {
 public:
  Matching() = default;
  Matching(int men, int women) : man_(men, kUnmatched), woman_(women, kUnmatched) {}
  // Throws ValidationError unless the two maps are mutually consistent.
  static Matching from_partners(std::vector<int> partner_of_man, std::vector<int> partner_of_woman);
  static Matching from_pairs(int men, int women, std::span<const Edge> pairs);

  int num_men() const { return static_cast<int>(man_.size()); }
  int num_women() const { return static_cast<int>(woman_.size()); }
  int partner_of_man(int m) const { return man_[m]; }
  int partner_of_woman(int w) const { return woman_[w]; }
  const std::vector<int>& men() const { return man_; }
  const std::vector<int>& women() const { return woman_; }

  // Pairs m with w, dropping their previous partners.
  void match(int m, int w);
  void unmatch_man(int m);
  void unmatch_woman(int w);

  int size() const;
  bool empty() const { return size() == 0; }
  std::vector<Edge> pairs() const;

  bool operator==(const Matching&) const = default;

 private:
  std::vector<int> man_, woman_;
};

// Throws ValidationError if m does not fit inst or contains an unacceptable pair.
void validate_matching(const SmcInstance& inst, const Matching& m);

std::vector<Edge> blocking_pairs(const SmcInstance& inst, const Matching& m);
int count_blocking_pairs(const SmcInstance& inst, const Matching& m);
bool is_blocking(const SmcInstance& inst, const Matching& m, int man, int woman);
bool is_feasible(const SmcInstance& inst, const Matching& m);

struct ParamProfile {
  int delta_m = 0;
  int delta_w = 0;
  int delta_star = 0;
  int n_star_women = 0;
  int n_star_men = 0;
  bool has_master_list_men = true;
  bool has_master_list_women = true;
};

ParamProfile param_profile(const SmcInstance& inst);

// A total order of the persons on `side` consistent with every list of the
// other side, if one exists.
std::optional<std::vector<int>> master_list(const SmcInstance& inst, Side side);

enum class Algorithm {
  GaleShapley,
  Enumerate,
  GuessDelete,
  Degree2,
  FrontierDp,
  Delta2,
  Delta2Swapped,
  Fpt,
  SmcApprox,
  HrlqApprox,
  HrlqGuessDelete,
};

const char* algorithm_name(Algorithm a);

struct SolveResult {
  Matching matching;
  std::vector<Edge> blocking;
  Algorithm algorithm = Algorithm::Enumerate;
  bool optimal = false;
  bool infeasible = false;

  int blocking_count() const { return static_cast<int>(blocking.size()); }
};

// Fills blocking pairs from the oracle.
SolveResult make_result(const SmcInstance& inst, Matching m, Algorithm a, bool optimal);
SolveResult make_infeasible(const SmcInstance& inst, Algorithm a);

struct NoSolutionWithin {
  int budget = 0;
};

}  // namespace smc
