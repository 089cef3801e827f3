#pragma once

#include <optional>
#include <vector>

#include "smc/model.hpp"

namespace smc {

// Persons use the unified numbering: men 0..num_men-1, then women.
struct Component {
  std::vector<int> seq;  // alternating persons
  bool cycle = false;    // closes with the edge seq.back()-seq.front()
  bool operator==(const Component&) const = default;
};

// M_s△(union of comps), or nullopt if the components collide.
std::optional<Matching> apply_components(const SmcInstance& inst, const Matching& ms,
                                         const std::vector<Component>& comps);

// Components of M_s△m, in order of their smallest person.
std::vector<Component> difference_components(const SmcInstance& inst, const Matching& ms, const Matching& m);

// How the path of an uncovered distinguished woman looks in the optimum.
enum class PathKind { Cycle, Neutral, ReliesOn, Q1, Q2 };

struct WomanGuess {
  int first_edge = 0;  // index into her list
  PathKind kind = PathKind::Q1;
  int relies_on = -1;  // index into the uncovered distinguished women
};

struct GuessRecord {
  std::vector<WomanGuess> women;                    // per uncovered distinguished woman
  std::vector<std::vector<int>> elimination_sets;  // disjoint sets of uncovered distinguished men
};

struct FamilyF {
  std::vector<Component> comps;
  Matching applied;  // M_s△F
};

// The deletion done by the first-edge guesses: each guessed woman loses the
// partner she ranks below her guessed one.
SmcInstance first_edge_instance(const SmcInstance& inst, const std::vector<int>& stars,
                                const std::vector<WomanGuess>& guess);

// Cycles, feminine and neutral paths consistent with one guess; empty on
// contradiction. `inst` is the instance after first_edge_instance.
std::vector<FamilyF> phase1_paths(const SmcInstance& inst, const Matching& ms, const std::vector<int>& stars,
                                    const std::vector<WomanGuess>& guess);

enum class DependentKind { TypeA, TypeB };
struct DependentEdge {
  Edge edge;
  DependentKind kind = DependentKind::TypeA;
  int relying = 0;     // component index
  int supporting = 0;  // component index
};

// Edges between two components of M_s△m matching one of the two patterns,
// where the relying component alone has more blocking pairs than both together.
std::vector<DependentEdge> classify_dependent(const SmcInstance& inst, const Matching& ms, const Matching& m);

// (m, w) with w unmatched by M_s and m the second of her two men.
bool is_volatile(const SmcInstance& inst, const Matching& ms, int man, int woman);

// The masculine path ending at the volatile edge's woman through her first
// man, avoiding `forbidden`; nullopt if none exists.
std::optional<Component> volatile_path(const SmcInstance& inst, const Matching& ms, const Edge& f,
                                       const std::vector<char>& forbidden);

// Minimal closed set of masculine paths eliminating f; nullopt if some
// required path does not exist.
std::optional<std::vector<Component>> elimination_paths(const SmcInstance& inst, const Matching& ms,
                                                        const std::vector<char>& forbidden, const Edge& f);

// Output of one branch: M_s△(F ∪ elimination paths ∪ paths of the remaining
// uncovered distinguished men); nullopt on contradiction.
std::optional<Matching> phase2_assemble(const SmcInstance& inst, const Matching& ms, const FamilyF& family,
                                        const std::vector<std::vector<int>>& elimination_sets);

struct FptStats {
  long long guesses = 0;     // GuessRecords enumerated
  long long candidates = 0;  // branches that produced a feasible matching
  int parameter = 0;         // uncovered distinguished women plus men
};

// Number of GuessRecords for the given numbers of uncovered distinguished women and men.
long long fpt_guess_count(int women, int men);

// Optimal for Δ_W ≤ 2.
SolveResult solve_fpt(const SmcInstance& inst, FptStats* stats = nullptr, int threads = 1);
// The same; additionally checks that the parameter is at most twice the optimum.
SolveResult solve_fpt_b(const SmcInstance& inst, FptStats* stats = nullptr, int threads = 1);

}  // namespace smc
