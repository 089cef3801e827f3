#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <string>
#include <variant>

#include "smc/dispatch.hpp"
#include "smc/exact.hpp"
#include "smc/io.hpp"
#include "smc/reductions.hpp"

using namespace smc;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kInfeasible = 2, kNoSolution = 3, kSizeCap = 4, kMismatch = 5 };

struct Options {
  std::string file;
  std::string match_file;
  std::string algo = "auto";
  std::optional<int> budget;
  int threads = 1;
  DispatchThresholds thresholds;
  bool oracle = false;
  int fuzz = 0;
  std::uint64_t seed = 1;
  std::string source;
  std::optional<int> k;
  std::string out;
  bool verify = false;
};

Optimality optimality(bool optimal) { return optimal ? Optimality::Yes : Optimality::Unknown; }

std::optional<int> budget_of(const Options& o, std::optional<int> file_budget) { return o.budget ? o.budget : file_budget; }

AlgoChoice choose(const SmcInstance& inst, const Options& o) {
  ParamProfile p = param_profile(inst);
  if (o.algo == "auto") return select_algorithm(p, budget_of(o, inst.budget()), o.thresholds);
  auto k = parse_algo_name(o.algo);
  if (!k) throw ValidationError("unknown algorithm: " + o.algo);
  return forced_choice(*k, p);
}

int report(const SmcInstance& inst, const BudgetedResult& r) {
  if (is_no_solution(r)) {
    std::cout << "no solution within budget " << std::get<NoSolutionWithin>(r).budget << '\n';
    return kNoSolution;
  }
  const SolveResult& s = solution(r);
  std::cout << format_result(inst, s, optimality(s.optimal));
  return s.infeasible ? kInfeasible : kOk;
}

int report(const HrlqInstance& inst, const HrlqBudgetedResult& r) {
  if (is_no_solution(r)) {
    std::cout << "no solution within budget " << std::get<NoSolutionWithin>(r).budget << '\n';
    return kNoSolution;
  }
  const HrlqResult& s = solution(r);
  std::cout << format_result(inst, s, optimality(s.optimal));
  return s.infeasible ? kInfeasible : kOk;
}

int cmd_solve(const Options& o) {
  Document doc = parse_document(read_file(o.file));
  if (auto* h = std::get_if<HrlqInstance>(&doc)) {
    AlgoKind k = AlgoKind::HrlqApprox;
    if (o.algo != "auto") {
      auto parsed = parse_algo_name(o.algo);
      if (!parsed) throw ValidationError("unknown algorithm: " + o.algo);
      k = *parsed;
    }
    std::cout << "algorithm: " << algo_name(k) << '\n';
    return report(*h, run_hrlq(*h, k, budget_of(o, h->budget()), o.threads, o.algo == "auto"));
  }
  const SmcInstance& inst = std::get<SmcInstance>(doc);
  AlgoChoice c = choose(inst, o);
  std::cout << "algorithm: " << algo_name(c.kind) << (c.swapped ? " (sides exchanged)" : "") << '\n';
  std::cerr << "branch: " << c.rationale << '\n';
  if (c.exponential) std::cerr << "warning: running time is exponential in the number of blocking pairs\n";
  return report(inst, run_choice(inst, c, budget_of(o, inst.budget()), o.threads, o.algo == "auto"));
}

int cmd_check(const Options& o) {
  Document doc = parse_document(read_file(o.file));
  std::string text = read_file(o.match_file);
  bool feasible = false;
  if (auto* h = std::get_if<HrlqInstance>(&doc)) {
    Assignment a = parse_assignment(*h, text);
    auto bp = blocking_pairs_hrlq(*h, a);
    std::cout << "blocking: " << bp.size() << '\n';
    for (const auto& [res, hos] : bp) std::cout << h->resident_name(res) << ' ' << h->hospital_name(hos) << '\n';
    feasible = is_feasible_hrlq(*h, a);
  } else {
    const SmcInstance& inst = std::get<SmcInstance>(doc);
    Matching m = parse_matching(inst, text);
    auto bp = blocking_pairs(inst, m);
    std::cout << "blocking: " << bp.size() << '\n';
    for (const Edge& e : bp) std::cout << inst.man_name(e.man) << ' ' << inst.woman_name(e.woman) << '\n';
    feasible = is_feasible(inst, m);
  }
  std::cout << "feasible: " << (feasible ? "yes" : "no") << '\n';
  return feasible ? kOk : kInfeasible;
}

int cmd_gen(const std::string& kind, const Options& o) {
  std::string text = read_file(o.source);
  std::optional<ReductionOutput> out;
  std::optional<bool> answer;
  if (kind == "mcc" || kind == "force" || kind == "two") {
    ColoredGraph g = parse_colored_graph(text);
    out = reduce_multicolored_clique(g, o.k.value_or(g.num_parts()));
    if (kind == "force") out = reduce_forcing_gadget(*out);
    if (kind == "two") out = reduce_two_women_masterlist(*out);
    if (o.verify) answer = o.k.value_or(g.num_parts()) == g.num_parts() && find_multicolored_clique(g).has_value();
  } else if (kind == "vc") {
    Graph g = parse_graph(text);
    if (!o.k) throw ValidationError("vc needs -k");
    out = reduce_vertex_cover(g, *o.k);
    if (o.verify) answer = find_vertex_cover(g, *o.k).has_value();
  } else {
    X3cInstance x = parse_x3c(text);
    out = reduce_x3c(x);
    if (o.verify) answer = find_exact_cover(x).has_value();
  }
  std::string inst_text = serialize(out->instance);
  if (o.out.empty()) {
    std::cout << inst_text;
  } else {
    std::ofstream f(o.out);
    if (!f) throw ValidationError("cannot write " + o.out);
    f << inst_text;
    const SmcInstance& inst = out->instance;
    std::cout << "men: " << inst.num_men() << "\nwomen: " << inst.num_women() << "\nbudget: " << out->budget
              << "\ndistinguished women: " << inst.star_women().size()
              << "\ndistinguished men: " << inst.star_men().size() << '\n';
  }
  if (answer) {
    bool ok = verify_reduction(*out, *answer);
    std::cerr << "source answer: " << (*answer ? "yes" : "no") << "\nverified: " << (ok ? "yes" : "no") << '\n';
    if (!ok) return kMismatch;
  }
  return kOk;
}

// Random instance with the same persons, distinguished counts and list
// length caps as `like`.
SmcInstance random_like(const SmcInstance& like, std::mt19937_64& rng) {
  ParamProfile p = param_profile(like);
  int nm = like.num_men(), nw = like.num_women();
  std::vector<std::vector<int>> ml(nm), wl(nw);
  std::vector<std::pair<int, int>> cand;
  for (int m = 0; m < nm; ++m)
    for (int w = 0; w < nw; ++w) cand.emplace_back(m, w);
  std::shuffle(cand.begin(), cand.end(), rng);
  std::bernoulli_distribution keep(0.6);
  for (auto [m, w] : cand) {
    if (static_cast<int>(ml[m].size()) >= p.delta_m || static_cast<int>(wl[w].size()) >= p.delta_w) continue;
    if (!keep(rng)) continue;
    ml[m].push_back(w);
    wl[w].push_back(m);
  }
  for (auto& l : ml) std::shuffle(l.begin(), l.end(), rng);
  for (auto& l : wl) std::shuffle(l.begin(), l.end(), rng);
  auto pick = [&](int n, std::size_t count) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(count);
    std::sort(all.begin(), all.end());
    return all;
  };
  SmcInstance inst(ml, wl, pick(nw, like.star_women().size()), pick(nm, like.star_men().size()));
  inst.set_names(like.man_names(), like.woman_names());
  return inst;
}

std::string optimum_text(const SolveResult& r) {
  return r.infeasible ? std::string("infeasible") : std::to_string(r.blocking_count());
}

int cmd_compare(const Options& o) {
  SmcInstance inst = parse_smc(read_file(o.file));
  auto compare_one = [&](const SmcInstance& x, bool print) {
    Options plain = o;
    plain.budget.reset();
    SmcInstance unbudgeted = x;
    unbudgeted.set_budget(std::nullopt);
    AlgoChoice c = choose(unbudgeted, plain);
    SolveResult got = solution(run_choice(unbudgeted, c, std::nullopt, o.threads, o.algo == "auto"));
    SolveResult want = enumerate_oracle(unbudgeted);
    bool same = got.infeasible == want.infeasible && (got.infeasible || got.blocking_count() == want.blocking_count());
    if (print || !same)
      std::cout << (same ? "match" : "mismatch") << ": optimum " << optimum_text(got) << (same ? " = " : " != ")
                << optimum_text(want) << "  [" << algo_name(c.kind) << " vs oracle]\n";
    if (!same && !print) std::cout << serialize(x);
    return same;
  };
  if (o.fuzz <= 0) return compare_one(inst, true) ? kOk : kMismatch;
  std::mt19937_64 rng(o.seed);
  int bad = 0;
  for (int i = 0; i < o.fuzz; ++i) bad += !compare_one(random_like(inst, rng), false);
  std::cout << "fuzz: " << o.fuzz << " instances, " << bad << " mismatches\n";
  return bad == 0 ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solvers for stable marriage with covering constraints"};
  app.require_subcommand(1);
  Options o;

  auto* solve = app.add_subcommand("solve", "Find a feasible matching with few blocking pairs");
  solve->add_option("--algo", o.algo, "auto, gale-shapley, guess-delete, degree2, delta2, fpt, smc-approx, "
                                      "hrlq-approx or oracle");
  solve->add_option("--budget", o.budget, "Accept at most this many blocking pairs");
  solve->add_option("--threads", o.threads)->check(CLI::PositiveNumber);
  solve->add_option("--const-b", o.thresholds.const_b, "Largest budget treated as a constant");
  solve->add_option("--const-delta", o.thresholds.const_delta, "Largest list length or star count treated as a constant");
  solve->add_option("FILE", o.file)->required();

  auto* check = app.add_subcommand("check", "Report blocking pairs and feasibility of a matching");
  check->add_option("FILE", o.file)->required();
  check->add_option("MATCHFILE", o.match_file)->required();

  auto* gen = app.add_subcommand("gen", "Build a hard instance from a source instance");
  gen->require_subcommand(1);
  std::vector<std::pair<std::string, CLI::App*>> gens;
  for (const char* name : {"mcc", "force", "two", "vc", "x3c"}) {
    auto* g = gen->add_subcommand(name);
    g->add_option("SOURCE", o.source)->required();
    if (std::string(name) != "x3c") g->add_option("-k", o.k, "Clique or cover size");
    g->add_option("-o", o.out, "Output file (default: stdout)");
    g->add_flag("--verify", o.verify, "Check the reduction against a brute-force answer");
    gens.emplace_back(name, g);
  }

  auto* compare = app.add_subcommand("compare", "Compare the dispatched solver with the oracle");
  compare->add_flag("--oracle", o.oracle, "Compare on FILE itself (default)");
  compare->add_option("--fuzz", o.fuzz, "Compare on this many random instances shaped like FILE");
  compare->add_option("--seed", o.seed);
  compare->add_option("--algo", o.algo);
  compare->add_option("--threads", o.threads)->check(CLI::PositiveNumber);
  compare->add_option("--const-b", o.thresholds.const_b);
  compare->add_option("--const-delta", o.thresholds.const_delta);
  compare->add_option("FILE", o.file)->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*solve) return cmd_solve(o);
    if (*check) return cmd_check(o);
    if (*compare) return cmd_compare(o);
    for (const auto& [name, g] : gens)
      if (*g) return cmd_gen(name, o);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const SizeCapError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSizeCap;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kOk;
}
