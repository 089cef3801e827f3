#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "smc/approx.hpp"
#include "smc/delta2.hpp"
#include "smc/dispatch.hpp"
#include "smc/exact.hpp"
#include "smc/fpt.hpp"
#include "smc/io.hpp"
#include "smc/reductions.hpp"
#include "smc/stable.hpp"

namespace py = pybind11;
using namespace smc;

namespace {

using Pairs = std::vector<std::pair<int, int>>;

Pairs to_pairs(const Matching& m) {
  Pairs out;
  for (const Edge& e : m.pairs()) out.emplace_back(e.man, e.woman);
  return out;
}

Matching from_pairs(const SmcInstance& inst, const Pairs& pairs) {
  std::vector<Edge> edges;
  for (auto [m, w] : pairs) {
    if (m < 0 || m >= inst.num_men() || w < 0 || w >= inst.num_women()) throw ValidationError("pair out of range");
    edges.push_back({m, w});
  }
  return Matching::from_pairs(inst.num_men(), inst.num_women(), edges);
}

py::dict result_dict(const SolveResult& r) {
  py::dict d;
  d["matching"] = to_pairs(r.matching);
  Pairs blocking;
  for (const Edge& e : r.blocking) blocking.emplace_back(e.man, e.woman);
  d["blocking"] = blocking;
  d["optimal"] = r.optimal;
  d["infeasible"] = r.infeasible;
  return d;
}

py::object budgeted(const BudgetedResult& r) {
  if (is_no_solution(r)) return py::none();
  return result_dict(solution(r));
}

py::dict hrlq_dict(const HrlqResult& r) {
  py::dict d;
  d["assignment"] = r.assignment.hospital_of_resident;
  d["blocking"] = r.blocking;
  d["optimal"] = r.optimal;
  d["infeasible"] = r.infeasible;
  return d;
}

py::dict profile_dict(const ParamProfile& p) {
  py::dict d;
  d["delta_m"] = p.delta_m;
  d["delta_w"] = p.delta_w;
  d["delta_star"] = p.delta_star;
  d["n_star_women"] = p.n_star_women;
  d["n_star_men"] = p.n_star_men;
  d["has_master_list_men"] = p.has_master_list_men;
  d["has_master_list_women"] = p.has_master_list_women;
  return d;
}

ParamProfile profile_from(const py::dict& d) {
  ParamProfile p;
  auto get = [&](const char* key, auto& field) {
    if (d.contains(key)) field = d[key].cast<std::decay_t<decltype(field)>>();
  };
  get("delta_m", p.delta_m);
  get("delta_w", p.delta_w);
  get("delta_star", p.delta_star);
  get("n_star_women", p.n_star_women);
  get("n_star_men", p.n_star_men);
  get("has_master_list_men", p.has_master_list_men);
  get("has_master_list_women", p.has_master_list_women);
  return p;
}

AlgoChoice choice_for(const SmcInstance& inst, const std::string& algo, std::optional<int> budget) {
  if (algo == "auto") return select_algorithm(param_profile(inst), budget);
  auto k = parse_algo_name(algo);
  if (!k) throw ValidationError("unknown algorithm: " + algo);
  return forced_choice(*k, param_profile(inst));
}

ReductionOutput generate(const std::string& kind, const std::string& source, std::optional<int> k) {
  if (kind == "mcc" || kind == "force" || kind == "two") {
    ColoredGraph g = parse_colored_graph(source);
    ReductionOutput out = reduce_multicolored_clique(g, k.value_or(g.num_parts()));
    if (kind == "force") return reduce_forcing_gadget(out);
    if (kind == "two") return reduce_two_women_masterlist(out);
    return out;
  }
  if (kind == "vc") {
    if (!k) throw ValidationError("vc needs k");
    return reduce_vertex_cover(parse_graph(source), *k);
  }
  if (kind == "x3c") return reduce_x3c(parse_x3c(source));
  throw ValidationError("unknown reduction: " + kind);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Solvers for stable marriage with covering constraints";

  static py::exception<ValidationError> validation_error(m, "ValidationError", PyExc_ValueError);
  static py::exception<PreconditionError> precondition_error(m, "PreconditionError", PyExc_ValueError);
  static py::exception<SizeCapError> size_cap_error(m, "SizeCapError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ValidationError& e) {
      PyErr_SetString(validation_error.ptr(), e.what());
    } catch (const PreconditionError& e) {
      PyErr_SetString(precondition_error.ptr(), e.what());
    } catch (const SizeCapError& e) {
      PyErr_SetString(size_cap_error.ptr(), e.what());
    }
  });

  py::class_<SmcInstance>(m, "SmcInstance")
      .def(py::init<std::vector<PrefList>, std::vector<PrefList>, std::vector<int>, std::vector<int>,
                    std::optional<int>>(),
           py::arg("men"), py::arg("women"), py::arg("star_women") = std::vector<int>{},
           py::arg("star_men") = std::vector<int>{}, py::arg("budget") = std::nullopt)
      .def_property_readonly("num_men", &SmcInstance::num_men)
      .def_property_readonly("num_women", &SmcInstance::num_women)
      .def_property_readonly("star_women", &SmcInstance::star_women)
      .def_property_readonly("star_men", &SmcInstance::star_men)
      .def_property("budget", &SmcInstance::budget, &SmcInstance::set_budget)
      .def_property_readonly("man_names", &SmcInstance::man_names)
      .def_property_readonly("woman_names", &SmcInstance::woman_names)
      .def("man_list", &SmcInstance::man_list)
      .def("woman_list", &SmcInstance::woman_list)
      .def("swapped", &SmcInstance::swapped)
      .def("__str__", [](const SmcInstance& i) { return serialize(i); });

  py::class_<HrlqInstance>(m, "HrlqInstance")
      .def_property_readonly("num_residents", &HrlqInstance::num_residents)
      .def_property_readonly("num_hospitals", &HrlqInstance::num_hospitals)
      .def_property_readonly("lower_sum", &HrlqInstance::lower_sum)
      .def_property_readonly("delta_r", &HrlqInstance::delta_r)
      .def_property("budget", &HrlqInstance::budget, &HrlqInstance::set_budget)
      .def("__str__", [](const HrlqInstance& i) { return serialize(i); });

  m.def("parse", [](const std::string& text) -> py::object {
    Document doc = parse_document(text);
    if (auto* s = std::get_if<SmcInstance>(&doc)) return py::cast(*s);
    return py::cast(std::get<HrlqInstance>(doc));
  }, py::arg("text"), "Parse an SMC or HRLQ instance from text.");
  m.def("serialize", py::overload_cast<const SmcInstance&>(&serialize));
  m.def("serialize", py::overload_cast<const HrlqInstance&>(&serialize));

  m.def("blocking_pairs", [](const SmcInstance& inst, const Pairs& pairs) {
    Pairs out;
    for (const Edge& e : blocking_pairs(inst, from_pairs(inst, pairs))) out.emplace_back(e.man, e.woman);
    return out;
  }, py::arg("inst"), py::arg("matching"));
  m.def("is_feasible", [](const SmcInstance& inst, const Pairs& pairs) { return is_feasible(inst, from_pairs(inst, pairs)); },
        py::arg("inst"), py::arg("matching"));
  m.def("param_profile", [](const SmcInstance& inst) { return profile_dict(param_profile(inst)); });
  m.def("gale_shapley", [](const SmcInstance& inst, bool men_propose) {
    return to_pairs(gale_shapley(inst, men_propose ? ProposalSide::MenPropose : ProposalSide::WomenPropose));
  }, py::arg("inst"), py::arg("men_propose") = true);

  m.def("select_algorithm", [](const py::dict& profile, std::optional<int> budget, int const_b, int const_delta) {
    AlgoChoice c = select_algorithm(profile_from(profile), budget, DispatchThresholds{const_b, const_delta});
    py::dict d;
    d["algorithm"] = std::string(algo_name(c.kind));
    d["swapped"] = c.swapped;
    d["exponential"] = c.exponential;
    d["rationale"] = c.rationale;
    return d;
  }, py::arg("profile"), py::arg("budget") = std::nullopt, py::arg("const_b") = 3, py::arg("const_delta") = 3);

  m.def("solve", [](const SmcInstance& inst, const std::string& algo, std::optional<int> budget, int threads) {
    if (!budget) budget = inst.budget();
    py::gil_scoped_release release;
    BudgetedResult r = run_choice(inst, choice_for(inst, algo, budget), budget, threads, algo == "auto");
    py::gil_scoped_acquire acquire;
    return budgeted(r);
  }, py::arg("inst"), py::arg("algo") = "auto", py::arg("budget") = std::nullopt, py::arg("threads") = 1,
        "Solve with the dispatcher or a named algorithm; None means no solution within the budget.");
  m.def("solve_hrlq", [](const HrlqInstance& inst, const std::string& algo, std::optional<int> budget) -> py::object {
    if (!budget) budget = inst.budget();
    AlgoKind k = AlgoKind::HrlqApprox;
    if (algo != "auto") {
      auto parsed = parse_algo_name(algo);
      if (!parsed) throw ValidationError("unknown algorithm: " + algo);
      k = *parsed;
    }
    HrlqBudgetedResult r = run_hrlq(inst, k, budget, 1, algo == "auto");
    if (is_no_solution(r)) return py::none();
    return hrlq_dict(solution(r));
  }, py::arg("inst"), py::arg("algo") = "auto", py::arg("budget") = std::nullopt);
  m.def("enumerate_oracle", [](const SmcInstance& inst) { return result_dict(enumerate_oracle(inst)); });
  m.def("solve_guess_delete", [](const SmcInstance& inst, int b, int threads) {
    return budgeted(solve_guess_delete(inst, b, threads));
  }, py::arg("inst"), py::arg("b"), py::arg("threads") = 1);
  m.def("solve_delta2", [](const SmcInstance& inst) { return result_dict(solve_delta2(inst)); });
  m.def("solve_fpt", [](const SmcInstance& inst) {
    FptStats stats;
    py::dict d = result_dict(solve_fpt(inst, &stats));
    d["parameter"] = stats.parameter;
    d["branches"] = stats.guesses;
    return d;
  });
  m.def("smc_approx", [](const SmcInstance& inst) { return result_dict(smc_approx(inst)); });
  m.def("hrlq_approx", [](const HrlqInstance& inst) { return hrlq_dict(hrlq_approx(inst)); });

  m.def("generate", [](const std::string& kind, const std::string& source, std::optional<int> k) {
    ReductionOutput out = generate(kind, source, k);
    return py::make_tuple(out.instance, out.budget);
  }, py::arg("kind"), py::arg("source"), py::arg("k") = std::nullopt,
        "Build a hard instance (mcc, force, two, vc or x3c) from source text; returns (instance, budget).");
  m.def("verify_generated", [](const std::string& kind, const std::string& source, std::optional<int> k,
                               bool source_answer) {
    return verify_reduction(generate(kind, source, k), source_answer);
  }, py::arg("kind"), py::arg("source"), py::arg("k") = std::nullopt, py::arg("source_answer") = true);
}
