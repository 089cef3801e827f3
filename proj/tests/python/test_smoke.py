import itertools
import pathlib

import pytest

import smcover

DATA = pathlib.Path(__file__).resolve().parents[1] / "data"


def load(name):
    return smcover.parse((DATA / name).read_text())


def brute_optimum(inst):
    """Minimum blocking count over feasible matchings, by enumeration."""
    edges = [(m, w) for m in range(inst.num_men) for w in inst.man_list(m)]
    best = None
    for r in range(len(edges) + 1):
        for subset in itertools.combinations(edges, r):
            men = [m for m, _ in subset]
            women = [w for _, w in subset]
            if len(set(men)) < r or len(set(women)) < r:
                continue
            if not smcover.is_feasible(inst, list(subset)):
                continue
            count = len(smcover.blocking_pairs(inst, list(subset)))
            best = count if best is None else min(best, count)
    return best


def test_fixture_a_solves_optimally():
    inst = load("fix_a.smc")
    r = smcover.solve(inst)
    assert sorted(r["matching"]) == [(0, 1), (1, 0)]
    assert r["blocking"] == [(0, 0)]
    assert r["optimal"]
    assert smcover.solve(inst, budget=0) is None


def test_infeasible_fixture():
    r = smcover.solve(load("fix_b.smc"))
    assert r["infeasible"]


def test_dispatcher_routes():
    prof = smcover.param_profile(load("fix_a.smc"))
    assert prof["delta_m"] == 2 and prof["n_star_women"] == 1
    assert smcover.select_algorithm(prof)["algorithm"] == "delta2"
    choice = smcover.select_algorithm({"delta_m": 3, "delta_w": 2, "n_star_women": 1, "n_star_men": 1})
    assert choice["algorithm"] == "fpt"
    assert smcover.select_algorithm(prof, budget=1)["algorithm"] == "guess-delete"


def test_named_algorithms_agree_with_enumeration():
    inst = load("fix_e.smc")
    want = brute_optimum(inst)
    assert want == 1
    for algo in ("auto", "fpt", "guess-delete", "oracle", "smc-approx"):
        r = smcover.solve(inst, algo=algo)
        assert len(r["blocking"]) == want, algo
    fpt = smcover.solve_fpt(inst)
    assert fpt["parameter"] <= 2 * want
    assert smcover.enumerate_oracle(inst)["optimal"]


def test_precondition_and_parse_errors():
    with pytest.raises(smcover.PreconditionError):
        smcover.solve(load("fix_a.smc"), algo="gale-shapley")
    with pytest.raises(smcover.ValidationError):
        smcover.parse("kind: smc\nmen: m1\nwomen w1\n")
    with pytest.raises(ValueError):
        smcover.SmcInstance([[0]], [[]])


def test_constructed_instance_round_trip():
    inst = smcover.SmcInstance([[0, 1], [0]], [[0, 1], [0]], star_women=[1])
    again = smcover.parse(smcover.serialize(inst))
    assert again.num_men == 2 and again.star_women == [1]
    assert smcover.gale_shapley(inst) == [(0, 0)]
    assert smcover.solve(inst)["blocking"] == [(0, 0)]


def test_hrlq():
    inst = load("fix_c.hrlq")
    r = smcover.solve_hrlq(inst)
    assert len(r["blocking"]) == 1 and r["optimal"]
    approx = smcover.hrlq_approx(inst)
    assert len(approx["blocking"]) <= (inst.delta_r - 1) * inst.lower_sum


def test_generated_triangle():
    source = (DATA / "triangle.cg").read_text()
    inst, budget = smcover.generate("mcc", source)
    assert budget == 9 and len(inst.star_women) == 42
    assert smcover.verify_generated("mcc", source, source_answer=True)
    forced, _ = smcover.generate("force", source)
    assert len(forced.star_women) == 1
    vc, vc_budget = smcover.generate("vc", (DATA / "k3.graph").read_text(), k=2)
    assert vc_budget == 8
    assert smcover.solve(vc, algo="oracle")["optimal"]
