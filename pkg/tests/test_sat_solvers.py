import json

import pytest
from hypothesis import given, settings

from sclsat.eval_tree import leaf_profile, se
from sclsat.formula_core import Con, Lit, Neg, node_count, parse
from sclsat.sat_solvers import (
    Logic,
    check_path,
    falsify,
    sat_boolean,
    sat_brute_control,
    sat_brute_force,
    sat_direct,
    sat_open,
    solve,
    verify_witness,
)
from sclsat.formula_core import enumerate_formulas, is_constant_free

from test_formula_core import formulas

ALL_LOGICS = list(Logic)
SMALL_SUITE = list(enumerate_formulas(["a", "b"], 5))


class TestKnownInstances:
    def test_contradiction(self):
        f = parse("a && !a")
        assert solve(Logic.FSCL, f).answer == "yes"
        for logic in (Logic.RPSCL, Logic.CSCL, Logic.MSCL, Logic.SSCL):
            assert solve(logic, f).answer == "no"

    def test_witnessed_everywhere(self):
        f = parse("(a || b) && !a")
        for logic in ALL_LOGICS:
            out = solve(logic, f)
            assert out.answer == "yes"
            assert verify_witness(f, out.witness)
            assert check_path(logic, out.witness)

    def test_canonical_open_witness(self):
        out = sat_open(Logic.RPSCL, parse("(a || b) && !a"))
        assert out.witness == (("a", False), ("b", True), ("a", False))

    def test_constants(self):
        for logic in ALL_LOGICS:
            assert solve(logic, parse("T")).witness == ()
            assert solve(logic, parse("T")).answer == "yes"
            assert solve(logic, parse("F")).answer == "no"

    def test_direct_is_partial_above_fscl(self):
        assert sat_direct(Logic.MSCL, parse("a && !a")).answer == "unknown"
        assert sat_direct(Logic.FSCL, parse("a && !a")).answer == "yes"

    def test_boolean_is_partial_below_mscl(self):
        out = sat_boolean(Logic.FSCL, parse("a && !a"))
        assert out.answer == "unknown"


class TestOracleAgreement:
    def test_small_suite_all_logics(self):
        for f in SMALL_SUITE:
            for logic in ALL_LOGICS:
                oracle = sat_brute_control(logic, f)
                assert sat_brute_force(logic, f).answer == oracle.answer
                auto = solve(logic, f)
                assert auto.answer == oracle.answer
                assert auto.answer in ("yes", "no")
                for partial in (sat_direct, sat_open, sat_boolean):
                    got = partial(logic, f)
                    if got.answer != "unknown":
                        assert got.answer == oracle.answer

    def test_monotonicity(self):
        # a Yes at a stricter discipline implies Yes at every looser one
        order = [Logic.MSCL, Logic.RPSCL, Logic.FSCL]
        for f in SMALL_SUITE:
            answers = [solve(logic, f).answer for logic in order]
            for strict, loose in zip(answers, answers[1:]):
                if strict == "yes":
                    assert loose == "yes"

    def test_collapse(self):
        for f in SMALL_SUITE:
            assert solve(Logic.RPSCL, f).answer == solve(Logic.CSCL, f).answer
            assert solve(Logic.MSCL, f).answer == solve(Logic.SSCL, f).answer

    def test_leaf_characterization(self):
        for f in SMALL_SUITE:
            has_true = leaf_profile(se(f)).has_true
            assert (solve(Logic.FSCL, f).answer == "yes") == has_true

    def test_constant_free_totality(self):
        for f in SMALL_SUITE:
            if is_constant_free(f):
                assert solve(Logic.FSCL, f).answer == "yes"
                assert falsify(Logic.FSCL, f).answer == "yes"


class TestWitnesses:
    @settings(max_examples=150)
    @given(formulas(max_leaves=10))
    def test_yes_witnesses_verify(self, f):
        for logic in ALL_LOGICS:
            out = solve(logic, f)
            if out.answer == "yes":
                assert verify_witness(f, out.witness)
                assert check_path(logic, out.witness)

    def test_verify_witness_rejects(self):
        f = parse("a && !b")
        assert verify_witness(f, (("a", True), ("b", False)))
        assert not verify_witness(f, (("a", True), ("b", True)))
        assert not verify_witness(f, (("a", True),))
        assert not verify_witness(f, (("b", True), ("b", False)))

    def test_falsify_examples(self):
        assert falsify(Logic.SSCL, parse("a || !a")).answer == "no"
        out = falsify(Logic.FSCL, parse("a"))
        assert out.answer == "yes" and out.witness == (("a", False),)


class TestInstrumentation:
    def test_linear_solvers_stay_within_budget(self):
        for f in SMALL_SUITE:
            budget = 2 * node_count(f)
            assert sat_direct(Logic.FSCL, f).node_visits <= budget
            assert sat_open(Logic.RPSCL, f).node_visits <= budget

    def test_chain_formula(self):
        f = Lit("x0")
        for i in range(1, 5000):
            f = Con(Lit(f"x{i}"), f)
        f = Neg(f)
        assert node_count(f) == 10000
        for logic, solver in [(Logic.FSCL, sat_direct), (Logic.RPSCL, sat_open)]:
            out = solver(logic, f)
            assert out.answer == "yes"
            assert out.node_visits <= 2 * 10000
        assert solve(Logic.MSCL, f).answer == "yes"


class TestDispatch:
    def test_explicit_strategies_run_as_is(self):
        out = solve(Logic.MSCL, parse("a && !a"), strategy="direct")
        assert out.answer == "unknown"
        assert out.solver == "direct"

    def test_unknown_strategy(self):
        with pytest.raises(ValueError):
            solve(Logic.FSCL, parse("a"), strategy="magic")

    def test_outcome_json_schema(self):
        out = solve(Logic.RPSCL, parse("(a || b) && !a"))
        payload = json.loads(out.to_json())
        assert set(payload) == {"answer", "witness", "logic", "solver", "node_visits"}
        assert payload["answer"] == "yes"
        assert payload["logic"] == "RPSCL"
        assert payload["witness"] == [["a", False], ["b", True], ["a", False]]

    def test_no_outcome_has_no_witness(self):
        out = solve(Logic.SSCL, parse("a && !a"))
        assert out.witness is None
        assert json.loads(out.to_json())["witness"] is None
