import random

import pytest
from hypothesis import given, settings, strategies as st

from sclsat.eval_tree import se
from sclsat.formula_core import parse
from sclsat.paths import is_memorizing, is_repetition_proof, result
from sclsat.valuation_algebras import (
    CONTRACTIVE,
    FREE,
    AlgebraClass,
    FiniteAlgebra,
    MEMORIZING,
    REPETITION_PROOF,
    STATIC,
    StateError,
    build_cva,
    build_sva,
    build_va,
    class_check,
    congruent,
    deriv_formula,
    eval_formula,
    evaluation_path,
    fixture_algebras,
    project_static,
    random_algebra,
)

from test_formula_core import formulas
from test_paths import paths


FIG_PATH = (("a", True), ("b", False), ("b", False), ("b", True), ("a", False), ("a", False))


def random_algebras():
    targets = st.sampled_from([FREE, REPETITION_PROOF, CONTRACTIVE, MEMORIZING, STATIC])
    return st.builds(
        random_algebra,
        targets,
        max_states=st.integers(1, 4),
        seed=st.integers(0, 10_000),
    )


class TestEvaluation:
    def test_counter_examples(self):
        counter = fixture_algebras()["counter"]
        assert eval_formula(counter, parse("a && b"), 2) is True
        assert eval_formula(counter, parse("b"), 2) is False
        assert deriv_formula(counter, parse("a && a"), 0) == 2
        assert evaluation_path(counter, parse("a && b"), 0) == (
            ("a", True),
            ("b", True),
        )

    def test_short_circuit_skips_right_operand(self):
        counter = fixture_algebras()["counter"]
        assert deriv_formula(counter, parse("b && a"), 0) == 0
        assert evaluation_path(counter, parse("b && a"), 0) == (("b", False),)

    def test_negation_keeps_state(self):
        counter = fixture_algebras()["counter"]
        assert eval_formula(counter, parse("!a"), 0) is False
        assert deriv_formula(counter, parse("!a"), 0) == 1

    def test_constants_touch_nothing(self):
        counter = fixture_algebras()["counter"]
        assert eval_formula(counter, parse("T"), 5) is True
        assert deriv_formula(counter, parse("F"), 5) == 5
        assert evaluation_path(counter, parse("T || a"), 5) == ()

    def test_window_escape_raises(self):
        counter = fixture_algebras()["counter"]
        with pytest.raises(StateError):
            deriv_formula(counter, parse("a"), 63)

    def test_deep_formula_is_iterative(self):
        from sclsat.formula_core import Con, Lit, Neg

        counter = fixture_algebras()["counter"]
        g = Lit("b")
        for _ in range(30000):
            g = Neg(g)
        assert eval_formula(counter, g, 1) is True
        from sclsat.formula_core import Dis

        h = Lit("b")
        for _ in range(5000):
            h = Dis(Lit("b"), h)
        assert eval_formula(counter, h, 0) is False
        assert deriv_formula(counter, h, 0) == 0

    @settings(max_examples=100)
    @given(formulas(atoms=("a", "b")), st.integers(0, 10))
    def test_path_replays_to_the_same_yield(self, f, h):
        counter = fixture_algebras()["counter"]
        try:
            value = eval_formula(counter, f, h)
            p = evaluation_path(counter, f, h)
        except StateError:
            return
        assert result(p, se(f)) is value


class TestCongruence:
    def test_counter_congruences(self):
        counter = fixture_algebras()["counter"]
        assert congruent(counter, parse("a && T"), parse("a"))
        assert congruent(counter, parse("!!a"), parse("a"))
        # a steps the counter, so double inspection differs in derivative
        assert not congruent(counter, parse("a && a"), parse("a"))

    def test_trivial_identifies_more(self):
        trivial = fixture_algebras()["trivial"]
        assert congruent(trivial, parse("a && a"), parse("a"))
        assert congruent(trivial, parse("a || b"), parse("a"))


class TestClassCheck:
    def test_fixture_classes(self):
        fixtures = fixture_algebras()
        assert class_check(fixtures["trivial"]) == STATIC
        counter_class = class_check(fixtures["counter"])
        assert not counter_class.repetition_proof or not counter_class.contractive

    def test_chain_is_cumulative(self):
        for seed in range(20):
            for target in (FREE, REPETITION_PROOF, CONTRACTIVE, MEMORIZING, STATIC):
                c = class_check(random_algebra(target, max_states=3, seed=seed))
                if c.static:
                    assert c.memorizing
                if c.memorizing:
                    assert c.contractive
                if c.contractive:
                    assert c.repetition_proof

    def test_path_algebra_of_flipping_path_is_not_repetition_proof(self):
        v = build_va((("a", True), ("a", False)))
        assert not class_check(v).repetition_proof


class TestConstructors:
    def test_path_algebra_tables(self):
        v = build_va(FIG_PATH)
        assert v.num_states == len(FIG_PATH) + 1 == 7
        # consuming the matching entry advances; anything else stands still
        assert v.atom_deriv("a", 1) == 2
        assert v.atom_deriv("b", 1) == 1
        assert v.atom_deriv("b", 2) == 3
        # yields report the entry at the latest matching position up to here
        assert v.atom_eval("a", 1) is True
        assert v.atom_eval("a", 5) is False
        assert v.atom_eval("a", 7) is False
        assert v.atom_eval("b", 2) is False
        assert v.atom_eval("b", 5) is True

    def test_deriv_stays_within_one_step(self):
        v = build_va(FIG_PATH)
        for a in v.alphabet:
            for i in v.states:
                assert i <= v.atom_deriv(a, i) <= min(i + 1, v.num_states)

    @given(paths)
    def test_round_trip_on_tree_walks(self, p):
        # any formula whose evaluation follows p from state 1 replays p exactly
        v = build_va(p)
        from sclsat.formula_core import Con, Lit, Neg, TRUE

        f = TRUE
        for atom, value in reversed(p):
            lit = Lit(atom) if value else Neg(Lit(atom))
            f = Con(lit, f)
        assert eval_formula(v, f, 1) is True
        assert evaluation_path(v, f, 1) == p

    @given(paths)
    def test_cva_is_contractive(self, p):
        assert class_check(build_cva(p)).contractive

    @given(paths)
    def test_sva_is_static(self, p):
        assert class_check(build_sva(p)) == STATIC

    def test_rp_path_gives_rp_algebra(self):
        p = (("a", True), ("a", True), ("b", False))
        assert class_check(build_va(p)).repetition_proof

    def test_extra_alphabet(self):
        v = build_va((("a", True),), alphabet=("a", "b"))
        assert v.alphabet == ("a", "b")
        assert v.atom_eval("b", 1) is False
        assert v.atom_deriv("b", 1) == 1


class TestProjection:
    def test_requires_static(self):
        with pytest.raises(ValueError):
            project_static(build_va((("a", True), ("b", False))), 1)

    @settings(max_examples=60)
    @given(formulas(atoms=("a", "b", "c"), max_leaves=6), st.integers(0, 500))
    def test_agrees_on_yields(self, f, seed):
        v = random_algebra(STATIC, max_states=4, seed=seed)
        h = random.Random(seed).choice(v.states)
        w = project_static(v, h)
        assert eval_formula(w, f, 1) == eval_formula(v, f, h)


class TestLiftedLaws:
    @settings(max_examples=60)
    @given(formulas(atoms=("a", "b"), max_leaves=5), st.integers(0, 300))
    def test_repetition_proof_lifts_to_paths(self, f, seed):
        v = random_algebra(REPETITION_PROOF, max_states=4, alphabet=("a", "b"), seed=seed)
        for h in v.states:
            assert is_repetition_proof(evaluation_path(v, f, h))

    @settings(max_examples=60)
    @given(formulas(atoms=("a", "b"), max_leaves=5), st.integers(0, 300))
    def test_memorizing_lifts_to_paths(self, f, seed):
        v = random_algebra(MEMORIZING, max_states=4, alphabet=("a", "b"), seed=seed)
        for h in v.states:
            assert is_memorizing(evaluation_path(v, f, h))

    @settings(max_examples=60)
    @given(
        formulas(atoms=("a", "b"), max_leaves=4),
        formulas(atoms=("a", "b"), max_leaves=4),
        st.integers(0, 300),
    )
    def test_memorizing_laws_on_formulas(self, x, y, seed):
        v = random_algebra(MEMORIZING, max_states=4, alphabet=("a", "b"), seed=seed)
        for h in v.states:
            xh = deriv_formula(v, x, h)
            mid = deriv_formula(v, y, xh)
            assert eval_formula(v, x, mid) == eval_formula(v, x, xh)
            assert deriv_formula(v, x, mid) == mid

    @settings(max_examples=60)
    @given(
        formulas(atoms=("a", "b"), max_leaves=4),
        formulas(atoms=("a", "b"), max_leaves=4),
        st.integers(0, 300),
    )
    def test_static_laws_on_formulas(self, x, y, seed):
        v = random_algebra(STATIC, max_states=4, alphabet=("a", "b"), seed=seed)
        for h in v.states:
            assert eval_formula(v, x, deriv_formula(v, y, h)) == eval_formula(v, x, h)


class TestRandomGeneration:
    def test_deterministic(self):
        a = random_algebra(CONTRACTIVE, seed=7)
        b = random_algebra(CONTRACTIVE, seed=7)
        assert a == b

    def test_meets_requested_class(self):
        for seed in range(30):
            for target in (FREE, REPETITION_PROOF, CONTRACTIVE, MEMORIZING, STATIC):
                v = random_algebra(target, max_states=4, seed=seed)
                assert class_check(v).includes(target)
                assert set(v.alphabet) >= {"a", "b", "c"}

    def test_rejects_bad_states(self):
        with pytest.raises(ValueError):
            random_algebra(FREE, max_states=0)


class TestSerialization:
    def test_json_round_trip(self):
        v = build_va(FIG_PATH)
        assert FiniteAlgebra.from_json(v.to_json()) == v

    def test_validation(self):
        with pytest.raises(ValueError):
            FiniteAlgebra(1, ("a",), {"a": (True,)}, {"a": (2,)})
        with pytest.raises(ValueError):
            FiniteAlgebra(0, (), {}, {})


class TestAlgebraClass:
    def test_includes(self):
        assert STATIC.includes(FREE)
        assert STATIC.includes(MEMORIZING)
        assert not REPETITION_PROOF.includes(CONTRACTIVE)
        assert AlgebraClass(repetition_proof=True).includes(REPETITION_PROOF)
