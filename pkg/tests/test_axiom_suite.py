import random

import pytest

from sclsat.axiom_suite import (
    AxiomScheme,
    MissingBindingError,
    SYSTEMS,
    axiom_table,
    check_fscl_soundness,
    check_model_soundness,
    instantiate,
)
from sclsat.formula_core import Lit, parse, render
from sclsat.valuation_algebras import (
    CONTRACTIVE,
    MEMORIZING,
    REPETITION_PROOF,
    STATIC,
    random_algebra,
)


def _random_formula(rng, atoms, max_nodes):
    from sclsat.formula_core import Con, Dis, FALSE, Neg, TRUE

    def build(budget):
        if budget == 1:
            return rng.choice([TRUE, FALSE] + [Lit(a) for a in atoms])
        kind = rng.randrange(3)
        if kind == 0 or budget == 2:
            return Neg(build(budget - 1))
        split = rng.randrange(1, budget - 1)
        ctor = Con if kind == 1 else Dis
        return ctor(build(split), build(budget - 1 - split))

    return build(rng.randrange(1, max_nodes + 1))


def _random_bindings(rng, scheme, atoms=("a", "b", "c")):
    subst = {
        v: _random_formula(rng, atoms, 9) for v in scheme.formula_vars
    }
    atom_subst = {v: rng.choice(atoms) for v in scheme.atom_vars}
    return subst, atom_subst


class TestTables:
    def test_sizes(self):
        assert [len(axiom_table(s)) for s in SYSTEMS] == [10, 18, 14, 13, 14]

    def test_defining_flags(self):
        table = axiom_table("EqFSCL")
        assert [s.defining for s in table] == [True, True] + [False] * 8

    def test_known_axioms_present(self):
        rendered = {render(s.lhs) + " = " + render(s.rhs) for s in axiom_table("EqRPSCL")}
        assert "a || a && x = a || a" in rendered
        rendered = {render(s.lhs) + " = " + render(s.rhs) for s in axiom_table("EqSSCL")}
        assert "x && F = F" in rendered

    def test_mscl_drops_the_last_two_base_axioms(self):
        names = [s.name for s in axiom_table("EqMSCL")]
        assert "EqFSCL-9" not in names and "EqFSCL-10" not in names
        assert "EqFSCL-8" in names

    def test_unknown_system(self):
        with pytest.raises(ValueError):
            axiom_table("EqXYZ")


class TestInstantiate:
    def test_simple(self):
        scheme = next(s for s in axiom_table("EqFSCL") if s.name == "EqFSCL-4")
        lhs, rhs = instantiate(scheme, {"x": parse("p && q")})
        assert lhs == parse("T && (p && q)")
        assert rhs == parse("p && q")

    def test_atom_metavars(self):
        scheme = next(s for s in axiom_table("EqCSCL") if s.name == "EqCSCL-3")
        lhs, rhs = instantiate(scheme, {}, {"a": "p"})
        assert lhs == parse("p || !p")
        assert rhs == parse("p || T")

    def test_missing_binding(self):
        scheme = next(s for s in axiom_table("EqFSCL") if s.name == "EqFSCL-7")
        with pytest.raises(MissingBindingError):
            instantiate(scheme, {"x": parse("a")})


class TestTreeSoundness:
    def test_examples(self):
        assert check_fscl_soundness(parse("!!p"), parse("p"))
        assert check_fscl_soundness(parse("p && F"), parse("!p && F"))
        assert not check_fscl_soundness(parse("p && q"), parse("q && p"))

    def test_all_base_axioms_hold_on_random_instances(self):
        rng = random.Random(0)
        for scheme in axiom_table("EqFSCL"):
            for _ in range(50):
                lhs, rhs = instantiate(scheme, *_random_bindings(rng, scheme))
                assert check_fscl_soundness(lhs, rhs), scheme.name


class TestModelSoundness:
    SYSTEM_CLASS = {
        "EqRPSCL": REPETITION_PROOF,
        "EqCSCL": CONTRACTIVE,
        "EqMSCL": MEMORIZING,
        "EqSSCL": STATIC,
    }

    @pytest.mark.parametrize("system", ["EqRPSCL", "EqCSCL", "EqMSCL", "EqSSCL"])
    def test_schemes_hold_on_matching_class(self, system):
        rng = random.Random(hash(system) % 1000)
        for seed in range(10):
            v = random_algebra(
                self.SYSTEM_CLASS[system], max_states=4, alphabet=("a", "b", "c"), seed=seed
            )
            for scheme in axiom_table(system):
                lhs, rhs = instantiate(scheme, *_random_bindings(rng, scheme))
                assert check_model_soundness(v, lhs, rhs), (system, scheme.name, seed)

    def test_sscl_absorption_observes_side_effects(self):
        # An algebra that moves state can satisfy the static yield conditions
        # and still distinguish x && F from F by its derivative; this is why
        # static sampling keeps derivatives trivial.
        from sclsat.valuation_algebras import FiniteAlgebra, class_check

        stepper = FiniteAlgebra(
            num_states=2,
            alphabet=("p",),
            eval_table={"p": (True, True)},
            deriv_table={"p": (2, 2)},
        )
        assert class_check(stepper).static
        assert not check_model_soundness(stepper, parse("p && F"), parse("F"))

    def test_static_samples_are_effect_free(self):
        for seed in range(20):
            v = random_algebra(STATIC, max_states=5, seed=seed)
            assert check_model_soundness(v, parse("a && F"), parse("F"))
