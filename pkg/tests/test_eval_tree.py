import pytest
from hypothesis import given, strategies as st

from sclsat.eval_tree import (
    Branch,
    FALSE_LEAF,
    Leaf,
    TRUE_LEAF,
    TreeParseError,
    depth,
    export_dot,
    is_open,
    leaf_profile,
    parse_tree,
    render_tree,
    se,
    substitute,
)
from sclsat.formula_core import (
    Con,
    Const,
    Dis,
    Lit,
    Neg,
    enumerate_formulas,
    is_constant_free,
    parse,
)


def trees(atoms=("a", "b", "c"), max_leaves=8):
    leaf = st.sampled_from([TRUE_LEAF, FALSE_LEAF])
    return st.recursive(
        leaf,
        lambda sub: st.builds(
            Branch, sub, st.sampled_from(list(atoms)), sub
        ),
        max_leaves=max_leaves,
    )


def se_reference(f):
    """Naive recursive construction, used as the oracle for the iterative se."""
    if isinstance(f, Const):
        return Leaf(f.value)
    if isinstance(f, Lit):
        return Branch(TRUE_LEAF, f.atom, FALSE_LEAF)
    if isinstance(f, Neg):
        return substitute(se_reference(f.inner), FALSE_LEAF, TRUE_LEAF)
    if isinstance(f, Con):
        return substitute(se_reference(f.left), se_reference(f.right), FALSE_LEAF)
    return substitute(se_reference(f.left), TRUE_LEAF, se_reference(f.right))


class TestSe:
    def test_examples(self):
        assert se(parse("T")) == TRUE_LEAF
        assert se(parse("F")) == FALSE_LEAF
        assert se(parse("a")) == Branch(TRUE_LEAF, "a", FALSE_LEAF)
        assert render_tree(se(parse("a && !b"))) == "(F < b > T) < a > F"

    def test_disjunction_with_true_collapses(self):
        assert se(parse("T || a")) == TRUE_LEAF

    def test_matches_reference_exhaustively(self):
        for f in enumerate_formulas(["a", "b"], 5):
            assert se(f) == se_reference(f)

    def test_deep_chain(self):
        f = Lit("x0")
        for i in range(1, 20000):
            f = Con(Lit(f"x{i}"), f)
        t = se(f)
        assert depth(t) == 20000
        assert leaf_profile(t).leaf_count == 20001


class TestSubstitute:
    @given(trees(), trees(max_leaves=3), trees(max_leaves=3))
    def test_leaf_profile_arithmetic(self, x, y, z):
        px, py, pz = leaf_profile(x), leaf_profile(y), leaf_profile(z)
        true_leaves = sum(1 for _ in _true_leaves(x))
        false_leaves = px.leaf_count - true_leaves
        combined = leaf_profile(substitute(x, y, z))
        assert combined.leaf_count == (
            true_leaves * py.leaf_count + false_leaves * pz.leaf_count
        )

    @given(trees(), trees(max_leaves=3), trees(max_leaves=3))
    def test_openness_propagation(self, x, y, z):
        if is_open(x) and (is_open(y) or is_open(z)):
            assert is_open(substitute(x, y, z))

    def test_identity(self):
        t = se(parse("(a || b) && c"))
        assert substitute(t, TRUE_LEAF, FALSE_LEAF) == t


def _true_leaves(t):
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Leaf):
            if node.value:
                yield node
        else:
            stack.extend([node.left, node.right])


class TestOpenness:
    def test_constant_free_implies_open(self):
        for f in enumerate_formulas(["a", "b"], 5):
            if is_constant_free(f):
                assert is_open(se(f))

    def test_closed_trees(self):
        assert not is_open(se(parse("a || T")))
        profile = leaf_profile(se(parse("a || T")))
        assert profile.has_true and not profile.has_false


class TestTreeText:
    @given(trees())
    def test_round_trip(self, t):
        assert parse_tree(render_tree(t)) == t

    def test_parse_examples(self):
        assert parse_tree("T") == TRUE_LEAF
        assert parse_tree("(F < b > T) < a > F") == se(parse("a && !b"))

    def test_parse_errors(self):
        for bad in ["", "(T", "T < a", "T < T > F", "T F"]:
            with pytest.raises(TreeParseError):
                parse_tree(bad)


class TestDot:
    def test_shapes_and_edges(self):
        dot = export_dot(se(parse("a")))
        assert dot.startswith("digraph")
        assert dot.count("shape=ellipse") == 1
        assert dot.count("shape=box") == 2
        assert '[label="T"];' in dot and '[label="F"];' in dot
