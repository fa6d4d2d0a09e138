"""Short-circuit evaluation trees.

An evaluation tree is a binary decision tree whose internal nodes are labeled
with atoms and whose leaves are truth values.  The left child is taken when the
atom evaluates to true, the right child when it evaluates to false.  The tree
se(f) encodes exactly the left-sequential short-circuit evaluation of f.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .formula_core import Con, Const, Dis, Formula, Lit, Neg, is_valid_atom


@dataclass(frozen=True)
class Leaf:
    value: bool


@dataclass(frozen=True)
class Branch:
    left: "EvalTree"
    atom: str
    right: "EvalTree"


EvalTree = Union[Leaf, Branch]

TRUE_LEAF = Leaf(True)
FALSE_LEAF = Leaf(False)


@dataclass(frozen=True)
class LeafProfile:
    has_true: bool
    has_false: bool
    leaf_count: int


def substitute(x: EvalTree, y: EvalTree, z: EvalTree) -> EvalTree:
    """Replace every true leaf of x by y and every false leaf by z.

    Implemented with an explicit stack so deep trees do not hit the
    interpreter's recursion limit.
    """
    # Post-order rebuild: ('visit', node) expands, ('build', node) pops the two
    # rebuilt children off the result stack.
    results: list[EvalTree] = []
    stack: list[tuple[bool, EvalTree]] = [(False, x)]
    while stack:
        build, node = stack.pop()
        if isinstance(node, Leaf):
            results.append(y if node.value else z)
        elif not build:
            stack.append((True, node))
            stack.append((False, node.right))
            stack.append((False, node.left))
        else:
            right = results.pop()
            left = results.pop()
            results.append(Branch(left, node.atom, right))
    return results[0]


def se(f: Formula) -> EvalTree:
    """The short-circuit evaluation tree of f:

        se(T) = T            se(a) = T <| a |> F
        se(!x) = se(x)[T -> F, F -> T]
        se(x && y) = se(x)[T -> se(y), F -> F]

    plus the derived rules se(F) = F and se(x || y) = se(x)[T -> T, F -> se(y)].
    """
    results: list[EvalTree] = []
    stack: list[tuple[bool, Formula]] = [(False, f)]
    while stack:
        build, node = stack.pop()
        if isinstance(node, Const):
            results.append(Leaf(node.value))
        elif isinstance(node, Lit):
            results.append(Branch(TRUE_LEAF, node.atom, FALSE_LEAF))
        elif not build:
            stack.append((True, node))
            if isinstance(node, Neg):
                stack.append((False, node.inner))
            else:
                stack.append((False, node.right))
                stack.append((False, node.left))
        elif isinstance(node, Neg):
            results.append(substitute(results.pop(), FALSE_LEAF, TRUE_LEAF))
        elif isinstance(node, Con):
            right = results.pop()
            left = results.pop()
            results.append(substitute(left, right, FALSE_LEAF))
        else:
            right = results.pop()
            left = results.pop()
            results.append(substitute(left, TRUE_LEAF, right))
    return results[0]


def depth(t: EvalTree) -> int:
    if isinstance(t, Leaf):
        return 0
    # Iterative to cope with chain-shaped trees.
    best = 0
    stack: list[tuple[EvalTree, int]] = [(t, 0)]
    while stack:
        node, d = stack.pop()
        if isinstance(node, Leaf):
            best = max(best, d)
        else:
            stack.append((node.left, d + 1))
            stack.append((node.right, d + 1))
    return best


def leaf_profile(t: EvalTree) -> LeafProfile:
    has_true = False
    has_false = False
    count = 0
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Leaf):
            count += 1
            if node.value:
                has_true = True
            else:
                has_false = True
        else:
            stack.append(node.left)
            stack.append(node.right)
    return LeafProfile(has_true, has_false, count)


def is_open(t: EvalTree) -> bool:
    profile = leaf_profile(t)
    return profile.has_true and profile.has_false


def render_tree(t: EvalTree) -> str:
    """Fully parenthesised infix form, e.g. ``(F < b > T) < a > F``."""
    if isinstance(t, Leaf):
        return "T" if t.value else "F"
    left = render_tree(t.left)
    right = render_tree(t.right)
    if isinstance(t.left, Branch):
        left = f"({left})"
    if isinstance(t.right, Branch):
        right = f"({right})"
    return f"{left} < {t.atom} > {right}"


_TREE_TOKEN_RE = re.compile(r"\s*(?:(?P<lpar>\()|(?P<rpar>\))|(?P<lt><)|(?P<gt>>)|(?P<word>[A-Za-z_][A-Za-z0-9_]*))")


class TreeParseError(ValueError):
    pass


def parse_tree(text: str) -> EvalTree:
    """Inverse of render_tree."""
    tokens: list[tuple[str, str]] = []
    pos = 0
    while pos < len(text):
        match = _TREE_TOKEN_RE.match(text, pos)
        if match is None:
            if not text[pos:].strip():
                break
            raise TreeParseError(f"unexpected input at position {pos}")
        kind = match.lastgroup
        assert kind is not None
        tokens.append((kind, match.group(kind)))
        pos = match.end()

    index = 0

    def atom_or_leaf() -> EvalTree:
        nonlocal index
        if index >= len(tokens):
            raise TreeParseError("unexpected end of input")
        kind, value = tokens[index]
        if kind == "lpar":
            index += 1
            inner = tree()
            if index >= len(tokens) or tokens[index][0] != "rpar":
                raise TreeParseError("expected ')'")
            index += 1
            return inner
        if kind == "word":
            index += 1
            if value == "T":
                return TRUE_LEAF
            if value == "F":
                return FALSE_LEAF
            raise TreeParseError(f"expected leaf or '(', found atom {value!r}")
        raise TreeParseError(f"unexpected token {value!r}")

    def tree() -> EvalTree:
        nonlocal index
        left = atom_or_leaf()
        if index < len(tokens) and tokens[index][0] == "lt":
            index += 1
            if index >= len(tokens) or tokens[index][0] != "word" or not is_valid_atom(tokens[index][1]):
                raise TreeParseError("expected atom after '<'")
            atom = tokens[index][1]
            index += 1
            if index >= len(tokens) or tokens[index][0] != "gt":
                raise TreeParseError("expected '>'")
            index += 1
            right = atom_or_leaf()
            return Branch(left, atom, right)
        return left

    result = tree()
    if index != len(tokens):
        raise TreeParseError("unexpected trailing input")
    return result


def export_dot(t: EvalTree) -> str:
    """DOT digraph: atoms as ellipses, leaves as boxes labeled T/F,
    true edges labeled "T", false edges labeled "F"."""
    lines = ["digraph evaltree {"]
    counter = 0

    def emit(node: EvalTree) -> int:
        nonlocal counter
        node_id = counter
        counter += 1
        if isinstance(node, Leaf):
            label = "T" if node.value else "F"
            lines.append(f'  n{node_id} [shape=box, label="{label}"];')
        else:
            lines.append(f'  n{node_id} [shape=ellipse, label="{node.atom}"];')
            left_id = emit(node.left)
            right_id = emit(node.right)
            lines.append(f'  n{node_id} -> n{left_id} [label="T"];')
            lines.append(f'  n{node_id} -> n{right_id} [label="F"];')
        return node_id

    emit(t)
    lines.append("}")
    return "\n".join(lines)
