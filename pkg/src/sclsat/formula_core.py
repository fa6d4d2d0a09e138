"""Formula abstract syntax, text grammar, complexity measure, and abbreviation
expansion for short-circuit logic.

Formulas are built from the constants T and F, named atoms, negation,
left-sequential conjunction (&&) and left-sequential disjunction (||).
F and || are first-class constructors; ``expand_abbreviations`` rewrites them
to the two-constructor core (F = !T, x || y = !(!x && !y)).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

ATOM_PATTERN = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
RESERVED_WORDS = frozenset({"T", "F"})


def is_valid_atom(name: str) -> bool:
    return bool(ATOM_PATTERN.match(name)) and name not in RESERVED_WORDS


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Lit:
    atom: str

    def __post_init__(self) -> None:
        if not is_valid_atom(self.atom):
            raise ValueError(f"invalid atom name: {self.atom!r}")


@dataclass(frozen=True)
class Neg:
    inner: "Formula"


@dataclass(frozen=True)
class Con:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Dis:
    left: "Formula"
    right: "Formula"


Formula = Union[Const, Lit, Neg, Con, Dis]

TRUE = Const(True)
FALSE = Const(False)


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<and>&&)|(?P<or>\|\|)|(?P<not>!)|(?P<lpar>\()|(?P<rpar>\))"
    r"|(?P<word>[A-Za-z_][A-Za-z0-9_]*))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}", len(text) - len(stripped))
        kind = match.lastgroup
        assert kind is not None
        tokens.append((kind, match.group(kind), match.start(kind)))
        pos = match.end()
    return tokens


class _Parser:
    """Recursive-descent parser for the grammar

        formula := dis
        dis     := con ('||' con)*
        con     := unary ('&&' unary)*
        unary   := '!' unary | '(' formula ')' | 'T' | 'F' | IDENT

    with '!' binding tighter than '&&', which binds tighter than '||';
    both binary operators associate to the left.
    """

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    def _peek(self) -> tuple[str, str, int] | None:
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        return None

    def _advance(self) -> tuple[str, str, int]:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _expect(self, kind: str) -> tuple[str, str, int]:
        token = self._peek()
        if token is None:
            raise ParseError(f"unexpected end of input, expected {kind}", len(self.text))
        if token[0] != kind:
            raise ParseError(f"expected {kind}, found {token[1]!r}", token[2])
        return self._advance()

    def parse(self) -> Formula:
        formula = self._dis()
        token = self._peek()
        if token is not None:
            raise ParseError(f"unexpected trailing input {token[1]!r}", token[2])
        return formula

    def _dis(self) -> Formula:
        left = self._con()
        while (token := self._peek()) is not None and token[0] == "or":
            self._advance()
            left = Dis(left, self._con())
        return left

    def _con(self) -> Formula:
        left = self._unary()
        while (token := self._peek()) is not None and token[0] == "and":
            self._advance()
            left = Con(left, self._unary())
        return left

    def _unary(self) -> Formula:
        token = self._peek()
        if token is None:
            raise ParseError("unexpected end of input", len(self.text))
        kind, value, pos = token
        if kind == "not":
            self._advance()
            return Neg(self._unary())
        if kind == "lpar":
            self._advance()
            inner = self._dis()
            self._expect("rpar")
            return inner
        if kind == "word":
            self._advance()
            if value == "T":
                return TRUE
            if value == "F":
                return FALSE
            return Lit(value)
        raise ParseError(f"unexpected token {value!r}", pos)


def parse(text: str) -> Formula:
    return _Parser(text).parse()


# Precedence levels used for minimal parenthesisation.
_PREC_DIS = 1
_PREC_CON = 2
_PREC_UNARY = 3


def render(f: Formula) -> str:
    return _render(f, 0)


def _render(f: Formula, parent_prec: int) -> str:
    if isinstance(f, Const):
        return "T" if f.value else "F"
    if isinstance(f, Lit):
        return f.atom
    if isinstance(f, Neg):
        return "!" + _render(f.inner, _PREC_UNARY)
    if isinstance(f, Con):
        text = _render(f.left, _PREC_CON) + " && " + _render(f.right, _PREC_CON + 1)
        return f"({text})" if parent_prec > _PREC_CON else text
    if isinstance(f, Dis):
        text = _render(f.left, _PREC_DIS) + " || " + _render(f.right, _PREC_DIS + 1)
        return f"({text})" if parent_prec > _PREC_DIS else text
    raise TypeError(f"not a formula: {f!r}")


def expand_abbreviations(f: Formula) -> Formula:
    """Rewrite F to !T and x || y to !(!x && !y), recursively."""
    if isinstance(f, Const):
        return f if f.value else Neg(TRUE)
    if isinstance(f, Lit):
        return f
    if isinstance(f, Neg):
        return Neg(expand_abbreviations(f.inner))
    if isinstance(f, Con):
        return Con(expand_abbreviations(f.left), expand_abbreviations(f.right))
    if isinstance(f, Dis):
        left = expand_abbreviations(f.left)
        right = expand_abbreviations(f.right)
        return Neg(Con(Neg(left), Neg(right)))
    raise TypeError(f"not a formula: {f!r}")


def complexity(f: Formula) -> int:
    """cx(T) = cx(a) = 0, cx(!x) = 1 + cx(x), cx(x && y) = 1 + max(cx(x), cx(y)),
    computed on the abbreviation-free form of f."""
    return _complexity(expand_abbreviations(f))


def _complexity(f: Formula) -> int:
    if isinstance(f, (Const, Lit)):
        return 0
    if isinstance(f, Neg):
        return 1 + _complexity(f.inner)
    if isinstance(f, Con):
        return 1 + max(_complexity(f.left), _complexity(f.right))
    raise TypeError(f"unexpected abbreviation in {f!r}")


def is_constant_free(f: Formula) -> bool:
    if isinstance(f, Const):
        return False
    if isinstance(f, Lit):
        return True
    if isinstance(f, Neg):
        return is_constant_free(f.inner)
    return is_constant_free(f.left) and is_constant_free(f.right)


def node_count(f: Formula) -> int:
    """Number of AST nodes, counted iteratively so very deep formulas are fine."""
    count = 0
    stack = [f]
    while stack:
        node = stack.pop()
        count += 1
        if isinstance(node, Neg):
            stack.append(node.inner)
        elif isinstance(node, (Con, Dis)):
            stack.append(node.left)
            stack.append(node.right)
    return count


def atoms_of(f: Formula) -> set[str]:
    found: set[str] = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Lit):
            found.add(node.atom)
        elif isinstance(node, Neg):
            stack.append(node.inner)
        elif isinstance(node, (Con, Dis)):
            stack.append(node.left)
            stack.append(node.right)
    return found


def atom_occurrences(f: Formula) -> int:
    count = 0
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Lit):
            count += 1
        elif isinstance(node, Neg):
            stack.append(node.inner)
        elif isinstance(node, (Con, Dis)):
            stack.append(node.left)
            stack.append(node.right)
    return count


def enumerate_formulas(alphabet: list[str], max_nodes: int) -> Iterator[Formula]:
    """Yield every formula over the alphabet with at most max_nodes AST nodes,
    exactly once, smallest first, in a fixed deterministic order."""
    if not alphabet:
        raise ValueError("alphabet must be non-empty")
    if max_nodes < 1:
        raise ValueError("max_nodes must be positive")
    by_size: list[list[Formula]] = [[]]
    by_size.append([TRUE, FALSE] + [Lit(a) for a in alphabet])
    for size in range(2, max_nodes + 1):
        bucket: list[Formula] = [Neg(f) for f in by_size[size - 1]]
        for left_size in range(1, size - 1):
            for left in by_size[left_size]:
                for right in by_size[size - 1 - left_size]:
                    bucket.append(Con(left, right))
        for left_size in range(1, size - 1):
            for left in by_size[left_size]:
                for right in by_size[size - 1 - left_size]:
                    bucket.append(Dis(left, right))
        by_size.append(bucket)
    for size in range(1, max_nodes + 1):
        yield from by_size[size]
