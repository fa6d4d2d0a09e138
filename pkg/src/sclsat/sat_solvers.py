"""Satisfiability testers for the five short-circuit logics.

A formula is satisfiable in a logic when its evaluation tree has a root-to-leaf
path ending in a true leaf whose recorded (atom, value) sequence respects the
logic's path discipline: any path for FSCL, repetition-proof for RPSCL and
CSCL, memorizing for MSCL and SSCL.  Satisfiability therefore collapses to
three problems; RPSCL and CSCL always answer alike, as do MSCL and SSCL.

Five testers are provided:

    sat_brute_control  depth-first search of the evaluation tree, checking the
                       discipline at every true leaf; the reference oracle
    sat_brute_force    the same search with discipline-aware pruning
    sat_direct         linear bottom-up (satisfiable, falsifiable) recursion;
                       decides FSCL exactly
    sat_open           linear right-to-left guard propagation; decides RPSCL
                       and CSCL exactly
    sat_boolean        classical reduction: memorizing paths are exactly the
                       traces under a boolean assignment, so DPLL decides MSCL
                       and SSCL

``solve`` dispatches by strategy, routes "auto" to the decision procedure for
the requested logic with a brute-force fallback, and verifies every witness
before returning it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

from .eval_tree import Branch, EvalTree, Leaf, se
from .formula_core import Con, Const, Dis, Formula, Lit, Neg
from .paths import (
    PathDiscipline,
    ValuationPath,
    check_discipline,
    is_memorizing,
)
from .valuation_algebras import _evaluate


class Logic(Enum):
    FSCL = "FSCL"
    RPSCL = "RPSCL"
    CSCL = "CSCL"
    MSCL = "MSCL"
    SSCL = "SSCL"

    @property
    def discipline(self) -> PathDiscipline:
        if self is Logic.FSCL:
            return PathDiscipline.FREE
        if self in (Logic.RPSCL, Logic.CSCL):
            return PathDiscipline.REPETITION_PROOF
        return PathDiscipline.MEMORIZING


def check_path(logic: Logic, p: ValuationPath) -> bool:
    return check_discipline(logic.discipline, p)


@dataclass(frozen=True)
class SatOutcome:
    answer: str  # "yes" | "no" | "unknown"
    witness: Optional[ValuationPath]
    logic: Logic
    solver: str
    node_visits: int = 0
    leaves_explored: int = 0

    def to_json(self) -> str:
        witness = None
        if self.witness is not None:
            witness = [[atom, value] for atom, value in self.witness]
        return json.dumps(
            {
                "answer": self.answer,
                "witness": witness,
                "logic": self.logic.value,
                "solver": self.solver,
                "node_visits": self.node_visits,
            }
        )


# --- witness verification ---------------------------------------------------

class _Mismatch(Exception):
    pass


class _PathFollower:
    """Pseudo-algebra whose state is an index into a fixed path; evaluating an
    atom that disagrees with the path aborts.  A formula evaluates to true
    from index 0 consuming the whole path exactly when the path is a
    root-to-leaf trace of the formula's evaluation tree ending in a true
    leaf."""

    __slots__ = ("path",)

    def __init__(self, path: ValuationPath):
        self.path = path

    def atom_eval(self, atom: str, index: int) -> bool:
        if index < len(self.path) and self.path[index][0] == atom:
            return self.path[index][1]
        raise _Mismatch

    def atom_deriv(self, atom: str, index: int) -> int:
        return index + 1


def verify_witness(f: Formula, p: ValuationPath) -> bool:
    """True when p is the trace of a true-leaf root-to-leaf path of se(f)."""
    try:
        value, end, _ = _evaluate(_PathFollower(p), f, 0, False)
    except _Mismatch:
        return False
    return value and end == len(p)


# --- brute-force search -----------------------------------------------------

_Cons = Optional[tuple[tuple[str, bool], "_Cons"]]  # type: ignore[misc]


def _cons_to_path(cell: _Cons) -> ValuationPath:
    entries = []
    while cell is not None:
        entries.append(cell[0])
        cell = cell[1]
    entries.reverse()
    return tuple(entries)


def sat_brute_control(logic: Logic, f: Formula) -> SatOutcome:
    """Depth-first search of se(f), true branch first; the first true leaf
    whose trace passes the logic's path discipline wins.  Never Unknown."""
    visits = 0
    leaves = 0
    stack: list[tuple[EvalTree, _Cons]] = [(se(f), None)]
    while stack:
        node, trail = stack.pop()
        visits += 1
        if isinstance(node, Leaf):
            leaves += 1
            if node.value:
                path = _cons_to_path(trail)
                if check_path(logic, path):
                    return SatOutcome("yes", path, logic, "brute-control", visits, leaves)
        else:
            stack.append((node.right, ((node.atom, False), trail)))
            stack.append((node.left, ((node.atom, True), trail)))
    return SatOutcome("no", None, logic, "brute-control", visits, leaves)


def sat_brute_force(logic: Logic, f: Formula) -> SatOutcome:
    """Pruned depth-first search: FSCL accepts any true leaf without checking;
    RPSCL/CSCL never descend into a branch that would flip the value of the
    atom just recorded; MSCL/SSCL keep the unpruned control behavior."""
    discipline = logic.discipline
    if discipline is PathDiscipline.MEMORIZING:
        out = sat_brute_control(logic, f)
        return SatOutcome(out.answer, out.witness, logic, "brute-force",
                          out.node_visits, out.leaves_explored)
    visits = 0
    leaves = 0
    prune = discipline is PathDiscipline.REPETITION_PROOF
    stack: list[tuple[EvalTree, _Cons]] = [(se(f), None)]
    while stack:
        node, trail = stack.pop()
        visits += 1
        if isinstance(node, Leaf):
            leaves += 1
            if node.value:
                return SatOutcome("yes", _cons_to_path(trail), logic, "brute-force",
                                  visits, leaves)
        elif prune and trail is not None and trail[0][0] == node.atom:
            # Same atom again: only the direction matching its last value.
            forced = trail[0][1]
            child = node.left if forced else node.right
            stack.append((child, ((node.atom, forced), trail)))
        else:
            stack.append((node.right, ((node.atom, False), trail)))
            stack.append((node.left, ((node.atom, True), trail)))
    return SatOutcome("no", None, logic, "brute-force", visits, leaves)


# --- direct solver ----------------------------------------------------------

def _sat_fal_flags(f: Formula) -> tuple[dict[int, tuple[bool, bool]], int]:
    """Bottom-up (satisfiable, falsifiable) flags per subformula, each node
    computed once (keyed by identity, so shared subterms are reused)."""
    flags: dict[int, tuple[bool, bool]] = {}
    visits = 0
    stack = [f]
    while stack:
        node = stack[-1]
        if id(node) in flags:
            stack.pop()
            continue
        if isinstance(node, Const):
            flags[id(node)] = (node.value, not node.value)
            visits += 1
            stack.pop()
        elif isinstance(node, Lit):
            flags[id(node)] = (True, True)
            visits += 1
            stack.pop()
        elif isinstance(node, Neg):
            inner = flags.get(id(node.inner))
            if inner is None:
                stack.append(node.inner)
                continue
            flags[id(node)] = (inner[1], inner[0])
            visits += 1
            stack.pop()
        else:
            left = flags.get(id(node.left))
            right = flags.get(id(node.right))
            if left is None or right is None:
                if right is None:
                    stack.append(node.right)
                if left is None:
                    stack.append(node.left)
                continue
            if isinstance(node, Con):
                sat = left[0] and right[0]
                fal = left[1] or (left[0] and right[1])
            else:
                sat = left[0] or (left[1] and right[0])
                fal = left[1] and right[1]
            flags[id(node)] = (sat, fal)
            visits += 1
            stack.pop()
    return flags, visits


def sat_direct(logic: Logic, f: Formula) -> SatOutcome:
    """Linear two-phase tester: compute (satisfiable, falsifiable) flags
    bottom-up, then emit one candidate trace top-down.  Decides FSCL; for
    stricter logics the candidate either passes the discipline check (Yes) or
    leaves the question open (Unknown); FSCL-unsatisfiable is No for every
    logic."""
    flags, visits = _sat_fal_flags(f)
    if not flags[id(f)][0]:
        return SatOutcome("no", None, logic, "direct", visits, 0)
    entries: list[tuple[str, bool]] = []
    SAT, FAL = True, False
    work: list[tuple[Formula, bool]] = [(f, SAT)]
    while work:
        node, want_sat = work.pop()
        visits += 1
        if isinstance(node, Const):
            continue
        if isinstance(node, Lit):
            entries.append((node.atom, want_sat))
            continue
        if isinstance(node, Neg):
            work.append((node.inner, not want_sat))
            continue
        left_sat, left_fal = flags[id(node.left)]
        if isinstance(node, Con):
            if want_sat:
                # Both conjuncts must succeed; the trace runs left then right.
                work.append((node.right, SAT))
                work.append((node.left, SAT))
            elif left_fal:
                work.append((node.left, FAL))
            else:
                work.append((node.right, FAL))
                work.append((node.left, SAT))
        else:
            if not want_sat:
                work.append((node.right, FAL))
                work.append((node.left, FAL))
            elif left_sat:
                work.append((node.left, SAT))
            else:
                work.append((node.right, SAT))
                work.append((node.left, FAL))
    path = tuple(entries)
    if logic is Logic.FSCL or check_path(logic, path):
        return SatOutcome("yes", path, logic, "direct", visits, 0)
    return SatOutcome("unknown", None, logic, "direct", visits, 0)


# --- open (guard) solver ----------------------------------------------------

# A guard summarizes all viable continuations of a partially built path:
# None is a dead end, _EMPTY means the remaining path is empty, and a triple
# (atom, cons_if_true, cons_if_false) holds one complete continuation per
# possible first entry.  Paths are shared suffix cons lists.
_EMPTY = object()


def _suffix_to_path(cell) -> ValuationPath:
    entries = []
    while cell is not None:
        entries.append(cell[0])
        cell = cell[1]
    return tuple(entries)


def _lit_slot(atom: str, value: bool, guard):
    """A full continuation starting with (atom, value), or None.  When the
    guard's atom is this atom, adjacency forces the continuation branch with
    the same value; otherwise any available branch may follow."""
    if guard is None:
        return None
    entry = (atom, value)
    if guard is _EMPTY:
        return (entry, None)
    gatom, gtrue, gfalse = guard
    if gatom == atom:
        cont = gtrue if value else gfalse
        if cont is None:
            return None
        return (entry, cont)
    cont = gtrue if gtrue is not None else gfalse
    return (entry, cont)


def _make_guard(atom: str, slot_true, slot_false):
    if slot_true is None and slot_false is None:
        return None
    return (atom, slot_true, slot_false)


def sat_open(logic: Logic, f: Formula) -> SatOutcome:
    """Linear right-to-left guard propagation that searches for a
    repetition-proof true trace.

    Every node is processed once with a pair of guards (continuations viable
    when the node yields true resp. false); literals splice themselves onto
    the matching continuation, respecting adjacency with the next atom.
    Decides RPSCL and CSCL; a found path also settles FSCL, and MSCL/SSCL when
    it happens to be memorizing; absence of a repetition-proof path is No for
    everything except FSCL."""
    visits = 0
    results: list[object] = []
    # Work items: ("visit", node, guard_true, guard_false) computes the node's
    # combined guard; "con2"/"dis2" resume the left operand once the right
    # operand's guard is known.
    work: list[tuple] = [("visit", f, _EMPTY, None)]
    while work:
        item = work.pop()
        tag = item[0]
        if tag == "visit":
            _, node, g_true, g_false = item
            visits += 1
            if isinstance(node, Const):
                results.append(g_true if node.value else g_false)
            elif isinstance(node, Lit):
                results.append(
                    _make_guard(
                        node.atom,
                        _lit_slot(node.atom, True, g_true),
                        _lit_slot(node.atom, False, g_false),
                    )
                )
            elif isinstance(node, Neg):
                work.append(("visit", node.inner, g_false, g_true))
            elif isinstance(node, Con):
                work.append(("con2", node.left, g_false))
                work.append(("visit", node.right, g_true, g_false))
            elif isinstance(node, Dis):
                work.append(("dis2", node.left, g_true))
                work.append(("visit", node.right, g_true, g_false))
            else:
                raise TypeError(f"not a formula: {node!r}")
        elif tag == "con2":
            _, left, g_false = item
            work.append(("visit", left, results.pop(), g_false))
        else:
            _, left, g_true = item
            work.append(("visit", left, g_true, results.pop()))
    final = results.pop()

    if final is None:
        if logic is Logic.FSCL:
            return SatOutcome("unknown", None, logic, "open", visits, 0)
        return SatOutcome("no", None, logic, "open", visits, 0)
    if final is _EMPTY:
        path: ValuationPath = ()
    else:
        _, slot_true, slot_false = final
        path = _suffix_to_path(slot_true if slot_true is not None else slot_false)
    if logic in (Logic.MSCL, Logic.SSCL) and not is_memorizing(path):
        return SatOutcome("unknown", None, logic, "open", visits, 0)
    return SatOutcome("yes", path, logic, "open", visits, 0)


# --- boolean solver ---------------------------------------------------------

def _tseitin(f: Formula) -> tuple[list[list[int]], dict[str, int], int]:
    """CNF whose models are the boolean assignments making f classically true.
    Returns (clauses, atom variable map, variable count)."""
    atom_var: dict[str, int] = {}
    clauses: list[list[int]] = []
    next_var = 0
    lit_of: dict[int, int] = {}

    stack = [f]
    while stack:
        node = stack[-1]
        if id(node) in lit_of:
            stack.pop()
            continue
        if isinstance(node, Const):
            next_var += 1
            clauses.append([next_var if node.value else -next_var])
            lit_of[id(node)] = next_var
            stack.pop()
        elif isinstance(node, Lit):
            if node.atom not in atom_var:
                next_var += 1
                atom_var[node.atom] = next_var
            lit_of[id(node)] = atom_var[node.atom]
            stack.pop()
        elif isinstance(node, Neg):
            inner = lit_of.get(id(node.inner))
            if inner is None:
                stack.append(node.inner)
                continue
            lit_of[id(node)] = -inner
            stack.pop()
        else:
            left = lit_of.get(id(node.left))
            right = lit_of.get(id(node.right))
            if left is None or right is None:
                if right is None:
                    stack.append(node.right)
                if left is None:
                    stack.append(node.left)
                continue
            next_var += 1
            g = next_var
            if isinstance(node, Con):
                clauses.append([-g, left])
                clauses.append([-g, right])
                clauses.append([-left, -right, g])
            else:
                clauses.append([-g, left, right])
                clauses.append([-left, g])
                clauses.append([-right, g])
            lit_of[id(node)] = g
            stack.pop()
    clauses.append([lit_of[id(f)]])
    return clauses, atom_var, next_var


def _dpll(clauses: list[list[int]], num_vars: int) -> Optional[dict[int, bool]]:
    """Plain DPLL: unit propagation and first-unassigned-variable branching
    (true first), iterative with an explicit trail."""
    assignment: dict[int, bool] = {}
    trail: list[int] = []
    # Clause indices containing each literal, so propagation only revisits
    # clauses a new assignment could have falsified.
    occurrences: dict[int, list[int]] = {}
    for index, clause in enumerate(clauses):
        for lit in clause:
            occurrences.setdefault(lit, []).append(index)

    def assign(var: int, value: bool) -> None:
        assignment[var] = value
        trail.append(var)

    def undo_to(mark: int) -> None:
        while len(trail) > mark:
            del assignment[trail.pop()]

    def propagate(start: int) -> bool:
        queue = trail[start:]
        head = 0
        while head < len(queue):
            var = queue[head]
            head += 1
            falsified = -var if assignment[var] else var
            for index in occurrences.get(falsified, ()):
                unassigned = None
                satisfied = False
                count = 0
                for lit in clauses[index]:
                    value = assignment.get(abs(lit))
                    if value is None:
                        unassigned = lit
                        count += 1
                    elif value == (lit > 0):
                        satisfied = True
                        break
                if satisfied:
                    continue
                if count == 0:
                    return False
                if count == 1:
                    assign(abs(unassigned), unassigned > 0)
                    queue.append(abs(unassigned))
        return True

    # Seed propagation with the unit clauses.
    for clause in clauses:
        if len(clause) == 1:
            lit = clause[0]
            value = assignment.get(abs(lit))
            if value is None:
                assign(abs(lit), lit > 0)
            elif value != (lit > 0):
                return None
    if not propagate(0):
        return None

    next_unassigned = 1
    decisions: list[tuple[int, int, bool]] = []  # (var, trail mark, false tried)
    while True:
        while next_unassigned <= num_vars and next_unassigned in assignment:
            next_unassigned += 1
        if next_unassigned > num_vars:
            return assignment
        var = next_unassigned
        mark = len(trail)
        decisions.append((var, mark, False))
        assign(var, True)
        while not propagate(len(trail) - 1):
            while decisions:
                var, mark, false_tried = decisions.pop()
                undo_to(mark)
                if not false_tried:
                    decisions.append((var, mark, True))
                    assign(var, False)
                    break
            else:
                return None
            next_unassigned = 1


def _assignment_path(f: Formula, sigma: dict[str, bool]) -> ValuationPath:
    """The trace of evaluating f when every atom constantly yields sigma[atom]
    (false if absent); memorizing by construction."""

    class _Static:
        __slots__ = ()

        @staticmethod
        def atom_eval(atom: str, state: int) -> bool:
            return sigma.get(atom, False)

        @staticmethod
        def atom_deriv(atom: str, state: int) -> int:
            return state

    return _evaluate(_Static(), f, 0, True)[2]


def sat_boolean(logic: Logic, f: Formula) -> SatOutcome:
    """Reduce to classical satisfiability: a memorizing true trace exists
    exactly when some boolean assignment makes f classically true.  Decides
    MSCL and SSCL; a model also yields a witness for the looser logics, while
    boolean-unsatisfiable leaves them Unknown."""
    clauses, atom_var, num_vars = _tseitin(f)
    model = _dpll(clauses, num_vars)
    visits = len(clauses)
    if model is None:
        if logic in (Logic.MSCL, Logic.SSCL):
            return SatOutcome("no", None, logic, "boolean", visits, 0)
        return SatOutcome("unknown", None, logic, "boolean", visits, 0)
    sigma = {atom: model.get(var, False) for atom, var in atom_var.items()}
    path = _assignment_path(f, sigma)
    return SatOutcome("yes", path, logic, "boolean", visits, 0)


# --- dispatcher -------------------------------------------------------------

_STRATEGIES: dict[str, Callable[[Logic, Formula], SatOutcome]] = {
    "brute-control": sat_brute_control,
    "brute-force": sat_brute_force,
    "direct": sat_direct,
    "open": sat_open,
    "boolean": sat_boolean,
}


def _auto_solver(logic: Logic) -> Callable[[Logic, Formula], SatOutcome]:
    if logic is Logic.FSCL:
        return sat_direct
    if logic in (Logic.RPSCL, Logic.CSCL):
        return sat_open
    return sat_boolean


def solve(logic: Logic, f: Formula, strategy: str = "auto") -> SatOutcome:
    """Dispatch to a solver.  "auto" routes each logic to its decision
    procedure (FSCL -> direct, RPSCL/CSCL -> open, MSCL/SSCL -> boolean) and
    falls back to brute-control on Unknown, so it never answers Unknown.
    Every Yes is re-verified against the evaluation tree and the logic's path
    discipline before being returned."""
    if strategy == "auto":
        outcome = _auto_solver(logic)(logic, f)
        if outcome.answer == "unknown":
            outcome = sat_brute_control(logic, f)
    else:
        try:
            solver = _STRATEGIES[strategy]
        except KeyError:
            raise ValueError(f"unknown strategy: {strategy!r}") from None
        outcome = solver(logic, f)
    if outcome.answer == "yes":
        assert outcome.witness is not None
        if not verify_witness(f, outcome.witness) or not check_path(logic, outcome.witness):
            raise RuntimeError(
                f"solver {outcome.solver!r} produced an invalid witness for "
                f"{logic.value}: {outcome.witness!r}"
            )
    return outcome


def falsify(logic: Logic, f: Formula, strategy: str = "auto") -> SatOutcome:
    """Falsifiability as satisfiability of the negation; a Yes witness traces
    se(f) to a false leaf."""
    return solve(logic, Neg(f), strategy)
