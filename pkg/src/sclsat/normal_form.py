"""Normal forms: grammar classification and a semantics-preserving normalizer.

The normal-form grammar (a ranges over atoms):

    P   ::= PT | PF | PT && P*
    PT  ::= T | (a && PT) || PT
    PF  ::= F | (a || PF) && PF
    P*  ::= Pc | Pd
    Pl  ::= (a && PT) || PF | (!a && PT) || PF
    Pc  ::= Pl | P* && Pd
    Pd  ::= Pl | P* || Pc

T-terms have evaluation trees closed by true, F-terms trees closed by false,
l-terms and T*-terms open trees.

``normalize`` rebuilds a formula bottom-up into this grammar.  Each subformula
is tagged as a T-term, an F-term, a *-term, or a T*-term, and every combination
rule below preserves the evaluation tree exactly; the key identities are

    se((a && x) || y) = se(x) <| a |> se(y)      for a T-term x, F-term y
    se(p && q) = se(p)[T -> se(q), F -> F]
    se(p || q) = se(p)[T -> T, F -> se(q)]

The output satisfies se(normalize(f)) = se(f) and classifies as a T-term,
F-term, or T*-term.  No canonicity beyond tree equality is guaranteed.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union

from .formula_core import Con, Const, Dis, FALSE, Formula, Lit, Neg, TRUE


class NfClass(Enum):
    T_TERM = "T-term"
    F_TERM = "F-term"
    T_STAR_TERM = "T*-term"
    L_TERM = "l-term"
    NOT_NORMAL_FORM = "not-normal-form"


# --- grammar membership -----------------------------------------------------

def _is_tterm(f: Formula) -> bool:
    if f == TRUE:
        return True
    return (
        isinstance(f, Dis)
        and isinstance(f.left, Con)
        and isinstance(f.left.left, Lit)
        and _is_tterm(f.left.right)
        and _is_tterm(f.right)
    )


def _is_fterm(f: Formula) -> bool:
    if f == FALSE:
        return True
    return (
        isinstance(f, Con)
        and isinstance(f.left, Dis)
        and isinstance(f.left.left, Lit)
        and _is_fterm(f.left.right)
        and _is_fterm(f.right)
    )


def _is_lterm(f: Formula) -> bool:
    if not (isinstance(f, Dis) and isinstance(f.left, Con)):
        return False
    head = f.left.left
    if not (isinstance(head, Lit) or (isinstance(head, Neg) and isinstance(head.inner, Lit))):
        return False
    return _is_tterm(f.left.right) and _is_fterm(f.right)


def _is_cterm(f: Formula) -> bool:
    if _is_lterm(f):
        return True
    return isinstance(f, Con) and _is_star(f.left) and _is_dterm(f.right)


def _is_dterm(f: Formula) -> bool:
    if _is_lterm(f):
        return True
    return isinstance(f, Dis) and _is_star(f.left) and _is_cterm(f.right)


def _is_star(f: Formula) -> bool:
    return _is_cterm(f) or _is_dterm(f)


def classify_nf(f: Formula) -> NfClass:
    if _is_tterm(f):
        return NfClass.T_TERM
    if _is_fterm(f):
        return NfClass.F_TERM
    if isinstance(f, Con) and _is_tterm(f.left) and _is_star(f.right):
        return NfClass.T_STAR_TERM
    if _is_lterm(f):
        return NfClass.L_TERM
    return NfClass.NOT_NORMAL_FORM


# --- tagged *-terms ---------------------------------------------------------

@dataclass(frozen=True)
class _StarLit:
    # l-term ((+-)a && tt) || ff, with tree se(tt) <| a |> se(ff) when positive
    # and se(ff) <| a |> se(tt) when negated.
    positive: bool
    atom: str
    tt: Formula
    ff: Formula


@dataclass(frozen=True)
class _StarCon:
    left: "_Star"
    right: "_Star"  # must classify as an l-term or d-term


@dataclass(frozen=True)
class _StarDis:
    left: "_Star"
    right: "_Star"  # must classify as an l-term or c-term


_Star = Union[_StarLit, _StarCon, _StarDis]


def _star_formula(s: _Star) -> Formula:
    if isinstance(s, _StarLit):
        head: Formula = Lit(s.atom) if s.positive else Neg(Lit(s.atom))
        return Dis(Con(head, s.tt), s.ff)
    if isinstance(s, _StarCon):
        return Con(_star_formula(s.left), _star_formula(s.right))
    return Dis(_star_formula(s.left), _star_formula(s.right))


def _is_con_kind(s: _Star) -> bool:
    return isinstance(s, _StarCon)


def _is_dis_kind(s: _Star) -> bool:
    return isinstance(s, _StarDis)


# --- closed-term combinators ------------------------------------------------
# Each helper states the evaluation tree of its output in terms of its inputs.

def _conj_tt(u: Formula, v: Formula) -> Formula:
    # T-term with tree se(u)[T -> se(v)].
    if u == TRUE:
        return v
    assert isinstance(u, Dis) and isinstance(u.left, Con)
    return Dis(Con(u.left.left, _conj_tt(u.left.right, v)), _conj_tt(u.right, v))


def _push_ff(u: Formula, w: Formula) -> Formula:
    # F-term with tree se(u)[T -> se(w)], for a T-term u and F-term w.
    if u == TRUE:
        return w
    assert isinstance(u, Dis) and isinstance(u.left, Con)
    return Con(Dis(u.left.left, _push_ff(u.right, w)), _push_ff(u.left.right, w))


def _disj_ff(w: Formula, v: Formula) -> Formula:
    # F-term with tree se(w)[F -> se(v)], for F-terms w and v.
    if w == FALSE:
        return v
    assert isinstance(w, Con) and isinstance(w.left, Dis)
    return Con(Dis(w.left.left, _disj_ff(w.left.right, v)), _disj_ff(w.right, v))


def _disj_ff_tt(w: Formula, v: Formula) -> Formula:
    # T-term with tree se(w)[F -> se(v)], for an F-term w and T-term v.
    if w == FALSE:
        return v
    assert isinstance(w, Con) and isinstance(w.left, Dis)
    return Dis(Con(w.left.left, _disj_ff_tt(w.right, v)), _disj_ff_tt(w.left.right, v))


def _dual_tt(u: Formula) -> Formula:
    # F-term whose tree is se(u) with all leaves flipped.
    if u == TRUE:
        return FALSE
    assert isinstance(u, Dis) and isinstance(u.left, Con)
    return Con(Dis(u.left.left, _dual_tt(u.right)), _dual_tt(u.left.right))


def _dual_ff(w: Formula) -> Formula:
    # T-term whose tree is se(w) with all leaves flipped.
    if w == FALSE:
        return TRUE
    assert isinstance(w, Con) and isinstance(w.left, Dis)
    return Dis(Con(w.left.left, _dual_ff(w.right)), _dual_ff(w.left.right))


def _flip_ff(w: Formula) -> Formula:
    # T-term with tree se(w)[F -> T] (same branch skeleton as w).
    if w == FALSE:
        return TRUE
    assert isinstance(w, Con) and isinstance(w.left, Dis)
    return Dis(Con(w.left.left, _flip_ff(w.right)), _flip_ff(w.left.right))


def _fskel_tt(u: Formula) -> Formula:
    # F-term with tree se(u)[T -> F] (same branch skeleton as u).
    if u == TRUE:
        return FALSE
    assert isinstance(u, Dis) and isinstance(u.left, Con)
    return Con(Dis(u.left.left, _fskel_tt(u.right)), _fskel_tt(u.left.right))


# --- *-term combinators -----------------------------------------------------

def _star_to_ff(s: _Star, tcont: Formula, fcont: Formula) -> Formula:
    # F-term with tree se(s)[T -> se(tcont), F -> se(fcont)]; tcont, fcont F-terms.
    if isinstance(s, _StarLit):
        taken = _push_ff(s.tt, tcont)
        skipped = _disj_ff(s.ff, fcont)
        if s.positive:
            return Con(Dis(Lit(s.atom), skipped), taken)
        return Con(Dis(Lit(s.atom), taken), skipped)
    if isinstance(s, _StarCon):
        return _star_to_ff(s.left, _star_to_ff(s.right, tcont, fcont), fcont)
    return _star_to_ff(s.left, tcont, _star_to_ff(s.right, tcont, fcont))


def _star_to_tt(s: _Star, tcont: Formula, fcont: Formula) -> Formula:
    # T-term with tree se(s)[T -> se(tcont), F -> se(fcont)]; tcont, fcont T-terms.
    if isinstance(s, _StarLit):
        taken = _conj_tt(s.tt, tcont)
        skipped = _disj_ff_tt(s.ff, fcont)
        if s.positive:
            return Dis(Con(Lit(s.atom), taken), skipped)
        return Dis(Con(Lit(s.atom), skipped), taken)
    if isinstance(s, _StarCon):
        return _star_to_tt(s.left, _star_to_tt(s.right, tcont, fcont), fcont)
    return _star_to_tt(s.left, tcont, _star_to_tt(s.right, tcont, fcont))


def _tt_append(s: _Star, v: Formula) -> _Star:
    # *-term with tree se(s)[T -> se(v), F -> F], for a T-term v.
    if isinstance(s, _StarLit):
        return _StarLit(s.positive, s.atom, _conj_tt(s.tt, v), s.ff)
    if isinstance(s, _StarCon):
        return _StarCon(s.left, _tt_append(s.right, v))
    # (p || q) && v has the tree of (p && v) || (q && v) because se(v) is
    # closed by T, so the inner T -> T substitution leaves it untouched.
    return _StarDis(_tt_append(s.left, v), _tt_append(s.right, v))


def _ff_graft(s: _Star, w: Formula) -> _Star:
    # *-term with tree se(s)[F -> se(w)], for an F-term w.
    if isinstance(s, _StarLit):
        return _StarLit(s.positive, s.atom, s.tt, _disj_ff(s.ff, w))
    if isinstance(s, _StarCon):
        # (p && q) || w has the tree of (p || w) && (q || w); se(w) is closed
        # by F, so the inner F -> F substitution leaves it untouched.
        return _StarCon(_ff_graft(s.left, w), _ff_graft(s.right, w))
    return _StarDis(s.left, _ff_graft(s.right, w))


def _and_star(s: _Star, t: _Star) -> _Star:
    # *-term with tree se(s)[T -> se(t), F -> F].
    if _is_con_kind(t):
        # s && (p && q) = (s && p) && q, reassociated until the right operand
        # is an l-term or d-term as the Pc production requires.
        return _and_star(_and_star(s, t.left), t.right)
    return _StarCon(s, t)


def _or_star(s: _Star, t: _Star) -> _Star:
    # *-term with tree se(s)[T -> T, F -> se(t)].
    if _is_dis_kind(t):
        return _or_star(_or_star(s, t.left), t.right)
    return _StarDis(s, t)


def _neg_star(s: _Star) -> _Star:
    if isinstance(s, _StarLit):
        return _StarLit(not s.positive, s.atom, _dual_ff(s.ff), _dual_tt(s.tt))
    if isinstance(s, _StarCon):
        return _StarDis(_neg_star(s.left), _neg_star(s.right))
    return _StarCon(_neg_star(s.left), _neg_star(s.right))


# --- tagged normalization ---------------------------------------------------

@dataclass(frozen=True)
class _TT:
    term: Formula


@dataclass(frozen=True)
class _FF:
    term: Formula


@dataclass(frozen=True)
class _ST:
    star: _Star


@dataclass(frozen=True)
class _TStar:
    tt: Formula
    star: _Star


_Nf = Union[_TT, _FF, _ST, _TStar]


def _nf_and(m: _Nf, n: _Nf) -> _Nf:
    if isinstance(m, _FF):
        # se(m) has no T leaves, so the conjunction changes nothing.
        return m
    if isinstance(m, _TT):
        if isinstance(n, _TT):
            return _TT(_conj_tt(m.term, n.term))
        if isinstance(n, _FF):
            return _FF(_push_ff(m.term, n.term))
        if isinstance(n, _ST):
            return _TStar(m.term, n.star)
        return _TStar(_conj_tt(m.term, n.tt), n.star)
    if isinstance(m, _ST):
        if isinstance(n, _TT):
            return _ST(_tt_append(m.star, n.term))
        if isinstance(n, _FF):
            return _FF(_star_to_ff(m.star, n.term, FALSE))
        if isinstance(n, _ST):
            return _ST(_and_star(m.star, n.star))
        return _ST(_and_star(_tt_append(m.star, n.tt), n.star))
    # (u && s) && y = u && (s && y)
    inner = _nf_and(_ST(m.star), n)
    if isinstance(inner, _ST):
        return _TStar(m.tt, inner.star)
    assert isinstance(inner, _FF)
    return _FF(_push_ff(m.tt, inner.term))


def _nf_or(m: _Nf, n: _Nf) -> _Nf:
    if isinstance(m, _TT):
        # se(m) has no F leaves, so the disjunction changes nothing.
        return m
    if isinstance(m, _FF):
        if isinstance(n, _TT):
            return _TT(_disj_ff_tt(m.term, n.term))
        if isinstance(n, _FF):
            return _FF(_disj_ff(m.term, n.term))
        if isinstance(n, _ST):
            # se(m)[F -> se(s)] is the T*-tree of flip(m) && s.
            return _TStar(_flip_ff(m.term), n.star)
        return _TStar(_disj_ff_tt(m.term, n.tt), n.star)
    if isinstance(m, _ST):
        if isinstance(n, _TT):
            return _TT(_star_to_tt(m.star, TRUE, n.term))
        if isinstance(n, _FF):
            return _ST(_ff_graft(m.star, n.term))
        if isinstance(n, _ST):
            return _ST(_or_star(m.star, n.star))
        # s || (v && s2): graft v's skeleton into the F slots of s, then let
        # s2 continue at every F leaf of the combined tree.
        return _ST(_or_star(_ff_graft(m.star, _fskel_tt(n.tt)), n.star))
    # (u && s) || y = u && (s || y) on trees: all leaves sit inside se(s).
    inner = _nf_or(_ST(m.star), n)
    if isinstance(inner, _ST):
        return _TStar(m.tt, inner.star)
    assert isinstance(inner, _TT)
    return _TT(_conj_tt(m.tt, inner.term))


def _nf_neg(m: _Nf) -> _Nf:
    if isinstance(m, _TT):
        return _FF(_dual_tt(m.term))
    if isinstance(m, _FF):
        return _TT(_dual_ff(m.term))
    if isinstance(m, _ST):
        return _ST(_neg_star(m.star))
    return _TStar(m.tt, _neg_star(m.star))


def _norm(f: Formula) -> _Nf:
    if isinstance(f, Const):
        return _TT(TRUE) if f.value else _FF(FALSE)
    if isinstance(f, Lit):
        return _ST(_StarLit(True, f.atom, TRUE, FALSE))
    if isinstance(f, Neg):
        return _nf_neg(_norm(f.inner))
    if isinstance(f, Con):
        return _nf_and(_norm(f.left), _norm(f.right))
    if isinstance(f, Dis):
        return _nf_or(_norm(f.left), _norm(f.right))
    raise TypeError(f"not a formula: {f!r}")


def normalize(f: Formula) -> Formula:
    """A formula in normal form (T-term, F-term, or T*-term) with the same
    evaluation tree as f.  Output size may be exponential in the input size."""
    m = _norm(f)
    if isinstance(m, _TT):
        return m.term
    if isinstance(m, _FF):
        return m.term
    if isinstance(m, _ST):
        return Con(TRUE, _star_formula(m.star))
    return Con(m.tt, _star_formula(m.star))
