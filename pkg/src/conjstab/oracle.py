"""Brute-force ground truth at desk scale.

Everything here is deliberately independent of the decision procedure: the
only imports are word arithmetic and subgroup membership, so oracle
verdicts can be used to validate the decider rather than echo it.

The stability search is exhaustive and its negative answers are proofs,
not heuristics: any conjugator of u to v has the form r^k t where r
generates the centralizer of u and t is one free conjugator, and whenever
an H-conjugator exists at all, one exists of length below the product-
automaton bound recorded in the verdict.  Scanning the corresponding
finite window of exponents k therefore decides existence exactly.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator

from .stallings import Subgroup
from .words import Alphabet, Word, conjugate_in_free, free_reduce, signed_letter_order

__all__ = [
    "DEFAULT_MAX_RADIUS",
    "max_ball_radius",
    "BallSpec",
    "OracleVerdict",
    "enumerate_ball",
    "brute_stability_witness",
    "ls_exhaustive_check",
]

DEFAULT_MAX_RADIUS = 8
_MAX_BALL_ENV = "CONJSTAB_MAX_BALL"


def max_ball_radius() -> int:
    """Radius guard; the CONJSTAB_MAX_BALL environment variable overrides it."""
    value = os.environ.get(_MAX_BALL_ENV)
    if value is None:
        return DEFAULT_MAX_RADIUS
    try:
        return int(value)
    except ValueError:
        raise ValueError(f"{_MAX_BALL_ENV} must be an integer, got {value!r}") from None


@dataclass(frozen=True, slots=True)
class BallSpec:
    """A ball of reduced words: all |w| <= radius over the alphabet.

    The radius guard keeps the exponential enumeration at desk scale.
    """

    alphabet: Alphabet
    radius: int

    def __post_init__(self) -> None:
        limit = max_ball_radius()
        if not 0 <= self.radius <= limit:
            raise ValueError(f"radius {self.radius} exceeds the guard {limit}")


@dataclass(frozen=True, slots=True)
class OracleVerdict:
    """Result of the exhaustive stability search.

    A witness (u, v, g) has u, v in H, g outside H, g^-1 u g = v, and no h
    in H of length up to h_bound_used conjugating u to v; h_bound_used is
    the product-automaton bound |V| * (|V| + |u| + |t|), which makes the
    absence exact.  Without a witness, h_bound_used records the largest
    bound that was exercised.
    """

    witness: tuple[Word, Word, Word] | None
    searched_radius: int
    h_bound_used: int


def enumerate_ball(spec: BallSpec) -> Iterator[Word]:
    """All freely reduced words of length <= radius, in shortlex order.

    The count is 1 + sum over lengths L of 2n(2n-1)^(L-1) for rank n.
    """
    alphabet = spec.alphabet
    order = signed_letter_order(alphabet.rank)
    yield alphabet.identity()
    level: list[tuple[int, ...]] = [()]
    for _ in range(spec.radius):
        nxt = []
        for prefix in level:
            last = prefix[-1] if prefix else 0
            for s in order:
                if s == -last:
                    continue
                letters = prefix + (s,)
                nxt.append(letters)
                yield Word(alphabet, letters)
        level = nxt


def brute_stability_witness(H: Subgroup, radius: int) -> OracleVerdict:
    """Exhaustive counterexample search for conjugacy stability.

    Scans every nontrivial u in H and every g outside H within the ball
    (u ascending, then g ascending, so the first witness is deterministic).
    When v = g^-1 u g lands back in H, the H-conjugator question is decided
    exactly by scanning h = r^k t over the exponent window implied by the
    product-automaton length bound.
    """
    spec = BallSpec(H.alphabet, radius)
    alphabet = H.alphabet
    graph = H.graph
    basepoint = graph.basepoint
    trace = graph.trace
    ball = [w.letters for w in enumerate_ball(spec)]
    in_h = [trace(ls) == basepoint for ls in ball]
    us = [ls for ls, member in zip(ball, in_h) if member and ls]
    gs = [ls for ls, member in zip(ball, in_h) if not member]
    g_inverses = [tuple(-l for l in reversed(ls)) for ls in gs]
    num_vertices = graph.num_vertices
    max_bound = 0
    for u_letters in us:
        u = Word(alphabet, u_letters)
        root = u.root().root
        for g_letters, ginv_letters in zip(gs, g_inverses):
            v_letters = free_reduce(ginv_letters + u_letters + g_letters)
            if trace(v_letters) != basepoint:
                continue
            v = Word(alphabet, v_letters)
            t = conjugate_in_free(u, v)
            assert t is not None
            h_bound = num_vertices * (num_vertices + len(u_letters) + len(t))
            if h_bound > max_bound:
                max_bound = h_bound
            if _has_subgroup_conjugator(H, root, t, h_bound):
                continue
            return OracleVerdict((u, v, Word(alphabet, g_letters)), radius, h_bound)
    return OracleVerdict(None, radius, max_bound)


def _has_subgroup_conjugator(H: Subgroup, root: Word, t: Word, h_bound: int) -> bool:
    """Does some h = root^k * t lie in H?  Exact over the finite window.

    Any h of length <= h_bound has |k| <= h_bound + |t| because each root
    power adds at least one letter, and if an H-conjugator exists at all
    then one exists within the length bound.
    """
    if H.contains(t):
        return True
    window = h_bound + len(t)
    forward = backward = t
    root_inverse = root.inverse()
    for _ in range(window):
        forward = root * forward
        if H.contains(forward):
            return True
        backward = root_inverse * backward
        if H.contains(backward):
            return True
    return False


def ls_exhaustive_check(max_len: int, max_exp: int) -> list[tuple]:
    """Exhaustively hunt for non-commuting solutions of a^k b^l = c^m.

    Over rank 2, for all reduced a, b, c up to max_len and all exponents
    k, l, m in [2, max_exp], any solution of a^k b^l = c^m must have a, b,
    c pairwise commuting (classical for free groups); returns the list of
    violating tuples (a, k, b, l, c, m), expected empty.  Guarded to
    max_len <= 3 and max_exp <= 3 to stay at desk scale.
    """
    if not 1 <= max_len <= 3:
        raise ValueError(f"max_len must be in [1, 3], got {max_len}")
    if not 2 <= max_exp <= 3:
        raise ValueError(f"max_exp must be in [2, 3], got {max_exp}")
    alphabet = Alphabet(("a", "b"))
    words = list(enumerate_ball(BallSpec(alphabet, max_len)))
    exponents = range(2, max_exp + 1)
    powers: dict[tuple[Word, int], Word] = {}
    by_value: dict[tuple[int, ...], list[tuple[Word, int]]] = {}
    for c in words:
        for m in exponents:
            cm = c**m
            powers[(c, m)] = cm
            by_value.setdefault(cm.letters, []).append((c, m))

    def commute(x: Word, y: Word) -> bool:
        return x * y == y * x

    violations = []
    for a in words:
        for k in exponents:
            ak = powers[(a, k)]
            for b in words:
                for l in exponents:
                    lhs = ak * powers[(b, l)]
                    for c, m in by_value.get(lhs.letters, ()):
                        if not (commute(a, b) and commute(a, c) and commute(b, c)):
                            violations.append((a, k, b, l, c, m))
    return violations
