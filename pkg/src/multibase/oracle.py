"""Brute-force checks for the expansion engine, exact data only.

The basic tool is cylinder geometry: a finite word ``w`` can start an
expansion of ``x`` iff ``x`` lies in

    C_w = [pi(w) + lambda/Q_w, pi(w) + Lambda/Q_w],   Q_w = q_{w_1} ... q_{w_n}.

:func:`enumerate_expansions` lists every such word of a given length, which
gives the lexicographic extrema the digit rules are supposed to produce.
:func:`census_unique` lists the words not yet refuted as prefixes of unique
expansions, once from the lexicographic conditions and once from cylinder
geometry, and insists that both lists agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .expansion import ExpansionKind, alpha_argument, characteristics, expand, gamma_argument, require_regular
from .numerics import Scalar, coerce_scalar, format_scalar, is_exact
from .system import AlphabetBaseSystem

Word = tuple[int, ...]


class CensusMismatch(AssertionError):
    """The two census methods disagree."""


def _require_rational(system: AlphabetBaseSystem, *values) -> None:
    for v in system.digits + system.bases + tuple(values):
        if not isinstance(v, (int, Fraction)):
            raise TypeError(f"the census needs rational data, got {format_scalar(v)}")


def _require_exact(system: AlphabetBaseSystem, *values) -> None:
    for v in system.digits + system.bases + tuple(values):
        if not is_exact(v):
            raise TypeError(f"the oracle needs exact data, got the enclosure {format_scalar(v)}")


class _Geometry:
    """lambda, Lambda and digit windows recomputed from scratch."""

    def __init__(self, system: AlphabetBaseSystem):
        self.d = [coerce_scalar(v) for v in system.digits]
        self.q = [coerce_scalar(v) for v in system.bases]
        fixed = [d / (q - 1) for d, q in zip(self.d, self.q)]
        self.lam, self.Lam = min(fixed), max(fixed)
        self.M = len(self.d) - 1
        # remainder y admits first digit k iff g[k] <= y <= h[k]
        self.g = [(d + self.lam) / q for d, q in zip(self.d, self.q)]
        self.h = [(d + self.Lam) / q for d, q in zip(self.d, self.q)]


@dataclass(frozen=True)
class ExpansionTree:
    x: Scalar
    depth: int
    surviving_prefixes: list[list[int]]


def enumerate_expansions(system: AlphabetBaseSystem, x, depth: int) -> ExpansionTree:
    """All length-``depth`` words whose cylinder contains ``x``, lexicographically sorted.

    Depth-first search in descending digit order, pruned by exact rational
    interval tests on the remainder ``y = Q_w (x - pi(w))``.
    """
    x = coerce_scalar(x)
    _require_exact(system, x)
    if not system.is_semi_regular():
        raise ValueError("enumeration needs a semi-regular system")
    geo = _Geometry(system)
    if not geo.lam <= x <= geo.Lam:
        raise ValueError(f"x = {x} lies outside [{geo.lam}, {geo.Lam}]")
    found: list[list[int]] = []
    word: list[int] = []

    def walk(y: Fraction) -> None:
        if len(word) == depth:
            found.append(list(word))
            return
        for k in range(geo.M, -1, -1):
            if geo.g[k] <= y <= geo.h[k]:
                word.append(k)
                walk(geo.q[k] * y - geo.d[k])
                word.pop()

    walk(x)
    found.reverse()
    return ExpansionTree(x, depth, found)


def _extendable(geo: _Geometry, word: list[int], x: Scalar, kind: ExpansionKind) -> bool:
    """Can ``word`` be continued to an infinite (quasi-greedy) or co-infinite (quasi-lazy) expansion of ``x``?"""
    y = x
    for k in word:
        y = geo.q[k] * y - geo.d[k]
    if kind is ExpansionKind.QUASI_GREEDY:
        # the remainder lambda only expands as 0^inf, which ends a nonzero word
        return y > geo.lam or all(k == 0 for k in word)
    return y < geo.Lam or all(k == geo.M for k in word)


def extremal_prefix(system: AlphabetBaseSystem, x, kind: ExpansionKind, depth: int) -> list[int]:
    """The brute-force answer for ``kind``: an extremum over the surviving prefixes."""
    x = coerce_scalar(x)
    tree = enumerate_expansions(system, x, depth)
    geo = _Geometry(system)
    words = tree.surviving_prefixes
    if kind in (ExpansionKind.QUASI_GREEDY, ExpansionKind.QUASI_LAZY):
        words = [w for w in words if _extendable(geo, w, x, kind)]
    if not words:
        raise AssertionError(f"no {kind.value} candidate among the surviving prefixes")
    return max(words) if kind in (ExpansionKind.GREEDY, ExpansionKind.QUASI_GREEDY) else min(words)


def verify_extremal(system: AlphabetBaseSystem, x, kind: ExpansionKind, depth: int) -> bool:
    """Does the digit rule reproduce the brute-force extremum through ``depth`` digits?"""
    require_regular(system)
    engine = expand(system, coerce_scalar(x), kind, depth).take(depth)
    return engine == extremal_prefix(system, x, kind, depth)


# ---------------------------------------------------------------- census of unique prefixes

def _clip(pieces, lo, hi):
    """Intersect with the closed interval ``[lo, hi]``."""
    out = []
    for a, ac, b, bc in pieces:
        if a < lo:
            a, ac = lo, True
        if b > hi:
            b, bc = hi, True
        if a < b or (a == b and ac and bc):
            out.append((a, ac, b, bc))
    return out


def _remove(pieces, lo, hi):
    """Remove the closed interval ``[lo, hi]``."""
    out = []
    for a, ac, b, bc in pieces:
        if b < lo or a > hi:
            out.append((a, ac, b, bc))
            continue
        if a < lo:
            out.append((a, ac, lo, False))
        if b > hi:
            out.append((hi, False, b, bc))
    return out


class _Stream:
    """Digits of a characteristic sequence together with the values of its tails."""

    def __init__(self, system: AlphabetBaseSystem, state, start: Fraction):
        self.system, self.state = system, state
        self.values = [Fraction(start)]

    def digit(self, k: int) -> int:
        d = self.state.digit(k)
        if d is None:
            raise AssertionError("characteristic stream undecidable for rational data")
        return d

    def tail_value(self, k: int) -> Fraction:
        """Value of the tail after ``k`` digits: ``q_a y - d_a`` iterated."""
        while len(self.values) <= k:
            i = len(self.values) - 1
            a = self.digit(i)
            self.values.append(self.system.bases[a] * self.values[i] - self.system.digits[a])
        return self.values[k]


class _Conditions:
    """Truncated uniqueness conditions, checked one digit at a time.

    Position ``n`` with digit ``j < M`` requires the tail to stay strictly
    below ``alpha^j``; with ``j > 0`` strictly above ``gamma^j``.  A tail that
    exceeds (or falls short of) the characteristic prefix refutes the word.
    A tail that still equals it leaves a pending bound on the continuation:
    below a shifted ``alpha`` and above a shifted ``gamma``.  The word
    survives iff the tightest pending bounds leave room, i.e. the value of
    the lower bound is below the value of the upper bound.

    Shifts of ``alpha^j`` are quasi-greedy expansions, so among several
    pending upper bounds the one of least value is also lexicographically
    least and implies the others; dually for the lower bounds.  A state is
    therefore a pair ``(upper, lower)``, each ``(j, offset)`` or None.
    """

    def __init__(self, system: AlphabetBaseSystem):
        self.M = M = system.M
        chars = characteristics(system)
        self.alphas = [_Stream(system, chars.alpha[j], alpha_argument(system, j)) for j in range(M)]
        self.gammas = [None] + [_Stream(system, chars.gamma[j], gamma_argument(system, j)) for j in range(1, M + 1)]

    initial = (None, None)

    def step(self, state, c: int):
        """The state after appending digit ``c``, or None if the word is refuted."""
        upper, lower = state
        if upper is not None:
            j, k = upper
            a = self.alphas[j].digit(k)
            if c > a:
                return None
            upper = (j, k + 1) if c == a else None
        if lower is not None:
            j, k = lower
            g = self.gammas[j].digit(k)
            if c < g:
                return None
            lower = (j, k + 1) if c == g else None
        if c < self.M and (upper is None or self._top(c, 0) < self._top(*upper)):
            upper = (c, 0)
        if c > 0 and (lower is None or self._bottom(c, 0) > self._bottom(*lower)):
            lower = (c, 0)
        if upper is not None and lower is not None and self._bottom(*lower) >= self._top(*upper):
            return None
        return upper, lower

    def _top(self, j: int, k: int) -> Fraction:
        return self.alphas[j].tail_value(k)

    def _bottom(self, j: int, k: int) -> Fraction:
        return self.gammas[j].tail_value(k)


class _Cylinders:
    """Points whose surviving prefixes all equal the current word, in remainder coordinates.

    A state is ``(n, pieces)``: a finite union of intervals
    ``(lo, lo_closed, hi, hi_closed)`` whose endpoints are integers over the
    common denominator ``D_n = D_0 * P**n``.  ``P`` clears the denominators
    of every ``q_j`` and ``d_j``, so ``y -> q_j y - d_j`` stays integral, and
    ``D_0`` clears those of the digit windows, so clipping stays exact.
    """

    def __init__(self, system: AlphabetBaseSystem):
        geo = self.geo = _Geometry(system)
        self.M = geo.M
        P = math.lcm(*(v.denominator for v in geo.q + geo.d))
        D0 = math.lcm(*(v.denominator for v in geo.g + geo.h + [geo.lam, geo.Lam]))
        self.P = P
        self.scale = [D0]
        self.windows: list[tuple[list[int], list[int]]] = []
        self.mult = [int(q * P) for q in geo.q]
        self.shift = [int(d * P) for d in geo.d]
        self.initial = (0, ((int(geo.lam * D0), True, int(geo.Lam * D0), True),))

    def _windows(self, n: int):
        while len(self.windows) <= n:
            D = self.scale[len(self.windows)]
            self.windows.append(([int(g * D) for g in self.geo.g], [int(h * D) for h in self.geo.h]))
            self.scale.append(D * self.P)
        return self.windows[n]

    def step(self, state, j: int):
        n, pieces = state
        g, h = self._windows(n)
        part = _clip(pieces, g[j], h[j])
        for k in range(self.M + 1):
            if k != j and part:
                part = _remove(part, g[k], h[k])
        if not part:
            return None
        a, e = self.mult[j], self.shift[j] * self.scale[n]
        return n + 1, tuple((a * lo - e, lc, a * hi - e, hc) for lo, lc, hi, hc in part)


def _walk(rules, depth: int) -> Iterator[Word]:
    """Depth-first search over words accepted by ``rules``, in lexicographic order."""
    stack = [((), rules.initial)]
    while stack:
        word, state = stack.pop()
        if len(word) == depth:
            yield word
            continue
        children = []
        for c in range(rules.M + 1):
            nxt = rules.step(state, c)
            if nxt is not None:
                children.append((word + (c,), nxt))
        stack.extend(reversed(children))


CENSUS_METHODS = {"conditions": _Conditions, "cylinders": _Cylinders}


def census_words(system: AlphabetBaseSystem, depth: int, method: str) -> Iterator[Word]:
    """Stream the census of one method in lexicographic order."""
    _require_rational(system)
    require_regular(system)
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    try:
        rules = CENSUS_METHODS[method](system)
    except KeyError:
        raise ValueError(f"unknown census method {method!r}; choose from {sorted(CENSUS_METHODS)}") from None
    return _walk(rules, depth)


def census_agreement(system: AlphabetBaseSystem, depth: int) -> int:
    """Run both census methods side by side; return the common count or raise CensusMismatch."""
    a = census_words(system, depth, "conditions")
    b = census_words(system, depth, "cylinders")
    count = 0
    sentinel = object()
    while True:
        u, v = next(a, sentinel), next(b, sentinel)
        if u is sentinel and v is sentinel:
            return count
        if u != v:
            raise CensusMismatch(f"census methods differ after {count} words: conditions {u!r}, cylinders {v!r}")
        count += 1


def census_unique(system: AlphabetBaseSystem, depth: int) -> list[list[int]]:
    """Length-``depth`` words not yet refuted as prefixes of unique expansions.

    Computed by the lexicographic conditions and by cylinder geometry; a
    disagreement raises CensusMismatch.
    """
    a = [list(w) for w in census_words(system, depth, "conditions")]
    b = [list(w) for w in census_words(system, depth, "cylinders")]
    if a != b:
        sa, sb = set(map(tuple, a)), set(map(tuple, b))
        only_a, only_b = sorted(sa - sb)[:3], sorted(sb - sa)[:3]
        raise CensusMismatch(f"census methods differ: conditions only {only_a}, cylinders only {only_b}")
    return a


def survives_census(system: AlphabetBaseSystem, word, method: str = "cylinders") -> bool:
    """Is ``word`` in the census at depth ``len(word)``?  Follows a single path, so it stays cheap."""
    _require_rational(system)
    require_regular(system)
    rules = CENSUS_METHODS[method](system)
    state = rules.initial
    for c in word:
        if not 0 <= c <= system.M:
            raise ValueError(f"digit {c} outside 0..{system.M}")
        state = rules.step(state, c)
        if state is None:
            return False
    return True
