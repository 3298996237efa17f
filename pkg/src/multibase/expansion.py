"""Greedy, quasi-greedy, lazy and quasi-lazy expansions and their lexicographic tests.

Digits are chosen one at a time from the remainder ``x`` with the windows
``g_j = (d_j + lambda)/q_j`` and ``h_j = (d_j + Lambda)/q_j``:

=============  ==========================================================
greedy         largest ``j`` with ``g_j <= x``
quasi-greedy   largest ``j`` with ``g_j < x`` (``0`` when ``x == lambda``)
lazy           smallest ``j`` with ``h_j >= x``
quasi-lazy     smallest ``j`` with ``h_j > x`` (``M`` when ``x == Lambda``)
=============  ==========================================================

after which ``x`` becomes ``q_j * x - d_j``.  Exact remainders are remembered,
so a repeated remainder closes a cycle and the expansion is returned as an
exact eventually periodic sequence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

from .numerics import Ordering, Scalar, UndeterminedError, coerce_scalar, compare, format_scalar, is_exact
from .sequences import DigitSequence, is_co_finite, is_finite, lex_compare
from .system import AlphabetBaseSystem


class ExpansionKind(Enum):
    GREEDY = "greedy"
    QUASI_GREEDY = "quasi-greedy"
    LAZY = "lazy"
    QUASI_LAZY = "quasi-lazy"

    @property
    def dual(self) -> "ExpansionKind":
        return {
            ExpansionKind.GREEDY: ExpansionKind.LAZY,
            ExpansionKind.LAZY: ExpansionKind.GREEDY,
            ExpansionKind.QUASI_GREEDY: ExpansionKind.QUASI_LAZY,
            ExpansionKind.QUASI_LAZY: ExpansionKind.QUASI_GREEDY,
        }[self]


class OutOfRangeError(ValueError):
    """The point lies outside ``[lambda, Lambda]`` and has no expansion."""


class NotRegularError(ValueError):
    pass


class Verdict(Enum):
    VALID = "Valid"
    INVALID = "Invalid"
    UNIQUE = "Unique"
    NOT_UNIQUE = "NotUnique"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a lexicographic test.

    ``position`` is the 1-based index ``n`` whose condition fails;
    ``depth`` is the comparison horizon for undetermined results.
    """

    verdict: Verdict
    position: int | None = None
    depth: int | None = None

    def __str__(self) -> str:
        if self.position is not None:
            return f"{self.verdict.value}({self.position})"
        if self.depth is not None:
            return f"{self.verdict.value}({self.depth})"
        return self.verdict.value


def require_regular(system: AlphabetBaseSystem) -> None:
    if not system.is_regular():
        raise NotRegularError(f"system {system} is not regular")


@dataclass
class ExpansionState:
    """A resumable digit stream for one point and one expansion kind."""

    system: AlphabetBaseSystem
    kind: ExpansionKind
    x: Scalar
    current_value: Scalar
    digits: list[int] = field(default_factory=list)
    cycle: tuple[int, int] | None = None
    undetermined_at: int | None = None
    _seen: dict = field(default_factory=dict, repr=False)

    @property
    def finished(self) -> bool:
        return self.cycle is not None or self.undetermined_at is not None

    def extend(self, n: int) -> "ExpansionState":
        """Emit digits until ``n`` are known, a cycle closes, or a choice is undecidable."""
        while len(self.digits) < n and not self.finished:
            self._step()
        return self

    def _step(self) -> None:
        i = len(self.digits)
        r = self.current_value
        if is_exact(r):
            if r in self._seen:
                s = self._seen[r]
                self.cycle = (s, i - s)
                return
            self._seen[r] = i
        j = _choose_digit(self.system, self.kind, r)
        if j is None:
            self.undetermined_at = i + 1
            return
        self.digits.append(j)
        self.current_value = self.system.bases[j] * r - self.system.digits[j]

    def digit(self, i: int) -> int | None:
        """0-based digit ``i`` or None when it cannot be decided."""
        if self.cycle is None:
            self.extend(i + 1)
        if i < len(self.digits):
            return self.digits[i]
        if self.cycle is not None:
            s, p = self.cycle
            return self.digits[s + (i - s) % p]
        return None

    def take(self, n: int) -> list[int]:
        out = []
        for i in range(n):
            d = self.digit(i)
            if d is None:
                break
            out.append(d)
        return out

    @property
    def sequence(self) -> DigitSequence:
        """Exact when a cycle was detected, otherwise the digits emitted so far, truncated."""
        if self.cycle is not None:
            s, _ = self.cycle
            return DigitSequence(tuple(self.digits[:s]), tuple(self.digits[s:]))
        return DigitSequence.truncated(self.digits)


def _choose_digit(system: AlphabetBaseSystem, kind: ExpansionKind, x: Scalar) -> int | None:
    M = system.M
    lam, Lam = system.bounds()
    if kind is ExpansionKind.GREEDY or kind is ExpansionKind.QUASI_GREEDY:
        strict = kind is ExpansionKind.QUASI_GREEDY
        if strict:
            at_bottom = compare(x, lam)
            if at_bottom is Ordering.UNKNOWN:
                return None
            if at_bottom is Ordering.EQUAL:
                return 0
        for j in range(M, -1, -1):
            order = compare(system.greedy_thresholds[j], x)
            if order is Ordering.UNKNOWN:
                return None
            if order is Ordering.LESS or (order is Ordering.EQUAL and not strict):
                return j
        raise AssertionError("remainder fell below lambda")
    strict = kind is ExpansionKind.QUASI_LAZY
    if strict:
        at_top = compare(x, Lam)
        if at_top is Ordering.UNKNOWN:
            return None
        if at_top is Ordering.EQUAL:
            return M
    for j in range(M + 1):
        order = compare(system.lazy_thresholds[j], x)
        if order is Ordering.UNKNOWN:
            return None
        if order is Ordering.GREATER or (order is Ordering.EQUAL and not strict):
            return j
    raise AssertionError("remainder rose above Lambda")


def _check_range(system: AlphabetBaseSystem, x: Scalar) -> None:
    lam, Lam = system.bounds()
    lo, hi = compare(x, lam), compare(x, Lam)
    if lo is Ordering.LESS or hi is Ordering.GREATER:
        raise OutOfRangeError(f"x = {format_scalar(x)} lies outside [{format_scalar(lam)}, {format_scalar(Lam)}]")
    if not lo.decided or not hi.decided:
        raise UndeterminedError("cannot certify lambda <= x <= Lambda")


def start(system: AlphabetBaseSystem, x: Scalar, kind: ExpansionKind) -> ExpansionState:
    """An unstarted expansion stream; digits are produced on demand."""
    require_regular(system)
    x = coerce_scalar(x)
    _check_range(system, x)
    return ExpansionState(system, kind, x, x)


def expand(system: AlphabetBaseSystem, x: Scalar, kind: ExpansionKind, n: int) -> ExpansionState:
    """Run the digit rule of ``kind`` on ``x`` for ``n`` digits (or until a cycle closes)."""
    return start(system, x, kind).extend(n)


def extended_expand(system: AlphabetBaseSystem, x: Scalar, kind: ExpansionKind, n: int) -> ExpansionState:
    """Like :func:`expand`, but also accepts the sub/superexpansion ranges.

    Greedy and quasi-greedy accept any ``x >= lambda`` (``M^inf`` above
    ``Lambda``); lazy and quasi-lazy accept any ``x <= Lambda`` (``0^inf``
    below ``lambda``).
    """
    require_regular(system)
    x = coerce_scalar(x)
    lam, Lam = system.bounds()
    if kind in (ExpansionKind.GREEDY, ExpansionKind.QUASI_GREEDY) and compare(x, Lam) is Ordering.GREATER:
        return _constant_state(system, kind, x, system.M)
    if kind in (ExpansionKind.LAZY, ExpansionKind.QUASI_LAZY) and compare(x, lam) is Ordering.LESS:
        return _constant_state(system, kind, x, 0)
    return expand(system, x, kind, n)


def _constant_state(system, kind, x, j) -> ExpansionState:
    return ExpansionState(system, kind, x, system.fixed_point_value(j), digits=[j], cycle=(0, 1))


def alpha_argument(system: AlphabetBaseSystem, j: int) -> Scalar:
    """``q_j * ((d_{j+1} + lambda)/q_{j+1} - d_j/q_j)``."""
    return system.bases[j] * (system.greedy_thresholds[j + 1] - system.digits[j] / system.bases[j])


def gamma_argument(system: AlphabetBaseSystem, j: int) -> Scalar:
    """``q_j * ((d_{j-1} + Lambda)/q_{j-1} - d_j/q_j)``."""
    return system.bases[j] * (system.lazy_thresholds[j - 1] - system.digits[j] / system.bases[j])


def alpha_j(system: AlphabetBaseSystem, j: int, n: int = 0) -> ExpansionState:
    """Quasi-greedy expansion governing the tails that follow digit ``j < M``."""
    require_regular(system)
    if not 0 <= j < system.M:
        raise IndexError(f"alpha^j needs 0 <= j < {system.M}")
    arg = alpha_argument(system, j)
    lam, Lam = system.bounds()
    if compare(lam, arg) is not Ordering.LESS or compare(arg, Lam) is Ordering.GREATER:
        raise AssertionError(f"alpha argument {format_scalar(arg)} outside (lambda, Lambda]")
    return start(system, arg, ExpansionKind.QUASI_GREEDY).extend(n)


def gamma_j(system: AlphabetBaseSystem, j: int, n: int = 0) -> ExpansionState:
    """Quasi-lazy expansion governing the tails that follow digit ``j > 0``."""
    require_regular(system)
    if not 0 < j <= system.M:
        raise IndexError(f"gamma^j needs 0 < j <= {system.M}")
    arg = gamma_argument(system, j)
    lam, Lam = system.bounds()
    if compare(arg, Lam) is not Ordering.LESS or compare(lam, arg) is Ordering.GREATER:
        raise AssertionError(f"gamma argument {format_scalar(arg)} outside [lambda, Lambda)")
    return start(system, arg, ExpansionKind.QUASI_LAZY).extend(n)


class Characteristics:
    """Lazily extended ``alpha^j`` and ``gamma^j`` streams of one system."""

    def __init__(self, system: AlphabetBaseSystem):
        self.system = system
        self.alpha = [alpha_j(system, j) for j in range(system.M)]
        self.gamma = [None] + [gamma_j(system, j) for j in range(1, system.M + 1)]


@lru_cache(maxsize=512)
def characteristics(system: AlphabetBaseSystem) -> Characteristics:
    return Characteristics(system)


def compare_with_stream(seq: DigitSequence, stream: ExpansionState, depth: int) -> Ordering:
    """Compare a sequence with an expansion stream, extending the stream as needed.

    Exact when both are eventually periodic; otherwise decided by the first
    difference among the first ``depth`` digits.
    """
    stream.extend(depth)
    if seq.is_exact and stream.cycle is not None:
        return lex_compare(seq, stream.sequence)
    for i in range(depth):
        a = seq.get(i)
        b = stream.digit(i)
        if a is None or b is None:
            return Ordering.UNKNOWN
        if a != b:
            return Ordering.LESS if a < b else Ordering.GREATER
    return Ordering.UNKNOWN


def _last_index(seq: DigitSequence, pred) -> int:
    return max(i + 1 for i, d in enumerate(seq.prefix) if pred(d))


def validate(system: AlphabetBaseSystem, seq: DigitSequence, kind: ExpansionKind, depth: int) -> CheckResult:
    """Lexicographic test that ``seq`` is the ``kind`` expansion of its value.

    Greedy: every tail after a digit ``j < M`` is strictly below ``alpha^j``;
    quasi-greedy: infinite and ``<=``; lazy: every tail after ``j > 0`` is
    strictly above ``gamma^j``; quasi-lazy: co-infinite and ``>=``.

    For eventually periodic input every distinct tail is checked, so a
    ``Valid`` answer is a certificate whenever all comparisons were exact;
    otherwise positions and comparisons are limited to ``depth``.
    """
    require_regular(system)
    M = system.M
    if seq.max_digit() > M:
        raise ValueError(f"digit exceeds alphabet maximum {M}")
    chars = characteristics(system)

    if seq.is_exact:
        if kind is ExpansionKind.QUASI_GREEDY and is_finite(seq):
            return CheckResult(Verdict.INVALID, position=_last_index(seq, lambda d: d > 0))
        if kind is ExpansionKind.QUASI_LAZY and is_co_finite(seq, M):
            return CheckResult(Verdict.INVALID, position=_last_index(seq, lambda d: d < M))
        positions = range(1, seq.distinct_shift_count() + 1)
    else:
        positions = range(1, min(depth, len(seq.prefix)) + 1)

    greedy_side = kind in (ExpansionKind.GREEDY, ExpansionKind.QUASI_GREEDY)
    strict = kind in (ExpansionKind.GREEDY, ExpansionKind.LAZY)
    pending = False
    for n in positions:
        j = seq[n - 1]
        if greedy_side:
            if j == M:
                continue
            order = compare_with_stream(seq.shift(n), chars.alpha[j], depth)
            bad = Ordering.GREATER
        else:
            if j == 0:
                continue
            order = compare_with_stream(seq.shift(n), chars.gamma[j], depth)
            bad = Ordering.LESS
        if order is Ordering.UNKNOWN:
            pending = True
        elif order is bad or (strict and order is Ordering.EQUAL):
            return CheckResult(Verdict.INVALID, position=n)
    if pending:
        return CheckResult(Verdict.UNDETERMINED, depth=depth)
    return CheckResult(Verdict.VALID)


def is_unique(system: AlphabetBaseSystem, seq: DigitSequence, depth: int) -> CheckResult:
    """Unique expansion test: greedy and lazy at the same time."""
    g = validate(system, seq, ExpansionKind.GREEDY, depth)
    l = validate(system, seq, ExpansionKind.LAZY, depth)
    failures = [r.position for r in (g, l) if r.verdict is Verdict.INVALID]
    if failures:
        return CheckResult(Verdict.NOT_UNIQUE, position=min(failures))
    if Verdict.UNDETERMINED in (g.verdict, l.verdict):
        return CheckResult(Verdict.UNDETERMINED, depth=depth)
    return CheckResult(Verdict.UNIQUE)


def unique_point_test(system: AlphabetBaseSystem, x: Scalar, depth: int) -> CheckResult:
    """Compare the greedy and lazy expansions of ``x``.

    Both cycling: exact answer.  Otherwise the first ``depth`` digits decide,
    and agreement through ``depth`` is reported as unique at that depth.
    """
    b = expand(system, x, ExpansionKind.GREEDY, depth)
    l = expand(system, x, ExpansionKind.LAZY, depth)
    horizon = depth
    if b.cycle is not None and l.cycle is not None:
        if b.sequence == l.sequence:
            return CheckResult(Verdict.UNIQUE)
        # distinct eventually periodic sequences differ before this index
        horizon = max(len(b.digits), len(l.digits)) + b.cycle[1] * l.cycle[1]
    for i in range(horizon):
        u, v = b.digit(i), l.digit(i)
        if u is None or v is None:
            return CheckResult(Verdict.UNDETERMINED, depth=i)
        if u != v:
            return CheckResult(Verdict.NOT_UNIQUE, position=i + 1)
    return CheckResult(Verdict.UNIQUE, depth=depth)


def quasi_greedy_rewrite(system: AlphabetBaseSystem, greedy: DigitSequence, n: int) -> list[int]:
    """First ``n`` digits of the quasi-greedy expansion derived from a greedy one.

    An infinite greedy expansion is already quasi-greedy.  A finite one
    ``j_1 .. j_k 0^inf`` (``j_k > 0``) becomes ``j_1 .. j_{k-1} (j_k - 1)``
    followed by ``alpha^{j_k - 1}``.
    """
    if not is_finite(greedy):
        return greedy.take(n)
    k = _last_index(greedy, lambda d: d > 0)
    head = list(greedy.prefix[:k])
    head[-1] -= 1
    tail = characteristics(system).alpha[head[-1]]
    return (head + tail.take(max(0, n - k)))[:n]


def quasi_lazy_rewrite(system: AlphabetBaseSystem, lazy: DigitSequence, n: int) -> list[int]:
    """Mirror of :func:`quasi_greedy_rewrite` for lazy expansions ending in ``M^inf``."""
    M = system.M
    if not is_co_finite(lazy, M):
        return lazy.take(n)
    k = _last_index(lazy, lambda d: d < M)
    head = list(lazy.prefix[:k])
    head[-1] += 1
    tail = characteristics(system).gamma[head[-1]]
    return (head + tail.take(max(0, n - k)))[:n]
