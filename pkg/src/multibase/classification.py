"""How large is the set of unique expansions?

The sufficient conditions tested here compare every ``alpha^j`` (``j < M``)
with the golden-ratio and Thue-Morse reference sequences of the alphabet
``{0..M}``, and every ``gamma^{M-j}`` with their reflections:

=============  =======================================================
TrivialOnly    ``alpha^j <= alpha_GR`` and ``gamma^{M-j} >= refl(alpha_GR)``
Infinite       ``alpha^j >  alpha_GR`` and ``gamma^{M-j} <  refl(alpha_GR)``
Countable      ``alpha^j <  alpha_KL`` and ``gamma^{M-j} >  refl(alpha_KL)``
Continuum      ``alpha^j >= alpha_KL`` and ``gamma^{M-j} <= refl(alpha_KL)``
=============  =======================================================

each for all ``j < M``.  Two-element systems with both bases in ``(1, 2]``
have an exact dichotomy: infinitely many unique expansions iff
``q_0 > 1 + 1/q_1`` and ``q_1 > 1 + 1/q_0``, otherwise only ``0^inf`` and
``1^inf``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .expansion import ExpansionState, characteristics, require_regular
from .numerics import (
    Interval,
    Ordering,
    Scalar,
    coerce_scalar,
    compare,
    default_precision,
    format_scalar,
    sqrt_exact,
    sqrt_interval,
)
from .sequences import DigitSequence, alpha_gr, alpha_kl, lex_compare, reflect
from .system import AlphabetBaseSystem

DEFAULT_DEPTH = 64


class UniquenessClass(Enum):
    TRIVIAL_ONLY = "TrivialOnly"
    INFINITE = "Infinite"
    COUNTABLE = "Countable"
    CONTINUUM = "Continuum"
    NOT_COVERED = "NotCovered"
    UNDETERMINED = "Undetermined"


class PreconditionError(ValueError):
    """Inputs outside the hypotheses of the requested test."""


@dataclass(frozen=True)
class Comparison:
    """One decided (or undecided) lexicographic comparison used as evidence."""

    left: str
    right: str
    order: Ordering
    position: int | None  # first differing index (1-based); None when equal or unknown

    def __str__(self) -> str:
        sym = {Ordering.LESS: "<", Ordering.EQUAL: "=", Ordering.GREATER: ">", Ordering.UNKNOWN: "?"}[self.order]
        where = f" at index {self.position}" if self.position is not None else ""
        if self.order is Ordering.EQUAL:
            where = " (exact)"
        elif self.order is Ordering.UNKNOWN:
            where = " (no difference within depth)"
        return f"{self.left} {sym} {self.right}{where}"


@dataclass(frozen=True)
class Classification:
    value: UniquenessClass
    depth: int | None = None
    evidence: tuple[Comparison, ...] = ()
    notes: tuple[str, ...] = field(default=())

    def __str__(self) -> str:
        if self.value is UniquenessClass.UNDETERMINED:
            return f"Undetermined({self.depth})"
        return self.value.value


# ---------------------------------------------------------------- constructors

def classical_system(M: int, q: Scalar) -> AlphabetBaseSystem:
    """``{(0, q), (1, q), ..., (M, q)}`` for ``1 < q <= M + 1``."""
    if M < 1:
        raise PreconditionError("M must be a positive integer")
    q = coerce_scalar(q)
    low, high = compare(q, 1), compare(q, M + 1)
    if low is not Ordering.GREATER or high is Ordering.GREATER:
        raise PreconditionError(f"q = {format_scalar(q)} must lie in (1, {M + 1}]")
    if high is Ordering.UNKNOWN:
        raise PreconditionError(f"cannot certify q = {format_scalar(q)} <= {M + 1}")
    return AlphabetBaseSystem(tuple(Fraction(j) for j in range(M + 1)), (q,) * (M + 1))


# ---------------------------------------------------------------- thresholds

def q_gr_exact(M: int) -> Fraction | Scalar:
    """Generalized golden ratio as an exact scalar (a Quadratic for odd M)."""
    if M < 1:
        raise ValueError("M must be positive")
    k = (M + 1) // 2
    if M % 2 == 0:
        return Fraction(k + 1)
    return (k + sqrt_exact(k * k + 4 * k)) / 2


def q_gr(M: int, precision_bits: int | None = None) -> Scalar:
    """Generalized golden ratio: ``(k + sqrt(k^2 + 4k))/2`` for ``M = 2k-1``, ``k + 1`` for ``M = 2k``.

    Odd M gives an Interval of width at most ``2**-precision_bits``.
    """
    if M < 1:
        raise ValueError("M must be positive")
    if precision_bits is None:
        precision_bits = default_precision()
    k = (M + 1) // 2
    if M % 2 == 0:
        return Fraction(k + 1)
    root = sqrt_interval(k * k + 4 * k, precision_bits + 1)
    return Interval((k + root.lo) / 2, (k + root.hi) / 2, precision_bits)


def _series_bounds(digits: list[int], M: int, q: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Enclosure of ``sum_i c_i q^{-i}`` over all continuations of ``digits`` with values in 0..M.

    Fixed-point Horner evaluation with outward rounding at ``bits`` fractional bits.
    """
    num, den = q.numerator, q.denominator
    one = 1 << bits
    lo = hi = 0
    for c in reversed(digits):
        lo = ((c * one + lo) * den) // num
        hi = -((-(c * one + hi) * den) // num)
    n = len(digits)
    # remaining digits contribute at most M q^{-n} / (q - 1)
    tail = Fraction(M) / (q - 1) / q ** n
    hi += -((-tail.numerator * one) // tail.denominator)
    return Fraction(lo, one), Fraction(hi, one)


def q_kl(M: int, precision_bits: int | None = None) -> Interval:
    """Generalized Thue-Morse threshold q_KL by certified bisection.

    Root of ``sum_i alpha_KL_i q^{-i} = 1`` in ``(1, M + 1]``.  The series is
    cut after ``4 * precision_bits`` terms and the rest is covered by the
    geometric tail bound, so each bisection step is decided rigorously.
    """
    if M < 1:
        raise ValueError("M must be positive")
    if precision_bits is None:
        precision_bits = default_precision()
    if precision_bits < 1:
        raise ValueError("precision_bits must be positive")
    n_terms = 4 * precision_bits
    digits = alpha_kl(M, n_terms).take(n_terms)
    lo, hi = Fraction(1), Fraction(M + 1)
    width = Fraction(1, 2 ** precision_bits)
    work_bits = precision_bits + 64
    while hi - lo > width:
        mid = (lo + hi) / 2
        s_lo, s_hi = _series_bounds(digits, M, mid, work_bits)
        if s_lo > 1:
            lo = mid  # series too large: the root lies above mid
        elif s_hi < 1:
            hi = mid
        else:
            # undecided at this working precision; refine the arithmetic and retry
            work_bits *= 2
            if work_bits > 64 * (precision_bits + 64):
                break
    return Interval(lo, hi, precision_bits)


# ---------------------------------------------------------------- classification

def _compare_stream(stream: ExpansionState, ref: DigitSequence, depth: int) -> tuple[Ordering, int | None]:
    stream.extend(depth)
    if stream.cycle is not None and ref.is_exact:
        seq = stream.sequence
        order = lex_compare(seq, ref)
        if order is Ordering.EQUAL:
            return order, None
        i = 0
        while seq[i] == ref[i]:
            i += 1
        return order, i + 1
    for i in range(depth):
        a, b = stream.digit(i), ref.get(i)
        if a is None or b is None:
            break
        if a != b:
            return (Ordering.LESS if a < b else Ordering.GREATER), i + 1
    return Ordering.UNKNOWN, None


def _bundle(orders: list[Ordering], accept: set[Ordering]) -> Ordering:
    """GREATER if every order is accepted, LESS if one is decided against, else UNKNOWN."""
    if any(o.decided and o not in accept for o in orders):
        return Ordering.LESS
    if all(o in accept for o in orders):
        return Ordering.GREATER
    return Ordering.UNKNOWN


_PRECEDENCE = (UniquenessClass.CONTINUUM, UniquenessClass.TRIVIAL_ONLY,
               UniquenessClass.COUNTABLE, UniquenessClass.INFINITE)


def theorem_bundles(system: AlphabetBaseSystem, depth: int) -> tuple[dict[UniquenessClass, Ordering], list[Comparison]]:
    """Evaluate the four sufficient conditions.

    Returns, per class, GREATER (holds), LESS (refuted) or UNKNOWN, together
    with the individual comparisons.
    """
    require_regular(system)
    M = system.M
    chars = characteristics(system)
    a_gr = alpha_gr(M)
    a_kl = alpha_kl(M, depth)
    r_gr, r_kl = reflect(a_gr, M), reflect(a_kl, M)
    evidence: list[Comparison] = []
    gr_a, gr_g, kl_a, kl_g = [], [], [], []
    for j in range(M):
        g_index = M - j
        for ref, name, target, stream, label in (
            (a_gr, "alpha_GR", gr_a, chars.alpha[j], f"alpha^{j}"),
            (r_gr, "refl(alpha_GR)", gr_g, chars.gamma[g_index], f"gamma^{g_index}"),
            (a_kl, "alpha_KL", kl_a, chars.alpha[j], f"alpha^{j}"),
            (r_kl, "refl(alpha_KL)", kl_g, chars.gamma[g_index], f"gamma^{g_index}"),
        ):
            order, pos = _compare_stream(stream, ref, depth)
            target.append(order)
            evidence.append(Comparison(label, name, order, pos))
    L, E, G = Ordering.LESS, Ordering.EQUAL, Ordering.GREATER
    verdicts = {
        UniquenessClass.TRIVIAL_ONLY: _and(_bundle(gr_a, {L, E}), _bundle(gr_g, {G, E})),
        UniquenessClass.INFINITE: _and(_bundle(gr_a, {G}), _bundle(gr_g, {L})),
        UniquenessClass.COUNTABLE: _and(_bundle(kl_a, {L}), _bundle(kl_g, {G})),
        UniquenessClass.CONTINUUM: _and(_bundle(kl_a, {G, E}), _bundle(kl_g, {L, E})),
    }
    return verdicts, evidence


def _and(a: Ordering, b: Ordering) -> Ordering:
    if Ordering.LESS in (a, b):
        return Ordering.LESS
    if a is Ordering.GREATER and b is Ordering.GREATER:
        return Ordering.GREATER
    return Ordering.UNKNOWN


def _in_unit_range(q: Scalar) -> bool | None:
    """Is ``1 < q <= 2``?  None when undecidable."""
    hi = compare(q, 2)
    if hi is Ordering.UNKNOWN:
        return None
    return compare(q, 1) is Ordering.GREATER and hi is not Ordering.GREATER


def classify(system: AlphabetBaseSystem, depth: int = DEFAULT_DEPTH) -> Classification:
    """Classify the set of unique expansions of a regular system.

    When several conditions hold, the most informative wins:
    Continuum, then TrivialOnly, then Countable, then Infinite.  Countable
    together with Infinite is reported as Countable with a note.
    Two-element systems with bases in ``(1, 2]`` are settled exactly by the
    two-element dichotomy, refined to Continuum or Countable when those
    conditions hold.
    """
    verdicts, evidence = theorem_bundles(system, depth)
    holding = [c for c in _PRECEDENCE if verdicts[c] is Ordering.GREATER]
    if verdicts[UniquenessClass.TRIVIAL_ONLY] is Ordering.GREATER and verdicts[UniquenessClass.INFINITE] is Ordering.GREATER:
        raise AssertionError("TrivialOnly and Infinite conditions cannot hold together")
    notes: list[str] = []
    if holding:
        result = holding[0]
        if result is UniquenessClass.COUNTABLE and UniquenessClass.INFINITE in holding:
            notes.append("Infinite conditions also hold: countably infinite")
    elif all(v is Ordering.LESS for v in verdicts.values()):
        result = UniquenessClass.NOT_COVERED
    else:
        result = UniquenessClass.UNDETERMINED

    if system.M == 1 and _in_unit_range(system.bases[0]) and _in_unit_range(system.bases[1]):
        exact = classify_two_element(system)
        if exact.value is not UniquenessClass.UNDETERMINED:
            _check_consistent(result, exact.value, system)
            if result is UniquenessClass.COUNTABLE and exact.value is UniquenessClass.INFINITE:
                if not notes:
                    notes.append("two-element dichotomy: infinite, hence countably infinite")
            elif result is not UniquenessClass.CONTINUUM:
                if result is not exact.value:
                    notes.append(f"settled by the two-element dichotomy (conditions gave {result.value})")
                result = exact.value
            evidence = evidence + list(exact.evidence)

    return Classification(result, depth if result is UniquenessClass.UNDETERMINED else None,
                          tuple(evidence), tuple(notes))


def _check_consistent(bundle: UniquenessClass, exact: UniquenessClass, system) -> None:
    infinite = {UniquenessClass.CONTINUUM, UniquenessClass.INFINITE}
    if bundle in infinite and exact is not UniquenessClass.INFINITE:
        raise AssertionError(f"{system}: {bundle.value} contradicts the two-element dichotomy")
    if bundle is UniquenessClass.TRIVIAL_ONLY and exact is not UniquenessClass.TRIVIAL_ONLY:
        raise AssertionError(f"{system}: TrivialOnly contradicts the two-element dichotomy")


def _strictly_above_golden(a: Scalar, b: Scalar) -> Ordering:
    """Compare ``a`` with ``1 + 1/b``."""
    return compare(a, 1 + 1 / b)


def _two_element_checks(system: AlphabetBaseSystem, need_regular: bool = True):
    if system.M != 1:
        raise PreconditionError("two-element test needs exactly two digits")
    q0, q1 = system.bases
    ranges = (_in_unit_range(q0), _in_unit_range(q1))
    if None in ranges:
        return None
    if not all(ranges):
        raise PreconditionError("two-element test needs q_0, q_1 in (1, 2]")
    if need_regular:
        require_regular(system)
    return q0, q1


def classify_two_element(system: AlphabetBaseSystem, depth: int = DEFAULT_DEPTH) -> Classification:
    """Exact dichotomy for ``M = 1`` and ``q_0, q_1`` in ``(1, 2]``.

    Bases outside ``(1, 2]`` fall back to :func:`classify`.
    """
    if system.M != 1:
        raise PreconditionError("two-element test needs exactly two digits")
    try:
        checked = _two_element_checks(system)
    except PreconditionError:
        return classify(system, depth)
    if checked is None:
        return Classification(UniquenessClass.UNDETERMINED, depth)
    q0, q1 = checked
    first = _strictly_above_golden(q0, q1)
    second = _strictly_above_golden(q1, q0)
    evidence = (Comparison("q_0", "1 + 1/q_1", first, None), Comparison("q_1", "1 + 1/q_0", second, None))
    if first is Ordering.GREATER and second is Ordering.GREATER:
        return Classification(UniquenessClass.INFINITE, evidence=evidence)
    if (first.decided and first is not Ordering.GREATER) or (second.decided and second is not Ordering.GREATER):
        return Classification(UniquenessClass.TRIVIAL_ONLY, evidence=evidence)
    return Classification(UniquenessClass.UNDETERMINED, depth, evidence)


def two_element_special(system: AlphabetBaseSystem) -> Classification:
    """Two-element test for digits ``d_0 <= 0 <= d_1``: only the smaller base's inequality matters."""
    checked = _two_element_checks(system, need_regular=False)
    if checked is None:
        return Classification(UniquenessClass.UNDETERMINED)
    d0, d1 = system.digits
    s0, s1 = compare(d0, 0), compare(d1, 0)
    if s0 not in (Ordering.LESS, Ordering.EQUAL) or s1 not in (Ordering.GREATER, Ordering.EQUAL):
        raise PreconditionError("needs d_0 <= 0 <= d_1")
    if s0 is Ordering.EQUAL and s1 is Ordering.EQUAL:
        raise PreconditionError("d_0 = d_1 = 0 is a degenerate system")
    q0, q1 = checked
    order = compare(q1, q0)
    if order is Ordering.UNKNOWN:
        return Classification(UniquenessClass.UNDETERMINED)
    if order is Ordering.LESS:
        test = Comparison("q_1", "1 + 1/q_0", _strictly_above_golden(q1, q0), None)
    else:
        test = Comparison("q_0", "1 + 1/q_1", _strictly_above_golden(q0, q1), None)
    if test.order is Ordering.GREATER:
        return Classification(UniquenessClass.INFINITE, evidence=(test,))
    if test.order.decided:
        return Classification(UniquenessClass.TRIVIAL_ONLY, evidence=(test,))
    return Classification(UniquenessClass.UNDETERMINED, evidence=(test,))
