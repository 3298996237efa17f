"""Digit sequences: eventually periodic or truncated, with lexicographic order.

A :class:`DigitSequence` is a finite prefix followed by either a repeating
block (``period``) or nothing known (``period is None``, a *truncated*
sequence).  Eventually periodic sequences are kept in canonical form, minimal
period and shortest prefix, so structural equality is sequence equality.

Text form: ``110^inf`` is 1,1 then 0 forever, ``(10)^inf`` repeats ``10``,
``1101…`` is truncated.  Alphabets with digits above 9 use commas:
``10,3,(2,1)^inf``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .numerics import Ordering


@dataclass(frozen=True)
class DigitSequence:
    prefix: tuple[int, ...]
    period: tuple[int, ...] | None = None

    def __post_init__(self):
        prefix = tuple(int(d) for d in self.prefix)
        period = self.period
        if any(d < 0 for d in prefix):
            raise ValueError("digits must be nonnegative")
        if period is not None:
            period = tuple(int(d) for d in period)
            if not period:
                raise ValueError("periodic block must be nonempty")
            if any(d < 0 for d in period):
                raise ValueError("digits must be nonnegative")
            period = _minimal_period(period)
            while prefix and prefix[-1] == period[-1]:
                prefix = prefix[:-1]
                period = (period[-1],) + period[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "period", period)

    @classmethod
    def constant(cls, j: int, prefix: Iterable[int] = ()) -> "DigitSequence":
        return cls(tuple(prefix), (j,))

    @classmethod
    def periodic(cls, block: Iterable[int], prefix: Iterable[int] = ()) -> "DigitSequence":
        return cls(tuple(prefix), tuple(block))

    @classmethod
    def truncated(cls, digits: Iterable[int]) -> "DigitSequence":
        return cls(tuple(digits), None)

    @property
    def is_truncated(self) -> bool:
        return self.period is None

    @property
    def is_exact(self) -> bool:
        return self.period is not None

    @property
    def is_constant_tail(self) -> bool:
        return self.period is not None and len(self.period) == 1

    @property
    def known_length(self) -> float:
        return len(self.prefix) if self.period is None else math.inf

    def max_digit(self) -> int:
        return max(self.prefix + (self.period or ()), default=0)

    def __getitem__(self, i: int) -> int:
        """Digit at 0-based index ``i``; IndexError past the end of a truncated sequence."""
        if i < 0:
            raise IndexError("negative index")
        if i < len(self.prefix):
            return self.prefix[i]
        if self.period is None:
            raise IndexError("beyond the known digits of a truncated sequence")
        return self.period[(i - len(self.prefix)) % len(self.period)]

    def get(self, i: int) -> int | None:
        try:
            return self[i]
        except IndexError:
            return None

    def take(self, n: int) -> list[int]:
        if self.period is None:
            return list(self.prefix[:n])
        return [self[i] for i in range(n)]

    def shift(self, n: int) -> "DigitSequence":
        """The tail ``(j_{n+1}, j_{n+2}, ...)``."""
        if n <= len(self.prefix):
            return DigitSequence(self.prefix[n:], self.period)
        if self.period is None:
            return DigitSequence((), None)
        k = (n - len(self.prefix)) % len(self.period)
        return DigitSequence((), self.period[k:] + self.period[:k])

    def distinct_shift_count(self) -> int:
        """Number of positions ``n >= 1`` after which every tail has already appeared."""
        if self.period is None:
            return len(self.prefix)
        return len(self.prefix) + len(self.period)

    def __str__(self) -> str:
        return format_sequence(self)

    def __repr__(self) -> str:
        return f"DigitSequence({format_sequence(self)!r})"


def _minimal_period(block: tuple[int, ...]) -> tuple[int, ...]:
    n = len(block)
    for p in range(1, n + 1):
        if n % p == 0 and block == block[:p] * (n // p):
            return block[:p]
    return block


def lex_compare(a: DigitSequence, b: DigitSequence, depth: int | None = None) -> Ordering:
    """Lexicographic comparison.

    Exact when both sequences are eventually periodic.  With a truncated
    operand the first difference must occur within the known digits (and
    within ``depth`` when given), otherwise the answer is UNKNOWN.
    """
    if a.is_exact and b.is_exact:
        horizon = max(len(a.prefix), len(b.prefix)) + math.lcm(len(a.period), len(b.period))
        for i in range(horizon):
            x, y = a[i], b[i]
            if x != y:
                return Ordering.LESS if x < y else Ordering.GREATER
        return Ordering.EQUAL
    limit = min(a.known_length, b.known_length)
    if depth is not None:
        limit = min(limit, depth)
    for i in range(int(limit)):
        x, y = a[i], b[i]
        if x != y:
            return Ordering.LESS if x < y else Ordering.GREATER
    return Ordering.UNKNOWN


def reflect(seq: DigitSequence, M: int) -> DigitSequence:
    """Digit-wise ``M - j``; an order-reversing involution."""
    if seq.max_digit() > M:
        raise ValueError(f"digit exceeds alphabet maximum {M}")
    period = None if seq.period is None else tuple(M - d for d in seq.period)
    return DigitSequence(tuple(M - d for d in seq.prefix), period)


def is_finite(seq: DigitSequence) -> bool:
    """True iff there is a last nonzero digit; ``0^inf`` is not finite."""
    if seq.is_truncated:
        raise ValueError("finiteness of a truncated sequence is undecidable")
    return seq.period == (0,) and any(d > 0 for d in seq.prefix)


def is_co_finite(seq: DigitSequence, M: int) -> bool:
    """True iff there is a last digit below ``M``; ``M^inf`` is not co-finite."""
    if seq.is_truncated:
        raise ValueError("co-finiteness of a truncated sequence is undecidable")
    return seq.period == (M,) and any(d < M for d in seq.prefix)


def thue_morse_truncated(n: int) -> list[int]:
    """``tau_1 .. tau_n``: parity of the number of ones in the binary expansion of i."""
    if n < 1:
        raise ValueError("n must be positive")
    return [bin(i).count("1") & 1 for i in range(1, n + 1)]


def alpha_gr(M: int) -> DigitSequence:
    """Quasi-greedy expansion of 1 at the generalized golden ratio of alphabet ``{0..M}``."""
    if M < 1:
        raise ValueError("M must be positive")
    k, odd = (M + 1) // 2, M % 2 == 1
    if odd:
        return DigitSequence.periodic((k, k - 1))
    return DigitSequence.constant(k)


def alpha_kl(M: int, n: int) -> DigitSequence:
    """First ``n`` digits of the quasi-greedy expansion of 1 at the Thue-Morse threshold q_KL.

    For even M the digit formula references tau_0, taken as 0.
    """
    if M < 1 or n < 1:
        raise ValueError("M and n must be positive")
    tau = [0] + thue_morse_truncated(n)
    k = (M + 1) // 2
    if M % 2 == 1:
        digits = [k - 1 + tau[i] for i in range(1, n + 1)]
    else:
        digits = [k + tau[i] - tau[i - 1] for i in range(1, n + 1)]
    return DigitSequence.truncated(digits)


def _render_digits(ds: Sequence[int], wide: bool) -> str:
    return ",".join(map(str, ds)) if wide else "".join(map(str, ds))


def format_sequence(seq: DigitSequence, M: int | None = None) -> str:
    wide = (M if M is not None else seq.max_digit()) > 9
    sep = "," if wide else ""
    parts = []
    if seq.prefix:
        parts.append(_render_digits(seq.prefix, wide))
    if seq.period is None:
        return sep.join(parts) + "…"
    if len(seq.period) == 1:
        parts.append(f"{seq.period[0]}^inf")
    else:
        parts.append(f"({_render_digits(seq.period, wide)})^inf")
    return sep.join(parts)


_TAIL = re.compile(r"^(?P<body>.*?)(?:\((?P<block>[^()]*)\)|(?P<single>\d+))\^inf$")


def parse_sequence(text: str) -> DigitSequence:
    """Inverse of :func:`format_sequence`; also accepts ``...`` for truncation and spaces."""
    s = text.strip().replace(" ", "").replace("_", "")

    def digits_of(part: str, wide: bool) -> tuple[int, ...]:
        part = part.strip(",")
        if not part:
            return ()
        if wide:
            return tuple(int(p) for p in part.split(","))
        if not part.isdigit():
            raise ValueError(f"bad digit string {part!r}")
        return tuple(int(c) for c in part)

    wide = "," in s
    if s.endswith("…") or s.endswith("..."):
        body = s[:-1] if s.endswith("…") else s[:-3]
        return DigitSequence.truncated(digits_of(body, wide))
    m = _TAIL.match(s)
    if not m:
        raise ValueError(f"cannot parse digit sequence {text!r}")
    body = m.group("body")
    if m.group("block") is not None:
        block = digits_of(m.group("block"), wide)
    else:
        single = m.group("single")
        if wide:
            block = (int(single),)
        else:
            # only the final character repeats: "110^inf" is 11 then 0^inf
            body, block = body + single[:-1], (int(single[-1]),)
    if not block:
        raise ValueError("empty periodic block")
    return DigitSequence(digits_of(body, wide), block)
