"""Alphabet-base systems ``{(d_0, q_0), ..., (d_M, q_M)}``.

The value of a digit sequence ``j_1 j_2 ...`` is

    pi(j_1 j_2 ...) = sum_i d_{j_i} / (q_{j_1} * ... * q_{j_i}).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

from .numerics import (
    Interval,
    Ordering,
    Scalar,
    UndeterminedError,
    coerce_scalar,
    compare,
    format_scalar,
    parse_scalar,
    to_interval,
)
from .sequences import DigitSequence


@dataclass(frozen=True)
class SystemSummary:
    lam: Scalar
    Lam: Scalar
    semi_regular: bool
    regular: bool


@dataclass(frozen=True)
class AlphabetBaseSystem:
    digits: tuple[Scalar, ...]
    bases: tuple[Scalar, ...]

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(coerce_scalar(d) for d in self.digits))
        object.__setattr__(self, "bases", tuple(coerce_scalar(q) for q in self.bases))
        if len(self.digits) != len(self.bases):
            raise ValueError("digits and bases must have equal length")
        if len(self.digits) < 2:
            raise ValueError("an alphabet-base system needs at least two pairs")
        for j, q in enumerate(self.bases):
            order = compare(q, 1)
            if order is Ordering.UNKNOWN:
                raise UndeterminedError(f"cannot certify q_{j} > 1")
            if order is not Ordering.GREATER:
                raise ValueError(f"base q_{j} = {format_scalar(q)} must exceed 1")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Scalar, Scalar]]) -> "AlphabetBaseSystem":
        pairs = list(pairs)
        return cls(tuple(d for d, _ in pairs), tuple(q for _, q in pairs))

    @property
    def M(self) -> int:
        return len(self.digits) - 1

    @property
    def pairs(self) -> list[tuple[Scalar, Scalar]]:
        return list(zip(self.digits, self.bases))

    @property
    def is_exact(self) -> bool:
        return not any(isinstance(v, Interval) for v in self.digits + self.bases)

    def fixed_point_value(self, j: int) -> Scalar:
        """``pi(j^inf) = d_j / (q_j - 1)``."""
        if not 0 <= j <= self.M:
            raise IndexError(f"digit index {j} outside 0..{self.M}")
        return self.digits[j] / (self.bases[j] - 1)

    @cached_property
    def _bounds(self) -> tuple[Scalar, Scalar]:
        values = [self.fixed_point_value(j) for j in range(self.M + 1)]
        lo = hi = values[0]
        for v in values[1:]:
            if _ordered(v, lo) is Ordering.LESS:
                lo = v
            if _ordered(v, hi) is Ordering.GREATER:
                hi = v
        return lo, hi

    def bounds(self) -> tuple[Scalar, Scalar]:
        """``(lambda, Lambda)``: the smallest and largest value of any sequence."""
        return self._bounds

    @cached_property
    def greedy_thresholds(self) -> tuple[Scalar, ...]:
        """``(d_j + lambda) / q_j``: smallest value of a sequence starting with digit j."""
        lam, _ = self.bounds()
        return tuple((d + lam) / q for d, q in self.pairs)

    @cached_property
    def lazy_thresholds(self) -> tuple[Scalar, ...]:
        """``(d_j + Lambda) / q_j``: largest value of a sequence starting with digit j."""
        _, Lam = self.bounds()
        return tuple((d + Lam) / q for d, q in self.pairs)

    @cached_property
    def _semi_regular(self) -> bool:
        g, h = self.greedy_thresholds, self.lazy_thresholds
        return all(_ordered(g[j], g[j + 1]) is Ordering.LESS and _ordered(h[j], h[j + 1]) is Ordering.LESS
                   for j in range(self.M))

    def is_semi_regular(self) -> bool:
        """Both threshold chains strictly increasing.

        Raises UndeterminedError when a needed comparison cannot be decided.
        """
        return self._semi_regular

    @cached_property
    def _regular(self) -> bool:
        if not self._semi_regular:
            return False
        g, h = self.greedy_thresholds, self.lazy_thresholds
        return all(_ordered(h[j], g[j + 1]) is not Ordering.LESS for j in range(self.M))

    def is_regular(self) -> bool:
        """Semi-regular and consecutive digit ranges overlap: ``(d_j+Lambda)/q_j >= (d_{j+1}+lambda)/q_{j+1}``."""
        return self._regular

    def summary(self) -> SystemSummary:
        lam, Lam = self.bounds()
        return SystemSummary(lam, Lam, self.is_semi_regular(), self.is_regular())

    def dual(self) -> "AlphabetBaseSystem":
        """``d'_j = -d_{M-j}``, ``q'_j = q_{M-j}``."""
        return AlphabetBaseSystem(tuple(-d for d in reversed(self.digits)), tuple(reversed(self.bases)))

    def word_value(self, word: Sequence[int]) -> tuple[Scalar, Scalar]:
        """``(pi(word), q_{w_1} * ... * q_{w_n})`` for a finite word."""
        value: Scalar = 0
        scale: Scalar = 1
        for j in word:
            self._check_digit(j)
            scale = scale * self.bases[j]
            value = value + self.digits[j] / scale
        return value, scale

    def pi(self, seq: DigitSequence) -> Scalar:
        """Value of a digit sequence.

        Eventually periodic sequences are evaluated exactly by solving the
        fixed-point equation of one period.  A truncated sequence yields the
        enclosure ``pi(prefix) + [lambda, Lambda] / Q`` of all its completions.
        """
        head, scale = self.word_value(seq.prefix)
        if seq.period is None:
            lam, Lam = self.bounds()
            return _enclosure(head + lam / scale, head + Lam / scale)
        block_value, block_scale = self.word_value(seq.period)
        tail = block_value * block_scale / (block_scale - 1)
        return head + tail / scale

    def _check_digit(self, j: int) -> None:
        if not 0 <= j <= self.M:
            raise ValueError(f"digit {j} outside 0..{self.M}")

    def to_json(self) -> dict:
        return {"digits": [format_scalar(d) for d in self.digits],
                "bases": [format_scalar(q) for q in self.bases]}

    def __str__(self) -> str:
        inner = ", ".join(f"({format_scalar(d)}, {format_scalar(q)})" for d, q in self.pairs)
        return "{" + inner + "}"


def _ordered(a: Scalar, b: Scalar) -> Ordering:
    order = compare(a, b)
    if order is Ordering.UNKNOWN:
        raise UndeterminedError(f"cannot order {format_scalar(a)} and {format_scalar(b)}")
    return order


def _enclosure(lo: Scalar, hi: Scalar) -> Interval:
    """``[lo, hi]`` as an Interval; rational endpoints are kept exactly."""
    lo_i, hi_i = to_interval(lo), to_interval(hi)
    return Interval(lo_i.lo, hi_i.hi, min(lo_i.precision_bits, hi_i.precision_bits))


def pi_eval(system: AlphabetBaseSystem, seq: DigitSequence) -> Scalar:
    """Value of ``seq`` in ``system``; an enclosure for truncated sequences."""
    return system.pi(seq)


def system_from_json(obj: dict) -> AlphabetBaseSystem:
    """Build a system from ``{"digits": [...], "bases": [...]}`` with scalar literals."""
    if not isinstance(obj, dict) or "digits" not in obj or "bases" not in obj:
        raise ValueError('system spec must be an object with "digits" and "bases"')
    digits, bases = obj["digits"], obj["bases"]
    if not isinstance(digits, list) or not isinstance(bases, list):
        raise ValueError("digits and bases must be arrays")
    if len(digits) != len(bases) or len(digits) < 2:
        raise ValueError("digits and bases must have equal length >= 2")
    return AlphabetBaseSystem(tuple(parse_scalar(str(d)) for d in digits),
                              tuple(parse_scalar(str(q)) for q in bases))


def load_system(path: str | Path) -> AlphabetBaseSystem:
    with open(path, encoding="utf-8") as fh:
        return system_from_json(json.load(fh))
