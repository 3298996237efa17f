from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from multibase import AlphabetBaseSystem, DigitSequence, parse_scalar

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

PHI = parse_scalar("(1+sqrt(5))/2")


def system(*pairs) -> AlphabetBaseSystem:
    """``system((0, "3/2"), (1, "9/5"))``; strings go through the literal parser."""
    return AlphabetBaseSystem.from_pairs(
        (parse_scalar(d) if isinstance(d, str) else d, parse_scalar(q) if isinstance(q, str) else q)
        for d, q in pairs)


def binary(q0, q1, d0=0, d1=1) -> AlphabetBaseSystem:
    return AlphabetBaseSystem((Fraction(d0), Fraction(d1)), (Fraction(q0), Fraction(q1)))


def random_regular_system(rng: random.Random, max_M: int = 3, max_den: int = 10) -> AlphabetBaseSystem:
    """A regular system with rational data near a classical one (retries until regular)."""
    while True:
        M = rng.randint(1, max_M)
        digits = [Fraction(j) + Fraction(rng.randint(-3, 3), max_den) for j in range(M + 1)]
        top = (M + 1) * max_den
        bases = [Fraction(rng.randint(max_den + 2, top), max_den) for _ in range(M + 1)]
        s = AlphabetBaseSystem(tuple(digits), tuple(bases))
        if s.is_regular():
            return s


def random_point(rng: random.Random, s: AlphabetBaseSystem, den: int = 97) -> Fraction:
    lam, Lam = s.bounds()
    return lam + (Lam - lam) * Fraction(rng.randint(0, den), den)


@st.composite
def regular_systems(draw, max_M: int = 3):
    seed = draw(st.integers(0, 10**9))
    return random_regular_system(random.Random(seed), max_M)


@st.composite
def systems_with_point(draw, max_M: int = 3):
    s = draw(regular_systems(max_M))
    lam, Lam = s.bounds()
    t = draw(st.fractions(min_value=0, max_value=1, max_denominator=60))
    return s, lam + (Lam - lam) * t


def unit_bases():
    """Rationals in (1, 2]."""
    return st.fractions(min_value=1, max_value=2, max_denominator=40).filter(lambda q: q > 1)


@st.composite
def periodic_sequences(draw, M: int, max_prefix: int = 6, max_period: int = 4):
    digits = st.integers(0, M)
    prefix = draw(st.lists(digits, max_size=max_prefix))
    block = draw(st.lists(digits, min_size=1, max_size=max_period))
    return DigitSequence(tuple(prefix), tuple(block))


@pytest.fixture
def s12():
    return binary(2, 2)


@pytest.fixture
def s_phi():
    return AlphabetBaseSystem((Fraction(0), Fraction(1)), (PHI, PHI))
