"""Shared randomized generators for the kernel test suites."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from diracobs.ncalg import NCElement
from diracobs.scalars import GRat, Scalar


def random_grat(rng: random.Random) -> GRat:
    re = Fraction(rng.randint(-4, 4), rng.choice((1, 2, 3)))
    im = Fraction(rng.randint(-3, 3), rng.choice((1, 2))) if rng.random() < 0.4 else Fraction(0)
    if not re and not im:
        re = Fraction(1)
    return GRat(re, im)


def random_scalar(rng: random.Random, with_alpha: bool = True) -> Scalar:
    out = Scalar.zero()
    for _ in range(rng.randint(1, 3)):
        term = Scalar.from_grat(random_grat(rng))
        if rng.random() < 0.5:
            term = term * Scalar.hbar(rng.randint(-1, 2))
        for _ in range(rng.randint(0, 2)):
            term = term * Scalar.p(rng.randrange(4))
        if with_alpha and rng.random() < 0.3:
            term = term * Scalar.alpha(rng.randrange(4))
        if rng.random() < 0.4:
            term = term * Scalar.w_pow(rng.randint(-2, 2))
        out = out + term
    return out


def random_element(rng: random.Random, max_x_degree: int = 3,
                   n_terms: int = 2, with_alpha: bool = True) -> NCElement:
    out = NCElement.zero()
    for _ in range(n_terms):
        xk = [0, 0, 0, 0]
        for _ in range(rng.randint(0, max_x_degree)):
            xk[rng.randrange(4)] += 1
        word = rng.randrange(16)
        out = out + NCElement({(tuple(xk), word): random_scalar(rng, with_alpha)})
    return out


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260808)
