from __future__ import annotations

import functools
from fractions import Fraction

import numpy as np
import pytest

from lotbound.core import Instance

PROFILES = ("retailer", "supplier", "both", "none")


def _cost(rng, hi: int) -> Fraction:
    # mostly integers, some halves and thirds so the scaling path is exercised
    if rng.random() < 0.35:
        return Fraction(0)
    den = int(rng.choice([1, 1, 1, 2, 3]))
    return Fraction(int(rng.integers(0, hi * den + 1)), den)


def make_random(rng, T: int, profile: str, dmax: int = 6, umax: int = 8) -> Instance:
    vec = lambda hi: [_cost(rng, hi) for _ in range(T)]
    d = [int(v) for v in rng.integers(0, dmax + 1, size=T)]
    uR = [int(v) for v in rng.integers(0, umax + 1, size=T)] if profile in ("retailer", "both") else None
    uS = [int(v) for v in rng.integers(0, umax + 1, size=T)] if profile in ("supplier", "both") else None
    return Instance.make(d, fR=vec(20), pR=vec(5), hR=vec(3), fS=vec(20), pS=vec(5), hS=vec(3),
                         uR=uR, uS=uS)


@functools.lru_cache(maxsize=None)
def sweep_instances(count: int = 520, seed: int = 2024) -> tuple:
    """Seeded sweep: T in 2..6, demands 0..6, bounds 0..8, profiles cycled."""
    rng = np.random.default_rng(seed)
    out = []
    for n in range(count):
        T = int(rng.integers(2, 7))
        out.append(make_random(rng, T, PROFILES[n % len(PROFILES)]))
    return tuple(out)


@pytest.fixture
def report(capsys):
    """Print a line straight to the terminal, bypassing capture."""
    def emit(line: str) -> None:
        with capsys.disabled():
            print(line)
    return emit


@pytest.fixture
def prop1():
    B = 10
    return Instance.make([0, B + 1], fS=[0, 1], pR=[0, 1], uR=[B, B])
