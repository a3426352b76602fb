"""Seeded random instances for tests, the CLI and benchmarks."""
from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .core import Instance, UsageError

PROFILES = ("none", "retailer", "supplier", "both")


def parse_profile(profile: str) -> tuple:
    """``(levels, stationary value or None)`` for a bound profile name.

    ``stationary-K`` bounds both levels by K in every period.
    """
    if profile in PROFILES:
        return profile, None
    if profile.startswith("stationary-"):
        try:
            k = int(profile.split("-", 1)[1])
        except ValueError:
            raise UsageError(f"bad stationary profile {profile!r}") from None
        if k < 0:
            raise UsageError("stationary bound must be nonnegative")
        return "both", k
    raise UsageError(f"unknown bound profile {profile!r}; expected one of "
                     f"{', '.join(PROFILES)} or stationary-K")


def random_instance(T: int, seed: Optional[int] = None, *, demand: Sequence[int] = (0, 6),
                    cost: Sequence[int] = (0, 10), bound: Sequence[int] = (0, 8),
                    profile: str = "retailer", nls: bool = False,
                    rng: Optional[np.random.Generator] = None) -> Instance:
    """Integer data drawn uniformly from the inclusive ranges; same seed, same instance."""
    if T < 1:
        raise UsageError("T must be at least 1")
    levels, stationary = parse_profile(profile)
    if rng is None:
        rng = np.random.default_rng(seed)
    draw = lambda lo_hi: [int(v) for v in rng.integers(lo_hi[0], lo_hi[1] + 1, size=T)]
    d = draw(demand)
    fR, pR, hR, fS, pS, hS = (draw(cost) for _ in range(6))
    uR = uS = None
    if stationary is not None:
        uR = uS = [stationary] * T
    else:
        if levels in ("retailer", "both"):
            uR = draw(bound)
        if levels in ("supplier", "both"):
            uS = draw(bound)
    return Instance.make(d, fR=fR, pR=pR, hR=hR, fS=fS, pS=pS, hS=hS, uR=uR, uS=uS, nls=nls)
