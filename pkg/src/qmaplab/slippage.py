"""Slipped initial conditions: the restricted admissible regions that keep
n-fold map reuse physical on the slice a = (0, a2, 0), c2 = 0.

Surviving n reuses under worst-case schedules requires
a2^2 + (n+1) c1^2 <= 1; `slip_state` projects an offending a2 radially onto
that boundary, the minimal change preserving the Bloch vector's direction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .conjunction import first_unphysical_n
from .pauli import DEFAULT_TOL, _as_bloch
from .reduced import DomainVerdict

_MODES = ("check", "radial_scale")


@dataclass(frozen=True)
class SlippagePolicy:
    """How to treat an initial state that must survive `n` map reuses:
    "check" renders a verdict, "radial_scale" projects onto the safe region."""

    n: int
    mode: str = "check"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.mode not in _MODES:
            raise ValueError(f"mode must be one of {_MODES}, got {self.mode!r}")

    def apply(self, a, c1: float) -> Union[DomainVerdict, np.ndarray]:
        a = _as_bloch(a)
        if self.mode == "check":
            return slipped_domain_check(float(a[1]), c1, self.n)
        return slip_state(a, c1, self.n)


def slipped_domain_check(
    a2: float, c1: float, n: int, tol: float = DEFAULT_TOL
) -> DomainVerdict:
    """Inside iff a2^2 + (n+1) c1^2 <= 1; margin = 1 - sqrt of that sum."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    margin = 1.0 - math.sqrt(a2 * a2 + (n + 1) * c1 * c1)
    return DomainVerdict(inside=margin >= -tol, margin=margin)


def max_safe_repetitions(a2: float, c1: float) -> Optional[Union[int, float]]:
    """Largest n >= 1 surviving the slipped-domain condition.

    Returns math.inf when c1 == 0 (no growth, any number of reuses is safe),
    None when even n = 1 fails.  Whenever both are defined this equals
    `first_unphysical_n(a2, c1) - 1`.
    """
    first = first_unphysical_n(a2, c1)
    if first is None:
        return math.inf
    if first <= 1:
        return None
    return first - 1


def slip_state(a, c1: float, n: int) -> np.ndarray:
    """Minimal radial adjustment of a slice state onto the n-reuse boundary.

    Already-safe inputs come back unchanged; otherwise a2 shrinks to
    sign(a2) * sqrt(max(0, 1 - (n+1) c1^2)).  Idempotent.  Only the slice
    a = (0, a2, 0) is supported.
    """
    a = _as_bloch(a)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if a[0] != 0.0 or a[2] != 0.0:
        raise ValueError("slip_state is defined on the slice a = (0, a2, 0) only")
    a2 = float(a[1])
    if slipped_domain_check(a2, c1, n).inside:
        return a.copy()
    a2_new = math.copysign(math.sqrt(max(0.0, 1.0 - (n + 1) * c1 * c1)), a2)
    return np.array([0.0, a2_new, 0.0])
