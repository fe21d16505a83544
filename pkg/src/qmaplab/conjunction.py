"""Map conjunctions: reuse of one frozen reduced map across consecutive time
steps, hazard detection, and the extremal growth law.

A conjunction applies the reduced map fixed by the time-0 correlations
(c1, c2) for a first leg of duration t and then again, unchanged, for further
legs s_1 ... s_n.  The exact dynamics would update the correlations between
legs; the conjunction deliberately does not, and the output Bloch vector can
leave the unit ball.  Nothing here raises on unphysical intermediate values:
hazards are reported, not rejected.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .optimize import golden_section_max
from .pauli import DEFAULT_TOL, _as_bloch
from .reduced import ReducedMap

_TWO_PI = 2 * math.pi

# Strictness guard for integer hazard indices: boundary cases that land on
# magnitude exactly 1 (up to rounding) must not count as exceeding it.
_BOUNDARY_EPS = 1e-12


@dataclass(frozen=True)
class ConjunctionSchedule:
    """First-leg duration `t` plus the reuse durations s_1 ... s_n."""

    t: float
    steps: tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "t", float(self.t))
        object.__setattr__(self, "steps", tuple(float(s) for s in self.steps))

    @property
    def n(self) -> int:
        return len(self.steps)

    @property
    def total_duration(self) -> float:
        return self.t + sum(self.steps)

    @property
    def durations(self) -> tuple[float, ...]:
        return (self.t,) + self.steps


@dataclass(frozen=True)
class HazardReport:
    """Outcome of a conjunction run.

    `magnitudes[k]` and `trajectory[k]` describe the Bloch vector after leg k
    (k = 0 is the first leg).  `first_unphysical_step` is the first k whose
    magnitude exceeds 1 + tol, or None; `worst_margin` is 1 - max(magnitudes).
    """

    magnitudes: np.ndarray
    first_unphysical_step: Optional[int]
    worst_margin: float
    trajectory: np.ndarray


@dataclass(frozen=True)
class EdgeState:
    """Boundary point of the compatibility domain: a2 = cos q, c1 = sin q."""

    q: float

    def __post_init__(self):
        if not 0.0 < self.q < math.pi / 2:
            raise ValueError(f"q must lie in (0, pi/2), got {self.q!r}")

    @property
    def a2(self) -> float:
        return math.cos(self.q)

    @property
    def c1(self) -> float:
        return math.sin(self.q)

    @property
    def bloch(self) -> np.ndarray:
        return np.array([0.0, math.cos(self.q), 0.0])


def conjunct(
    c1: float,
    c2: float,
    a,
    sched: ConjunctionSchedule,
    tol: float = DEFAULT_TOL,
) -> HazardReport:
    """Run the frozen map over every leg of `sched`, recording the Bloch
    vector and its magnitude after each leg."""
    a = _as_bloch(a)
    trajectory = []
    magnitudes = []
    for duration in sched.durations:
        a = ReducedMap(c1, c2, duration).apply(a)
        trajectory.append(a)
        magnitudes.append(float(np.linalg.norm(a)))
    magnitudes = np.array(magnitudes)
    exceed = np.nonzero(magnitudes > 1.0 + tol)[0]
    return HazardReport(
        magnitudes=magnitudes,
        first_unphysical_step=int(exceed[0]) if exceed.size else None,
        worst_margin=1.0 - float(magnitudes.max()) if magnitudes.size else 1.0,
        trajectory=np.array(trajectory),
    )


def sigma2_conjunction(a2: float, c1: float, t: float, s: float) -> float:
    """Second Bloch component after one reuse on the slice a = (0, a2, 0),
    c2 = 0:  a2 cos t cos s + c1 (sin t cos s + sin s)."""
    return a2 * math.cos(t) * math.cos(s) + c1 * (math.sin(t) * math.cos(s) + math.sin(s))


def hazard_slope_at_join(q: float) -> float:
    """Initial growth rate d<S_2>(q|s)/ds at s = 0 for the edge state of
    parameter q; equals sin q, strictly positive on (0, pi/2)."""
    if not 0.0 < q < math.pi / 2:
        raise ValueError(f"q must lie in (0, pi/2), got {q!r}")
    return math.sin(q)


def _sigma2_legs(a2: float, c1: float, durations: Sequence[float]) -> float:
    """Fold the frozen-map update v -> v cos s + c1 sin s over the legs."""
    v = a2
    for s in durations:
        v = v * math.cos(s) + c1 * math.sin(s)
    return v


def greedy_extremal_growth(
    a2: float, c1: float, n: int
) -> tuple[np.ndarray, ConjunctionSchedule]:
    """Worst-case growth under n reuses: per leg, the duration maximizing the
    next magnitude.

    The running value v obeys v' = v cos s + c1 sin s, maximized at
    s = atan2(c1, v) with value sqrt(v^2 + c1^2), so the magnitudes satisfy
    M_k^2 = M_{k-1}^2 + c1^2 and M_n^2 = a2^2 + (n+1) c1^2.  Returns the
    n+1 magnitudes and the maximizing schedule (durations folded into
    [0, 2 pi); the map is 2 pi-periodic per leg).
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    durations = []
    magnitudes = []
    v = float(a2)
    for _ in range(n + 1):
        step = math.atan2(c1, v) % _TWO_PI
        v = math.hypot(v, c1)
        durations.append(step)
        magnitudes.append(v)
    return np.array(magnitudes), ConjunctionSchedule(t=durations[0], steps=tuple(durations[1:]))


def brute_force_max(a2: float, c1: float, n: int, grid_points: int = 128) -> float:
    """Independent oracle for the growth law: maximize |<S_2>| over a uniform
    grid on [0, 2 pi)^(n+1), then refine with one cyclic pass of
    golden-section searches (one bracketed 1-D solve per leg).

    Cost grows as grid_points^(n+1); n is capped at 3 and the last leg is
    folded chunk-wise so the full grid is never materialized.
    """
    if n > 3:
        raise ValueError("brute_force_max supports n <= 3; use greedy_extremal_growth")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if grid_points < 64:
        raise ValueError(f"grid_points must be >= 64, got {grid_points}")

    grid = np.arange(grid_points) * (_TWO_PI / grid_points)
    cos_g, sin_g = np.cos(grid), np.sin(grid)

    # expand legs 0..n-1 into a flat array of running values (C order, so a
    # flat position decodes back to per-leg grid indices)
    v = a2 * cos_g + c1 * sin_g
    for _ in range(n - 1):
        v = (v[:, None] * cos_g + c1 * sin_g).ravel()

    if n == 0:
        best_flat = int(np.argmax(np.abs(v)))
        best_val = abs(float(v[best_flat]))
    else:
        # final leg, chunked to bound memory
        chunk = max(1, 2**22 // grid_points)
        best_val, best_flat = -1.0, 0
        for start in range(0, v.size, chunk):
            block = np.abs(v[start : start + chunk, None] * cos_g + c1 * sin_g)
            flat = int(np.argmax(block))
            if block.flat[flat] > best_val:
                best_val = float(block.flat[flat])
                row, col = divmod(flat, grid_points)
                best_flat = (start + row) * grid_points + col
    leg_idx = np.unravel_index(best_flat, (grid_points,) * (n + 1))
    best_legs = [grid[j] for j in leg_idx]

    # one cyclic refinement pass: golden-section each leg on +/- one spacing
    h = _TWO_PI / grid_points
    legs = list(best_legs)
    for i in range(len(legs)):

        def objective(x: float, i: int = i) -> float:
            trial = legs.copy()
            trial[i] = x
            return abs(_sigma2_legs(a2, c1, trial))

        legs[i], best_val = golden_section_max(objective, legs[i] - h, legs[i] + h)
    return best_val


def first_unphysical_n(a2: float, c1: float) -> Optional[int]:
    """Smallest n >= 0 with a2^2 + (n+1) c1^2 > 1, i.e. the first number of
    reuses whose worst-case schedule exceeds the Bloch ball.

    None when c1 == 0 (no correlation, no growth).  The inequality is tested
    directly with a 1e-12 boundary guard, so sums landing exactly on 1 do not
    count as exceeding it; no floating floor/ceil decides the index.
    """
    c1_sq = c1 * c1
    if c1_sq < 1e-300:  # zero or numerically indistinguishable from it
        return None
    threshold = 1.0 + _BOUNDARY_EPS

    def exceeds(n: int) -> bool:
        return a2 * a2 + (n + 1) * c1_sq > threshold

    if exceeds(0):
        return 0
    # exceeds() is monotone in n: bracket by doubling, then bisect
    hi = 1
    while not exceeds(hi):
        hi *= 2
    lo = hi // 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if exceeds(mid):
            hi = mid
        else:
            lo = mid
    return hi
