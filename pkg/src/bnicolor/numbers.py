"""Small number-theoretic helpers: primality, log*, and polynomial-family plans.

The coloring subroutines map a K-coloring into (evaluation point, value) pairs of
low-degree polynomials over a prime field. The plan functions below choose the
field size q and the degree bound k; they are pure arithmetic, shared by the
algorithms and by the tests' independent oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q < 4:
        return True
    if q % 2 == 0:
        return False
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True


def next_prime(q: int) -> int:
    """Smallest prime >= q."""
    q = max(q, 2)
    while not is_prime(q):
        q += 1
    return q


def log_star(n: int) -> int:
    """Iterated base-2 logarithm: applications of log2 until the value is <= 2."""
    if n < 1:
        raise ValueError("log* needs n >= 1")
    count = 0
    x = float(n)
    while x > 2:
        x = math.log2(x)
        count += 1
    return count


def ceil_log2(n: int) -> int:
    return max(1, (n - 1).bit_length()) if n > 1 else 1


@dataclass(frozen=True)
class PolyPlan:
    """Field/degree choice for one polynomial-reduction step.

    A color in 1..n_colors is encoded base-q as the coefficients of a
    polynomial of degree <= k; the step output is x*q + P(x) for a chosen
    evaluation point x, i.e. a color in 1..q*q.
    """

    k: int
    q: int
    n_colors: int

    @property
    def palette(self) -> int:
        return self.q * self.q


def linial_step_plan(n_colors: int, delta_bound: int) -> PolyPlan:
    """Plan for one legal reduction step: q > k*delta so a conflict-free point exists.

    Among degree bounds k >= 1, pick the one giving the smallest field, then the
    smallest such k.
    """
    if n_colors < 2:
        return PolyPlan(1, 2, n_colors)
    best = None
    for k in range(1, 64):
        q = next_prime(max(k * delta_bound + 1, _root_bound(n_colors, k + 1), 2))
        if best is None or q < best.q:
            best = PolyPlan(k, q, n_colors)
        if q == 2:
            break
    return best


def linial_schedule(n_colors: int, delta_bound: int) -> List[PolyPlan]:
    """Iterate step plans until the palette stops shrinking; pure arithmetic."""
    plans: List[PolyPlan] = []
    current = n_colors
    while True:
        plan = linial_step_plan(current, delta_bound)
        if plan.palette >= current:
            break
        plans.append(plan)
        current = plan.palette
    return plans


def linial_final_palette(n_colors: int, delta_bound: int) -> int:
    sched = linial_schedule(n_colors, delta_bound)
    return sched[-1].palette if sched else n_colors


def kuhn_step_plan(n_colors: int, delta_bound: int, d: int) -> PolyPlan:
    """Plan for one defective step: agreement count <= floor(k*delta/q) <= d.

    d = 0 degenerates to the legal step plan. Minimizes the output palette q^2
    over the degree bound k, then prefers the smallest k.
    """
    if d < 0:
        raise ValueError("defect target must be non-negative")
    if d == 0:
        return linial_step_plan(n_colors, delta_bound)
    if n_colors < 2:
        return PolyPlan(1, 2, n_colors)
    best = None
    for k in range(1, 64):
        # q >= ceil(k*delta/d) makes floor(k*delta/q) <= d
        q = next_prime(max(-(-k * delta_bound // d), _root_bound(n_colors, k + 1), 2))
        if best is None or q < best.q:
            best = PolyPlan(k, q, n_colors)
        if q == 2:
            break
    return best


def _root_bound(n_colors: int, power: int) -> int:
    """Smallest integer q with q**power >= n_colors."""
    q = max(2, round(n_colors ** (1.0 / power)))
    while q**power >= n_colors:
        q -= 1
    while q**power < n_colors:
        q += 1
    return q


def poly_coeffs(color: int, k: int, q: int) -> List[int]:
    """Base-q digits (low first) of color-1, padded to k+1 coefficients."""
    x = color - 1
    if not (0 <= x < q ** (k + 1)):
        raise ValueError(f"color {color} out of range for q={q}, k={k}")
    out = []
    for _ in range(k + 1):
        out.append(x % q)
        x //= q
    return out


def poly_eval(coeffs: List[int], x: int, q: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % q
    return acc
