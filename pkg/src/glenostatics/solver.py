"""Deterministic bounded scalar optimisation.

A uniform grid sweep locates the best sample, then golden-section search
shrinks the bracket formed by its neighbours. Both steps are free of
randomness and evaluation-order effects, so identical inputs give
bit-identical outputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NonFinite, NonFiniteObjective

GOLDEN_RATIO = (math.sqrt(5.0) - 1.0) / 2.0

DEFAULT_GRID_POINTS = 1001
DEFAULT_TOL = 1e-9
DEFAULT_MAX_ITER = 200


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise NonFinite(f"bracket ends must be finite: [{self.lo!r}, {self.hi!r}]")
        if not self.lo < self.hi:
            raise ValueError(f"bracket needs lo < hi, got [{self.lo!r}, {self.hi!r}]")

    @classmethod
    def of(cls, a: float, b: float) -> "Bracket":
        """Build a bracket from two ends given in either order."""
        return cls(min(a, b), max(a, b))

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class OptimResult:
    x: float
    fx: float
    iterations: int
    converged: bool
    at_boundary: bool
    width: float


def _evaluate(f, x):
    v = float(f(x))
    if not math.isfinite(v):
        raise NonFiniteObjective(x, v)
    return v


def grid_min(f: Callable[[float], float], bracket: Bracket, n: int = DEFAULT_GRID_POINTS):
    """Sample ``f`` at ``n`` equally spaced points including both ends.

    Returns ``(x_best, f_best, neighbour_bracket)``. Ties go to the first
    (smallest) abscissa; the neighbour bracket spans the samples on either
    side of the winner and is clipped at the ends.
    """
    if n < 3:
        raise ValueError(f"grid_min needs at least 3 points, got {n}")
    xs = np.linspace(bracket.lo, bracket.hi, n)
    fs = np.array([_evaluate(f, float(x)) for x in xs])
    i = int(np.argmin(fs))
    lo = float(xs[max(i - 1, 0)])
    hi = float(xs[min(i + 1, n - 1)])
    return float(xs[i]), float(fs[i]), Bracket(lo, hi)


def refine_min(
    f: Callable[[float], float],
    bracket: Bracket,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> OptimResult:
    """Golden-section search for a minimum of ``f`` inside ``bracket``.

    Each iteration keeps the sub-interval holding the lower interior sample,
    so the width after ``k`` iterations is ``width0 * GOLDEN_RATIO**k``.
    Stops when the width drops to ``tol`` or after ``max_iter`` iterations;
    the latter returns the best point so far with ``converged=False``.

    If one end of the original bracket is never moved and its value is no
    worse than the best interior sample, that end is returned exactly and
    ``at_boundary`` is set.
    """
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol!r}")
    if max_iter < 1:
        raise ValueError(f"max_iter must be at least 1, got {max_iter!r}")

    a, b = bracket.lo, bracket.hi
    c = b - GOLDEN_RATIO * (b - a)
    d = a + GOLDEN_RATIO * (b - a)
    fc, fd = _evaluate(f, c), _evaluate(f, d)
    k = 0
    while b - a > tol and k < max_iter:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN_RATIO * (b - a)
            fc = _evaluate(f, c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN_RATIO * (b - a)
            fd = _evaluate(f, d)
        k += 1
    converged = b - a <= tol

    x, fx = (c, fc) if fc <= fd else (d, fd)
    at_boundary = False
    # ends that were never replaced are still the original bracket ends
    for end, moved in ((bracket.lo, a != bracket.lo), (bracket.hi, b != bracket.hi)):
        if not moved:
            fe = _evaluate(f, end)
            if fe <= fx:
                x, fx, at_boundary = end, fe, True
    return OptimResult(x=x, fx=fx, iterations=k, converged=converged, at_boundary=at_boundary, width=b - a)


def minimize(
    f: Callable[[float], float],
    bracket: Bracket,
    n: int = DEFAULT_GRID_POINTS,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> OptimResult:
    """Grid pre-bracketing followed by golden-section refinement.

    ``at_boundary`` is reported only when the answer is an end of the full
    bracket, not of the neighbour bracket used for refinement.
    """
    _, _, nb = grid_min(f, bracket, n)
    res = refine_min(f, nb, tol, max_iter)
    on_edge = res.at_boundary and res.x in (bracket.lo, bracket.hi)
    if on_edge != res.at_boundary:
        res = OptimResult(res.x, res.fx, res.iterations, res.converged, on_edge, res.width)
    return res


def _negated(f):
    return lambda x: -f(x)


def maximize(
    f: Callable[[float], float],
    bracket: Bracket,
    n: int = DEFAULT_GRID_POINTS,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> OptimResult:
    """Maximise ``f`` by minimising ``-f``; the returned ``fx`` is ``f(x)``."""
    res = minimize(_negated(f), bracket, n, tol, max_iter)
    return OptimResult(res.x, -res.fx, res.iterations, res.converged, res.at_boundary, res.width)


def maximize_refine(
    f: Callable[[float], float],
    bracket: Bracket,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> OptimResult:
    res = refine_min(_negated(f), bracket, tol, max_iter)
    return OptimResult(res.x, -res.fx, res.iterations, res.converged, res.at_boundary, res.width)
