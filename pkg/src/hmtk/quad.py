"""Numerical substrate: circle and disk quadrature, sup search, differences.

Circle integrals use the periodic trapezoid rule with nested doubling (every
integrand here is smooth and 2*pi-periodic, so convergence is spectral).
Disk integrals use a polar product rule: Gauss-Legendre panels in the radius,
graded geometrically toward the window center, times the angular trapezoid.
The grading absorbs the ``log(r/|z|)`` weight of Green's identity.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .core import DiskWindow
from .errors import ConvergenceError, DomainError, FieldError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class QuadratureSpec:
    angular_nodes: int = 256
    radial_nodes: int = 32
    max_refinements: int = 6
    rel_tol: float = 1e-8
    measure: str = "area"

    def __post_init__(self):
        if self.angular_nodes < 16 or self.angular_nodes % 2:
            raise ValueError("angular_nodes must be even and >= 16")
        if self.radial_nodes < 2:
            raise ValueError("radial_nodes must be >= 2")
        if self.max_refinements < 0:
            raise ValueError("max_refinements must be >= 0")
        if not (1e-14 < self.rel_tol < 1e-2):
            raise ValueError("rel_tol must lie in (1e-14, 1e-2)")
        if self.measure not in ("area", "normalized_area"):
            raise ValueError(f"unknown measure {self.measure!r}")

    def replace(self, **changes) -> "QuadratureSpec":
        return dataclasses.replace(self, **changes)


# Integrands with kinks (|f - f(z)| for real-valued f) converge only
# algebraically under the trapezoid rule; these settings still reach them.
OSCILLATION_QUAD = QuadratureSpec(rel_tol=1e-6, max_refinements=8)


@dataclass(frozen=True)
class SupSearchSpec:
    coarse_grid: tuple[int, int] = (64, 128)
    refine_iters: int = 40
    shrink: float = 0.5
    abs_tol: float = 1e-9
    starts: int = 8

    def __post_init__(self):
        nr, nt = self.coarse_grid
        if nr < 1 or nt < 4:
            raise ValueError("coarse_grid must be at least (1, 4)")
        if not 0 < self.shrink < 1:
            raise ValueError("shrink must lie in (0, 1)")
        if self.abs_tol <= 0:
            raise ValueError("abs_tol must be positive")

    def replace(self, **changes) -> "SupSearchSpec":
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class QuadResult:
    value: complex
    error: float
    converged: bool
    evaluations: int


@dataclass(frozen=True)
class SupResult:
    value: float
    argmax: complex
    coarse_value: float
    coarse_argmax: complex
    evaluations: int


def _as_output(x):
    x = complex(x)
    return x.real if x.imag == 0 else x


def circle_integral(integrand: Callable, center: complex, radius: float,
                    spec: QuadratureSpec | None = None, strict: bool = True) -> QuadResult:
    """``int_0^{2pi} F(center + radius e^{i theta}) d theta``.

    ``integrand`` maps an array of points on the circle to values. Node
    count doubles (reusing previous nodes) until two successive estimates
    agree to ``rel_tol`` relative to ``int |F|``.
    """
    spec = spec or QuadratureSpec()
    center = complex(center)
    if radius <= 0 or abs(center) + radius > 1 + 1e-12:
        raise DomainError(f"circle |z - {center}| = {radius} leaves the closed unit disk")
    n = spec.angular_nodes
    theta = TWO_PI * np.arange(n) / n
    vals = np.asarray(integrand(center + radius * np.exp(1j * theta)))
    _check_finite(vals, center + radius * np.exp(1j * theta))
    total, abs_total = vals.sum(), np.abs(vals).sum()
    est = total * TWO_PI / n
    evals = n
    prev = None
    for _ in range(spec.max_refinements + 1):
        if prev is not None:
            err = abs(est - prev)
            scale = max(abs(est), abs_total * TWO_PI / n)
            if err <= spec.rel_tol * scale or scale == 0:
                return QuadResult(_as_output(est), err, True, evals)
        # add the midpoints
        mid = TWO_PI * (np.arange(n) + 0.5) / n
        pts = center + radius * np.exp(1j * mid)
        new = np.asarray(integrand(pts))
        _check_finite(new, pts)
        total += new.sum()
        abs_total += np.abs(new).sum()
        evals += n
        n *= 2
        prev, est = est, total * TWO_PI / n
    err = abs(est - prev)
    scale = max(abs(est), abs_total * TWO_PI / n)
    if err <= spec.rel_tol * scale or scale == 0:
        return QuadResult(_as_output(est), err, True, evals)
    if strict:
        raise ConvergenceError(
            f"circle quadrature did not converge: |delta| = {err:.3e} with {n} nodes",
            iterates=(_as_output(prev), _as_output(est)), achieved=err / scale)
    return QuadResult(_as_output(est), err, False, evals)


@lru_cache(maxsize=64)
def polar_rule(angular: int, radial: int, levels: int = 4, split: int = 1):
    """Nodes and area weights for the unit disk.

    Radial panels ``[2^-(k+1), 2^-k]`` for ``k < levels`` plus ``[0, 2^-levels]``,
    each cut into ``split`` equal pieces with ``radial`` Gauss-Legendre
    nodes. Returns read-only ``(nodes, weights)``; weights sum to ``pi``.
    """
    x, w = np.polynomial.legendre.leggauss(radial)
    edges = [0.0] + [2.0 ** -k for k in range(levels, -1, -1)]
    rho, wr = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        cuts = np.linspace(lo, hi, split + 1)
        for a, b in zip(cuts[:-1], cuts[1:]):
            half = 0.5 * (b - a)
            rho.append(a + half * (x + 1))
            wr.append(half * w)
    rho = np.concatenate(rho)
    wr = np.concatenate(wr) * rho
    theta = TWO_PI * np.arange(angular) / angular
    nodes = (rho[:, None] * np.exp(1j * theta)[None, :]).ravel()
    weights = np.repeat(wr * (TWO_PI / angular), angular)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _rule_integral(integrand, window, angular, radial, levels, split):
    nodes, weights = polar_rule(angular, radial, levels, split)
    pts = window.center + window.radius * nodes
    vals = np.asarray(integrand(pts))
    _check_finite(vals, pts)
    r2 = window.radius ** 2
    return (weights * vals).sum() * r2, (weights * np.abs(vals)).sum() * r2, len(pts)


def disk_integral(integrand: Callable, window: DiskWindow,
                  spec: QuadratureSpec | None = None, strict: bool = True) -> QuadResult:
    """``int_{window} F dA`` (or ``dA/pi`` for the normalized measure).

    Angular and radial resolution are refined independently, each only
    while its own refinement still changes the estimate.
    """
    spec = spec or QuadratureSpec()
    angular, levels, split = spec.angular_nodes, 4, 1
    radial = spec.radial_nodes
    base, abs_base, evals = _rule_integral(integrand, window, angular, radial, levels, split)
    history = [base]
    err = math.inf
    for _ in range(spec.max_refinements + 1):
        ang, abs_a, n1 = _rule_integral(integrand, window, 2 * angular, radial, levels, split)
        rad, abs_r, n2 = _rule_integral(integrand, window, angular, radial, levels + 4, 2 * split)
        evals += n1 + n2
        err_a, err_r = abs(ang - base), abs(rad - base)
        scale = max(abs(base), abs_base, abs_a, abs_r)
        est = ang + (rad - base)
        err = err_a + err_r
        history.append(est)
        if err <= spec.rel_tol * scale or scale == 0:
            return QuadResult(_as_output(_measure(est, spec)), _measure(err, spec), True, evals)
        if err_a > spec.rel_tol * scale / 2:
            angular *= 2
        if err_r > spec.rel_tol * scale / 2:
            levels, split = levels + 4, 2 * split
        base, abs_base, n0 = _rule_integral(integrand, window, angular, radial, levels, split)
        evals += n0
    if strict:
        raise ConvergenceError(
            f"disk quadrature did not converge: error estimate {err:.3e}",
            iterates=tuple(_as_output(_measure(v, spec)) for v in history[-2:]),
            achieved=err / max(abs(history[-1]), 1e-300))
    return QuadResult(_as_output(_measure(history[-1], spec)), _measure(err, spec), False, evals)


def _measure(x, spec):
    return x / math.pi if spec.measure == "normalized_area" else x


def _check_finite(vals, pts):
    bad = ~np.isfinite(vals)
    if np.any(bad):
        loc = complex(np.asarray(pts).ravel()[np.argmax(bad.ravel())])
        raise FieldError(f"integrand is not finite at {loc}", location=loc)


def _eval_field(field, pts):
    vals = np.asarray(field(pts), dtype=float)
    if np.any(np.isnan(vals)):
        loc = complex(pts.ravel()[np.argmax(np.isnan(vals).ravel())])
        raise FieldError(f"field returned NaN at {loc}", location=loc)
    return vals


def _project(pts, rmax):
    mod = np.abs(pts)
    over = mod > rmax
    if np.any(over):
        pts = pts.copy()
        pts[over] *= rmax / mod[over]
    return pts


_STENCIL = np.array([1, -1, 1j, -1j, 1 + 1j, 1 - 1j, -1 + 1j, -1 - 1j])


def sup_over_disk(field: Callable, spec: SupSearchSpec | None = None,
                  domain_shrink: float = 0.0) -> SupResult:
    """Maximize a continuous real field over ``|z| <= 1 - domain_shrink``.

    A polar grid scan (center, interior rings and the outer ring) picks the
    best ``spec.starts`` nodes; each is polished by a compass pattern search
    whose step shrinks on failure. ``field`` is called with complex arrays.
    """
    spec = spec or SupSearchSpec()
    if not 0 <= domain_shrink < 1:
        raise ValueError("domain_shrink must lie in [0, 1)")
    rmax = 1.0 - domain_shrink
    nr, nt = spec.coarse_grid
    radii = rmax * np.arange(1, nr + 1) / nr
    theta = TWO_PI * np.arange(nt) / nt
    grid = np.concatenate([[0j], (radii[:, None] * np.exp(1j * theta)[None, :]).ravel()])
    vals = _eval_field(field, grid)
    evals = len(grid)
    i0 = int(np.argmax(vals))
    coarse_value, coarse_arg = float(vals[i0]), complex(grid[i0])

    k = min(spec.starts, len(grid))
    order = np.argsort(-vals, kind="stable")[:k]
    cur = grid[order].copy()
    cur_val = vals[order].copy()
    step = np.full(k, rmax / nr)
    shrinks = np.zeros(k, dtype=int)
    active = np.ones(k, dtype=bool)
    max_moves = 50 * spec.refine_iters
    moves = 0
    while np.any(active) and moves < max_moves:
        moves += 1
        idx = np.flatnonzero(active)
        cand = cur[idx, None] + step[idx, None] * _STENCIL[None, :]
        cand = _project(cand.ravel(), rmax).reshape(cand.shape)
        cv = _eval_field(field, cand.ravel()).reshape(cand.shape)
        evals += cand.size
        best = np.argmax(cv, axis=1)
        bv = cv[np.arange(len(idx)), best]
        better = bv > cur_val[idx]
        moved = idx[better]
        cur[moved] = cand[better, best[better]]
        cur_val[moved] = bv[better]
        stay = idx[~better]
        step[stay] *= spec.shrink
        shrinks[stay] += 1
        active = (step >= spec.abs_tol) & (shrinks < spec.refine_iters)
    j = int(np.argmax(cur_val))
    if cur_val[j] >= coarse_value:
        value, arg = float(cur_val[j]), complex(cur[j])
    else:
        value, arg = coarse_value, coarse_arg
    return SupResult(value, arg, coarse_value, coarse_arg, evals)


def finite_difference(fun: Callable[[float], float], r: float, h: float = 1e-3,
                      domain: tuple[float, float] = (0.0, 1.0)) -> float:
    """Central difference with one Richardson level (error ``O(h^4)``)."""
    lo, hi = domain
    if not (lo < r - h and r + h < hi):
        raise DomainError(f"r +- h = [{r - h}, {r + h}] leaves ({lo}, {hi})")
    d1 = (fun(r + h) - fun(r - h)) / (2 * h)
    h2 = h / 2
    d2 = (fun(r + h2) - fun(r - h2)) / (2 * h2)
    return (4 * d2 - d1) / 3
