"""Majorants, their regularity conditions, and sampled Lipschitz constants.

A majorant is a continuous increasing ``omega`` on ``[0, inf)`` with
``omega(0) = 0`` and ``omega(t)/t`` non-increasing. It is *regular* when

    int_0^delta omega(t)/t dt          <= M_I  * omega(delta)
    delta int_delta^inf omega(t)/t^2 dt <= M_II * omega(delta)

for ``0 < delta < delta_0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .core import HarmonicPolynomial, evaluate
from .quad import QuadratureSpec

FAMILIES = ("power", "power_log", "tabulated")

# Upper truncation of the improper integral in condition II.
TRUNCATION = 1e6
MONOTONE_SLACK = 1e-12


@dataclass(frozen=True, eq=False)
class Majorant:
    """Parametric majorant.

    ``power``:      ``c t^alpha``
    ``power_log``:  ``c t^alpha (1 + log(1 + 1/t))^beta``
    ``tabulated``:  log-log linear interpolation through ``(t, omega)``
                    nodes, continued by the end power slopes.
    """

    family: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown majorant family {self.family!r}")
        p = dict(self.params)
        if self.family in ("power", "power_log"):
            p.setdefault("c", 1.0)
            if self.family == "power_log":
                p.setdefault("beta", 1.0)
            for key in ("alpha", "c") + (("beta",) if self.family == "power_log" else ()):
                if key not in p:
                    raise ValueError(f"{self.family} majorant needs {key!r}")
                if not (math.isfinite(p[key]) and p[key] > 0):
                    raise ValueError(f"majorant parameter {key} must be positive, got {p[key]}")
        else:
            t = np.asarray(p.get("t", ()), dtype=float)
            w = np.asarray(p.get("omega", ()), dtype=float)
            if t.ndim != 1 or t.shape != w.shape or len(t) < 2:
                raise ValueError("tabulated majorant needs matching 't' and 'omega' arrays (>= 2 nodes)")
            if np.any(t <= 0) or np.any(w <= 0) or not np.all(np.isfinite(w)):
                raise ValueError("tabulated nodes must be positive and finite")
            if np.any(np.diff(t) <= 0):
                raise ValueError("tabulated t must be strictly increasing")
            p = {"t": tuple(t.tolist()), "omega": tuple(w.tolist())}
        object.__setattr__(self, "params", p)

    @classmethod
    def power(cls, alpha: float, c: float = 1.0) -> "Majorant":
        return cls("power", {"alpha": alpha, "c": c})

    @classmethod
    def power_log(cls, alpha: float, beta: float = 1.0, c: float = 1.0) -> "Majorant":
        return cls("power_log", {"alpha": alpha, "beta": beta, "c": c})

    @classmethod
    def tabulated(cls, t, omega) -> "Majorant":
        return cls("tabulated", {"t": t, "omega": omega})

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = self._eval(np.where(t > 0, t, 1.0))
        out = np.where(t > 0, out, 0.0)
        return float(out) if out.ndim == 0 else out

    def _eval(self, t):
        p = self.params
        if self.family == "power":
            return p["c"] * t ** p["alpha"]
        if self.family == "power_log":
            return p["c"] * t ** p["alpha"] * (1 + np.log1p(1 / t)) ** p["beta"]
        lt, lw = np.log(p["t"]), np.log(p["omega"])
        s0 = (lw[1] - lw[0]) / (lt[1] - lt[0])
        s1 = (lw[-1] - lw[-2]) / (lt[-1] - lt[-2])
        x = np.log(t)
        y = np.interp(x, lt, lw)
        y = np.where(x < lt[0], lw[0] + s0 * (x - lt[0]), y)
        y = np.where(x > lt[-1], lw[-1] + s1 * (x - lt[-1]), y)
        return np.exp(y)

    def squared(self) -> "Majorant":
        p = self.params
        if self.family == "power":
            return Majorant.power(2 * p["alpha"], p["c"] ** 2)
        if self.family == "power_log":
            return Majorant.power_log(2 * p["alpha"], 2 * p["beta"], p["c"] ** 2)
        return Majorant.tabulated(p["t"], np.square(p["omega"]))

    def local_slope(self, t: float, rel: float = 1e-4) -> float:
        """Log-log slope ``d log(omega) / d log(t)`` at ``t``."""
        a, b = t * math.exp(-rel), t * math.exp(rel)
        return (math.log(self(b)) - math.log(self(a))) / (2 * rel)

    def to_dict(self) -> dict:
        p = {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.params.items()}
        return {"family": self.family, **p}

    def __repr__(self):
        return f"Majorant({self.family!r}, {self.params})"


def default_grid(n: int = 200) -> np.ndarray:
    return np.logspace(-6, 1, n)


def is_valid_majorant(w: Majorant, grid=None) -> tuple[bool, float]:
    """Check monotonicity of ``omega`` and of ``omega(t)/t`` on ``grid``.

    Returns ``(valid, worst_violation)``; the violation is the largest
    relative amount by which either monotonicity fails (0 when valid).
    """
    t = default_grid() if grid is None else np.asarray(grid, dtype=float)
    if t.ndim != 1 or len(t) < 16 or np.any(t <= 0) or np.any(np.diff(t) <= 0):
        raise ValueError("grid must be sorted, positive, with >= 16 points")
    vals = w(t)
    ratio = vals / t
    inc = -np.diff(vals) / np.maximum(vals[1:], 1e-300)
    dec = np.diff(ratio) / np.maximum(ratio[:-1], 1e-300)
    worst = float(max(inc.max(initial=0), dec.max(initial=0), 0.0))
    return bool(vals[0] > 0 and worst <= MONOTONE_SLACK), worst


@dataclass(frozen=True)
class RatioResult:
    ratio: float
    divergent: bool
    tail: float = 0.0


def _gl(quad):
    n = (quad or QuadratureSpec()).radial_nodes
    return np.polynomial.legendre.leggauss(n)


def _log_integral(fun, u0, u1, quad):
    """``int_{u0}^{u1} fun(u) du`` on unit-width Gauss-Legendre panels."""
    x, wts = _gl(quad)
    npan = max(1, int(math.ceil(u1 - u0)))
    edges = np.linspace(u0, u1, npan + 1)
    half = 0.5 * np.diff(edges)
    mids = 0.5 * (edges[1:] + edges[:-1])
    u = (mids[:, None] + half[:, None] * x[None, :]).ravel()
    return float((np.repeat(half, len(x)) * np.tile(wts, npan) * fun(u)).sum())


def regularity_condition_I(w: Majorant, delta: float, quad: QuadratureSpec | None = None,
                           depth: float = 60.0) -> RatioResult:
    """``(int_0^delta omega(t)/t dt) / omega(delta)``.

    Substituting ``t = delta e^{-u}`` gives ``int_0^inf omega(delta e^{-u}) du``;
    the part beyond ``u = depth`` is closed analytically with the local
    power slope there (divergent if that slope is not positive).
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    body = _log_integral(lambda u: w(delta * np.exp(-u)), 0.0, depth, quad)
    t0 = delta * math.exp(-depth)
    slope = w.local_slope(t0)
    if slope <= 1e-9:
        return RatioResult(math.inf, True)
    head = float(w(t0)) / slope
    return RatioResult((body + head) / float(w(delta)), False, head)


def regularity_condition_II(w: Majorant, delta: float, quad: QuadratureSpec | None = None,
                            truncation: float = TRUNCATION) -> RatioResult:
    """``(delta int_delta^inf omega(t)/t^2 dt) / omega(delta)``.

    Integrated up to ``truncation`` in ``log t``; the remaining tail uses
    the power slope ``alpha`` at the truncation point, ``omega(T)/(T(1-alpha))``,
    and the integral is reported divergent when ``alpha >= 1``.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    T = max(truncation, 10 * delta)
    slope = w.local_slope(T)
    if slope >= 1 - 1e-9:
        return RatioResult(math.inf, True)
    body = _log_integral(lambda u: w(delta * np.exp(u)) / (delta * np.exp(u)),
                         0.0, math.log(T / delta), quad)
    tail = float(w(T)) / (T * (1 - slope))
    return RatioResult(delta * (body + tail) / float(w(delta)), False, delta * tail)


@dataclass(frozen=True)
class Regularity:
    regular: bool
    M_I: float
    M_II: float
    deltas: tuple


def is_regular(w: Majorant, delta0: float = 1.0, n_delta: int = 25,
               quad: QuadratureSpec | None = None) -> Regularity:
    """Both condition ratios, maximized over a log grid of ``delta`` in ``(0, delta0]``."""
    deltas = delta0 * np.logspace(-6, 0, n_delta)
    r1 = [regularity_condition_I(w, d, quad) for d in deltas]
    r2 = [regularity_condition_II(w, d, quad) for d in deltas]
    m1 = float(max(r.ratio for r in r1))
    m2 = float(max(r.ratio for r in r2))
    return Regularity(bool(math.isfinite(m1) and math.isfinite(m2)), m1, m2, tuple(deltas.tolist()))


@dataclass(frozen=True)
class PairSampler:
    """Stratified random pairs in the closed unit disk.

    Separations are log-uniform in ``[min_sep, 2)`` (stratified, one stratum
    per pair index mod ``strata``); the midpoint is uniform in the disk of
    radius ``1 - t/2`` so both points stay in the closed disk. A fraction
    ``boundary_fraction`` of pairs instead put ``w`` on the unit circle.
    Draws come from a Philox stream, so the first ``n`` pairs of a larger
    sample equal a sample of size ``n``.
    """

    n_pairs: int = 20000
    seed: int = 0
    min_sep: float = 1e-4
    strata: int = 64
    boundary_fraction: float = 0.0

    def sample(self) -> tuple[np.ndarray, np.ndarray]:
        rng = np.random.Generator(np.random.Philox(self.seed))
        u = rng.random((self.n_pairs, 5))
        i = np.arange(self.n_pairs)
        lo, hi = math.log(self.min_sep), math.log(2.0)
        t = np.exp(lo + ((i % self.strata) + u[:, 0]) / self.strata * (hi - lo))
        phi = 2 * math.pi * u[:, 1]
        rad = (1 - t / 2) * np.sqrt(u[:, 2])
        mid = rad * np.exp(2j * math.pi * u[:, 3])
        step = 0.5 * t * np.exp(1j * phi)
        z, w = mid - step, mid + step
        if self.boundary_fraction > 0:
            sel = u[:, 4] < self.boundary_fraction
            # w on the circle near mid's direction, so short pairs occur too
            spread = np.minimum(2 * math.pi, 4 * t[sel])
            z = np.where(sel, mid, z)
            w = w.copy()
            w[sel] = np.exp(1j * (np.angle(mid[sel]) + (u[sel, 1] - 0.5) * spread))
        return z, w


@dataclass(frozen=True)
class LipschitzFit:
    constant: float
    worst_pair: tuple
    sample_count: int

    def to_dict(self):
        z, w = self.worst_pair
        return {"constant": self.constant,
                "worst_pair": [[z.real, z.imag], [w.real, w.imag]],
                "sample_count": self.sample_count}


def _as_callable(f) -> Callable:
    if isinstance(f, HarmonicPolynomial):
        return lambda z: evaluate(f, z)
    return f


def lipschitz_fit(f, w: Majorant, sampler: PairSampler | None = None,
                  pairs: tuple | None = None) -> LipschitzFit:
    """Lower bound for ``sup |f(z) - f(w)| / omega(|z - w|)`` over sampled pairs.

    ``f`` is a :class:`HarmonicPolynomial` or any vectorized callable (e.g.
    ``|f|``, ``Re f``). Pass ``pairs`` to reuse one sample across fits.
    """
    if pairs is None:
        pairs = (sampler or PairSampler()).sample()
    z, wp = pairs
    fun = _as_callable(f)
    sep = np.abs(z - wp)
    keep = sep > 0
    z, wp, sep = z[keep], wp[keep], sep[keep]
    diff = np.abs(np.asarray(fun(z)) - np.asarray(fun(wp)))
    ratio = diff / w(sep)
    if not np.all(np.isfinite(ratio)):
        raise ValueError("non-finite Lipschitz ratio (is omega a valid majorant?)")
    if len(ratio) == 0:
        return LipschitzFit(0.0, (0j, 0j), 0)
    k = int(np.argmax(ratio))
    return LipschitzFit(float(ratio[k]), (complex(z[k]), complex(wp[k])), len(ratio))
