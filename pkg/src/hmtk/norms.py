"""Function-space functionals of harmonic polynomial maps.

Circle and disk p-means, the Green's-identity form of ``d/dr M_p^p``, the
Bloch seminorm, ``BMO_p`` norms (chart and direct forms), centered
oscillations, and the Poisson gap ``P[|f|^2] - |f|^2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import kernels
from .core import (DiskWindow, HarmonicPolynomial, boundary_distance, dilations,
                   evaluate, wirtinger)
from .errors import PreconditionError
from .majorant import LipschitzFit, Majorant
from .quad import (OSCILLATION_QUAD, TWO_PI, QuadratureSpec, SupSearchSpec,
                   circle_integral, disk_integral, polar_rule, sup_over_disk)

# Points per batch when a quadrature rule is evaluated for many windows.
CHUNK_POINTS = 1 << 21


@dataclass(frozen=True)
class Extremum:
    value: float
    argmax: complex


def _f_abs_pow(f, p):
    return lambda pts: np.abs(evaluate(f, pts)) ** p


def circle_mean_Mp(f: HarmonicPolynomial, r: float, p: float = 2,
                   quad: QuadratureSpec | None = None) -> float:
    """``M_p(r, f) = ((1/2pi) int |f(r e^{it})|^p dt)^{1/p}``."""
    if not 0 < r <= 1:
        raise ValueError("r must lie in (0, 1]")
    if p < 1:
        raise ValueError("p must be >= 1")
    res = circle_integral(_f_abs_pow(f, p), 0j, r, quad)
    return float(max(res.value, 0.0) / TWO_PI) ** (1.0 / p)


def disk_mean_Ip(f: HarmonicPolynomial, r: float, p: float = 2,
                 quad: QuadratureSpec | None = None) -> float:
    """``I_p(r, f) = ((1/|D_r|) int_{D_r} |f|^p dA)^{1/p}``.

    Computed as ``(2/r^2) int_0^r s M_p(s)^p ds``: the circle means absorb
    the angular kinks of ``|f|^p`` and the radial profile is smooth, so
    Gauss-Legendre in ``s`` converges fast.
    """
    if not 0 < r <= 1:
        raise ValueError("r must lie in (0, 1]")
    if p < 1:
        raise ValueError("p must be >= 1")
    quad = quad or QuadratureSpec()
    prev = None
    for n in (16, 32, 64, 128):
        x, w = np.polynomial.legendre.leggauss(n)
        s = 0.5 * r * (x + 1)
        prof = np.array([circle_integral(_f_abs_pow(f, p), 0j, si, quad).value for si in s])
        est = float((0.5 * r * w * s * prof).sum()) / (math.pi * r * r)
        if prev is not None and abs(est - prev) <= quad.rel_tol * max(abs(est), 1e-300):
            break
        prev = est
    return max(est, 0.0) ** (1.0 / p)


def green_density(f: HarmonicPolynomial, p: float) -> Callable:
    """``(p/2 - 1)|f|^{p-4}|f_z conj(f) + f conj(f_zbar)|^2 + |f|^{p-2}(|f_z|^2 + |f_zbar|^2)``.

    The first term is written as ``|f|^{p-2} (|X|/|f|)^2`` and set to zero
    where ``f`` vanishes; ``|X| <= 2|f| |grad f|`` keeps it bounded.
    """
    half = p / 2 - 1

    def density(pts):
        val, fz, fzb = wirtinger(f, pts, closed=True)
        mod = np.abs(val)
        grad2 = np.abs(fz) ** 2 + np.abs(fzb) ** 2
        if half == 0:
            return grad2
        cross = np.abs(fz * np.conj(val) + val * np.conj(fzb))
        with np.errstate(divide="ignore", invalid="ignore"):
            q = np.where(mod > 0, cross / np.where(mod > 0, mod, 1.0), 0.0)
        return mod ** (p - 2) * (half * q * q + grad2)

    return density


def dMp_dr_green(f: HarmonicPolynomial, r: float, p: float = 2,
                 quad: QuadratureSpec | None = None) -> float:
    """``d/dr M_p^p(r, f)`` from Green's identity (``p >= 2``)."""
    if p < 2:
        raise ValueError("the Green form requires p >= 2")
    if not 0 < r < 1:
        raise ValueError("r must lie in (0, 1)")
    if f.is_constant:
        return 0.0
    spec = (quad or QuadratureSpec()).replace(measure="normalized_area")
    res = disk_integral(green_density(f, p), DiskWindow(0j, r), spec)
    return p * float(res.value) / r


def green_identity_check(g: Callable, laplacian: Callable, r: float,
                         quad: QuadratureSpec | None = None) -> tuple[float, float]:
    """Both sides of ``(1/2pi) int g(r e^{it}) dt = g(0) + (1/2) int_{D_r} Lap g log(r/|z|) dsigma``."""
    quad = quad or QuadratureSpec()
    lhs = circle_integral(g, 0j, r, quad).value / TWO_PI

    def weighted(pts):
        with np.errstate(divide="ignore"):
            lg = np.log(r / np.abs(pts))
        return laplacian(pts) * lg

    area = disk_integral(weighted, DiskWindow(0j, r), quad.replace(measure="normalized_area"))
    rhs = complex(g(np.array([0j]))[0]) + 0.5 * area.value
    return _real(lhs), _real(rhs)


def _real(x):
    x = complex(x)
    return x.real if abs(x.imag) <= 1e-15 * max(1.0, abs(x.real)) else x


def bloch_field(f: HarmonicPolynomial) -> Callable:
    """``z -> (1 - |z|^2) Lambda_f(z)`` on the closed disk."""
    def field_(pts):
        lam, _ = dilations(f, pts, closed=True)
        return (1 - np.abs(pts) ** 2) * lam
    return field_


def bloch_seminorm(f: HarmonicPolynomial, search: SupSearchSpec | None = None) -> Extremum:
    """``beta_f = sup (1 - |z|^2) Lambda_f(z)``."""
    res = sup_over_disk(bloch_field(f), search)
    return Extremum(res.value, res.argmax)


def _search_rule(f, quad):
    deg = max(f.degree)
    ang = max(64, 4 * (deg + 1))
    ang += ang % 2
    rad = min(quad.radial_nodes, max(12, deg + 4))
    return ang, rad, 3, 1


def _chunked(centers, npts, fn):
    out = np.empty(len(centers))
    step = max(1, CHUNK_POINTS // npts)
    for i in range(0, len(centers), step):
        out[i:i + step] = fn(centers[i:i + step])
    return out


def chart_oscillation(f: HarmonicPolynomial, centers, p: float = 2,
                      quad: QuadratureSpec | None = None, inner: str = "auto",
                      rule=None) -> np.ndarray:
    """``((1/pi) int_D |f(phi_a(z)) - f(a)|^p dA)^{1/p}`` for each center ``a``.

    ``inner='moments'`` (``p = 2`` only) uses the exact coefficient formula
    ``sum_{k>=1} (|c_k|^2 + |d_k|^2)/(k+1)`` of the shifted polynomials;
    ``inner='quadrature'`` applies a fixed polar rule. ``'auto'`` picks
    moments when ``p == 2``.
    """
    centers = np.atleast_1d(np.asarray(centers, dtype=np.complex128))
    if inner == "auto":
        inner = "moments" if p == 2 else "quadrature"
    if inner == "moments":
        if p != 2:
            raise ValueError("moment evaluation is exact only for p = 2")
        return np.sqrt(np.maximum(kernels.chart_moments(f.h, f.g, centers), 0.0))
    if inner != "quadrature":
        raise ValueError(f"unknown inner evaluation {inner!r}")
    quad = quad or QuadratureSpec()
    nodes, weights = polar_rule(*(rule or _search_rule(f, quad)))

    def block(c):
        s = (1 - np.abs(c))[:, None]
        pts = c[:, None] + s * nodes[None, :]
        vals = evaluate(f, pts)
        center_vals = evaluate(f, c)[:, None]
        return (np.abs(vals - center_vals) ** p * weights).sum(axis=1) / math.pi

    return np.maximum(_chunked(centers, len(nodes), block), 0.0) ** (1.0 / p)


@dataclass(frozen=True)
class BMOResult:
    norm: float
    argmax: complex
    mode: str
    p: float
    radius: float = float("nan")
    evaluations: int = 0


def _window_oscillation(f, window, p, quad, subtract="center"):
    """Adaptive ``(1/|W|) int_W |f - c|^p dA`` to the power ``1/p``."""
    if subtract == "center":
        ref = evaluate(f, window.center)
    else:
        from .core import area_mean
        ref = area_mean(f, window, quad)
    res = disk_integral(lambda pts: np.abs(evaluate(f, pts) - ref) ** p, window,
                        quad.replace(measure="area"))
    return float(max(res.value, 0.0) / window.area) ** (1.0 / p)


def bmo_norm(f: HarmonicPolynomial, p: float = 2, search: SupSearchSpec | None = None,
             quad: QuadratureSpec | None = None, mode: str = "chart", inner: str = "auto",
             samples: int = 512, seed: int = 0) -> BMOResult:
    """``||f||_{BMO_p}``.

    ``mode='chart'`` maximizes the chart oscillation over ``a`` in the
    closed disk (zero on the boundary); with quadrature inner evaluation
    the maximizer is re-integrated adaptively. ``mode='direct'`` samples
    windows ``D(z, r)``, ``r <= 1 - |z|``, and subtracts the window's area
    mean; it is a lower-bound falsifier for the chart value.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    quad = quad or QuadratureSpec()
    if f.is_constant:
        return BMOResult(0.0, 0j, mode, p, 1.0)
    if mode == "chart":
        if inner == "auto":
            inner = "moments" if p == 2 else "quadrature"
        res = sup_over_disk(lambda a: chart_oscillation(f, a, p, quad, inner), search)
        value = res.value
        if inner == "quadrature" and abs(res.argmax) < 1:
            win = DiskWindow(res.argmax, 1 - abs(res.argmax))
            value = max(value, _window_oscillation(f, win, p, OSCILLATION_QUAD.replace(
                angular_nodes=quad.angular_nodes, radial_nodes=quad.radial_nodes)))
        return BMOResult(float(value), res.argmax, "chart", p, 1 - abs(res.argmax), res.evaluations)
    if mode == "direct":
        return _bmo_direct(f, p, quad, samples, seed)
    raise ValueError(f"unknown mode {mode!r}")


def sample_windows(n: int, seed: int = 0, full_fraction: float = 0.25):
    """Random windows ``(center, radius)`` with ``radius <= 1 - |center|``.

    A quarter of them (by default) use the maximal radius.
    """
    rng = np.random.Generator(np.random.Philox(seed))
    u = rng.random((n, 4))
    c = 0.999 * np.sqrt(u[:, 0]) * np.exp(2j * math.pi * u[:, 1])
    d = 1 - np.abs(c)
    r = np.where(u[:, 3] < full_fraction, d, d * np.maximum(u[:, 2], 1e-3))
    return c, r


def _bmo_direct(f, p, quad, samples, seed):
    centers, radii = sample_windows(samples, seed)
    nodes, weights = polar_rule(quad.angular_nodes, min(quad.radial_nodes, 16), 3, 1)

    def block(idx):
        c = centers[idx][:, None]
        pts = c + radii[idx][:, None] * nodes[None, :]
        vals = evaluate(f, pts)
        mean = (vals * weights).sum(axis=1, keepdims=True) / math.pi
        return (np.abs(vals - mean) ** p * weights).sum(axis=1) / math.pi

    idx = np.arange(samples)
    vals = np.maximum(_chunked(idx, len(nodes), block), 0.0) ** (1.0 / p)
    k = int(np.argmax(vals))
    return BMOResult(float(vals[k]), complex(centers[k]), "direct", p, float(radii[k]),
                     samples * len(nodes))


def center_oscillation(f: HarmonicPolynomial, window: DiskWindow,
                       quad: QuadratureSpec | None = None) -> float:
    """``(1/|D(z,r)|) int_{D(z,r)} |f(zeta) - f(z)| dA(zeta)``."""
    if f.is_constant:
        return 0.0
    return _window_oscillation(f, window, 1, quad or OSCILLATION_QUAD)


def center_oscillation_batch(f: HarmonicPolynomial, centers, radii,
                             rule=(256, 16, 4, 1)) -> np.ndarray:
    """Fixed-rule ``center_oscillation`` for many windows at once."""
    centers = np.asarray(centers, dtype=np.complex128).ravel()
    radii = np.asarray(radii, dtype=float).ravel()
    nodes, weights = polar_rule(*rule)

    def block(idx):
        c = centers[idx][:, None]
        vals = evaluate(f, c + radii[idx][:, None] * nodes[None, :])
        return (np.abs(vals - evaluate(f, c)) * weights).sum(axis=1) / math.pi

    return _chunked(np.arange(len(centers)), len(nodes), block)


def _poisson_kernel(z, theta):
    bnd = np.exp(1j * theta)
    return (1 - np.abs(z) ** 2) / np.abs(z - bnd) ** 2


def poisson_quadratic(f: HarmonicPolynomial, z: complex,
                      quad: QuadratureSpec | None = None) -> float:
    """``P[|f|^2](z) - |f(z)|^2`` for holomorphic ``f``."""
    if not f.is_holomorphic:
        raise PreconditionError("the Poisson gap is defined here for holomorphic maps only")
    z = complex(z)
    if abs(z) >= 1:
        raise ValueError("z must lie in the open unit disk")
    if f.is_constant:
        return 0.0

    def integrand(bnd):
        return ((1 - abs(z) ** 2) / np.abs(z - bnd) ** 2) * np.abs(evaluate(f, bnd)) ** 2

    res = circle_integral(integrand, 0j, 1.0, quad)
    return float(res.value / TWO_PI - abs(evaluate(f, z)) ** 2)


def poisson_gap_field(f: HarmonicPolynomial, pts, tol: float = 1e-13,
                      min_nodes: int = 256) -> np.ndarray:
    """Vectorized ``poisson_quadratic`` with a node count chosen per point.

    The boundary data is a trigonometric polynomial of degree ``D``, so the
    trapezoid rule's aliasing error at ``|z| = rho`` is about
    ``rho^(N - D)``; ``N`` is the next power of two that pushes it below
    ``tol``. Points with ``|z| >= 1`` get the boundary value 0.
    """
    if not f.is_holomorphic:
        raise PreconditionError("the Poisson gap is defined here for holomorphic maps only")
    pts = np.asarray(pts, dtype=np.complex128)
    flat = pts.ravel()
    out = np.zeros(flat.shape)
    if f.is_constant:
        return out.reshape(pts.shape)
    rho = np.abs(flat)
    inside = rho < 1 - 1e-12
    D = 2 * (len(f.h) - 1)
    with np.errstate(divide="ignore"):
        need = D + np.ceil(np.log(tol) / np.log(np.maximum(rho, 1e-300)))
    need = np.where(rho < 1e-300, D + 1, need)
    nodes = np.maximum(min_nodes, 2 ** np.ceil(np.log2(np.maximum(need, 2)))).astype(np.int64)
    for n in np.unique(nodes[inside]):
        idx = np.flatnonzero(inside & (nodes == n))
        theta = TWO_PI * np.arange(n) / n
        data = np.abs(evaluate(f, np.exp(1j * theta))) ** 2

        def block(sub):
            zz = flat[sub][:, None]
            return (_poisson_kernel(zz, theta[None, :]) * data).sum(axis=1) / n

        p_vals = _chunked(idx, int(n), block)
        out[idx] = p_vals - np.abs(evaluate(f, flat[idx])) ** 2
    return out.reshape(pts.shape)


def poisson_gap_sup(f: HarmonicPolynomial, w: Majorant, search: SupSearchSpec | None = None,
                    domain_shrink: float = 1e-3) -> Extremum:
    """``sup (P[|f|^2](z) - |f(z)|^2) / omega(d(z))^2`` over ``|z| <= 1 - shrink``."""
    def ratio(pts):
        return poisson_gap_field(f, pts) / w(boundary_distance(pts)) ** 2

    res = sup_over_disk(ratio, search, domain_shrink=domain_shrink)
    return Extremum(res.value, res.argmax)


@dataclass
class NormReport:
    """All computed functionals of one map."""

    map: HarmonicPolynomial
    bloch: float
    bloch_argmax: complex
    bmo: dict = field(default_factory=dict)
    bmo_argmax: dict = field(default_factory=dict)
    mp_curve: dict = field(default_factory=dict)
    ip_curve: dict = field(default_factory=dict)
    lipschitz: LipschitzFit | None = None
    poisson_gap: float | None = None

    def to_dict(self) -> dict:
        from .io import map_to_dict

        def pt(z):
            return [z.real, z.imag]

        return {
            "map": map_to_dict(self.map),
            "bloch": self.bloch,
            "bloch_argmax": pt(self.bloch_argmax),
            "bmo": {_pkey(p): v for p, v in self.bmo.items()},
            "bmo_argmax": {_pkey(p): pt(v) for p, v in self.bmo_argmax.items()},
            "mp_curve": {_pkey(p): [list(rv) for rv in c] for p, c in self.mp_curve.items()},
            "ip_curve": {_pkey(p): [list(rv) for rv in c] for p, c in self.ip_curve.items()},
            "lipschitz": self.lipschitz.to_dict() if self.lipschitz else None,
            "poisson_gap": self.poisson_gap,
        }


def _pkey(p):
    p = float(p)
    return str(int(p)) if p.is_integer() else repr(p)


def norm_report(f: HarmonicPolynomial, ps=(2,), r_grid=None, search=None, quad=None,
                majorant: Majorant | None = None, sampler=None) -> NormReport:
    quad = quad or QuadratureSpec()
    r_grid = np.linspace(0.05, 0.95, 19) if r_grid is None else np.asarray(r_grid)
    beta = bloch_seminorm(f, search)
    rep = NormReport(f, beta.value, beta.argmax)
    for p in ps:
        b = bmo_norm(f, p, search, quad)
        rep.bmo[p] = b.norm
        rep.bmo_argmax[p] = b.argmax
        rep.mp_curve[p] = [(float(r), circle_mean_Mp(f, r, p, quad)) for r in r_grid]
        rep.ip_curve[p] = [(float(r), disk_mean_Ip(f, r, p, quad)) for r in r_grid]
    if majorant is not None:
        from .majorant import lipschitz_fit
        rep.lipschitz = lipschitz_fit(f, majorant, sampler)
        if f.is_holomorphic:
            rep.poisson_gap = poisson_gap_sup(f, majorant, search).value
    return rep
