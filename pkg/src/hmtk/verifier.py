"""Named, tolerance-aware checks of the inequalities between the norms.

Each check returns one or more :class:`Verdict` objects. A verdict passes
iff ``margin = rhs * (1 + slack) + atol - lhs >= 0`` at its worst sampled
location, which is recorded as the witness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .core import (DiskWindow, HarmonicPolynomial, area_mean, boundary_distance,
                   dilations, evaluate, gradients, hyperbolic_distance, wirtinger)
from .errors import PreconditionError
from .majorant import Majorant, PairSampler, is_regular, lipschitz_fit
from .norms import (OSCILLATION_QUAD, bloch_seminorm, bmo_norm, center_oscillation_batch,
                    circle_mean_Mp, disk_mean_Ip, poisson_gap_sup)
from .quad import QuadratureSpec, SupSearchSpec, circle_integral, sup_over_disk

FOUR_OVER_PI = 4.0 / math.pi


def _num(x):
    x = float(x)
    if math.isfinite(x):
        return x
    return "inf" if x > 0 else ("-inf" if x < 0 else "nan")


def _pt(z):
    z = complex(z)
    return [z.real, z.imag]


@dataclass
class Verdict:
    check_name: str
    lhs: float
    rhs: float
    margin: float
    passed: bool
    witness: dict = field(default_factory=dict)
    slack_used: float = 0.0
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "check": self.check_name,
            "pass": self.passed,
            "lhs": _num(self.lhs),
            "rhs": _num(self.rhs),
            "margin": _num(self.margin),
            "witness": self.witness,
            "slack": self.slack_used,
        }
        if self.details:
            out["details"] = {k: (_num(v) if isinstance(v, (float, np.floating)) else v)
                              for k, v in self.details.items()}
        return out


def _worst(name, items, slack=0.0, atol=0.0, details=None) -> Verdict:
    """Reduce ``(label, lhs, rhs, witnesses)`` groups to the smallest margin.

    ``witnesses`` is an array of witness dicts or a callable ``i -> dict``.
    """
    best = None
    for label, lhs, rhs, wit in items:
        lhs = np.atleast_1d(np.asarray(lhs, dtype=float))
        rhs = np.atleast_1d(np.asarray(rhs, dtype=float))
        if lhs.size == 0:
            continue
        margin = rhs * (1 + slack) + atol - lhs
        margin = np.where(np.isnan(margin), -np.inf, margin)
        k = int(np.argmin(margin))
        if best is None or margin[k] < best[0]:
            w = wit(k) if callable(wit) else dict(wit)
            if label:
                w = {**w, "inequality": label}
            best = (float(margin[k]), float(lhs[k]), float(rhs[k]), w)
    if best is None:
        return Verdict(name, 0.0, 0.0, atol, True, {}, slack, details or {})
    margin, lhs, rhs, wit = best
    return Verdict(name, lhs, rhs, margin, bool(margin >= 0), wit, slack, details or {})


def _zwit(pts):
    pts = np.asarray(pts).ravel()
    return lambda k: {"z": _pt(pts[k])}


def interior_grid(n_r: int = 12, n_t: int = 24, rmax: float = 0.98) -> np.ndarray:
    """Polar grid of interior points, center included."""
    radii = rmax * np.arange(1, n_r + 1) / n_r
    theta = 2 * math.pi * np.arange(n_t) / n_t
    return np.concatenate([[0j], (radii[:, None] * np.exp(1j * theta)[None, :]).ravel()])


def check_pointwise(f: HarmonicPolynomial, grid=None, slack: float = 1e-12) -> Verdict:
    """The dilation chain and ``Lambda_f <= |grad u| + |grad v|`` at grid points."""
    pts = interior_grid() if grid is None else np.asarray(grid, dtype=np.complex128).ravel()
    _, fz, fzb = wirtinger(f, pts)
    a, b = np.abs(fz), np.abs(fzb)
    lam_max, lam_min = a + b, np.abs(a - b)
    grad = np.hypot(a, b)
    jac = np.abs(a * a - b * b)
    gu, gv = gradients(f, pts)
    atol = slack * (1 + float(lam_max.max(initial=0.0))) ** 2
    wit = _zwit(pts)
    return _worst("pointwise", [
        ("lambda_min <= grad_norm", lam_min, grad, wit),
        ("grad_norm <= Lambda", grad, lam_max, wit),
        ("Lambda <= sqrt2 grad_norm", lam_max, math.sqrt(2) * grad, wit),
        ("Lambda*lambda = |J|", np.abs(lam_max * lam_min - jac), 0 * jac, wit),
        ("Lambda <= |grad u| + |grad v|", lam_max, gu + gv, wit),
    ], slack, atol)


def check_lemma_gradient(f: HarmonicPolynomial, a: complex, r: float,
                         quad: QuadratureSpec | None = None, slack: float = 1e-6) -> Verdict:
    """``Lambda_f(a) <= (2/(pi r)) int_0^{2pi} |f(a) - f(a + r e^{it})| dt``."""
    a = complex(a)
    if r <= 0 or abs(a) + r > 1 + 1e-12:
        raise PreconditionError("closed disk D(a, r) must lie in the closed unit disk")
    lam, _ = dilations(f, a)
    fa = evaluate(f, a)
    integral = 0.0 if f.is_constant else circle_integral(
        lambda pts: np.abs(fa - evaluate(f, pts)), a, r, quad or OSCILLATION_QUAD).value
    rhs = 2.0 / (math.pi * r) * float(integral)
    return _worst("lemma_gradient", [("", float(lam), rhs, {"z": _pt(a), "r": r})],
                  slack, 1e-14)


def _sup_abs_real(f, search=None):
    res = sup_over_disk(lambda p: np.abs(evaluate(f, p).real), search)
    theta = 2 * math.pi * np.arange(4096) / 4096
    ring = float(np.abs(evaluate(f, np.exp(1j * theta)).real).max())
    return max(res.value, ring)


def check_khavinson(f: HarmonicPolynomial, grid=None, slack: float = 1e-9,
                    safety: float = 0.95, search: SupSearchSpec | None = None) -> Verdict:
    """``|grad u| <= (4/pi)(1 - u^2)/(1 - |z|^2)`` for ``u = s Re f`` scaled into (-1, 1).

    The scale ``s = safety / sup |Re f|`` comes from a closed-disk scan.
    """
    pts = interior_grid() if grid is None else np.asarray(grid, dtype=np.complex128).ravel()
    sup = _sup_abs_real(f, search)
    scale = safety / sup if sup > 0 else 0.0
    gu, _ = gradients(f, pts)
    u = scale * evaluate(f, pts).real
    lhs = scale * gu
    rhs = FOUR_OVER_PI * (1 - u * u) / (1 - np.abs(pts) ** 2)
    return _worst("khavinson", [("", lhs, rhs, _zwit(pts))], slack, 1e-14,
                  {"scale": scale, "sup_abs_u": sup})


def _window_sup_abs_u(f, z, d, search):
    return sup_over_disk(lambda xi: np.abs(evaluate(f, z + d * xi).real), search).value


def check_interior_gradient_bound(f: HarmonicPolynomial, grid=None, slack: float = 0.02,
                                  search: SupSearchSpec | None = None) -> Verdict:
    """``d(z)|grad u(z)| <= (8/pi)(M_z - |u(z)|)``, ``M_z = sup_{D(z, d(z))} |u|``, ``u = Re f``."""
    pts = interior_grid(8, 16, 0.9) if grid is None else np.asarray(grid, dtype=np.complex128).ravel()
    search = search or SupSearchSpec(coarse_grid=(16, 32), starts=3)
    d = boundary_distance(pts)
    gu, _ = gradients(f, pts)
    u = np.abs(evaluate(f, pts).real)
    mz = np.array([_window_sup_abs_u(f, z, dz, search) for z, dz in zip(pts, d)])
    mz = np.maximum(mz, u)
    return _worst("interior_gradient", [("", d * gu, 2 * FOUR_OVER_PI * (mz - u), _zwit(pts))],
                  slack, 1e-12)


def check_schwarz_pick_affine(a, z, slack: float = 1e-12) -> Verdict:
    """``|phi_a'(z)| <= (1 - |phi_a(z)|^2)/(1 - |z|^2)`` for scalars or arrays."""
    a = np.atleast_1d(np.asarray(a, dtype=np.complex128))
    z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    a, z = np.broadcast_arrays(a, z)
    if np.any(np.abs(a) >= 1) or np.any(np.abs(z) >= 1):
        raise PreconditionError("a and z must lie in the open unit disk")
    s = 1 - np.abs(a)
    phi = a + s * z
    rhs = (1 - np.abs(phi) ** 2) / (1 - np.abs(z) ** 2)
    return _worst("schwarz_pick_affine",
                  [("", s, rhs, lambda k: {"a": _pt(a[k]), "z": _pt(z[k])})], slack, 1e-15)


def theorem1_windows(grid=None):
    pts = interior_grid(6, 12, 0.95) if grid is None else np.asarray(grid, dtype=np.complex128).ravel()
    d = boundary_distance(pts)
    centers = np.repeat(pts, 3)
    radii = (d[:, None] * np.array([1.0, 0.5, 0.25])[None, :]).ravel()
    return centers, radii


def check_theorem1_constants(f: HarmonicPolynomial, w: Majorant | None = None, windows=None,
                             grid=None, slack: float = 0.01,
                             search: SupSearchSpec | None = None) -> tuple[Verdict, Verdict]:
    """Forward and backward constants of the centered-oscillation equivalence.

    ``M_Lambda = sup Lambda_f / omega(1/d)`` and ``M_osc = sup osc / (r omega(1/r))``;
    forward: ``osc(z, r) <= 2 M_Lambda r omega(1/r)``;
    backward: ``Lambda_f(z) <= 6 M_osc omega(1/d(z))``.
    ``omega`` is applied on ``[1, inf)`` as given.
    """
    w = w or Majorant.power(0.5)
    pts = interior_grid(6, 12, 0.95) if grid is None else np.asarray(grid, dtype=np.complex128).ravel()
    centers, radii = theorem1_windows(pts) if windows is None else map(np.asarray, windows)
    centers = np.asarray(centers, dtype=np.complex128)
    radii = np.asarray(radii, dtype=float)

    def lam_ratio(z):
        lam, _ = dilations(f, z, closed=True)
        d = boundary_distance(z)
        with np.errstate(divide="ignore"):
            om = w(1.0 / np.maximum(d, 1e-300))
        return np.where(d > 0, lam / om, 0.0)

    m_lam = sup_over_disk(lam_ratio, search, domain_shrink=1e-6).value
    osc = center_oscillation_batch(f, centers, radii, rule=(128, 12, 3, 1))
    k_r = radii * w(1.0 / radii)
    m_osc = float((osc / k_r).max(initial=0.0))
    lam, _ = dilations(f, pts)
    d = boundary_distance(pts)
    details = {"M_lambda": m_lam, "M_osc": m_osc, "majorant": w.to_dict()}
    fwd = _worst("theorem1_forward", [("", osc, 2 * m_lam * k_r,
                                       lambda k: {"z": _pt(centers[k]), "r": float(radii[k])})],
                 slack, 1e-14, details)
    bwd = _worst("theorem1_backward", [("", lam, 6 * m_osc * w(1.0 / d), _zwit(pts))],
                 slack, 1e-14, details)
    return fwd, bwd


def check_bmo_bloch_chain(f: HarmonicPolynomial, slack: float = 0.02, constant: float = 2.0,
                          search: SupSearchSpec | None = None, inner: str = "auto",
                          quad: QuadratureSpec | None = None) -> tuple[Verdict, Verdict]:
    """``||f||_BMO2 <= beta_f <= constant * ||f||_BMO2`` (``constant = 2`` is sharp)."""
    beta = bloch_seminorm(f, search)
    bmo = bmo_norm(f, 2, search, quad, inner=inner)
    details = {"bloch": beta.value, "bmo2": bmo.norm, "constant": constant}
    first = _worst("chain_lower", [("", bmo.norm, beta.value, {"a": _pt(bmo.argmax)})],
                   slack, 0.0, details)
    second = _worst("chain_upper", [("", beta.value, constant * bmo.norm,
                                     {"z": _pt(beta.argmax)})], slack, 0.0, details)
    return first, second


def check_extremal(C: complex, search: SupSearchSpec | None = None,
                   inner: str = "auto") -> Verdict:
    """For ``f = C(z + conj z)``: ``beta = 2|C|``, ``BMO2 = |C|``, ratio 2."""
    f = HarmonicPolynomial.c_z_plus_zbar(C)
    mod = abs(complex(C))
    beta = bloch_seminorm(f, search).value
    bmo = bmo_norm(f, 2, search, inner=inner).norm
    items = [("beta = 2|C|", abs(beta - 2 * mod), 1e-9, {}),
             ("BMO2 = |C|", abs(bmo - mod), 0.005 * mod, {})]
    if mod > 0:
        items.append(("beta/BMO2 = 2", abs(beta / bmo - 2), 0.02, {}))
    return _worst("extremal", items, 0.0, 0.0,
                  {"C": _pt(C), "bloch": beta, "bmo2": bmo})


def check_bmo1_corollary(f: HarmonicPolynomial, slack: float = 0.02,
                         search: SupSearchSpec | None = None,
                         quad: QuadratureSpec | None = None) -> tuple[Verdict, Verdict]:
    """``omega(t) = t``: ``W <= 2 S`` and ``S <= 6 W`` with ``S = sup d(z) Lambda_f(z)``.

    ``W`` is the sup of center-subtracted window oscillations (``p = 1``),
    from the chart search and a fixed window sample.
    """
    def field_(z):
        lam, _ = dilations(f, z, closed=True)
        return boundary_distance(z) * lam

    s = sup_over_disk(field_, search).value
    chart = bmo_norm(f, 1, search, quad, inner="quadrature")
    centers, radii = theorem1_windows()
    sampled = center_oscillation_batch(f, centers, radii)
    w_sup = max(chart.norm, float(sampled.max(initial=0.0)))
    details = {"S": s, "W": w_sup, "bmo1_chart": chart.norm}
    fwd = _worst("bmo1_forward", [("", w_sup, 2 * s, {"a": _pt(chart.argmax)})], slack, 1e-14, details)
    bwd = _worst("bmo1_backward", [("", s, 6 * w_sup, {})], slack, 1e-14, details)
    return fwd, bwd


def _real_part(f):
    return lambda z: evaluate(f, z).real


def check_modulus_equivalence(f: HarmonicPolynomial, w: Majorant | None = None,
                              sampler: PairSampler | None = None, grid=None,
                              slack: float = 0.02) -> Verdict:
    """``u = Re f``: ``|grad u| <= (40 M/pi) omega(d)/d`` with ``M`` the fitted
    constant of ``|u|`` (boundary pairs included); reports the fit of ``u``.
    """
    w = w or Majorant.power(1.0)
    sampler = sampler or PairSampler(boundary_fraction=0.25)
    pairs = sampler.sample()
    u = _real_part(f)
    m_abs = lipschitz_fit(lambda z: np.abs(u(z)), w, pairs=pairs)
    m_u = lipschitz_fit(u, w, pairs=pairs)
    pts = interior_grid() if grid is None else np.asarray(grid, dtype=np.complex128).ravel()
    gu, _ = gradients(f, pts)
    d = boundary_distance(pts)
    rhs = 40 * m_abs.constant / math.pi * w(d) / d
    details = {"M_abs": m_abs.constant, "L_u": m_u.constant,
               "ratio": (m_u.constant / m_abs.constant) if m_abs.constant > 0 else 0.0}
    v = _worst("modulus_equivalence", [("", gu, rhs, _zwit(pts))], slack, 1e-12, details)
    if not math.isfinite(m_u.constant):
        v.passed = False
    return v


def check_decomposition(f: HarmonicPolynomial, w: Majorant | None = None,
                        sampler: PairSampler | None = None, cap: float = 100.0) -> Verdict:
    """Fits of ``f, h, g, |h|, |g|`` on one pair sample; nonzero ones must agree within ``cap``."""
    w = w or Majorant.power(1.0)
    pairs = (sampler or PairSampler()).sample()
    h, g = f.analytic_part(), f.coanalytic_part()
    fits = {
        "f": lipschitz_fit(f, w, pairs=pairs).constant,
        "h": lipschitz_fit(h, w, pairs=pairs).constant,
        "g": lipschitz_fit(g, w, pairs=pairs).constant,
        "|h|": lipschitz_fit(lambda z: np.abs(evaluate(h, z)), w, pairs=pairs).constant,
        "|g|": lipschitz_fit(lambda z: np.abs(evaluate(g, z)), w, pairs=pairs).constant,
    }
    nz = [v for v in fits.values() if v > 0]
    ratio = max(nz) / min(nz) if nz else 1.0
    v = _worst("decomposition", [("", ratio, cap, {})], 0.0, 0.0, {"fits": fits})
    if not all(math.isfinite(x) for x in fits.values()):
        v.passed = False
    return v


def check_dyakonov_gap(f: HarmonicPolynomial, w: Majorant | None = None,
                       sampler: PairSampler | None = None, cap: float = 100.0,
                       search: SupSearchSpec | None = None,
                       domain_shrink: float = 1e-3) -> Verdict:
    """Gap constant ``G = sup (P[|f|^2] - |f|^2)/omega(d)^2`` versus fit ``L``.

    Passes when both are finite and ``max(G/L^2, L^2/G) <= cap``. Whether
    ``omega`` and ``omega^2`` are regular is reported, not enforced.
    """
    if not f.is_holomorphic:
        raise PreconditionError("the Poisson gap check needs a holomorphic map")
    w = w or Majorant.power(0.5)
    gap = poisson_gap_sup(f, w, search, domain_shrink)
    fit = lipschitz_fit(f, w, sampler)
    L2 = fit.constant ** 2
    if gap.value > 0 and L2 > 0:
        ratio = max(gap.value / L2, L2 / gap.value)
    elif gap.value <= 0 and L2 <= 0:
        ratio = 1.0
    else:
        ratio = math.inf
    details = {"G_sup": gap.value, "L": fit.constant,
               "omega_regular": is_regular(w).regular,
               "omega2_regular": is_regular(w.squared()).regular}
    return _worst("dyakonov_gap", [("", ratio, cap, {"z": _pt(gap.argmax)})], 0.0, 0.0, details)


def check_mp_ip_monotone(f: HarmonicPolynomial, ps: Sequence[float] = (2, 4), r_grid=None,
                         quad: QuadratureSpec | None = None, slack: float = 1e-10) -> Verdict:
    """``M_p``, ``I_p`` non-decreasing in ``r`` and ``I_p <= M_p`` (``p >= 2``)."""
    r = np.linspace(0.1, 0.95, 8) if r_grid is None else np.asarray(r_grid, dtype=float)
    items = []
    for p in ps:
        mp = np.array([circle_mean_Mp(f, x, p, quad) for x in r])
        ip = np.array([disk_mean_Ip(f, x, p, quad) for x in r])
        wit = (lambda k, p=p: {"r": float(r[k]), "p": p})
        items += [(f"M_{p} increasing", mp[:-1], mp[1:], wit),
                  (f"I_{p} increasing", ip[:-1], ip[1:], wit),
                  (f"I_{p} <= M_{p}", ip, mp, wit)]
    return _worst("mp_ip_monotone", items, slack, 0.0)


def check_mean_value(f: HarmonicPolynomial, windows: Iterable[DiskWindow],
                     quad: QuadratureSpec | None = None, tol: float = 1e-9) -> Verdict:
    """``|area_mean(f, W) - f(center)| <= tol (1 + |f(center)|)``."""
    windows = list(windows)
    err = np.empty(len(windows))
    for i, win in enumerate(windows):
        fc = evaluate(f, win.center)
        err[i] = abs(area_mean(f, win, quad) - fc) / (1 + abs(fc))
    return _worst("mean_value", [("", err, 0 * err, lambda k: {
        "z": _pt(windows[k].center), "r": windows[k].radius})], 0.0, tol)


def check_bloch_lipschitz(f: HarmonicPolynomial, sampler: PairSampler | None = None,
                          slack: float = 1e-9, search: SupSearchSpec | None = None) -> Verdict:
    """``|f(z) - f(w)| <= beta_f rho(z, w)`` on random pairs in the open disk."""
    z, w = (sampler or PairSampler(n_pairs=10000)).sample()
    keep = (np.abs(z) < 1) & (np.abs(w) < 1) & (z != w)
    z, w = z[keep], w[keep]
    beta = bloch_seminorm(f, search).value
    lhs = np.abs(evaluate(f, z) - evaluate(f, w))
    rhs = beta * hyperbolic_distance(z, w)
    return _worst("bloch_lipschitz",
                  [("", lhs, rhs, lambda k: {"z": _pt(z[k]), "w": _pt(w[k])})],
                  slack, 1e-14, {"bloch": beta})


CHECKS = ("pointwise", "lemma_gradient", "schwarz_pick_affine", "khavinson",
          "interior_gradient", "mp_ip_monotone", "chain", "theorem1_constants",
          "mean_value", "bloch_lipschitz", "bmo1_corollary", "modulus_equivalence",
          "decomposition", "dyakonov_gap", "extremal")

FUZZ_CHECKS = ("pointwise", "lemma_gradient", "schwarz_pick_affine", "khavinson",
               "mp_ip_monotone", "chain", "theorem1_constants", "mean_value")

DEFAULT_SLACK = {"chain": 0.02, "theorem1_constants": 0.01, "interior_gradient": 0.02,
                 "bmo1_corollary": 0.02, "modulus_equivalence": 0.02}


@dataclass(frozen=True)
class SuiteOptions:
    """Knobs shared by suite runs and fuzzing."""

    slack: dict = field(default_factory=dict)
    chain_constant: float = 2.0
    majorant: Majorant | None = None
    search: SupSearchSpec | None = None
    quad: QuadratureSpec | None = None
    seed: int = 0

    def slack_for(self, name):
        return self.slack.get(name, DEFAULT_SLACK.get(name))


def _kw(slack):
    return {} if slack is None else {"slack": slack}


def run_check(name: str, f: HarmonicPolynomial, opts: SuiteOptions | None = None,
              rng: np.random.Generator | None = None) -> list[Verdict]:
    """Run one named check on ``f``; random inputs (points, windows) come from ``rng``."""
    opts = opts or SuiteOptions()
    rng = rng or np.random.Generator(np.random.Philox(opts.seed))
    slack = _kw(opts.slack_for(name))
    if name == "pointwise":
        return [check_pointwise(f, **slack)]
    if name == "lemma_gradient":
        out = []
        for _ in range(3):
            a = 0.9 * math.sqrt(rng.random()) * np.exp(2j * math.pi * rng.random())
            r = (1 - abs(a)) * (0.05 + 0.95 * rng.random())
            out.append(check_lemma_gradient(f, a, r, **slack))
        return [min(out, key=lambda v: v.margin)]
    if name == "schwarz_pick_affine":
        u = rng.random((4, 512))
        a = 0.999 * np.sqrt(u[0]) * np.exp(2j * math.pi * u[1])
        z = 0.999 * np.sqrt(u[2]) * np.exp(2j * math.pi * u[3])
        return [check_schwarz_pick_affine(a, z, **slack)]
    if name == "khavinson":
        return [check_khavinson(f, search=opts.search, **slack)]
    if name == "interior_gradient":
        return [check_interior_gradient_bound(f, **slack)]
    if name == "mp_ip_monotone":
        return [check_mp_ip_monotone(f, quad=opts.quad, **slack)]
    if name == "chain":
        return list(check_bmo_bloch_chain(f, constant=opts.chain_constant,
                                          search=opts.search, quad=opts.quad, **slack))
    if name == "theorem1_constants":
        return list(check_theorem1_constants(f, opts.majorant, search=opts.search, **slack))
    if name == "mean_value":
        wins = []
        for _ in range(4):
            c = 0.95 * math.sqrt(rng.random()) * np.exp(2j * math.pi * rng.random())
            wins.append(DiskWindow(c, (1 - abs(c)) * (0.1 + 0.9 * rng.random())))
        tol = opts.slack_for(name)
        return [check_mean_value(f, wins, opts.quad, **({} if tol is None else {"tol": tol}))]
    if name == "bloch_lipschitz":
        return [check_bloch_lipschitz(f, PairSampler(n_pairs=10000, seed=opts.seed),
                                      search=opts.search, **slack)]
    if name == "bmo1_corollary":
        return list(check_bmo1_corollary(f, search=opts.search, **slack))
    if name == "modulus_equivalence":
        return [check_modulus_equivalence(f, opts.majorant, **slack)]
    if name == "decomposition":
        return [check_decomposition(f, opts.majorant)]
    if name == "dyakonov_gap":
        if not f.is_holomorphic:
            return []
        return [check_dyakonov_gap(f, opts.majorant, search=opts.search)]
    if name == "extremal":
        if not (len(f.h) <= 2 and len(f.g) <= 2 and f.h[0] == 0 and f.g[0] == 0
                and len(f.h) == len(f.g) and np.isclose(f.h[-1], np.conj(f.g[-1]))):
            return []
        return [check_extremal(f.h[-1], search=opts.search)]
    raise ValueError(f"unknown check {name!r}")


SUITES = {
    "all": CHECKS,
    "fuzz": FUZZ_CHECKS,
    "chain": ("chain",),
    "lemmas": ("pointwise", "lemma_gradient", "khavinson", "interior_gradient",
               "schwarz_pick_affine", "mp_ip_monotone", "mean_value"),
    "equivalences": ("theorem1_constants", "bmo1_corollary", "modulus_equivalence",
                     "decomposition", "dyakonov_gap"),
}


def run_suite(f: HarmonicPolynomial, suite: str = "all",
              opts: SuiteOptions | None = None) -> list[Verdict]:
    names = SUITES.get(suite, (suite,) if suite in CHECKS else None)
    if names is None:
        raise ValueError(f"unknown suite or check {suite!r}")
    opts = opts or SuiteOptions()
    out = []
    for name in names:
        rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([opts.seed, CHECKS.index(name)])))
        out += run_check(name, f, opts, rng)
    return out


@dataclass(frozen=True)
class FuzzConfig:
    trials: int = 200
    max_degree: int = 8
    coeff_bound: float = 1.0
    seed: int = 42
    checks: tuple = FUZZ_CHECKS
    force_map: HarmonicPolynomial | None = None

    def to_dict(self):
        from .io import map_to_dict
        return {"trials": self.trials, "max_degree": self.max_degree,
                "coeff_bound": self.coeff_bound, "seed": self.seed,
                "checks": list(self.checks),
                "force_map": map_to_dict(self.force_map) if self.force_map else None}


def _trial_rng(seed, index):
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, index])))


def random_map(rng: np.random.Generator, max_degree: int, coeff_bound: float) -> HarmonicPolynomial:
    """Degrees uniform in ``0..max_degree``; coefficients uniform in the disk of radius ``coeff_bound``."""
    nh, ng = rng.integers(0, max_degree + 1, size=2)

    def draw(n):
        u = rng.random((n + 1, 2))
        return coeff_bound * np.sqrt(u[:, 0]) * np.exp(2j * math.pi * u[:, 1])

    return HarmonicPolynomial(draw(nh), draw(ng))


def _run_trial(args):
    config, opts, index = args
    rng = _trial_rng(config.seed, index)
    f = config.force_map or random_map(rng, config.max_degree, config.coeff_bound)
    verdicts = []
    for name in config.checks:
        verdicts += run_check(name, f, opts, rng)
    return f, verdicts


def _workers():
    import os
    try:
        return max(1, int(os.environ.get("HMTK_THREADS", "1")))
    except ValueError:
        return 1


def fuzz(config: FuzzConfig, opts: SuiteOptions | None = None, progress=None) -> dict:
    """Run ``config.checks`` on ``config.trials`` random maps.

    Trial ``i`` draws everything from a Philox stream keyed by
    ``(seed, i)``, so the summary is identical however trials are scheduled.
    ``HMTK_THREADS`` > 1 runs trials in a process pool.
    """
    from .io import map_to_dict

    opts = opts or SuiteOptions(seed=config.seed)
    jobs = [(config, opts, i) for i in range(config.trials)]
    n_workers = _workers()
    if n_workers > 1 and config.trials > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(n_workers) as pool:
            results = list(pool.map(_run_trial, jobs))
    else:
        results = []
        for job in jobs:
            results.append(_run_trial(job))
            if progress:
                progress(job[2])

    per_check: dict = {}
    failures = []
    for i, (f, verdicts) in enumerate(results):
        for v in verdicts:
            st = per_check.setdefault(v.check_name, {"pass": 0, "fail": 0,
                                                     "worst_margin": None, "worst_trial": None})
            st["pass" if v.passed else "fail"] += 1
            if st["worst_margin"] is None or v.margin < st["worst_margin"]:
                st["worst_margin"], st["worst_trial"] = v.margin, i
            if not v.passed:
                failures.append({"trial": i, "map": map_to_dict(f), "verdict": v.to_dict()})
    for st in per_check.values():
        st["worst_margin"] = _num(st["worst_margin"]) if st["worst_margin"] is not None else None
    trials_failed = len({fl["trial"] for fl in failures})
    return {
        "config": config.to_dict(),
        "options": {"slack": dict(opts.slack), "chain_constant": opts.chain_constant,
                    "majorant": opts.majorant.to_dict() if opts.majorant else None},
        "trials": config.trials,
        "trials_passed": config.trials - trials_failed,
        "checks": per_check,
        "failures": failures,
        "pass": not failures,
    }
