"""Harmonic polynomial maps ``f = h + conj(g)`` on the unit disk.

Everything here is exact pointwise calculus: evaluation, Wirtinger
derivatives, the dilation quantities ``Lambda_f`` and ``lambda_f``, the
hyperbolic distance, and composition with the affine charts
``phi_a(z) = a + (1 - |a|) z``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .errors import DomainError

# Points produced as exp(i*theta) may overshoot |z| = 1 by a few ulps.
BOUNDARY_TOL = 1e-12


def _canonical(coeffs) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(coeffs, dtype=np.complex128)).ravel()
    if arr.size == 0:
        arr = np.zeros(1, dtype=np.complex128)
    if not np.all(np.isfinite(arr)):
        raise ValueError("coefficients must be finite")
    nz = np.flatnonzero(arr)
    last = nz[-1] if nz.size else 0
    out = arr[: last + 1].copy()
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class HarmonicPolynomial:
    """``f(z) = sum h[k] z^k + conj(sum g[k] z^k)``.

    Trailing zero coefficients are stripped on construction so that
    ``degree`` is well defined. Instances are immutable.
    """

    h: np.ndarray
    g: np.ndarray

    def __init__(self, h: Sequence[complex] = (0,), g: Sequence[complex] = (0,)):
        object.__setattr__(self, "h", _canonical(h))
        object.__setattr__(self, "g", _canonical(g))

    @classmethod
    def identity(cls) -> "HarmonicPolynomial":
        return cls([0, 1])

    @classmethod
    def constant(cls, c: complex) -> "HarmonicPolynomial":
        return cls([c])

    @classmethod
    def c_z_plus_zbar(cls, C: complex = 1.0) -> "HarmonicPolynomial":
        """The extremal family ``C (z + conj z)``."""
        C = complex(C)
        return cls([0, C], [0, C.conjugate()])

    @property
    def degree(self) -> tuple[int, int]:
        return len(self.h) - 1, len(self.g) - 1

    @property
    def is_holomorphic(self) -> bool:
        return len(self.g) == 1 and self.g[0] == 0

    @property
    def is_constant(self) -> bool:
        return len(self.h) == 1 and len(self.g) == 1

    def analytic_part(self) -> "HarmonicPolynomial":
        return HarmonicPolynomial(self.h)

    def coanalytic_part(self) -> "HarmonicPolynomial":
        """``g`` as a holomorphic map (not its conjugate)."""
        return HarmonicPolynomial(self.g)

    def __call__(self, z):
        return evaluate(self, z)

    def __eq__(self, other):
        if not isinstance(other, HarmonicPolynomial):
            return NotImplemented
        return np.array_equal(self.h, other.h) and np.array_equal(self.g, other.g)

    def __hash__(self):
        return hash((self.h.tobytes(), self.g.tobytes()))

    def __repr__(self):
        return f"HarmonicPolynomial(h={self.h.tolist()}, g={self.g.tolist()})"


@dataclass(frozen=True)
class DiskWindow:
    """The sub-disk ``D(center, radius)``, required to lie inside the unit disk."""

    center: complex
    radius: float

    def __post_init__(self):
        c = complex(self.center)
        r = float(self.radius)
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", r)
        if not (math.isfinite(r) and r > 0):
            raise DomainError(f"window radius must be positive, got {r}")
        if abs(c) >= 1:
            raise DomainError(f"window center {c} is not in the open unit disk")
        if r > boundary_distance(c) * (1 + 1e-12) + 1e-15:
            raise DomainError(
                f"window D({c}, {r}) is not contained in the unit disk "
                f"(max radius {boundary_distance(c)})")

    @property
    def area(self) -> float:
        return math.pi * self.radius ** 2


@dataclass(frozen=True)
class AffineChart:
    """``phi_a(z) = a + (1 - |a|) z``, mapping D onto D(a, 1 - |a|)."""

    a: complex

    def __post_init__(self):
        a = complex(self.a)
        if not abs(a) < 1:
            raise DomainError(f"chart center {a} must satisfy |a| < 1")
        object.__setattr__(self, "a", a)

    @property
    def scale(self) -> float:
        return 1.0 - abs(self.a)

    def __call__(self, z):
        return self.a + self.scale * np.asarray(z)

    def window(self) -> DiskWindow:
        return DiskWindow(self.a, self.scale)


@dataclass(frozen=True)
class DerivativeBundle:
    f_z: complex
    f_zbar: complex
    lambda_max: float
    lambda_min: float
    grad_norm: float
    jacobian: float

    def as_dict(self):
        return {
            "f_z": [self.f_z.real, self.f_z.imag],
            "f_zbar": [self.f_zbar.real, self.f_zbar.imag],
            "lambda_max": self.lambda_max,
            "lambda_min": self.lambda_min,
            "grad_norm": self.grad_norm,
            "jacobian": self.jacobian,
        }


def boundary_distance(z):
    """``d(z) = 1 - |z|``."""
    return 1.0 - np.abs(z)


def _check_closed(z):
    if np.any(np.abs(z) > 1 + BOUNDARY_TOL):
        bad = np.asarray(z).ravel()[np.argmax(np.abs(np.asarray(z)).ravel())]
        raise DomainError(f"point {complex(bad)} lies outside the closed unit disk")


def evaluate(f: HarmonicPolynomial, z):
    """Value of ``f`` at ``z`` (scalar or array, ``|z| <= 1``)."""
    arr = np.asarray(z, dtype=np.complex128)
    _check_closed(arr)
    val, _, _ = kernels.eval_fields(f.h, f.g, arr)
    return complex(val) if arr.ndim == 0 else val


def wirtinger(f: HarmonicPolynomial, z, closed: bool = False):
    """Arrays ``(f, f_z, f_zbar)`` at ``z``.

    Open disk only unless ``closed`` is set.
    """
    arr = np.asarray(z, dtype=np.complex128)
    if closed:
        _check_closed(arr)
    elif np.any(np.abs(arr) >= 1):
        raise DomainError("derivatives require |z| < 1 (pass closed=True to allow the boundary)")
    val, hp, gp = kernels.eval_fields(f.h, f.g, arr)
    return val, hp, np.conj(gp)


def dilations(f: HarmonicPolynomial, z, closed: bool = False):
    """``(Lambda_f, lambda_f)`` at ``z`` as arrays."""
    _, fz, fzb = wirtinger(f, z, closed=closed)
    a, b = np.abs(fz), np.abs(fzb)
    return a + b, np.abs(a - b)


def gradients(f: HarmonicPolynomial, z, closed: bool = False):
    """``(|grad u|, |grad v|)`` for ``f = u + i v``."""
    _, fz, fzb = wirtinger(f, z, closed=closed)
    fx = fz + fzb
    fy = 1j * (fz - fzb)
    return np.hypot(fx.real, fy.real), np.hypot(fx.imag, fy.imag)


def derivatives(f: HarmonicPolynomial, z, closed: bool = False) -> DerivativeBundle:
    _, fz, fzb = wirtinger(f, complex(z), closed=closed)
    fz, fzb = complex(fz), complex(fzb)
    a, b = abs(fz), abs(fzb)
    return DerivativeBundle(
        f_z=fz,
        f_zbar=fzb,
        lambda_max=a + b,
        lambda_min=abs(a - b),
        grad_norm=math.hypot(a, b),
        jacobian=a * a - b * b,
    )


def hyperbolic_distance(z, w):
    """``arctanh |(z - w) / (1 - conj(z) w)|`` on the open unit disk."""
    z = np.asarray(z, dtype=np.complex128)
    w = np.asarray(w, dtype=np.complex128)
    if np.any(np.abs(z) >= 1) or np.any(np.abs(w) >= 1):
        raise DomainError("hyperbolic distance is only finite inside the open disk")
    pseudo = np.abs(z - w) / np.abs(1 - np.conj(z) * w)
    out = np.arctanh(np.minimum(pseudo, 1.0))
    return float(out) if out.ndim == 0 else out


def _shift(c, a, s):
    return kernels.taylor_shift(c, np.array([a]), np.array([s]))[0]


def chart_compose(f: HarmonicPolynomial, chart: AffineChart) -> HarmonicPolynomial:
    """Coefficients of ``f o phi_a``.

    ``conj(g(phi_a(z)))`` stays co-analytic because ``phi_a`` is holomorphic,
    so both parts are Taylor-shifted and rescaled.
    """
    if chart.a == 0:
        return f
    s = chart.scale
    return HarmonicPolynomial(_shift(f.h, chart.a, s), _shift(f.g, chart.a, s))


def area_mean(f: HarmonicPolynomial, window: DiskWindow, quad=None) -> complex:
    """Average of ``f`` over ``window`` with respect to area measure."""
    from .quad import QuadratureSpec, disk_integral

    quad = quad or QuadratureSpec()
    res = disk_integral(lambda p: evaluate(f, p), window,
                        quad.replace(measure="area"))
    return complex(res.value) / window.area
