"""Closed-form radial test functions with decay-class metadata.

Analytic continuation of the spectral transforms needs exact tail behavior,
so test functions are closed-form families rather than sampled arrays:

* ``ExpDecay``    -- polynomial times exp(-rate*r); decay class exponential(rate)
* ``Gaussian``    -- polynomial times exp(-r^2/(2 width^2)); super-exponential
* ``SmoothBump``  -- C-infinity mollifier supported on [0, r_max]; compact

Each family knows how to integrate itself against a complex exponential
exactly (``segment_integral`` over [lo, hi] and ``tail_integral`` over
[lo, inf)), which is what the transform machinery uses beyond the shell
where the regular solution is a pure two-term exponential.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np
from scipy.special import erfcx

from .quadrature import adaptive_quad

__all__ = [
    "DecayClass",
    "TestFunction",
    "ExpDecay",
    "Gaussian",
    "SmoothBump",
    "test_function_from_dict",
]


@dataclass(frozen=True)
class DecayClass:
    """How fast a test function falls off at infinity.

    kind is one of "exponential" (rate alpha), "super_exponential", or
    "compact" (support radius r_max).
    """

    kind: Literal["exponential", "super_exponential", "compact"]
    rate: float | None = None
    r_max: float | None = None


def _poly_exp_antideriv(coeffs: Sequence[float], mu: np.ndarray, r: float) -> np.ndarray:
    """Antiderivative of (sum_j c_j r^j) exp(mu r) at radius r, vectorized in mu."""
    acc = np.zeros(mu.shape, dtype=complex)
    for j, c in enumerate(coeffs):
        if c == 0.0:
            continue
        s = np.zeros(mu.shape, dtype=complex)
        for i in range(j + 1):
            s += ((-1) ** (j - i)) * (math.factorial(j) / math.factorial(i)) \
                * (r**i) / mu ** (j - i + 1)
        acc += c * s
    return acc * np.exp(mu * r)


def _poly_exp_segment(coeffs: Sequence[float], mu, lo: float, hi: float):
    """Exact integral of (sum_j c_j r^j) * exp(mu r) over [lo, hi].

    Vectorized over mu.  Falls back to a Taylor series in mu where
    |mu| * max(|lo|,|hi|,1) is tiny enough for the closed form to lose digits.
    """
    mu = np.asarray(mu, dtype=complex)
    scalar = mu.ndim == 0
    mu = np.atleast_1d(mu)
    out = np.empty(mu.shape, dtype=complex)
    small = np.abs(mu) * max(abs(lo), abs(hi), 1.0) < 1e-8
    if np.any(small):
        ms = mu[small]
        total = np.zeros(ms.shape, dtype=complex)
        for j, c in enumerate(coeffs):
            if c == 0.0:
                continue
            term = np.zeros(ms.shape, dtype=complex)
            mp = np.ones(ms.shape, dtype=complex)
            for m in range(24):
                p = j + m + 1
                term += mp * (hi**p - lo**p) / p
                mp *= ms / (m + 1)
            total += c * term
        out[small] = total
    if np.any(~small):
        mb = mu[~small]
        out[~small] = (_poly_exp_antideriv(coeffs, mb, hi)
                       - _poly_exp_antideriv(coeffs, mb, lo))
    return out[0] if scalar else out


def _poly_gauss_exp_tail(coeffs: Sequence[float], sigma: float, mu, lo: float):
    """Exact integral of (sum_j c_j r^j) * exp(-r^2/(2 sigma^2)) * exp(mu r) over [lo, inf).

    Vectorized over mu.  Stable for large |Im mu|: the base case is written
    through erfcx so the exp(mu^2 sigma^2 / 2) factor never appears alone.
    """
    mu = np.asarray(mu, dtype=complex)
    scalar = mu.ndim == 0
    mu = np.atleast_1d(mu)
    s2 = sigma * sigma
    # boundary factor e^{mu lo - lo^2/(2 sigma^2)} shared by all terms
    bnd = np.exp(mu * lo - lo * lo / (2.0 * s2))
    u = (lo - mu * s2) / (sigma * math.sqrt(2.0))
    t0 = sigma * math.sqrt(math.pi / 2.0) * bnd * erfcx(u)
    degree = len(coeffs) - 1
    t = [t0]
    if degree >= 1:
        # recurrence T_j = sigma^2 [ lo^{j-1} bnd + (j-1) T_{j-2} + mu T_{j-1} ]
        for j in range(1, degree + 1):
            prev2 = t[j - 2] if j >= 2 else 0.0
            t.append(s2 * (lo ** (j - 1) * bnd + (j - 1) * prev2 + mu * t[j - 1]))
    out = sum(c * t[j] for j, c in enumerate(coeffs) if c != 0.0)
    return out[0] if scalar else out


@dataclass(frozen=True)
class TestFunction:
    """Base class; subclasses implement the closed forms."""

    def __call__(self, r):
        raise NotImplementedError

    @property
    def decay_class(self) -> DecayClass:
        raise NotImplementedError

    def segment_integral(self, mu: complex, lo: float, hi: float) -> complex | None:
        """Exact integral of f(r) exp(mu r) over [lo, hi], or None if no closed form."""
        return None

    def tail_integral(self, mu: complex, lo: float) -> complex | None:
        """Exact integral of f(r) exp(mu r) over [lo, inf), or None if divergent/no form."""
        return None

    def norm_sq(self) -> float:
        """L2 norm squared on [0, inf)."""
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class ExpDecay(TestFunction):
    """f(r) = (sum_j coeffs[j] r^j) * exp(-rate*r)."""

    rate: float
    coeffs: tuple = (1.0,)

    def __post_init__(self):
        if not (self.rate > 0):
            raise ValueError(f"decay rate must be positive, got {self.rate}")
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        return np.polynomial.polynomial.polyval(r, self.coeffs) * np.exp(-self.rate * r)

    @property
    def decay_class(self) -> DecayClass:
        return DecayClass("exponential", rate=self.rate)

    def segment_integral(self, mu, lo, hi):
        return _poly_exp_segment(self.coeffs, complex(mu) - self.rate, lo, hi)

    def tail_integral(self, mu, lo):
        mu = np.asarray(mu, dtype=complex)
        if np.any(mu.real - self.rate >= 0):
            return None  # divergent
        scalar = mu.ndim == 0
        s = np.atleast_1d(mu) - self.rate
        out = -_poly_exp_antideriv(self.coeffs, s, lo)
        return out[0] if scalar else out

    def norm_sq(self) -> float:
        # int (sum c_j r^j)^2 e^{-2 rate r} = sum_{i,j} c_i c_j (i+j)! / (2 rate)^{i+j+1}
        two_a = 2.0 * self.rate
        total = 0.0
        for i, ci in enumerate(self.coeffs):
            for j, cj in enumerate(self.coeffs):
                if ci == 0.0 or cj == 0.0:
                    continue
                total += ci * cj * math.factorial(i + j) / two_a ** (i + j + 1)
        return total

    def to_dict(self) -> dict:
        return {"form": "exp_decay", "rate": self.rate, "coeffs": list(self.coeffs)}


@dataclass(frozen=True)
class Gaussian(TestFunction):
    """f(r) = (sum_j coeffs[j] r^j) * exp(-r^2 / (2 width^2))."""

    width: float
    coeffs: tuple = (1.0,)

    def __post_init__(self):
        if not (self.width > 0):
            raise ValueError(f"width must be positive, got {self.width}")
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        return np.polynomial.polynomial.polyval(r, self.coeffs) * np.exp(
            -r * r / (2.0 * self.width**2)
        )

    @property
    def decay_class(self) -> DecayClass:
        return DecayClass("super_exponential")

    def segment_integral(self, mu, lo, hi):
        return (_poly_gauss_exp_tail(self.coeffs, self.width, mu, lo)
                - _poly_gauss_exp_tail(self.coeffs, self.width, mu, hi))

    def tail_integral(self, mu, lo):
        return _poly_gauss_exp_tail(self.coeffs, self.width, mu, lo)

    def norm_sq(self) -> float:
        # squared Gaussian has width sigma/sqrt(2); reuse the tail formula at mu=0
        sq_coeffs = np.polynomial.polynomial.polymul(self.coeffs, self.coeffs)
        return float(np.real(
            _poly_gauss_exp_tail(tuple(sq_coeffs), self.width / math.sqrt(2.0), 0.0, 0.0)
        ))

    def to_dict(self) -> dict:
        return {"form": "gaussian", "width": self.width, "coeffs": list(self.coeffs)}


@dataclass(frozen=True)
class SmoothBump(TestFunction):
    """C-infinity mollifier: amplitude * exp(1 - r_max^2/(r_max^2 - r^2)) on [0, r_max).

    Identically zero for r >= r_max, equal to ``amplitude`` at r = 0.
    """

    r_max: float
    amplitude: float = 1.0
    _norm_cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if not (self.r_max > 0):
            raise ValueError(f"support radius must be positive, got {self.r_max}")

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        scalar = r.ndim == 0
        r = np.atleast_1d(r)
        out = np.zeros(r.shape, dtype=float)
        m = np.abs(r) < self.r_max
        x2 = (r[m] / self.r_max) ** 2
        out[m] = self.amplitude * np.exp(1.0 - 1.0 / (1.0 - x2))
        return float(out[0]) if scalar else out

    @property
    def decay_class(self) -> DecayClass:
        return DecayClass("compact", r_max=self.r_max)

    def tail_integral(self, mu, lo):
        if lo >= self.r_max:
            return 0.0 + 0.0j
        return None  # no closed form inside the support; integrate numerically

    def norm_sq(self) -> float:
        key = "norm_sq"
        if key not in self._norm_cache:
            val, _ = adaptive_quad(
                lambda r: self(r) ** 2, 0.0, self.r_max, tol=1e-13
            )
            self._norm_cache[key] = float(np.real(val))
        return self._norm_cache[key]

    def to_dict(self) -> dict:
        return {"form": "smooth_bump", "r_max": self.r_max, "amplitude": self.amplitude}


def test_function_from_dict(spec: dict) -> TestFunction:
    """Build a test function from its config/JSON description."""
    form = spec.get("form")
    if form == "exp_decay":
        return ExpDecay(rate=float(spec["rate"]),
                        coeffs=tuple(spec.get("coeffs", [1.0])))
    if form == "gaussian":
        return Gaussian(width=float(spec["width"]),
                        coeffs=tuple(spec.get("coeffs", [1.0])))
    if form == "smooth_bump":
        return SmoothBump(r_max=float(spec["r_max"]),
                          amplitude=float(spec.get("amplitude", 1.0)))
    raise ValueError(f"unknown test function form: {form!r}")
