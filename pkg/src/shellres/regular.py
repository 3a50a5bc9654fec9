"""Regular solution of the shell problem by closed-form interface matching.

The regular solution is the radial wave vanishing at the origin with
sin(k r) normalization in the inner region.  It is assembled piecewise:

    0 <= r < a :  sin(k r)
    a <= r < b :  j1 * exp(+i Q r) + j2 * exp(-i Q r)
    b <= r     :  j3 * exp(+i k r) + j4 * exp(-i k r)

with Q the interior momentum.  The four amplitudes follow from matching
value and first derivative at r = a and r = b; each interface is a 2x2
linear system solved in closed form, so the coefficients are analytic in k
away from k = 0 (where the sin normalization degenerates).

The Jost functions are read off the outer region:

    jost_plus  = -2i * j4
    jost_minus = +2i * j3

Their zeros in the lower half k-plane are the resonances; for a real
potential jost_minus(k) = conj(jost_plus(conj k)) and
jost_plus(-k) = jost_minus(k).

All heavy callers go through the vectorized ``matching_arrays``; the scalar
entry points memoize per (k, potential).  The cache is write-once/read-many:
concurrent callers may race to insert identical values, which is benign.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DegenerateMomentumError
from .model import ShellPotential, momentum_to_energy

__all__ = [
    "MatchingCoefficients",
    "JostPair",
    "solve_matching",
    "eval_chi",
    "jost",
    "matching_arrays",
    "jost_arrays",
    "chi_grid",
]

#: |k| (or |Q| relative to max(1,|k|)) below which the exponential basis is
#: treated as degenerate.
_DEGENERACY_TOL = 1e-12


@dataclass(frozen=True)
class MatchingCoefficients:
    """The four interface amplitudes of the regular solution at one momentum.

    Attributes
    ----------
    j1, j2 : complex
        Amplitudes of exp(+iQr), exp(-iQr) in the shell region a < r < b.
    j3, j4 : complex
        Amplitudes of exp(+ikr), exp(-ikr) outside the shell.
    k : complex
        Momentum the system was solved at.
    q : complex
        Interior momentum (principal branch of k^2 - c0*v0).
    pot : ShellPotential
    """

    j1: complex
    j2: complex
    j3: complex
    j4: complex
    k: complex
    q: complex
    pot: ShellPotential


@dataclass(frozen=True)
class JostPair:
    """Jost function values at one momentum: (-2i*j4, +2i*j3)."""

    jost_plus: complex
    jost_minus: complex
    k: complex


def matching_arrays(k, pot: ShellPotential):
    """Vectorized interface matching.

    Parameters
    ----------
    k : array_like of complex
        Momenta; must all satisfy |k| > 1e-12 and stay away from the
        interior degeneracy Q = 0.

    Returns
    -------
    (j1, j2, j3, j4, q) : tuple of complex ndarrays
    """
    k = np.asarray(k, dtype=complex)
    if np.any(np.abs(k) < _DEGENERACY_TOL):
        raise DegenerateMomentumError(
            "k = 0: the inner solution sin(kr) vanishes identically"
        )
    c0 = pot.units.c0
    q = np.sqrt(k * k - c0 * pot.v0)
    if np.any(np.abs(q) < _DEGENERACY_TOL * np.maximum(1.0, np.abs(k))):
        raise DegenerateMomentumError(
            "interior momentum Q = 0: the shell-region exponential basis is degenerate "
            f"(k^2 = c0*v0 = {c0 * pot.v0!r})"
        )
    a, b = pot.a, pot.b

    sin_a = np.sin(k * a)
    cos_a = np.cos(k * a)
    # value/derivative match of sin(kr) onto the Q-exponentials at r = a
    j1 = (0.5 * sin_a - 0.5j * (k / q) * cos_a) * np.exp(-1j * q * a)
    j2 = (0.5 * sin_a + 0.5j * (k / q) * cos_a) * np.exp(1j * q * a)

    # value/derivative of the shell solution at r = b
    ep = np.exp(1j * q * b)
    em = np.exp(-1j * q * b)
    chi_b = j1 * ep + j2 * em
    dchi_b = 1j * q * (j1 * ep - j2 * em)

    # match onto the k-exponentials at r = b
    j3 = (0.5 * chi_b - 0.5j * dchi_b / k) * np.exp(-1j * k * b)
    j4 = (0.5 * chi_b + 0.5j * dchi_b / k) * np.exp(1j * k * b)
    return j1, j2, j3, j4, q


def jost_arrays(k, pot: ShellPotential):
    """Vectorized Jost functions. Returns (jost_plus, jost_minus) arrays."""
    _, _, j3, j4, _ = matching_arrays(k, pot)
    return -2j * j4, 2j * j3


@lru_cache(maxsize=4096)
def _matching_cached(k: complex, pot: ShellPotential):
    j1, j2, j3, j4, q = matching_arrays(k, pot)
    return (complex(j1), complex(j2), complex(j3), complex(j4), complex(q))


def solve_matching(k: complex, pot: ShellPotential) -> MatchingCoefficients:
    """Solve the two interface systems at a single momentum (memoized).

    Raises
    ------
    DegenerateMomentumError
        If k = 0 or the interior momentum vanishes.
    """
    j1, j2, j3, j4, q = _matching_cached(complex(k), pot)
    return MatchingCoefficients(j1, j2, j3, j4, complex(k), q, pot)


def jost(k: complex, pot: ShellPotential) -> JostPair:
    """Jost functions at a single momentum.

    For v0 = 0 both equal 1 identically; for real k > 0 they are complex
    conjugates of each other.
    """
    m = solve_matching(k, pot)
    return JostPair(-2j * m.j4, 2j * m.j3, m.k)


def chi_grid(r, coeffs: MatchingCoefficients):
    """Evaluate the regular solution on an array of radii for fixed k.

    Pieces are evaluated only on their own region, so no spurious
    overflow from the wrong branch can occur.
    """
    r = np.asarray(r, dtype=float)
    scalar = r.ndim == 0
    r = np.atleast_1d(r)
    if np.any(r < 0):
        raise ValueError("radius must be nonnegative")
    pot = coeffs.pot
    k, q = coeffs.k, coeffs.q
    out = np.empty(r.shape, dtype=complex)

    inner = r < pot.a
    shell = (r >= pot.a) & (r < pot.b)
    outer = r >= pot.b
    out[inner] = np.sin(k * r[inner])
    out[shell] = coeffs.j1 * np.exp(1j * q * r[shell]) + coeffs.j2 * np.exp(
        -1j * q * r[shell]
    )
    out[outer] = coeffs.j3 * np.exp(1j * k * r[outer]) + coeffs.j4 * np.exp(
        -1j * k * r[outer]
    )
    return out[0] if scalar else out


def eval_chi(r, k: complex, pot: ShellPotential):
    """Regular solution chi(r; k), piecewise closed form.

    Entire in k for fixed r (away from the k = 0 normalization degeneracy).
    Accepts scalar or array r.
    """
    return chi_grid(r, solve_matching(k, pot))


def chi_second_derivative_residual(r: float, k: complex, pot: ShellPotential,
                                   h: float = 1e-4) -> float:
    """|H chi - E chi| by centered second difference at an interior point.

    Used by the reproduction battery; r must sit strictly inside one of the
    three regions (at least h away from the interfaces).
    """
    units = pot.units
    e = momentum_to_energy(k, units)
    c = eval_chi(np.array([r - h, r, r + h]), k, pot)
    d2 = (c[0] - 2.0 * c[1] + c[2]) / (h * h)
    v = float(pot(r))
    residual = -(units.hbar**2 / (2.0 * units.mass)) * d2 + (v - e) * c[1]
    return abs(residual)
