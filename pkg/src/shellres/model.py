"""Physical model: unit system, shell potential, and momentum/energy kinematics.

The complex momentum k is the master analytic variable everywhere in this
package; energy is always derived as E = hbar^2 k^2 / (2m), never the
reverse.  This removes the two-sheet bookkeeping of the square root in the
energy plane: upper/lower half-planes of k play the role of the two energy
sheets.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "UnitSystem",
    "ShellPotential",
    "momentum_to_energy",
    "interior_momentum",
]


@dataclass(frozen=True)
class UnitSystem:
    """Action and mass constants; everything else derives from c0 = 2m/hbar^2.

    The default is natural units 2m = hbar = 1 (i.e. mass = 0.5), so that
    c0 = 1 and k = sqrt(E).
    """

    hbar: float = 1.0
    mass: float = 0.5

    def __post_init__(self):
        if not (self.hbar > 0):
            raise ValueError(f"hbar must be positive, got {self.hbar}")
        if not (self.mass > 0):
            raise ValueError(f"mass must be positive, got {self.mass}")

    @property
    def c0(self) -> float:
        """2*mass/hbar**2, the constant converting energy to momentum squared."""
        return 2.0 * self.mass / (self.hbar * self.hbar)

    @classmethod
    def natural(cls) -> "UnitSystem":
        return cls()


@dataclass(frozen=True)
class ShellPotential:
    """Spherical shell barrier: V = 0 on (0,a), v0 on (a,b), 0 on (b,inf).

    v0 > 0 is the repulsive barrier; attractive shells (v0 < 0) are allowed
    as an extension.  Only zero angular momentum is supported.
    """

    a: float
    b: float
    v0: float
    units: UnitSystem = field(default_factory=UnitSystem)

    def __post_init__(self):
        if not (self.a > 0):
            raise ValueError(f"inner radius a must be positive, got {self.a}")
        if not (self.b > self.a):
            raise ValueError(
                f"outer radius b must exceed a, got a={self.a}, b={self.b}"
            )

    def __call__(self, r):
        """Potential value(s) at radius r (vectorized)."""
        r = np.asarray(r, dtype=float)
        return np.where((r > self.a) & (r < self.b), self.v0, 0.0)


def momentum_to_energy(k: complex, units: UnitSystem) -> complex:
    """E = hbar^2 k^2 / (2m).  Entire in k and even: E(k) = E(-k)."""
    k = complex(k)
    return k * k / units.c0


def interior_momentum(k: complex, pot: ShellPotential) -> complex:
    """Momentum inside the shell: the principal square root of k^2 - c0*v0.

    Either branch would do -- every downstream formula is invariant under
    Q -> -Q -- but the principal branch is fixed for determinism.  For real
    k with k^2 < c0*v0 this yields a purely imaginary Q with nonnegative
    imaginary part.
    """
    k = complex(k)
    return complex(np.sqrt(complex(k * k - pot.units.c0 * pot.v0)))
