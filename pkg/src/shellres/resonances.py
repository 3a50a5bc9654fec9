"""Locate complex zeros of the Jost functions and census them by quadrant.

The search is exhaustive within a rectangle: the argument principle gives
the zero count from the winding of the Jost function around the boundary
(adaptively sampled so every phase step stays below pi/2), rectangles are
subdivided until each holds at most one zero, and Newton iteration refines
each zero to residual < 1e-10.  Exhaustiveness is what the quadrant census
needs; a multistart Newton search could silently miss zeros.

Zeros of jost_plus in the lower half-plane are the resonances (the
corresponding regular solution is purely outgoing and grows exponentially);
for the repulsive shell there are no bound states, so jost_plus has no
zeros in the upper half-plane and the census quadrants I/II are populated
by jost_minus zeros at the conjugate points.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np

from .errors import BoundaryZeroError, RefinementError
from .model import ShellPotential, momentum_to_energy
from .regular import jost_arrays

__all__ = [
    "SearchRegion",
    "Resonance",
    "CensusReport",
    "count_zeros",
    "find_resonances",
    "quadrant_census",
    "default_census_region",
]

WhichJost = Literal["plus", "minus"]

#: zeros closer than this to an axis are quadrant-ambiguous and rejected
_AXIS_TOL = 1e-9
#: two zeros closer than this are considered duplicates
_DEDUP_RADIUS = 1e-8


@dataclass(frozen=True)
class SearchRegion:
    """Axis-aligned rectangle in the complex momentum plane."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def __post_init__(self):
        if not (self.re_min < self.re_max):
            raise ValueError(f"re_min must be < re_max, got [{self.re_min}, {self.re_max}]")
        if not (self.im_min < self.im_max):
            raise ValueError(f"im_min must be < im_max, got [{self.im_min}, {self.im_max}]")

    @property
    def width(self) -> float:
        return self.re_max - self.re_min

    @property
    def height(self) -> float:
        return self.im_max - self.im_min

    def corners(self) -> list[complex]:
        return [
            complex(self.re_min, self.im_min),
            complex(self.re_max, self.im_min),
            complex(self.re_max, self.im_max),
            complex(self.re_min, self.im_max),
        ]

    def contains(self, k: complex, margin: float = 0.0) -> bool:
        return (self.re_min - margin <= k.real <= self.re_max + margin
                and self.im_min - margin <= k.imag <= self.im_max + margin)

    def distance_to_origin(self) -> float:
        dx = max(self.re_min, 0.0, -self.re_max)
        dy = max(self.im_min, 0.0, -self.im_max)
        return math.hypot(dx, dy)

    def require_excludes_origin(self) -> None:
        """Zero-search regions must stay off the k = 0 normalization degeneracy."""
        if self.distance_to_origin() < 1e-6:
            raise ValueError(
                "search region must exclude a disc of radius 1e-6 around k = 0"
            )


def _quadrant_of(k: complex) -> str | None:
    if abs(k.real) < _AXIS_TOL or abs(k.imag) < _AXIS_TOL:
        return None  # ambiguous: the census claims concern open quadrants
    if k.real > 0:
        return "I" if k.imag > 0 else "IV"
    return "II" if k.imag > 0 else "III"


@dataclass(frozen=True)
class Resonance:
    """A refined zero of one Jost function.

    quadrant is None when the zero sits within 1e-9 of an axis (rejected
    as ambiguous rather than assigned).
    """

    k_pole: complex
    energy: complex
    which_jost: str
    residual: float
    quadrant: str | None

    def to_dict(self) -> dict:
        return {
            "re_k": float(self.k_pole.real),
            "im_k": float(self.k_pole.imag),
            "re_E": float(self.energy.real),
            "im_E": float(self.energy.imag),
            "which_jost": self.which_jost,
            "residual": float(self.residual),
            "quadrant": self.quadrant,
        }


def _jost_fn(which: WhichJost, pot: ShellPotential):
    if which == "plus":
        return lambda k: jost_arrays(k, pot)[0]
    if which == "minus":
        return lambda k: jost_arrays(k, pot)[1]
    raise ValueError(f"which must be 'plus' or 'minus', got {which!r}")


# ---------------------------------------------------------------------------
# winding number on a rectangle boundary
# ---------------------------------------------------------------------------

def _winding_number(f, region: SearchRegion, samples_per_edge: int = 32,
                    max_points: int = 60000) -> int:
    """Argument-principle zero count inside the rectangle.

    Adaptive phase unwrapping: boundary segments are bisected until every
    phase step is below pi/2.  Raises BoundaryZeroError when the function
    is too small on the boundary for the phase to be trustworthy.
    """
    corners = region.corners()
    pts: list[complex] = []
    for c0, c1 in zip(corners, corners[1:] + corners[:1]):
        edge = np.linspace(c0, c1, samples_per_edge, endpoint=False)
        pts.extend(edge.tolist())
    z = np.array(pts + [pts[0]], dtype=complex)
    vals = np.asarray(f(z))

    scale = float(np.median(np.abs(vals)))
    zero_tol = max(1e-13, 1e-8 * scale)

    if np.any(np.abs(vals) < zero_tol):
        raise BoundaryZeroError("Jost function vanishes on the region boundary")

    for _ in range(40):
        dphi = np.angle(vals[1:] / vals[:-1])
        bad = np.abs(dphi) >= 0.5 * math.pi
        if not np.any(bad):
            break
        if len(z) > max_points:
            raise BoundaryZeroError(
                "phase unwrapping did not stabilize (possible boundary zero)"
            )
        idx = np.nonzero(bad)[0]
        mids = 0.5 * (z[idx] + z[idx + 1])
        mvals = np.asarray(f(mids))
        if np.any(np.abs(mvals) < zero_tol):
            raise BoundaryZeroError("Jost function vanishes on the region boundary")
        z = np.insert(z, idx + 1, mids)
        vals = np.insert(vals, idx + 1, mvals)
    else:
        raise BoundaryZeroError("phase unwrapping exhausted its refinement budget")

    total = float(np.sum(np.angle(vals[1:] / vals[:-1])))
    w = total / (2.0 * math.pi)
    if abs(w - round(w)) > 0.05:
        raise BoundaryZeroError(
            f"winding number {w:.4f} is not close to an integer"
        )
    return int(round(w))


def _perturbed(region: SearchRegion, attempt: int) -> SearchRegion:
    """Grow the rectangle slightly, keeping it on its side of the real axes."""
    d = 1e-4 * max(region.width, region.height) * attempt

    def push(lo: float, hi: float) -> tuple[float, float]:
        new_lo, new_hi = lo - d, hi + d
        if lo > 0 > new_lo:
            new_lo = 0.5 * lo
        if hi < 0 < new_hi:
            new_hi = 0.5 * hi
        return new_lo, new_hi

    re_min, re_max = push(region.re_min, region.re_max)
    im_min, im_max = push(region.im_min, region.im_max)
    return SearchRegion(re_min, re_max, im_min, im_max)


def count_zeros(which: WhichJost, region: SearchRegion, pot: ShellPotential) -> int:
    """Number of zeros of the chosen Jost function inside the region.

    The boundary is perturbed (outward, axis-preserving) and retried up to
    three times if a zero sits on it.
    """
    region.require_excludes_origin()
    f = _jost_fn(which, pot)
    last: BoundaryZeroError | None = None
    for attempt in range(4):
        trial = region if attempt == 0 else _perturbed(region, attempt)
        try:
            return _winding_number(f, trial)
        except BoundaryZeroError as exc:
            last = exc
    raise BoundaryZeroError(
        f"boundary zero persisted after 3 perturbation retries: {last}"
    )


# ---------------------------------------------------------------------------
# refinement
# ---------------------------------------------------------------------------

def _newton(f, k0: complex, residual_tol: float = 1e-10,
            max_iter: int = 100) -> tuple[complex, float]:
    """Newton iteration with central-difference derivative of the analytic f."""
    k = complex(k0)
    best_k, best_res = k, abs(complex(f(k)))
    for _ in range(max_iter):
        fk = complex(f(k))
        res = abs(fk)
        if res < best_res:
            best_k, best_res = k, res
        h = 1e-6 * max(1.0, abs(k))
        df = (complex(f(k + h)) - complex(f(k - h))) / (2.0 * h)
        if df == 0:
            break
        step = fk / df
        k = k - step
        if abs(step) < 1e-13 * max(1.0, abs(k)):
            fk = complex(f(k))
            if abs(fk) < best_res:
                best_k, best_res = k, abs(fk)
            break
    if best_res >= residual_tol:
        raise RefinementError(
            f"Newton refinement stalled at residual {best_res:.3e}",
            best_iterate=best_k, residual=best_res,
        )
    return best_k, best_res


_SPLIT_FRACTIONS = (0.5, 0.53, 0.47, 0.56, 0.44, 0.515)


def _collect_zeros(f, region: SearchRegion, pot: ShellPotential,
                   depth: int = 0) -> list[complex]:
    n = None
    last_bz: BoundaryZeroError | None = None
    for attempt in range(4):
        trial = region if attempt == 0 else _perturbed(region, attempt)
        try:
            n = _winding_number(f, trial)
            region = trial
            break
        except BoundaryZeroError as exc:
            last_bz = exc
    if n is None:
        raise BoundaryZeroError(str(last_bz))
    if n == 0:
        return []

    diam = math.hypot(region.width, region.height)
    if n == 1:
        center = complex(0.5 * (region.re_min + region.re_max),
                         0.5 * (region.im_min + region.im_max))
        try:
            k, _ = _newton(f, center)
            if region.contains(k, margin=1e-9):
                return [k]
        except RefinementError:
            if diam < 1e-7:
                raise
        if diam < 1e-7:
            raise RefinementError(
                "zero could not be pinned inside a tiny rectangle",
                best_iterate=center, residual=abs(complex(f(center))),
            )

    if depth > 60:
        raise RefinementError(
            "rectangle subdivision exceeded its depth budget",
            best_iterate=None, residual=None,
        )

    split_vertically = region.width >= region.height
    for frac in _SPLIT_FRACTIONS:
        if split_vertically:
            mid = region.re_min + frac * region.width
            halves = (
                SearchRegion(region.re_min, mid, region.im_min, region.im_max),
                SearchRegion(mid, region.re_max, region.im_min, region.im_max),
            )
        else:
            mid = region.im_min + frac * region.height
            halves = (
                SearchRegion(region.re_min, region.re_max, region.im_min, mid),
                SearchRegion(region.re_min, region.re_max, mid, region.im_max),
            )
        try:
            found = []
            for half in halves:
                found.extend(_collect_zeros(f, half, pot, depth + 1))
            return found
        except BoundaryZeroError:
            continue  # the split line hit a zero; shift it and retry
    raise BoundaryZeroError("could not split rectangle without hitting a zero")


def find_resonances(which: WhichJost, region: SearchRegion,
                    pot: ShellPotential) -> list[Resonance]:
    """All zeros of the chosen Jost function inside the region, refined.

    Recursive subdivision until each sub-rectangle holds at most one zero,
    then Newton refinement to residual < 1e-10.  Deduplication radius 1e-8.
    The list length equals count_zeros over the same region.
    """
    region.require_excludes_origin()
    f = _jost_fn(which, pot)
    raw = _collect_zeros(f, region, pot)

    deduped: list[complex] = []
    for k in sorted(raw, key=lambda z: (z.real, z.imag)):
        if not any(abs(k - z) < _DEDUP_RADIUS for z in deduped):
            deduped.append(k)

    out = []
    for k in deduped:
        res = abs(complex(f(np.array([k]))[0]))
        out.append(Resonance(
            k_pole=k,
            energy=momentum_to_energy(k, pot.units),
            which_jost=which,
            residual=res,
            quadrant=_quadrant_of(k),
        ))
    return out


# ---------------------------------------------------------------------------
# quadrant census
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CensusReport:
    """Per-quadrant totals of zeros of jost_plus * jost_minus."""

    counts: dict
    resonances: list

    def to_dict(self) -> dict:
        return {
            "counts": dict(self.counts),
            "zeros": [r.to_dict() for r in self.resonances],
        }


def default_census_region() -> SearchRegion:
    """Artifact default in natural units: |Re k| <= 6, |Im k| <= 2."""
    return SearchRegion(-6.0, 6.0, -2.0, 2.0)


def quadrant_census(region: SearchRegion, pot: ShellPotential,
                    axis_margin: float = 1e-3) -> CensusReport:
    """Zeros of the product jost_plus * jost_minus per open quadrant.

    The region must span all four quadrants; it is dissected into four
    open-quadrant rectangles clamped ``axis_margin`` away from both axes
    (the real axis carries the continuum, not resonances, and the census
    claims concern open quadrants).
    """
    if not (region.re_min < -axis_margin and region.re_max > axis_margin
            and region.im_min < -axis_margin and region.im_max > axis_margin):
        raise ValueError(
            "census region must span all four quadrants beyond the axis margin"
        )
    quadrant_boxes = {
        "I": SearchRegion(axis_margin, region.re_max, axis_margin, region.im_max),
        "II": SearchRegion(region.re_min, -axis_margin, axis_margin, region.im_max),
        "III": SearchRegion(region.re_min, -axis_margin, region.im_min, -axis_margin),
        "IV": SearchRegion(axis_margin, region.re_max, region.im_min, -axis_margin),
    }
    counts = {q: 0 for q in ("I", "II", "III", "IV")}
    all_res: list[Resonance] = []
    for q, box in quadrant_boxes.items():
        for which in ("plus", "minus"):
            found = find_resonances(which, box, pot)
            for r in found:
                if r.quadrant == q:
                    counts[q] += 1
                    all_res.append(r)
    all_res.sort(key=lambda r: (r.k_pole.real, r.k_pole.imag, r.which_jost))
    return CensusReport(counts=counts, resonances=all_res)
