"""Manifold catalog and metric state for diagonal cohomogeneity-one 4-manifolds.

A diagonal metric on one of the four closed simply-connected cohomogeneity-one
4-manifolds is described along a horizontal geodesic by four profile functions

    g = zeta(r)^2 dr^2 + phi(r)^2 dx1^2 + psi(r)^2 dx2^2 + xi(r)^2 dx3^2

on the orbit-space interval [0, L].  The three action fields X1, X2, X3 span an
su(2) frame with [X_i, X_j] = c eps_ijk X_k; exactly one of phi, psi, xi dies
at each endpoint (where a circle in the group collapses on a 2-dimensional
singular orbit).  ManifoldSpec records which one, with what slope, and how the
frame reflects across each pole.  Profiles live on a staggered grid so that no
sample ever sits on a pole.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from math import pi

import numpy as np

# profile indices: 1 = phi, 2 = psi, 3 = xi (0 is reserved for the radial zeta)
PROFILE_NAMES = {1: "phi", 2: "psi", 3: "xi"}

IDENTITY_PERM = (1, 2, 3)


class SpecError(ValueError):
    """Inconsistent manifold specification."""


@dataclass(frozen=True)
class ManifoldSpec:
    """Group-diagram metadata needed to build and evolve diagonal metrics.

    collapse_minus / collapse_plus name the profile (1=phi, 2=psi, 3=xi) that
    vanishes at r=0 / r=L; None means nothing collapses (the homogeneous
    cylinder fixture).  slope_* is the smoothness value of the collapsing
    profile's first derivative at its pole.  reflection_* is the permutation
    (as a 1-based image tuple) describing how profiles continue across the
    pole: profile j at -r equals sign * profile perm[j] at +r, with sign -1
    for the collapsing index and +1 otherwise; zeta always continues evenly.
    """

    name: str                      # "S4", "CP2", "Mn" or "Cylinder"
    structure_constant: float      # c in [X_i, X_j] = c eps_ijk X_k
    L: float                       # orbit interval length at t=0
    collapse_minus: int | None
    collapse_plus: int | None
    slope_minus: float | None
    slope_plus: float | None
    reflection_minus: tuple[int, int, int] = IDENTITY_PERM
    reflection_plus: tuple[int, int, int] = IDENTITY_PERM
    n: int | None = None           # bundle parameter for the Mn family

    def __post_init__(self):
        if self.structure_constant <= 0:
            raise SpecError("structure constant must be positive")
        if self.L <= 0:
            raise SpecError("interval length must be positive")
        for perm, coll, slope, side in (
            (self.reflection_minus, self.collapse_minus, self.slope_minus, "minus"),
            (self.reflection_plus, self.collapse_plus, self.slope_plus, "plus"),
        ):
            if sorted(perm) != [1, 2, 3]:
                raise SpecError(f"reflection_{side} is not a permutation of (1,2,3)")
            if tuple(perm[perm[j - 1] - 1] for j in (1, 2, 3)) != IDENTITY_PERM:
                raise SpecError(f"reflection_{side} is not an involution")
            if coll is not None:
                if coll not in (1, 2, 3):
                    raise SpecError(f"collapse_{side} must be 1, 2 or 3")
                if perm[coll - 1] != coll:
                    raise SpecError(f"reflection_{side} must fix the collapsing index")
                if slope is None or slope <= 0:
                    raise SpecError(f"slope_{side} must be positive")

    def collapse(self, pole: str) -> int | None:
        return self.collapse_minus if pole == "minus" else self.collapse_plus

    def slope(self, pole: str) -> float | None:
        return self.slope_minus if pole == "minus" else self.slope_plus

    def reflection(self, pole: str) -> tuple[int, int, int]:
        return self.reflection_minus if pole == "minus" else self.reflection_plus

    def noncollapsing(self, pole: str) -> tuple[int, ...]:
        coll = self.collapse(pole)
        return tuple(j for j in (1, 2, 3) if j != coll)

    def constant_axes(self) -> tuple[int, ...]:
        """Profile indices that collapse at neither pole."""
        return tuple(j for j in (1, 2, 3)
                     if j != self.collapse_minus and j != self.collapse_plus)


def s4_spec(c: float = 2.0) -> ManifoldSpec:
    """S^4 with the SO(3) action on traceless symmetric matrices.

    phi collapses at r=0 and xi at r=L=pi/3, both with slope 2c; the frame
    reflects by swapping the two surviving profiles at each pole.
    """
    return ManifoldSpec(
        name="S4", structure_constant=c, L=pi / 3,
        collapse_minus=1, collapse_plus=3,
        slope_minus=2 * c, slope_plus=2 * c,
        reflection_minus=(1, 3, 2), reflection_plus=(2, 1, 3),
    )


def cp2_spec(c: float = 2.0) -> ManifoldSpec:
    """CP^2 under the SO(3) subaction: phi dies at the real RP^2 (slope c),
    psi at the quadric S^2 (slope 2c), L = pi/4."""
    return ManifoldSpec(
        name="CP2", structure_constant=c, L=pi / 4,
        collapse_minus=1, collapse_plus=2,
        slope_minus=c, slope_plus=2 * c,
        reflection_minus=IDENTITY_PERM, reflection_plus=(3, 2, 1),
    )


def mn_spec(n: int = 2, c: float = 2.0) -> ManifoldSpec:
    """The circle quotients M_n of S^3 x S^2 (even n: S^2 x S^2, odd n:
    CP^2 # CP^2-bar).  phi collapses at both ends with slope n*c/2; the frame
    continues by plain parity."""
    if n < 1:
        raise SpecError("Mn requires n >= 1")
    s = n * c / 2.0
    return ManifoldSpec(
        name="Mn", structure_constant=c, L=pi / 2,
        collapse_minus=1, collapse_plus=1,
        slope_minus=s, slope_plus=s, n=n,
    )


def cylinder_spec(L: float = 1.0, c: float = 2.0) -> ManifoldSpec:
    """Homogeneous interval x SU(2) fixture: nothing collapses, profiles
    extend evenly at both artificial ends."""
    return ManifoldSpec(
        name="Cylinder", structure_constant=c, L=L,
        collapse_minus=None, collapse_plus=None,
        slope_minus=None, slope_plus=None,
    )


def spec_by_name(name: str, n: int = 2, c: float = 2.0, L: float = 1.0) -> ManifoldSpec:
    key = name.strip().lower().replace("-", "").replace("_", "")
    if key == "s4":
        return s4_spec(c)
    if key == "cp2":
        return cp2_spec(c)
    if key in ("mn", "m1", "m2", "s2xs2", "cp2cp2bar"):
        if key == "m1":
            n = 1
        elif key == "m2":
            n = 2
        return mn_spec(n, c)
    if key == "cylinder":
        return cylinder_spec(L, c)
    raise SpecError(f"unknown manifold {name!r}")


@dataclass(frozen=True)
class Grid:
    """Uniform staggered grid: N nodes at r_i = (i + 1/2) h, h = L/N.

    Both poles fall half a cell outside the sample set, so 1/profile factors
    in the curvature never hit an exact zero.
    """

    N: int
    L: float

    def __post_init__(self):
        if self.N < 8:
            raise SpecError("grid needs at least 8 nodes")
        if self.L <= 0:
            raise SpecError("grid length must be positive")

    @property
    def h(self) -> float:
        return self.L / self.N

    @property
    def nodes(self) -> np.ndarray:
        return (np.arange(self.N) + 0.5) * self.h

    def refine(self, factor: int = 2) -> "Grid":
        return Grid(self.N * factor, self.L)


class ProfileInvariantError(ValueError):
    """A ProfileSet violates positivity, collapse, or pole-matching."""


def _pole_extrapolate(vals: np.ndarray) -> float:
    """Quadratic (3-node) extrapolation of a staggered-sampled function to the
    pole at distance h/2 before the first node.  Exact for quadratics; the
    linear part of any odd admixture is annihilated, leaving O(h^3) error."""
    return 1.875 * vals[0] - 1.25 * vals[1] + 0.375 * vals[2]


def _pole_slope(vals: np.ndarray, h: float) -> float:
    """Derivative at the pole of the quadratic through the three nearest
    staggered nodes; O(h^2) accurate for smooth odd profiles."""
    return (-2.0 * vals[0] + 3.0 * vals[1] - vals[2]) / h


@dataclass
class ProfileSet:
    """Sampled metric state (zeta, phi, psi, xi) at one flow time."""

    grid: Grid
    t: float
    zeta: np.ndarray
    phi: np.ndarray
    psi: np.ndarray
    xi: np.ndarray
    spec: ManifoldSpec

    def __post_init__(self):
        for name in ("zeta", "phi", "psi", "xi"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if arr.shape != (self.grid.N,):
                raise ProfileInvariantError(f"{name} must have shape ({self.grid.N},)")
            object.__setattr__(self, name, arr)

    def profile(self, j: int) -> np.ndarray:
        """Profile by index: 0=zeta, 1=phi, 2=psi, 3=xi."""
        return (self.zeta, self.phi, self.psi, self.xi)[j]

    def as_matrix(self) -> np.ndarray:
        """State as an (N, 4) array ordered (zeta, phi, psi, xi)."""
        return np.stack([self.zeta, self.phi, self.psi, self.xi], axis=1)

    @classmethod
    def from_matrix(cls, grid: Grid, t: float, m: np.ndarray, spec: ManifoldSpec) -> "ProfileSet":
        return cls(grid, t, m[:, 0].copy(), m[:, 1].copy(), m[:, 2].copy(),
                   m[:, 3].copy(), spec)

    def copy(self) -> "ProfileSet":
        return ProfileSet(self.grid, self.t, self.zeta.copy(), self.phi.copy(),
                          self.psi.copy(), self.xi.copy(), self.spec)

    def validate(self, rtol: float = 20.0) -> None:
        """Check the structural invariants; raise ProfileInvariantError.

        - every interior sample strictly positive;
        - each collapsing profile, linearly extrapolated through its two
          nearest nodes, crosses zero within h of its pole;
        - the two noncollapsing profiles extrapolate to equal pole values
          within rtol * h^2 * (scale).
        """
        g = self.grid
        h = g.h
        for name in ("zeta", "phi", "psi", "xi"):
            arr = getattr(self, name)
            if not np.all(arr > 0):
                raise ProfileInvariantError(f"{name} has nonpositive samples")
            if not np.all(np.isfinite(arr)):
                raise ProfileInvariantError(f"{name} has nonfinite samples")
        for pole in ("minus", "plus"):
            coll = self.spec.collapse(pole)
            if coll is None:
                continue
            f = self.profile(coll)
            f0, f1 = (f[0], f[1]) if pole == "minus" else (f[-1], f[-2])
            # straight line through the two nodes nearest the pole, root
            # measured from the pole (node at h/2, next at 3h/2)
            df = f1 - f0
            if df <= 0:
                raise ProfileInvariantError(
                    f"{PROFILE_NAMES[coll]} does not grow away from the {pole} pole")
            root = 0.5 * h - f0 * h / df
            if abs(root) > h:
                raise ProfileInvariantError(
                    f"{PROFILE_NAMES[coll]} extrapolates to zero {root:.3e} from "
                    f"the {pole} pole (beyond h)")
            j, k = self.spec.noncollapsing(pole)
            a = self.profile(j) if pole == "minus" else self.profile(j)[::-1]
            b = self.profile(k) if pole == "minus" else self.profile(k)[::-1]
            va, vb = _pole_extrapolate(a), _pole_extrapolate(b)
            scale = max(abs(va), abs(vb), 1e-300)
            if abs(va - vb) > rtol * h * h * scale:
                raise ProfileInvariantError(
                    f"noncollapsing profiles disagree at the {pole} pole: "
                    f"{va:.6e} vs {vb:.6e}")

    def pole_values(self, pole: str) -> dict[int, float]:
        """Quadratically extrapolated pole values of all four profiles."""
        out = {}
        for j in range(4):
            arr = self.profile(j)
            vals = arr if pole == "minus" else arr[::-1]
            out[j] = _pole_extrapolate(vals)
        return out

    def pole_slope(self, j: int, pole: str) -> float:
        """Extrapolated first derivative (in +r toward the interior) of
        profile j at the pole."""
        arr = self.profile(j)
        vals = arr if pole == "minus" else arr[::-1]
        return _pole_slope(vals, self.grid.h)


def with_spec(P: ProfileSet, spec: ManifoldSpec) -> ProfileSet:
    return ProfileSet(P.grid, P.t, P.zeta, P.phi, P.psi, P.xi, spec)
