"""Truncated half-plane grids with the exponential weight e^{ay}.

Fields live on uniform (nx+1) x (ny+1) node grids over [0, x_max] x
[y_min, y_max].  The weighted energy and constraint are edge-based quadratic
forms (trapezoid weights at nodes, arithmetic-mean weight on vertical
edges), which keeps them O(h^2)-consistent and makes the discrete gradient
an exact linear operator for the solver.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._kernels import rearrange_columns
from .nonlinearity import Nonlinearity


@dataclass(eq=False)
class GridSpec:
    """Grid geometry plus the weight exponent a.  Treat as immutable."""

    x_max: float
    y_min: float
    y_max: float
    nx: int
    ny: int
    a: float

    def __post_init__(self):
        if not (self.x_max > 0.0 and self.y_min < 0.0 < self.y_max):
            raise ValueError("require x_max > 0 and y_min < 0 < y_max")
        if self.nx < 16 or self.ny < 64:
            raise ValueError("require nx >= 16 and ny >= 64")
        if self.a <= 0.0:
            raise ValueError("weight exponent a must be positive")
        if self.a * self.y_max > 50.0:
            raise ValueError("a*y_max > 50 would overflow the weight")
        self.hx = self.x_max / self.nx
        self.hy = (self.y_max - self.y_min) / self.ny
        self.xs = np.linspace(0.0, self.x_max, self.nx + 1)
        self.ys = np.linspace(self.y_min, self.y_max, self.ny + 1)
        self.wy = np.exp(self.a * self.ys)
        self.tau = np.ones(self.ny + 1)
        self.tau[0] = self.tau[-1] = 0.5
        self.sigma = np.ones(self.nx + 1)
        self.sigma[0] = self.sigma[-1] = 0.5
        # arithmetic-mean weight on vertical (y-direction) edges
        self.wy_edge = 0.5 * (self.wy[:-1] + self.wy[1:])
        # cell measures of e^{ay} dy along a column (trapezoid split)
        self.ymeasure = self.tau * self.wy * self.hy

    def __repr__(self):
        return (
            f"GridSpec(x_max={self.x_max:g}, y=[{self.y_min:g},{self.y_max:g}], "
            f"nx={self.nx}, ny={self.ny}, a={self.a:g})"
        )


@dataclass(eq=False)
class Field:
    """Nodal values on a grid; values[i, j] sits at (xs[i], ys[j])."""

    values: np.ndarray
    spec: GridSpec

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        expected = (self.spec.nx + 1, self.spec.ny + 1)
        if self.values.shape != expected:
            raise ValueError(f"values shape {self.values.shape} != {expected}")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("field contains non-finite entries")

    def copy(self) -> "Field":
        return Field(self.values.copy(), self.spec)


@dataclass(frozen=True)
class TraceProfile:
    """Boundary restriction x = 0: values over strictly increasing y nodes."""

    y_nodes: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        y = np.asarray(self.y_nodes, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if y.shape != v.shape or y.ndim != 1:
            raise ValueError("y_nodes and values must be 1-D of equal length")
        if np.any(np.diff(y) <= 0.0):
            raise ValueError("y_nodes must be strictly increasing")
        object.__setattr__(self, "y_nodes", y)
        object.__setattr__(self, "values", v)


# -- quadratic forms ----------------------------------------------------------


def dirichlet(w: Field) -> float:
    """Weighted Dirichlet integral int e^{ay} |grad w|^2 dx dy."""
    g = w.spec
    v = w.values
    dx = (v[1:, :] - v[:-1, :]) / g.hx
    dy = (v[:, 1:] - v[:, :-1]) / g.hy
    kx = float(np.sum(dx * dx @ (g.tau * g.wy)) * g.hx * g.hy)
    ky = float(np.sum(g.sigma @ (dy * dy * g.wy_edge[None, :])) * g.hx * g.hy)
    return kx + ky


def boundary_integral(w: Field, fun) -> float:
    """int e^{ay} fun(w(0, y)) dy along the reactive boundary."""
    g = w.spec
    return float(np.sum(g.ymeasure * np.asarray(fun(w.values[0, :]))))


def weighted_mass(w: Field) -> float:
    """int e^{ay} w^2 dx dy (trapezoid with nodal weights)."""
    g = w.spec
    v2 = w.values * w.values
    return float((g.sigma @ v2 @ (g.tau * g.wy)) * g.hx * g.hy)


def boundary_mass(w: Field) -> float:
    """int e^{ay} w(0,y)^2 dy."""
    return boundary_integral(w, lambda s: s * s)


def energy(w: Field, nl: Nonlinearity) -> float:
    """E_a(w) = (1/2) int e^{ay}|grad w|^2 + int e^{ay} G(w(0,y)) dy."""
    return 0.5 * dirichlet(w) + boundary_integral(w, nl.G)


# -- field constructors -------------------------------------------------------


def seed_function(spec: GridSpec, d: float | None = None, m: float = 8.0) -> Field:
    """Negative-energy seed e^{-dx} h(y), h = 1 for y <= 0, e^{-a m y} above.

    Defaults follow the weight-selection policy d = a/2, m = 8.
    """
    a = spec.a
    if d is None:
        d = 0.5 * a
    if d <= 0.0 or m < 1.0:
        raise ValueError("require d > 0 and m >= 1")
    h = np.where(spec.ys > 0.0, np.exp(-a * m * np.maximum(spec.ys, 0.0)), 1.0)
    vals = np.exp(-d * spec.xs)[:, None] * h[None, :]
    return Field(vals, spec)


def trace(w: Field) -> TraceProfile:
    return TraceProfile(w.spec.ys.copy(), w.values[0, :].copy())


def trace_crossing(profile: TraceProfile, level: float = 0.5) -> float:
    """The y where a nonincreasing trace crosses `level`, by linear interpolation."""
    v = profile.values
    y = profile.y_nodes
    below = v <= level
    if not below.any() or below[0]:
        raise ValueError(f"trace does not cross level {level:g} inside the window")
    k = int(np.argmax(below))
    v0, v1 = v[k - 1], v[k]
    if v1 == v0:
        return float(y[k])
    return float(y[k - 1] + (level - v0) * (y[k] - y[k - 1]) / (v1 - v0))


# -- structural operations ----------------------------------------------------


def translate(w: Field, t: float) -> Field:
    """w^t(x, y) = w(x, y + t), linear interpolation on the shifted grid.

    Vacated rows are filled by constant extension of the facing boundary
    row (the 1-state at y_min, the 0-state at y_max for monotone fronts).
    Shifts beyond a quarter of the window would eat into the truncation
    margins and are rejected.
    """
    g = w.spec
    if abs(t) > 0.25 * (g.y_max - g.y_min):
        raise ValueError(f"shift {t:g} exceeds a quarter of the y-window")
    if t == 0.0:
        return w.copy()
    shift = t / g.hy
    j = np.arange(g.ny + 1, dtype=float) + shift
    j0 = np.clip(np.floor(j).astype(int), 0, g.ny)
    j1 = np.clip(j0 + 1, 0, g.ny)
    frac = np.clip(j - j0, 0.0, 1.0)
    frac = np.where(j < 0.0, 0.0, np.where(j > g.ny, 0.0, frac))
    j0 = np.where(j < 0.0, 0, j0)
    vals = (1.0 - frac)[None, :] * w.values[:, j0] + frac[None, :] * w.values[:, j1]
    return Field(vals, g)


def project_constraint(w: Field, tol: float = 1e-8, max_iter: int = 100) -> Field:
    """Translate in y until the constraint Gamma_a = 1 holds within `tol`.

    The continuum rule t = log(Gamma)/a is iterated on the accumulated
    shift, always interpolating from the original field so repeated
    smoothing cannot move the target.
    """
    g = w.spec

    def gamma_at(t: float) -> float:
        return dirichlet(translate(w, t)) if t != 0.0 else dirichlet(w)

    gamma = gamma_at(0.0)
    if gamma <= 0.0:
        raise ValueError("cannot project a field with zero Dirichlet energy")
    if abs(gamma - 1.0) <= tol:
        return w.copy()

    # Newton on the accumulated shift (continuum slope dGamma/dt = -a*Gamma)
    t_total = 0.0
    for _ in range(12):
        t_total += np.log(gamma) / g.a
        gamma = gamma_at(t_total)
        if abs(gamma - 1.0) <= tol:
            return translate(w, t_total)

    # bisection fallback: Gamma(t) is continuous and strictly decreasing up
    # to interpolation wiggles, so a sign-changing bracket always closes
    step = max(abs(np.log(gamma)) / g.a, g.hy)
    lo, hi = t_total - step, t_total + step
    for _ in range(60):
        if (gamma_at(lo) - 1.0) > 0.0 >= (gamma_at(hi) - 1.0):
            break
        lo -= step
        hi += step
        step *= 2.0
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        gm = gamma_at(mid)
        if abs(gm - 1.0) <= tol:
            return translate(w, mid)
        if gm > 1.0:
            lo = mid
        else:
            hi = mid
    raise RuntimeError(f"constraint projection stalled at Gamma = {gm!r}")


def rearrange_monotone_flagged(w: Field) -> tuple[Field, bool]:
    """Monotone-in-y decreasing rearrangement; flags out-of-[0,1] clamping.

    Works per column in the variable z = e^{ay}/a: values are redistributed
    against the cell measures e^{ay_j} hy (weighted counting sort), which
    preserves the weighted distribution up to one-cell resampling and fixes
    every already-monotone column exactly.
    """
    g = w.spec
    clamped = bool(np.any(w.values < -1e-12) or np.any(w.values > 1.0 + 1e-12))
    vals = np.clip(w.values, 0.0, 1.0)
    out = rearrange_columns(vals, g.ymeasure)
    return Field(np.ascontiguousarray(out), g), clamped


def rearrange_monotone(w: Field) -> Field:
    out, _ = rearrange_monotone_flagged(w)
    return out
