"""Reaction laws on the boundary: bistable and combustion families.

A reaction law f lives on [0,1] with f(0) = f(1) = 0 and is extended
linearly outside (matching value and one-sided slope at 0 and 1).  Valid
laws satisfy five structural conditions:

    1. f(0) = f(1) = 0,
    2. f' <= 0 on (0, delta) and (1-delta, 1) for some delta in (0, 1/2),
    3. int_0^1 f > 0,
    4. f > 0 on (beta, 1),
    5. int_0^s f <= 0 for s in (0, beta),

where beta is the ignition temperature (combustion) or the unique zero in
(alpha, 1) of the antiderivative (bistable).  The validator checks all of
these by sampling plus the linear-extension rule.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np


class NonlinearityError(ValueError):
    """Structurally inconsistent reaction law."""


@dataclass(frozen=True)
class Nonlinearity:
    kind: str  # "bistable" | "combustion" | "custom"
    f: Callable
    f_prime: Callable
    delta: float
    beta: float
    alpha: float | None
    extension_slopes: tuple[float, float]
    G: Callable  # potential, G(0) = 0 and G' = -f on the extended line
    label: str = ""
    params: dict = field(default_factory=dict)

    def __repr__(self) -> str:  # params carry the reproducible description
        return f"Nonlinearity({self.label or self.kind})"


@dataclass(frozen=True)
class ValidationReport:
    passed: bool
    violated_conditions: list  # (condition id, sample point) pairs


# -- constructors -----------------------------------------------------------


def make_bistable_cubic(alpha: float) -> Nonlinearity:
    """Cubic bistable law f(s) = s(1-s)(s-alpha), positively balanced.

    Requires 0 < alpha < 1/2; otherwise int_0^1 f = (1-2*alpha)/12 is not
    positive and the law is rejected.
    """
    if not 0.0 < alpha < 0.5:
        raise NonlinearityError(f"alpha must lie in (0, 1/2), got {alpha}")
    a = float(alpha)
    slope0 = -a
    slope1 = a - 1.0

    def f(s):
        s = np.asarray(s, dtype=float)
        core = s * (1.0 - s) * (s - a)
        low = slope0 * s
        high = slope1 * (s - 1.0)
        return np.where(s < 0.0, low, np.where(s > 1.0, high, core))

    def f_prime(s):
        s = np.asarray(s, dtype=float)
        core = -3.0 * s * s + 2.0 * (1.0 + a) * s - a
        return np.where(s < 0.0, slope0, np.where(s > 1.0, slope1, core))

    g1 = -(1.0 - 2.0 * a) / 12.0  # G(1) = -int_0^1 f

    def G(s):
        s = np.asarray(s, dtype=float)
        core = 0.25 * s**4 - (1.0 + a) / 3.0 * s**3 + 0.5 * a * s * s
        low = -0.5 * slope0 * s * s
        high = g1 - 0.5 * slope1 * (s - 1.0) ** 2
        return np.where(s < 0.0, low, np.where(s > 1.0, high, core))

    # f' = -3s^2 + 2(1+a)s - a is negative outside its two roots
    disc = np.sqrt((1.0 + a) ** 2 - 3.0 * a)
    r_lo = ((1.0 + a) - disc) / 3.0
    r_hi = ((1.0 + a) + disc) / 3.0
    delta = min(r_lo, 1.0 - r_hi)
    # closed-form root in (alpha, 1) of int_0^s f = 0
    beta = 2.0 * (1.0 + a) / 3.0 - np.sqrt(4.0 * (1.0 + a) ** 2 / 9.0 - 2.0 * a)
    return Nonlinearity(
        kind="bistable",
        f=f,
        f_prime=f_prime,
        delta=float(delta),
        beta=float(beta),
        alpha=a,
        extension_slopes=(slope0, slope1),
        G=G,
        label=f"cubic(alpha={a:g})",
        params={"kind": "bistable_cubic", "alpha": a},
    )


def make_combustion(beta: float, amplitude: float) -> Nonlinearity:
    """Ignition law: f = 0 below beta, amplitude*(s-beta)*(1-s) on (beta, 1)."""
    if not 0.0 < beta < 1.0:
        raise NonlinearityError(f"beta must lie in (0, 1), got {beta}")
    if amplitude <= 0.0:
        raise NonlinearityError(f"amplitude must be positive, got {amplitude}")
    b = float(beta)
    amp = float(amplitude)
    slope1 = amp * (b - 1.0)

    def f(s):
        s = np.asarray(s, dtype=float)
        core = np.where(s > b, amp * (s - b) * (1.0 - s), 0.0)
        return np.where(s > 1.0, slope1 * (s - 1.0), core)

    def f_prime(s):
        s = np.asarray(s, dtype=float)
        core = np.where(s > b, amp * (1.0 + b - 2.0 * s), 0.0)
        return np.where(s > 1.0, slope1, core)

    def _g_core(s):
        # -int_beta^s amp*(t-beta)*(1-t) dt for s in [beta, 1]
        return -amp * (
            -(s**3 - b**3) / 3.0 + (1.0 + b) * (s * s - b * b) / 2.0 - b * (s - b)
        )

    g1 = float(_g_core(1.0))  # equals -amp*(1-beta)^3/6

    def G(s):
        s = np.asarray(s, dtype=float)
        core = np.where(s > b, _g_core(np.minimum(s, 1.0)), 0.0)
        high = g1 - 0.5 * slope1 * (s - 1.0) ** 2
        return np.where(s > 1.0, high, core)

    delta = min(b, (1.0 - b) / 2.0)
    if delta >= 0.5:
        delta = 0.499
    return Nonlinearity(
        kind="combustion",
        f=f,
        f_prime=f_prime,
        delta=float(delta),
        beta=b,
        alpha=None,
        extension_slopes=(0.0, slope1),
        G=G,
        label=f"combustion(beta={b:g}, amp={amp:g})",
        params={"kind": "combustion", "beta": b, "amplitude": amp},
    )


def make_custom(
    f: Callable,
    f_prime: Callable,
    delta: float,
    beta: float,
    alpha: float | None = None,
    label: str = "custom",
    table_points: int = 4096,
) -> Nonlinearity:
    """Wrap user callables (defined on [0,1]) with the linear extension.

    The claimed constants delta, alpha, beta are not trusted; run
    `validate` to verify them by sampling.  The potential is tabulated on
    [0,1] by cell-wise Simpson and interpolated with exact derivative data.
    """
    slope0 = float(np.asarray(f_prime(0.0), dtype=float))
    slope1 = float(np.asarray(f_prime(1.0), dtype=float))

    def fx(s):
        s = np.asarray(s, dtype=float)
        inner = f(np.clip(s, 0.0, 1.0))
        return np.where(s < 0.0, slope0 * s, np.where(s > 1.0, slope1 * (s - 1.0), inner))

    def fpx(s):
        s = np.asarray(s, dtype=float)
        inner = f_prime(np.clip(s, 0.0, 1.0))
        return np.where(s < 0.0, slope0, np.where(s > 1.0, slope1, inner))

    nodes = np.linspace(0.0, 1.0, table_points + 1)
    mids = 0.5 * (nodes[:-1] + nodes[1:])
    h = 1.0 / table_points
    fn = np.asarray(f(nodes), dtype=float)
    fm = np.asarray(f(mids), dtype=float)
    cell = h / 6.0 * (fn[:-1] + 4.0 * fm + fn[1:])
    g_nodes = -np.concatenate([[0.0], np.cumsum(cell)])
    g1 = float(g_nodes[-1])

    def G(s):
        s = np.asarray(s, dtype=float)
        sc = np.clip(s, 0.0, 1.0)
        idx = np.minimum((sc / h).astype(int), table_points - 1)
        t = (sc - nodes[idx]) / h
        ga, gb = g_nodes[idx], g_nodes[idx + 1]
        da, db = -fn[idx] * h, -fn[idx + 1] * h
        h00 = (1.0 + 2.0 * t) * (1.0 - t) ** 2
        h10 = t * (1.0 - t) ** 2
        h01 = t * t * (3.0 - 2.0 * t)
        h11 = t * t * (t - 1.0)
        core = h00 * ga + h10 * da + h01 * gb + h11 * db
        low = -0.5 * slope0 * s * s
        high = g1 - 0.5 * slope1 * (s - 1.0) ** 2
        return np.where(s < 0.0, low, np.where(s > 1.0, high, core))

    return Nonlinearity(
        kind="custom",
        f=fx,
        f_prime=fpx,
        delta=float(delta),
        beta=float(beta),
        alpha=None if alpha is None else float(alpha),
        extension_slopes=(slope0, slope1),
        G=G,
        label=label,
        params={"kind": "custom", "label": label},
    )


# -- operations -------------------------------------------------------------


def potential(nl: Nonlinearity, s):
    """G(s) = -int_0^s f, with G(0) = 0."""
    out = nl.G(s)
    return float(out) if np.ndim(s) == 0 else out


def _adaptive_simpson(fun, a: float, b: float, tol: float = 1e-12, depth: int = 48) -> float:
    """Adaptive composite Simpson with absolute tolerance."""

    def simp(x0, x2, f0, f1, f2):
        return (x2 - x0) / 6.0 * (f0 + 4.0 * f1 + f2)

    def rec(x0, x2, f0, f1, f2, whole, eps, d):
        xm = 0.5 * (x0 + x2)
        lm = 0.5 * (x0 + xm)
        rm = 0.5 * (xm + x2)
        fl = float(fun(lm))
        fr = float(fun(rm))
        left = simp(x0, xm, f0, fl, f1)
        right = simp(xm, x2, f1, fr, f2)
        if d <= 0 or abs(left + right - whole) <= 15.0 * eps:
            return left + right + (left + right - whole) / 15.0
        return rec(x0, xm, f0, fl, f1, left, eps / 2.0, d - 1) + rec(
            xm, x2, f1, fr, f2, right, eps / 2.0, d - 1
        )

    if a == b:
        return 0.0
    f0, f1, f2 = float(fun(a)), float(fun(0.5 * (a + b))), float(fun(b))
    whole = simp(a, b, f0, f1, f2)
    return rec(a, b, f0, f1, f2, whole, tol, depth)


def antiderivative(nl: Nonlinearity, s: float, tol: float = 1e-12) -> float:
    """int_0^s f by adaptive Simpson (absolute tolerance)."""
    return _adaptive_simpson(lambda x: nl.f(x), 0.0, float(s), tol=tol)


def validate(nl: Nonlinearity, samples: int = 1000) -> ValidationReport:
    """Check the five structural conditions plus the linear extension.

    Failures are recorded as (condition id, sample point) pairs; nothing is
    raised.  `samples` controls the density of the interior sampling grid.
    """
    if samples < 100:
        raise ValueError("samples must be at least 100")
    tol = 1e-10
    bad: list[tuple[str, float]] = []

    for s0 in (0.0, 1.0):
        if abs(float(nl.f(s0))) > tol:
            bad.append(("f(0)=f(1)=0", s0))

    if not 0.0 < nl.delta < 0.5:
        bad.append(("f_prime_nonpositive_near_endpoints", nl.delta))
    else:
        eps = nl.delta / samples
        for lo, hi in ((eps, nl.delta - eps), (1.0 - nl.delta + eps, 1.0 - eps)):
            ss = np.linspace(lo, hi, samples)
            fp = np.asarray(nl.f_prime(ss))
            k = np.argmax(fp)
            if fp[k] > tol:
                bad.append(("f_prime_nonpositive_near_endpoints", float(ss[k])))

    total = antiderivative(nl, 1.0)
    if not total > tol:
        bad.append(("integral_f_positive", 1.0))

    if not 0.0 < nl.beta < 1.0:
        bad.append(("f_positive_above_beta", nl.beta))
    else:
        margin = (1.0 - nl.beta) / samples
        ss = np.linspace(nl.beta + margin, 1.0 - margin, samples)
        fv = np.asarray(nl.f(ss))
        k = np.argmin(fv)
        if fv[k] <= 0.0:
            bad.append(("f_positive_above_beta", float(ss[k])))

        grid = np.linspace(0.0, nl.beta, samples + 1)
        acc = 0.0
        worst = -np.inf
        worst_s = 0.0
        for lo, hi in zip(grid[:-1], grid[1:]):
            acc += _adaptive_simpson(lambda x: nl.f(x), float(lo), float(hi), tol=1e-13)
            if acc > worst:
                worst, worst_s = acc, float(hi)
        if worst > tol:
            bad.append(("antiderivative_nonpositive_below_beta", worst_s))

    s_lo, s_hi = nl.extension_slopes
    for tau in (0.25, 0.5, 1.0, 2.0):
        scale = 1.0 + abs(s_lo) * tau
        if abs(float(nl.f(-tau)) - (-tau * s_lo)) > tol * scale:
            bad.append(("linear_extension_outside", -tau))
        scale = 1.0 + abs(s_hi) * tau
        if abs(float(nl.f(1.0 + tau)) - tau * s_hi) > tol * scale:
            bad.append(("linear_extension_outside", 1.0 + tau))

    return ValidationReport(passed=not bad, violated_conditions=bad)


def reflect(nl: Nonlinearity) -> Nonlinearity:
    """The reflected law s -> -f(1-s).

    Negates the integral of f: if f has negative integral the reflected law
    is solvable, and the original front is recovered from the reflected one
    by (c, u) -> (-c, 1 - u(x, -y)).
    """
    base_f, base_fp, base_g = nl.f, nl.f_prime, nl.G
    g1 = float(np.asarray(base_g(1.0)))

    def f(s):
        return -base_f(1.0 - np.asarray(s, dtype=float))

    def f_prime(s):
        return base_fp(1.0 - np.asarray(s, dtype=float))

    def G(s):
        return base_g(1.0 - np.asarray(s, dtype=float)) - g1

    return Nonlinearity(
        kind="custom",
        f=f,
        f_prime=f_prime,
        delta=nl.delta,
        beta=1.0 - nl.beta,
        alpha=None if nl.alpha is None else 1.0 - nl.alpha,
        extension_slopes=(nl.extension_slopes[1], nl.extension_slopes[0]),
        G=G,
        label=f"reflect({nl.label or nl.kind})",
        params={"kind": "reflect", "base": dict(nl.params)},
    )


def ignition_point(nl: Nonlinearity, tol: float = 1e-10) -> float:
    """The unique beta with int_0^beta f = 0 (stored value for combustion).

    For bistable laws the root is bracketed in (alpha, 1) and located by
    bisection on the antiderivative; bracket failure means the law violates
    the structural conditions.
    """
    if nl.kind == "combustion":
        return nl.beta
    lo = nl.alpha if nl.alpha is not None else 1e-6
    hi = 1.0
    flo = antiderivative(nl, lo)
    fhi = antiderivative(nl, hi)
    if not (flo < 0.0 < fhi):
        raise NonlinearityError(
            f"antiderivative does not change sign on [{lo:g}, 1]: {flo:g} .. {fhi:g}"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if antiderivative(nl, mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
