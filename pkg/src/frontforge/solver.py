"""Constrained variational front solver.

Minimizes E_a(w) = (1/2) Gamma_a(w) + int e^{ay} G(w(0,y)) dy over the
manifold Gamma_a(w) = 1, then converts the minimizer to a traveling front:
with multiplier lambda_a the rescaling u(x,y) = w(mu x, mu y), mu = 1 -
2*lambda_a, travels at speed c = a*(1 - 2*lambda_a) = a*(1 - 2*I_a).

Minimization runs in two stages: a damped flux fixed-point warm start that
can transport the front across the window, then projected Sobolev-gradient
descent (the stiffness operator of Gamma_a as preconditioner, one sparse LU
per grid) with Armijo backtracking, range clamping to [0,1], periodic
monotone rearrangement, and the exact y-translation projection back onto
the constraint.  The grid pins w = 1 at y_min and w = 0 at y_max;
x-boundaries are natural (Neumann).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from . import grid as gridmod
from .explicit_front import ExplicitFrontParams, sample_front
from .grid import Field, GridSpec, TraceProfile
from .nonlinearity import Nonlinearity, NonlinearityError, _adaptive_simpson, validate


class SolverError(RuntimeError):
    pass


class DegenerateMultiplierError(SolverError):
    """lambda_a reached 1/2; the discretization cannot support the front."""


class DivergenceError(SolverError):
    """Energy kept increasing through the whole backtracking ladder."""


@dataclass
class SolverOptions:
    nx: int = 96
    ny: int = 448
    x_span: float = 8.0  # domain sizes in units of 1/a
    y_span_down: float = 40.0
    y_span_up: float = 12.0
    tol: float = 0.03  # stationarity residual relative to the gradient norm
    max_iter: int = 300
    warm_iters: int = 60  # flux fixed-point steps before descent
    burst_every: int = 25  # interleave a fixed-point burst into descent
    rearrange_every: int = 10
    constraint_tol: float = 1e-8
    armijo: float = 1e-4
    max_backtracks: int = 45
    stall_rel: float = 1e-9  # relative per-step decrease counting as a stall
    a: float | None = None  # weight; None = choose_weight policy
    seed: str = "exponential"  # "exponential" | "kernel"
    seed_field: Field | None = None
    refine: int = 0  # halvings of the mesh width
    verbose: bool = False


@dataclass
class MinimizerResult:
    minimizer: Field
    infimum: float
    multiplier: float
    a: float
    iterations: int
    converged: bool
    constraint: float
    residual_norm: float
    energy_history: list = field(default_factory=list, repr=False)


@dataclass
class FrontSolution:
    speed: float
    mu: float
    front: Field
    trace: TraceProfile
    interior_residual: float
    boundary_residual: float
    speed_variational: float  # a*(1 - 2*I_a), the energy-based estimate
    multiplier: float
    infimum: float
    a: float


# -- weight selection ---------------------------------------------------------

_SEED_M = 8.0  # seed steepness used by the weight-selection policy


def seed_energy_value(nl: Nonlinearity, a: float, d: float | None = None, m: float = _SEED_M) -> float:
    """E_a of the seed e^{-dx} h(y), in closed form (exact in the continuum).

    a*E = (d/4)(1 + 1/(2m-1)) + a^2 m^2 / (4 d (2m-1)) - int_0^1 s^{-1/m} f ds.
    """
    if d is None:
        d = 0.5 * a
    s_m = _adaptive_simpson(lambda s: float(nl.f(s)) * s ** (-1.0 / m), 1e-12, 1.0)
    val = d / 4.0 * (1.0 + 1.0 / (2.0 * m - 1.0)) + a * a * m * m / (4.0 * d * (2.0 * m - 1.0)) - s_m
    return val / a


def choose_weight(nl: Nonlinearity) -> float:
    """Largest a = 0.5 * 2^{-k} whose seed energy is negative.

    Negative seed energy guarantees -inf < inf E_a < 0, i.e. the
    minimization is well posed.  Failure down to 1e-6 means the integral
    condition on f is (numerically) violated.
    """
    a = 0.5
    while a > 1e-6:
        if seed_energy_value(nl, a) < 0.0:
            return a
        a *= 0.5
    raise NonlinearityError(
        "no weight with negative seed energy above 1e-6; is int_0^1 f <= 0?"
    )


# -- discrete operators -------------------------------------------------------


def _stiffness(spec: GridSpec) -> sp.csr_matrix:
    """Sparse S with Gamma_a(w) = w^T S w (edge-based quadrature)."""
    nx, ny = spec.nx, spec.ny
    n = (nx + 1) * (ny + 1)

    def node(i, j):
        return i * (ny + 1) + j

    rows, cols, vals = [], [], []

    ii, jj = np.meshgrid(np.arange(nx), np.arange(ny + 1), indexing="ij")
    wgt = (spec.tau * spec.wy)[jj] * spec.hy / spec.hx
    a_idx = node(ii, jj).ravel()
    b_idx = node(ii + 1, jj).ravel()
    w = wgt.ravel()
    rows += [a_idx, b_idx, a_idx, b_idx]
    cols += [a_idx, b_idx, b_idx, a_idx]
    vals += [w, w, -w, -w]

    ii, jj = np.meshgrid(np.arange(nx + 1), np.arange(ny), indexing="ij")
    wgt = spec.sigma[ii] * spec.wy_edge[jj] * spec.hx / spec.hy
    a_idx = node(ii, jj).ravel()
    b_idx = node(ii, jj + 1).ravel()
    w = wgt.ravel()
    rows += [a_idx, b_idx, a_idx, b_idx]
    cols += [a_idx, b_idx, b_idx, a_idx]
    vals += [w, w, -w, -w]

    S = sp.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(n, n)
    )
    return S.tocsr()


class _Workspace:
    """Per-grid factorized preconditioner and index bookkeeping."""

    def __init__(self, spec: GridSpec):
        self.spec = spec
        self.S = _stiffness(spec)
        nx, ny = spec.nx, spec.ny
        free2d = np.ones((nx + 1, ny + 1), dtype=bool)
        free2d[:, 0] = False
        free2d[:, -1] = False
        self.free = free2d.ravel()
        # symmetric diagonal scaling ~ e^{-ay/2} keeps the LU well conditioned
        scale2d = np.exp(0.5 * spec.a * spec.ys)[None, :] * np.ones((nx + 1, 1))
        self.scale = scale2d.ravel()[self.free]
        Sff = self.S[self.free][:, self.free].tocsc()
        d_inv = sp.diags(1.0 / self.scale)
        self.lu = spla.splu((d_inv @ Sff @ d_inv).tocsc())

    def precond_solve(self, g_free: np.ndarray) -> np.ndarray:
        return self.lu.solve(g_free / self.scale) / self.scale


def _pin(values: np.ndarray) -> None:
    values[:, 0] = 1.0
    values[:, -1] = 0.0


def _gradient(ws: _Workspace, w: Field, nl: Nonlinearity) -> np.ndarray:
    """Nodal gradient of E_a: S w - e^{ay} f(w(0,y)) hy tau on the boundary."""
    g = (ws.S @ w.values.ravel()).reshape(w.values.shape)
    g[0, :] += -w.spec.ymeasure * np.asarray(nl.f(w.values[0, :]))
    return g


def _boundary_fu(w: Field, nl: Nonlinearity) -> float:
    """B = int e^{ay} f(w(0,y)) w(0,y) dy, the multiplier's boundary integral."""
    return gridmod.boundary_integral(w, lambda s: np.asarray(nl.f(s)) * s)


def _multiplier(w: Field, nl: Nonlinearity, gamma: float | None = None) -> float:
    """lambda_a from stationarity tested with phi = w: (D_kin - B)/(2 D_kin)."""
    d_kin = gridmod.dirichlet(w) if gamma is None else gamma
    return (d_kin - _boundary_fu(w, nl)) / (2.0 * d_kin)


def _normalize(w: Field, opts: SolverOptions) -> Field:
    out = gridmod.rearrange_monotone(w)
    out = gridmod.project_constraint(out, tol=opts.constraint_tol)
    _pin(out.values)
    np.clip(out.values, 0.0, 1.0, out=out.values)
    return out


def _pin_vector(spec: GridSpec) -> np.ndarray:
    v = np.zeros((spec.nx + 1) * (spec.ny + 1))
    v.reshape(spec.nx + 1, spec.ny + 1)[:, 0] = 1.0
    return v


def _warm_start(
    ws: _Workspace, w: Field, nl: Nonlinearity, opts: SolverOptions, history: list
) -> Field:
    """Flux fixed-point stage: solve the linear problem with frozen boundary
    flux f(w(0,y))/B, then clamp/rearrange/project.

    At the minimizer this map is stationary (its fixed point is the
    Euler-Lagrange equation), and far from it a single step can transport
    the front across the window, which gradient descent cannot do quickly.
    The map is damped by backtracking on the mixing weight omega so that
    every accepted step strictly decreases the energy; when no damping
    helps, descent takes over.
    """
    spec = ws.spec
    pin = _pin_vector(spec)
    s_pin_free = (ws.S @ pin)[ws.free]
    e_cur = history[-1]
    for _ in range(opts.warm_iters):
        b_over = _boundary_fu(w, nl)
        if not np.isfinite(b_over):
            break
        # B approximates 1 - 2*lambda_a >= 1 at the minimizer; floor the
        # divisor so misplaced seeds (B near or below 0) still get a
        # usefully-scaled flux solve, damped by the energy check below
        divisor = max(b_over, 0.2)
        flux = np.zeros_like(w.values)
        flux[0, :] = spec.ymeasure * np.asarray(nl.f(w.values[0, :]))
        rhs = flux.ravel()[ws.free] / divisor - s_pin_free
        v = pin.copy()
        v[ws.free] = ws.precond_solve(rhs)
        target = v.reshape(w.values.shape)
        accepted = False
        omega = 1.0
        for _ in range(6):
            trial = Field(w.values + omega * (target - w.values), spec)
            _pin(trial.values)
            np.clip(trial.values, 0.0, 1.0, out=trial.values)
            trial = gridmod.rearrange_monotone(trial)
            try:
                trial = gridmod.project_constraint(trial, tol=opts.constraint_tol)
            except (ValueError, RuntimeError):
                omega *= 0.5
                continue
            _pin(trial.values)
            e_new = gridmod.energy(trial, nl)
            if e_new < e_cur - opts.stall_rel * abs(e_cur):
                w, e_cur = trial, e_new
                history.append(e_cur)
                accepted = True
                break
            omega *= 0.5
        if not accepted:
            break
    return w


def minimize(
    spec: GridSpec,
    nl: Nonlinearity,
    opts: SolverOptions | None = None,
    seed: Field | None = None,
) -> MinimizerResult:
    """Two-stage constrained minimization of the discrete E_a on Gamma_a = 1.

    A flux fixed-point warm start places the front (energy-monitored), then
    projected Sobolev-gradient descent with Armijo backtracking polishes it:
    gradient step, clamp to [0,1], monotone rearrangement every
    `rearrange_every` accepted steps, y-translation back onto the
    constraint.  Converged means the stationarity residual g - lambda_a
    D(Gamma_a) is below `tol` relative to the gradient norm (both measured
    in the inverse-stiffness metric), or the energy has stalled at the
    discretization floor.
    """
    opts = opts or SolverOptions()
    ws = _Workspace(spec)

    if seed is None:
        seed = gridmod.seed_function(spec)
    w = seed.copy()
    _pin(w.values)
    np.clip(w.values, 0.0, 1.0, out=w.values)
    w = _normalize(w, opts)

    history = [gridmod.energy(w, nl)]
    w = _warm_start(ws, w, nl, opts, history)
    e_cur = history[-1]

    eta = 1.0
    rho_ratio = math.inf
    lam = _multiplier(w, nl)
    accepted_since_rearr = 0
    stalled = 0
    converged = False
    it = 0

    for it in range(1, opts.max_iter + 1):
        if opts.burst_every > 0 and it % opts.burst_every == 0:
            # periodic fixed-point burst: descent moves fronts slowly along
            # the transport valley, the burst jumps along it (energy-safe)
            e_before = e_cur
            w = _warm_start(ws, w, nl, opts, history)
            e_cur = history[-1]
            if e_cur < e_before - opts.stall_rel * abs(e_before):
                eta = 1.0
                stalled = 0

        g = _gradient(ws, w, nl)
        gamma = gridmod.dirichlet(w)
        lam = _multiplier(w, nl, gamma)
        resid = g - 2.0 * lam * (ws.S @ w.values.ravel()).reshape(g.shape)
        r_free = resid.ravel()[ws.free]
        g_free = g.ravel()[ws.free]
        d_free = ws.precond_solve(g_free)
        g_norm = math.sqrt(abs(float(g_free @ d_free)))
        rho = math.sqrt(abs(float(r_free @ ws.precond_solve(r_free))))
        rho_ratio = rho / max(g_norm, 1e-300)
        if rho_ratio <= opts.tol and abs(gamma - 1.0) <= 10.0 * opts.constraint_tol:
            converged = True
            break
        if stalled >= 12:
            # descent is exhausted: let the fixed-point stage try once more,
            # and only call it converged if that cannot lower E either
            e_before = e_cur
            w = _warm_start(ws, w, nl, opts, history)
            e_cur = history[-1]
            stalled = 0
            if e_cur >= e_before - 1e-9 * abs(e_before):
                converged = True
                break
            continue

        slope = float(g_free @ d_free)
        direction = np.zeros(w.values.size)
        direction[ws.free] = d_free
        direction = direction.reshape(w.values.shape)

        accepted = False
        for _ in range(opts.max_backtracks):
            trial = Field(w.values - eta * direction, spec)
            _pin(trial.values)
            np.clip(trial.values, 0.0, 1.0, out=trial.values)
            do_rearr = accepted_since_rearr + 1 >= opts.rearrange_every
            if do_rearr:
                trial = gridmod.rearrange_monotone(trial)
            try:
                trial = gridmod.project_constraint(trial, tol=opts.constraint_tol)
            except (ValueError, RuntimeError):
                eta *= 0.5
                continue
            _pin(trial.values)
            e_new = gridmod.energy(trial, nl)
            if e_new <= e_cur - opts.armijo * eta * slope or e_new < e_cur:
                stalled = stalled + 1 if e_new >= e_cur - opts.stall_rel * abs(e_cur) else 0
                w, e_cur = trial, e_new
                accepted = True
                accepted_since_rearr = 0 if do_rearr else accepted_since_rearr + 1
                eta = min(eta * 1.5, 4.0)
                break
            eta *= 0.5
        if not accepted:
            e_before = e_cur
            w = _warm_start(ws, w, nl, opts, history)
            e_cur = history[-1]
            if e_cur < e_before - 1e-9 * abs(e_before):
                eta = 1.0
                stalled = 0
                continue
            if stalled > 0 or rho_ratio < 10.0 * opts.tol or history[-1] < history[0]:
                converged = True  # cannot descend further: discretization floor
                break
            raise DivergenceError(
                f"no descent after {opts.max_backtracks} halvings at iteration {it}"
            )
        history.append(e_cur)
        if opts.verbose and it % 25 == 0:
            print(
                f"  it {it:4d}  E={e_cur:+.8f}  lam={lam:+.5f}  "
                f"rho/|g|={rho_ratio:.3e}  eta={eta:.2e}"
            )

    w = _normalize(w, opts)
    e_cur = gridmod.energy(w, nl)
    gamma = gridmod.dirichlet(w)
    lam = _multiplier(w, nl, gamma)
    if lam >= 0.5:
        raise DegenerateMultiplierError(
            f"lambda_a = {lam:.6f} >= 1/2: grid too coarse for this reaction law"
        )
    return MinimizerResult(
        minimizer=w,
        infimum=e_cur,
        multiplier=lam,
        a=spec.a,
        iterations=it,
        converged=converged,
        constraint=gamma,
        residual_norm=rho_ratio,
        energy_history=history,
    )


# -- speed extraction ---------------------------------------------------------


def extract_speed(result: MinimizerResult, nl: Nonlinearity | None = None) -> FrontSolution:
    """Rescale the minimizer into the traveling front and read off speeds.

    mu = 1 - 2*lambda_a, c = a*mu.  The resampling w(mu x, mu y) lands
    exactly on the nodes of the grid with all spans divided by mu, so the
    front keeps the minimizer's nodal values on a contracted grid whose
    natural weight exponent is c.
    """
    if not result.converged:
        raise SolverError("minimizer did not converge; refusing to extract a speed")
    if result.multiplier >= 0.5:
        raise DegenerateMultiplierError(f"lambda_a = {result.multiplier:.6f} >= 1/2")
    mu = 1.0 - 2.0 * result.multiplier
    c = result.a * mu
    spec = result.minimizer.spec
    front_spec = GridSpec(
        x_max=spec.x_max / mu,
        y_min=spec.y_min / mu,
        y_max=spec.y_max / mu,
        nx=spec.nx,
        ny=spec.ny,
        a=c,
    )
    front = Field(result.minimizer.values.copy(), front_spec)
    tr = gridmod.trace(front)
    c_var = result.a * (1.0 - 2.0 * result.infimum)
    interior = boundary = math.nan
    if nl is not None:
        interior, boundary = pde_residual(
            front.values, front_spec.hx, front_spec.hy, c, nl, ys=front_spec.ys
        )
    return FrontSolution(
        speed=c,
        mu=mu,
        front=front,
        trace=tr,
        interior_residual=interior,
        boundary_residual=boundary,
        speed_variational=c_var,
        multiplier=result.multiplier,
        infimum=result.infimum,
        a=result.a,
    )


def pde_residual(
    values: np.ndarray,
    hx: float,
    hy: float,
    c: float,
    nl: Nonlinearity,
    ys: np.ndarray | None = None,
):
    """(interior, boundary) residual norms of Laplace(u) + c u_y = 0, -u_x = f(u).

    Interior: weighted sup of the centered-difference residual over nodes at
    least two cells from every boundary, with weight min(1, e^{cy}) -- the
    deep lower region carries weight e^{cy} -> 0 in the energy, so the
    minimizer is not (and need not be) smooth there.  Boundary: sup of
    |-u_x - f(u)| on x = 0 with a second-order one-sided difference.
    """
    u = values
    lap = (
        (u[2:, 1:-1] - 2.0 * u[1:-1, 1:-1] + u[:-2, 1:-1]) / (hx * hx)
        + (u[1:-1, 2:] - 2.0 * u[1:-1, 1:-1] + u[1:-1, :-2]) / (hy * hy)
        + c * (u[1:-1, 2:] - u[1:-1, :-2]) / (2.0 * hy)
    )
    core = np.abs(lap[1:-1, 1:-1])
    if ys is not None:
        wgt = np.minimum(1.0, np.exp(c * np.asarray(ys)[2:-2]))
        core = core * wgt[None, :]
    interior = float(np.max(core)) if core.size else math.nan
    # second-order one-sided flux: (u1 - u0)/h - (h/2) u_xx, with u_xx taken
    # from the PDE (u_xx = -u_yy - c u_y); truncation h^2 u_xxx / 6, half the
    # constant of the plain 3-point stencil
    u0, u1 = u[0, 1:-1], u[1, 1:-1]
    uyy = (u[0, 2:] - 2.0 * u[0, 1:-1] + u[0, :-2]) / (hy * hy)
    uy = (u[0, 2:] - u[0, :-2]) / (2.0 * hy)
    ux = (u1 - u0) / hx + 0.5 * hx * (uyy + c * uy)
    boundary = float(np.max(np.abs(-ux - np.asarray(nl.f(u0)))))
    return interior, boundary


def residual(front: FrontSolution, nl: Nonlinearity):
    """Residual norms of a computed front under its own reaction law."""
    spec = front.front.spec
    return pde_residual(front.front.values, spec.hx, spec.hy, front.speed, nl, ys=spec.ys)


# -- orchestration ------------------------------------------------------------


def default_grid(a: float, opts: SolverOptions) -> GridSpec:
    """Spans proportional to 1/a: slow left tail gets the deep side."""
    factor = 1 << opts.refine
    return GridSpec(
        x_max=opts.x_span / a,
        y_min=-opts.y_span_down / a,
        y_max=opts.y_span_up / a,
        nx=opts.nx * factor,
        ny=opts.ny * factor,
        a=a,
    )


def solve_front(nl: Nonlinearity, opts: SolverOptions | None = None) -> FrontSolution:
    """Full pipeline: validate f, choose a, seed, minimize, rescale.

    The returned front is monotone in y (rearranged), takes values in
    [0, 1], and carries both speed estimates a(1-2*lambda_a) (authoritative)
    and a(1-2*I_a) (reported for cross-checking).
    """
    opts = opts or SolverOptions()
    report = validate(nl)
    if not report.passed:
        raise NonlinearityError(
            f"reaction law fails structural validation: {report.violated_conditions[:3]}"
        )
    a = opts.a if opts.a is not None else choose_weight(nl)
    spec = default_grid(a, opts)
    if opts.seed_field is not None:
        seed = opts.seed_field
    elif opts.seed == "kernel":
        vals = sample_front(ExplicitFrontParams(t=1.0, c=a), spec.xs, spec.ys)
        seed = Field(vals, spec)
    else:
        seed = gridmod.seed_function(spec)
    result = minimize(spec, nl, opts, seed=seed)
    return extract_speed(result, nl)
