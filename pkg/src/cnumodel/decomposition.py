"""Oblique direct-sum decomposition of H + H and the projector family P_Y(z).

For a fixed boundary resolvent point ``a`` the space splits, for every
admissible ``z``, as

    H + H  =  M_z  (+)  Y,      M_z = span of [(T - z); D_T],
                                Y   = M_a^perp,

and ``P_Y(z)`` is the projector onto Y along M_z.  The admissible set is
the whole plane off the unit circle together with the open circular arc of
chord radius ``c_a / 3`` around ``a``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import dilation as _dilation
from .contraction import Contraction, boundary_resolvent
from .errors import DomainError, IllConditioned
from .linalg import Subspace, as_vector, column_space, opnorm

TOL_CIRCLE = 1e-9
COND_LIMIT = 1e12


@dataclass(frozen=True)
class ModelContext:
    """A contraction together with everything the decomposition needs."""

    contraction: Contraction
    a: complex
    c_a: float
    epsilon: float  # admissible chord radius around a, c_a / 3
    y: Subspace  # M_a^perp, dimension n
    dilation: _dilation.DilationPair
    tol_circle: float = TOL_CIRCLE

    @property
    def n(self) -> int:
        return self.contraction.n


@dataclass(frozen=True)
class PYEvaluation:
    """P_Y(z) with the solve diagnostics of the stacked system."""

    z: complex
    p_y: np.ndarray       # 2n x 2n projector onto Y along M_z
    g_solver: np.ndarray  # n x 2n map recovering the M_z generator g
    solve_residual: float
    cond_estimate: float


def make_context(c: Contraction, a: complex | None = None) -> ModelContext:
    """Fix the boundary point, build Y from its closed-form parametrization.

    Y consists of the vectors (-(T* - conj(a))^{-1} D_T h, h); stacking that
    map over an identity block always has full column rank, so dim Y = n.
    """
    a = boundary_resolvent(c, a)
    d = _dilation.build(c)
    c_a = _dilation.regular_type_constant(d, a)
    eye = np.eye(c.n, dtype=np.complex128)
    top = -np.linalg.solve(c.t.conj().T - np.conj(a) * eye, c.d_t)
    y = column_space(np.vstack([top, eye]))
    return ModelContext(contraction=c, a=a, c_a=c_a, epsilon=c_a / 3.0,
                        y=y, dilation=d)


def in_omega(ctx: ModelContext, z: complex) -> bool:
    """Membership in the admissible set: off the circle, or on the arc."""
    z = complex(z)
    return abs(abs(z) - 1.0) > ctx.tol_circle or abs(z - ctx.a) < ctx.epsilon


def m_columns(ctx: ModelContext, z: complex) -> np.ndarray:
    """The raw 2n x n generator matrix [(T - z I); D_T] of M_z."""
    c = ctx.contraction
    return np.vstack([c.t - complex(z) * np.eye(c.n), c.d_t])


def subspace_M(ctx: ModelContext, z: complex) -> Subspace:
    """Orthonormalized M_z = (V_0 - z)(ker V)^perp."""
    return column_space(m_columns(ctx, z))


def _stacked_solve(ctx: ModelContext, z: complex, rhs: np.ndarray):
    """Solve [M-columns | Y-basis] u = rhs once; shared by all entry points."""
    a_mat = np.hstack([m_columns(ctx, z), ctx.y.basis])
    cond = float(np.linalg.cond(a_mat))
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise IllConditioned(f"stacked system condition {cond:.3e} at z = {z}")
    u = np.linalg.solve(a_mat, rhs)
    residual = float(np.linalg.norm(a_mat @ u - rhs))
    return u, residual, cond


def decompose(ctx: ModelContext, z: complex, f):
    """Split f = [(T - z) g; D_T g] + Y y uniquely.

    Returns ``(g, y, residual)`` where ``y`` holds the coefficients of the
    Y-part against the orthonormal Y basis.
    """
    z = complex(z)
    if not in_omega(ctx, z):
        raise DomainError(f"z = {z} outside the admissible set")
    f = as_vector(f, 2 * ctx.n)
    u, residual, _ = _stacked_solve(ctx, z, f)
    return u[: ctx.n], u[ctx.n :], residual


def projector_PY(ctx: ModelContext, z: complex) -> PYEvaluation:
    """Assemble the full projector by decomposing the standard basis."""
    z = complex(z)
    if not in_omega(ctx, z):
        raise DomainError(f"z = {z} outside the admissible set")
    n = ctx.n
    eye = np.eye(2 * n, dtype=np.complex128)
    x, residual, cond = _stacked_solve(ctx, z, eye)
    g_solver = x[:n, :]
    p_y = ctx.y.basis @ x[n:, :]
    return PYEvaluation(z=z, p_y=p_y, g_solver=g_solver,
                        solve_residual=residual, cond_estimate=cond)


def apply_PY(ctx: ModelContext, z: complex, f) -> np.ndarray:
    """P_Y(z) f through a single solve (no full projector assembly)."""
    _, y, _ = decompose(ctx, z, f)
    return ctx.y.basis @ y


def y_coordinates(ctx: ModelContext, z: complex, f) -> np.ndarray:
    """Coordinates of P_Y(z) f against the orthonormal Y basis."""
    _, y, _ = decompose(ctx, z, f)
    return y


def straus_extension(ctx: ModelContext):
    """Isometric extension acting as V_0 on H + {0} and as a on Y.

    Returns ``(u_a, isometry_residual, domain_dim, range_dim)``.  At finite
    dimension domain and range are the whole 2n-dimensional space, so the
    extension is in fact unitary.
    """
    n = ctx.n
    top = np.vstack([np.eye(n, dtype=np.complex128), np.zeros((n, n), dtype=np.complex128)])
    basis = np.hstack([top, ctx.y.basis])
    images = np.hstack([ctx.dilation.v0 @ top, ctx.a * ctx.y.basis])
    u_a = images @ np.linalg.inv(basis)
    isometry_residual = opnorm(u_a.conj().T @ u_a - np.eye(2 * n))
    return u_a, isometry_residual, 2 * n, 2 * n


def arc_points(ctx: ModelContext, count: int) -> np.ndarray:
    """Uniform samples of the admissible arc, strictly inside its endpoints.

    ``count = 1`` returns just the centre point ``a``.
    """
    if count < 1:
        raise ValueError("need at least one sample")
    if count == 1:
        return np.array([ctx.a], dtype=np.complex128)
    chord = ctx.epsilon * (1.0 - 1e-9)
    theta_max = 2.0 * np.arcsin(min(chord / 2.0, 1.0))
    thetas = np.linspace(-theta_max, theta_max, count)
    return ctx.a * np.exp(1j * thetas)


def empirical_arc_chord(ctx: ModelContext, residual_tol: float = 1e-9,
                        iterations: int = 40, seed: int = 0) -> float:
    """Bisect for the largest arc chord on which the split still succeeds.

    Purely empirical: probes both arc endpoints at each candidate chord with
    random vectors, bypassing the domain gate.  No optimality is claimed;
    the proven radius ``ctx.epsilon`` is a lower bound.
    """
    rng = np.random.default_rng(seed)
    probes = rng.standard_normal((2 * ctx.n, 3)) + 1j * rng.standard_normal((2 * ctx.n, 3))

    def ok(chord: float) -> bool:
        theta = 2.0 * np.arcsin(min(chord / 2.0, 1.0))
        for sign in (1.0, -1.0):
            z = ctx.a * np.exp(1j * sign * theta)
            try:
                u, residual, _ = _stacked_solve(ctx, z, probes)
            except IllConditioned:
                return False
            if residual > residual_tol * np.linalg.norm(probes):
                return False
        return True

    lo, hi = ctx.epsilon, 2.0
    if not ok(lo):
        return lo
    if ok(hi * (1.0 - 1e-12)):
        return hi
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo
