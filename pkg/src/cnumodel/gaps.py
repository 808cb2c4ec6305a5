"""Gap metric, minimal angle, and the arc scan for the decomposition bound."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decomposition import ModelContext, arc_points, decompose, subspace_M
from .errors import DimensionMismatch
from .linalg import Subspace, gap_delta, numerical_rank, opnorm


@dataclass(frozen=True)
class GapReport:
    delta: float
    delta_tilde: float
    angle: float | None  # minimal angle in [0, pi/2]; None for a zero subspace


def _sphere_distance_sup(q_onto: np.ndarray, q_from: np.ndarray) -> float:
    """sup over unit x in span(q_from) of the distance to the unit sphere of
    span(q_onto); equals sqrt(2 - 2 sigma_min(P q_from))."""
    if q_from.shape[1] == 0:
        return 0.0
    if q_onto.shape[1] == 0:
        return np.sqrt(2.0)
    s = np.linalg.svd(q_onto.conj().T @ q_from, compute_uv=False)
    # fewer singular values than source dimension means some source
    # direction is annihilated entirely
    smin = float(np.min(s)) if s.size == q_from.shape[1] else 0.0
    return float(np.sqrt(max(0.0, 2.0 - 2.0 * smin)))


def gap(a: Subspace, b: Subspace) -> GapReport:
    """Projection gap, unit-sphere gap, and minimal angle between subspaces.

    ``delta_tilde`` is computed in closed form from the smallest singular
    value of the compressed basis, not by sampling, so the sandwich
    ``delta <= delta_tilde <= 2 delta`` is exact up to rounding.
    """
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("subspaces live in different ambient spaces")
    delta = gap_delta(a.basis, b.basis)
    delta_tilde = max(_sphere_distance_sup(a.basis, b.basis),
                      _sphere_distance_sup(b.basis, a.basis))
    angle = None
    if a.dim and b.dim:
        cos_a = float(np.clip(opnorm(a.basis.conj().T @ b.basis), 0.0, 1.0))
        angle = float(np.arccos(cos_a))
    return GapReport(delta=delta, delta_tilde=delta_tilde, angle=angle)


def direct_sum_check(a: Subspace, b: Subspace, tol: float = 1e-10):
    """Trivial intersection + closed sum vs. positive minimal angle.

    Returns ``(trivial_intersection, closed_sum, angle_positive)``.  The two
    criteria are equivalent and the flags should agree; at finite dimension
    every sum is closed.  Zero subspaces satisfy everything vacuously.
    """
    if a.dim == 0 or b.dim == 0:
        return True, True, True
    combined = np.hstack([a.basis, b.basis])
    inter_dim = a.dim + b.dim - numerical_rank(combined)
    trivial = inter_dim == 0
    # sin of the smallest principal angle, resolved well even near zero
    resid = b.basis - a.basis @ (a.basis.conj().T @ b.basis)
    sin_min = float(np.linalg.svd(resid, compute_uv=False)[-1])
    return trivial, True, sin_min > tol


def angle_stability_residual(n1: Subspace, n2: Subspace, n3: Subspace) -> float:
    """Violation of sin angle(N1,N3) >= sin angle(N1,N2) - delta_tilde(N2,N3).

    Zero means the inequality holds; anything above rounding noise would
    falsify it.
    """
    g12 = gap(n1, n2)
    g13 = gap(n1, n3)
    g23 = gap(n2, n3)
    if g12.angle is None or g13.angle is None:
        return 0.0
    return max(0.0, np.sin(g12.angle) - g23.delta_tilde - np.sin(g13.angle))


def arc_gap_scan(ctx: ModelContext, samples: int, residual_tol: float = 1e-9,
                 f_per_point: int = 3, seed: int = 0):
    """Scan the admissible arc: gap of complements stays below 1/3 and the
    oblique split succeeds at every sample.

    Returns ``(max_gap_on_arc, decomposition_ok)``.  The 1/3 bound comes
    from the perturbation estimate behind the chord radius c_a / 3.
    """
    rng = np.random.default_rng(seed)
    m_a_perp = subspace_M(ctx, ctx.a).perp()
    max_gap = 0.0
    ok = True
    for z in arc_points(ctx, samples):
        m_z_perp = subspace_M(ctx, z).perp()
        max_gap = max(max_gap, gap(m_a_perp, m_z_perp).delta)
        for _ in range(f_per_point):
            f = rng.standard_normal(2 * ctx.n) + 1j * rng.standard_normal(2 * ctx.n)
            try:
                _, _, residual = decompose(ctx, z, f)
            except Exception:
                ok = False
                continue
            if residual > residual_tol * np.linalg.norm(f):
                ok = False
    return max_gap, ok
