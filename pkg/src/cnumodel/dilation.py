"""Partial-isometry dilation on H + H, its Julia unitary extension, and the
generalized Cayley transform between the shifted model subspaces."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .contraction import Contraction
from .errors import BadParam, DegenerateRegularity, SingularResolvent
from .linalg import (
    Subspace,
    _fix_column_phases,
    column_space,
    gap_delta,
    kernel_space,
    multiset_distance,
    numerical_rank,
    opnorm,
)


@dataclass(frozen=True)
class DilationPair:
    """The isometry-on-its-initial-space dilation V and its unitary extension.

    ``v0`` and ``v`` are numerically the same 2n x 2n block matrix
    [[T, 0], [D_T, 0]]; they are carried separately because one is used as
    a map on H + {0} and the other on all of H + H.  ``v_tilde`` is the
    Julia unitary of T, which restricts to ``v`` on the initial space.
    """

    v0: np.ndarray
    v: np.ndarray
    v_tilde: np.ndarray
    ker_v: Subspace
    ker_v_perp: Subspace
    ker_vstar: Subspace


def build(c: Contraction) -> DilationPair:
    """Assemble the dilation pair and kernel subspaces for a contraction."""
    n = c.n
    zero = np.zeros((n, n), dtype=np.complex128)
    v0 = np.block([[c.t, zero], [c.d_t, zero]])
    v = v0.copy()
    v_tilde = np.block([[c.t, c.d_tstar], [c.d_t, -c.t.conj().T]])

    eye = np.eye(n, dtype=np.complex128)
    bottom = _fix_column_phases(np.vstack([zero, eye]))
    top = _fix_column_phases(np.vstack([eye, zero]))
    ker_v_perp = Subspace(2 * n, top)

    # ker V = {0} + H whenever D_T has full rank; otherwise fall back to a
    # numerical kernel and warn if the two answers disagree (they should not,
    # since ||V(h1, h2)|| = ||h1||).
    if numerical_rank(c.d_t) == n:
        ker_v = Subspace(2 * n, bottom)
    else:
        ker_v = kernel_space(v)
        if gap_delta(ker_v.basis, bottom) > 1e-8:
            warnings.warn("numerical ker V deviates from {0} + H", RuntimeWarning)

    ker_vstar = kernel_space(v.conj().T)
    return DilationPair(v0=v0, v=v, v_tilde=v_tilde, ker_v=ker_v,
                        ker_v_perp=ker_v_perp, ker_vstar=ker_vstar)


def spectrum_union_residual(d: DilationPair, c: Contraction) -> float:
    """Multiset distance between eig(V) and eig(T) together with n zeros."""
    ev_v = np.linalg.eigvals(d.v)
    target = np.concatenate([np.linalg.eigvals(c.t), np.zeros(c.n, dtype=np.complex128)])
    return multiset_distance(ev_v, target)


def regular_type_constant(d: DilationPair, a: complex, tol: float = 1e-10) -> float:
    """sigma_min(V - a I) for a unit-circle point a.

    Positive exactly when a is a resolvent point of T; a value at or below
    ``tol`` raises :class:`DegenerateRegularity`.
    """
    a = complex(a)
    if abs(abs(a) - 1.0) > 1e-8:
        raise BadParam("regular-type constant is defined for |a| = 1")
    m = d.v - a * np.eye(d.v.shape[0])
    c_a = float(np.linalg.svd(m, compute_uv=False)[-1])
    if c_a <= tol:
        raise DegenerateRegularity(f"sigma_min(V - aI) = {c_a:.3e} at a = {a}")
    return c_a


def cayley(d: DilationPair, z: complex, w: complex, tol: float = 1e-12) -> np.ndarray:
    """U_zw = I + (z - w)(V_tilde - z I)^{-1} on H + H."""
    z, w = complex(z), complex(w)
    dim = d.v_tilde.shape[0]
    pencil = d.v_tilde - z * np.eye(dim)
    if np.linalg.svd(pencil, compute_uv=False)[-1] <= tol:
        raise SingularResolvent(f"V_tilde - zI singular at z = {z}")
    return np.eye(dim) + (z - w) * np.linalg.inv(pencil)


@dataclass(frozen=True)
class CayleyResiduals:
    inv: float
    map_m: float
    map_mperp: float | None  # None when z or w is 0 (reciprocal undefined)


def cayley_mapping_residuals(d: DilationPair, ctx, z: complex, w: complex) -> CayleyResiduals:
    """Check that U_zw inverts as U_wz and carries the model subspaces.

    ``inv`` is ||U_zw U_wz - I||; ``map_m`` the gap between U_zw M_z and
    M_w; ``map_mperp`` the gap between U_zw M_{1/conj(w)}^perp and
    M_{1/conj(z)}^perp (skipped when a reciprocal point is undefined).
    """
    from .decomposition import in_omega, subspace_M

    z, w = complex(z), complex(w)
    for point in (z, w):
        if abs(abs(point) - 1.0) <= ctx.tol_circle or not in_omega(ctx, point):
            raise BadParam("Cayley mapping checks need points in the domain, off the circle")
    u_zw = cayley(d, z, w)
    u_wz = cayley(d, w, z)
    inv = opnorm(u_zw @ u_wz - np.eye(u_zw.shape[0]))

    m_z = subspace_M(ctx, z)
    m_w = subspace_M(ctx, w)
    mapped = column_space(u_zw @ m_z.basis)
    map_m = gap_delta(mapped.basis, m_w.basis)

    map_mperp = None
    if z != 0 and w != 0:
        src = subspace_M(ctx, 1.0 / np.conj(w)).perp()
        dst = subspace_M(ctx, 1.0 / np.conj(z)).perp()
        mapped_perp = column_space(u_zw @ src.basis)
        map_mperp = gap_delta(mapped_perp.basis, dst.basis)
    return CayleyResiduals(inv=inv, map_m=map_m, map_mperp=map_mperp)
