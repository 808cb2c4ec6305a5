"""Validated contractions, defect data, cnu detection, characteristic function."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotContraction, NotCnu, NotResolvent, SingularResolvent
from .linalg import (
    Subspace,
    as_matrix,
    column_space,
    hermitian_sqrt,
    opnorm,
)

DEFAULT_NORM_TOL = 1e-8


@dataclass(frozen=True)
class Contraction:
    """A square contraction with cached defect operators and defect bases.

    ``d_t = (I - T*T)^{1/2}`` and ``d_tstar = (I - TT*)^{1/2}``; the defect
    subspaces are the column spaces of these operators, with bases ordered
    by descending defect singular value.
    """

    t: np.ndarray
    n: int
    d_t: np.ndarray
    d_tstar: np.ndarray
    defect_t: Subspace
    defect_tstar: Subspace
    norm_tol: float


@dataclass(frozen=True)
class CnuReport:
    is_cnu: bool
    unitary_eigenpairs: list  # (eigenvalue, eigenvector) with |eigenvalue| ~ 1


def validate(t_raw, norm_tol: float = DEFAULT_NORM_TOL) -> Contraction:
    """Check ``||T|| <= 1 + norm_tol`` and populate all defect data."""
    t = as_matrix(t_raw)
    if t.shape[0] != t.shape[1]:
        raise NotContraction("operator must be square")
    n = t.shape[0]
    nrm = opnorm(t)
    if nrm > 1.0 + norm_tol:
        raise NotContraction(f"operator norm {nrm:.6g} exceeds 1")
    eye = np.eye(n, dtype=np.complex128)
    # ||T|| may exceed 1 by up to norm_tol, pushing eigenvalues of the
    # Gramians down to about -2*norm_tol; widen the clip accordingly.
    clip = 3.0 * norm_tol
    d_t = hermitian_sqrt(eye - t.conj().T @ t, tol=clip)
    d_tstar = hermitian_sqrt(eye - t @ t.conj().T, tol=clip)
    return Contraction(
        t=t,
        n=n,
        d_t=d_t,
        d_tstar=d_tstar,
        defect_t=column_space(d_t),
        defect_tstar=column_space(d_tstar),
        norm_tol=norm_tol,
    )


def is_cnu(c: Contraction, tol: float = 1e-8) -> CnuReport:
    """Detect unitary parts through unimodular eigenvalues.

    At finite dimension an eigenvector for a unimodular eigenvalue of a
    contraction spans a reducing subspace on which the operator is unitary,
    so the contraction is completely non-unitary iff no eigenvalue has
    modulus within ``tol`` of 1.
    """
    w, v = np.linalg.eig(c.t)
    pairs = []
    for k in range(c.n):
        if 1.0 - tol <= abs(w[k]) <= 1.0 + tol:
            vec = v[:, k] / np.linalg.norm(v[:, k])
            pairs.append((complex(w[k]), vec))
    return CnuReport(is_cnu=not pairs, unitary_eigenpairs=pairs)


def boundary_resolvent(c: Contraction, preferred: complex | None = None,
                       tol: float = 1e-10) -> complex:
    """Pick a unit-circle point in the resolvent set of the contraction.

    Returns ``preferred`` (projected onto the circle) when
    ``sigma_min(T - a I) > tol``, the default ``a = 1`` otherwise.
    """
    report = is_cnu(c)
    if not report.is_cnu:
        raise NotCnu("operator has a unimodular eigenvalue")

    def smin_at(a):
        return float(np.linalg.svd(c.t - a * np.eye(c.n), compute_uv=False)[-1])

    if preferred is not None:
        a = complex(preferred)
        if a == 0:
            raise NotResolvent("boundary point must be nonzero")
        a /= abs(a)
        if smin_at(a) <= tol:
            raise NotResolvent(f"{a} is not a resolvent point")
        return a
    a = 1.0 + 0.0j
    if smin_at(a) <= tol:
        raise NotResolvent("default boundary point 1 is not a resolvent point")
    return a


def _resolvent_factor(c: Contraction, z: complex, tol: float) -> np.ndarray:
    """(I - z T*)^{-1} with a singularity guard."""
    eye = np.eye(c.n, dtype=np.complex128)
    m = eye - z * c.t.conj().T
    if np.linalg.svd(m, compute_uv=False)[-1] <= tol:
        raise SingularResolvent(f"I - z T* singular at z = {z}")
    return np.linalg.inv(m)


def char_function_full(c: Contraction, z: complex, tol: float = 1e-12) -> np.ndarray:
    """-T + z D_{T*} (I - z T*)^{-1} D_T as a full n x n matrix."""
    z = complex(z)
    return -c.t + z * c.d_tstar @ _resolvent_factor(c, z, tol) @ c.d_t


def char_function(c: Contraction, z: complex, tol: float = 1e-12) -> np.ndarray:
    """Characteristic function at ``z`` as a matrix between the defect bases.

    The full operator maps the first defect space into the second, so
    compressing with the orthonormal defect bases loses nothing.
    """
    full = char_function_full(c, z, tol)
    return c.defect_tstar.basis.conj().T @ full @ c.defect_t.basis


def char_identity_residual(c: Contraction, z: complex, tol: float = 1e-12) -> float:
    """Residual of the identity Theta(z) D_T = D_{T*} (I - z T*)^{-1} (z - T)."""
    z = complex(z)
    lhs = char_function_full(c, z, tol) @ c.d_t
    rhs = c.d_tstar @ _resolvent_factor(c, z, tol) @ (z * np.eye(c.n) - c.t)
    return opnorm(lhs - rhs)


def defect_intertwining_residual(c: Contraction) -> float:
    """Residual of D_T T* = T* D_{T*} (used throughout the dual formulas)."""
    return opnorm(c.d_t @ c.t.conj().T - c.t.conj().T @ c.d_tstar)
