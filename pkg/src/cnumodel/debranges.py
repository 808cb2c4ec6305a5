"""de Branges operator pairs (E_-, E_+) built from the reproducing kernel.

Given an interior base point beta with invertible kernel Grams at beta and
at 1/conj(beta), the pair

    E_+(z) = rho_beta(z) K_beta(z) (rho_beta(beta) K_beta(beta))^{-1/2}
    E_-(z) = -rho_q(z) K_q(z) (-rho_q(q) K_q(q))^{-1/2},   q = 1/conj(beta)

reconstructs the kernel through (E_+(z)E_+(w)* - E_-(z)E_-(w)*) / rho_w(z),
with rho_w(z) = 1 - z conj(w).  The ratio E_+^{-1} E_- is contractive on
the open disc and unitary on the admissible arc.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .decomposition import ModelContext, arc_points, in_omega, subspace_M
from .errors import BadBeta, DomainError, SingularNormalizer
from .linalg import hermitian_inv_sqrt, numerical_rank, opnorm
from .rkhs import kernel

CONFLUENCE_TOL = 1e-6
FD_STEP = 1e-5


def rho(z: complex, w: complex) -> complex:
    """rho_w(z) = 1 - z conj(w)."""
    return 1.0 - complex(z) * np.conj(complex(w))


@dataclass(frozen=True)
class DeBrangesOperator:
    ctx: ModelContext
    beta: complex
    norm_plus: np.ndarray   # (rho_beta(beta) K_beta(beta))^{-1/2}
    norm_minus: np.ndarray  # (-rho_q(q) K_q(q))^{-1/2}


def build(ctx: ModelContext, beta: complex | None = None,
          tol: float = 1e-10) -> DeBrangesOperator:
    """Compute both normalizers; raises when a Gram is numerically singular."""
    beta = complex(beta) if beta is not None else ctx.a / 2.0
    if beta == 0 or abs(beta) >= 1:
        raise BadBeta("base point must satisfy 0 < |beta| < 1")
    q = 1.0 / np.conj(beta)
    gram_plus = rho(beta, beta) * kernel(ctx, beta, beta).k
    gram_minus = -rho(q, q) * kernel(ctx, q, q).k
    norm_plus = hermitian_inv_sqrt(gram_plus, tol=tol)
    norm_minus = hermitian_inv_sqrt(gram_minus, tol=tol)
    return DeBrangesOperator(ctx=ctx, beta=beta, norm_plus=norm_plus,
                             norm_minus=norm_minus)


def choose_beta(ctx: ModelContext, tol: float = 1e-10) -> complex:
    """First base point from a fixed candidate list with invertible Grams."""
    a = ctx.a
    candidates = [a / 2, a / 3, 1j * a / 2, 1j * a / 3, a / 4, -a / 2, -a / 3,
                  (0.5 + 0.25j) * a, (0.25 + 0.5j) * a]
    for cand in candidates:
        try:
            build(ctx, cand, tol=tol)
            return complex(cand)
        except SingularNormalizer:
            continue
    raise SingularNormalizer("no candidate base point has invertible kernel Grams")


def evaluate(e: DeBrangesOperator, z: complex):
    """Return ``(E_minus(z), E_plus(z))``."""
    z = complex(z)
    if not in_omega(e.ctx, z):
        raise DomainError(f"z = {z} outside the admissible set")
    q = 1.0 / np.conj(e.beta)
    e_plus = rho(z, e.beta) * kernel(e.ctx, z, e.beta).k @ e.norm_plus
    e_minus = -rho(z, q) * kernel(e.ctx, z, q).k @ e.norm_minus
    return e_minus, e_plus


def _derivatives(e: DeBrangesOperator, z0: complex, step: float = FD_STEP):
    """Central finite differences of E_- and E_+ at z0."""
    em_p, ep_p = evaluate(e, z0 + step)
    em_m, ep_m = evaluate(e, z0 - step)
    return (em_p - em_m) / (2.0 * step), (ep_p - ep_m) / (2.0 * step)


def reconstruction_residual(e: DeBrangesOperator, z: complex, w: complex) -> float:
    """Distance between the pair-built kernel and the model kernel at (z, w).

    On the confluent branch z conj(w) ~ 1 the quotient degenerates to a
    derivative, evaluated here by central differences; the model-side
    kernel itself has no singularity there.
    """
    z, w = complex(z), complex(w)
    k_model = kernel(e.ctx, z, w).k
    em_w, ep_w = evaluate(e, w)
    if abs(rho(z, w)) < CONFLUENCE_TOL:
        dem, dep = _derivatives(e, 1.0 / np.conj(w))
        k_pair = (dep @ ep_w.conj().T - dem @ em_w.conj().T) / (-np.conj(w))
    else:
        em_z, ep_z = evaluate(e, z)
        k_pair = (ep_z @ ep_w.conj().T - em_z @ em_w.conj().T) / rho(z, w)
    return opnorm(k_pair - k_model)


def _disc_points(count: int, r_max: float = 0.95) -> np.ndarray:
    """Deterministic low-discrepancy fill of the disc of radius r_max."""
    golden = (np.sqrt(5.0) - 1.0) / 2.0
    ks = np.arange(count)
    radii = r_max * np.sqrt((ks + 0.5) / count)
    angles = 2.0 * np.pi * np.mod(ks * golden, 1.0)
    return radii * np.exp(1j * angles)


@dataclass(frozen=True)
class RatioScanReport:
    max_disc_excess: float
    max_arc_defect: float
    skipped: list = field(default_factory=list)


def ratio_contractivity_scan(e: DeBrangesOperator, disc_grid: int = 64,
                             arc_grid: int = 16,
                             invert_tol: float = 1e-10) -> RatioScanReport:
    """Scan E_+^{-1} E_- for contractivity on the disc, unitarity on the arc.

    Grid points where E_+ is numerically singular are skipped and recorded;
    isolated singularities are removable for the extended ratio, so they do
    not falsify anything.
    """
    skipped = []

    def ratio_at(z):
        em, ep = evaluate(e, z)
        s = np.linalg.svd(ep, compute_uv=False)
        if s[-1] <= invert_tol * max(s[0], 1e-300):
            skipped.append(complex(z))
            return None
        return np.linalg.solve(ep, em)

    max_excess = 0.0
    for z in _disc_points(disc_grid):
        q = ratio_at(z)
        if q is not None:
            max_excess = max(max_excess, max(0.0, opnorm(q) - 1.0))

    max_defect = 0.0
    eye = np.eye(e.ctx.n)
    for z in arc_points(e.ctx, arc_grid):
        q = ratio_at(z)
        if q is not None:
            max_defect = max(max_defect,
                             opnorm(q.conj().T @ q - eye),
                             opnorm(q @ q.conj().T - eye))
    return RatioScanReport(max_disc_excess=max_excess, max_arc_defect=max_defect,
                           skipped=skipped)


@dataclass(frozen=True)
class IntersectionDims:
    per_z: list  # (z, dim(M_z^perp ∩ M_beta), dim(M_z^perp ∩ M_q))
    dim_m0_beta_perp: int
    dim_m0_q_perp: int
    sums_closed: bool  # always true at finite dimension


def _intersection_dim(a, b) -> int:
    if a.dim == 0 or b.dim == 0:
        return 0
    return a.dim + b.dim - numerical_rank(np.hstack([a.basis, b.basis]))


def intersection_dimension_report(ctx: ModelContext, beta: complex,
                                  z_grid) -> IntersectionDims:
    """Dimension data behind the Fredholmness of the kernel sections."""
    beta = complex(beta)
    q = 1.0 / np.conj(beta)
    m_beta = subspace_M(ctx, beta)
    m_q = subspace_M(ctx, q)
    per_z = []
    for z in z_grid:
        z = complex(z)
        if abs(abs(z) - 1.0) <= ctx.tol_circle or not in_omega(ctx, z):
            raise DomainError("grid points must lie in the admissible set, off the circle")
        mz_perp = subspace_M(ctx, z).perp()
        per_z.append((z, _intersection_dim(mz_perp, m_beta), _intersection_dim(mz_perp, m_q)))
    m0 = subspace_M(ctx, 0.0)
    return IntersectionDims(
        per_z=per_z,
        dim_m0_beta_perp=_intersection_dim(m0, m_beta.perp()),
        dim_m0_q_perp=_intersection_dim(m0, m_q.perp()),
        sums_closed=True,
    )


def fredholm_report(ctx: ModelContext, beta: complex, z_grid=None,
                    tol: float = 1e-10):
    """Invertibility of the kernel Grams and index-zero of kernel sections.

    Returns ``(inv_beta, inv_conj, index_zero)``.  The index of a square
    finite matrix (dim ker minus dim ker of the adjoint) is always zero;
    it is still evaluated from ranks at the grid points.
    """
    beta = complex(beta)
    q = 1.0 / np.conj(beta)

    def invertible(mat):
        s = np.linalg.svd(mat, compute_uv=False)
        return bool(s[-1] > tol * max(s[0], 1e-300))

    inv_beta = invertible(kernel(ctx, beta, beta).k)
    inv_conj = invertible(kernel(ctx, q, q).k)
    index_zero = True
    for z in (z_grid if z_grid is not None else [0.0, beta, 0.5 * beta]):
        k = kernel(ctx, complex(z), beta).k
        rank = numerical_rank(k)
        rank_adj = numerical_rank(k.conj().T)
        if (k.shape[1] - rank) - (k.shape[0] - rank_adj) != 0:
            index_zero = False
    return inv_beta, inv_conj, index_zero
