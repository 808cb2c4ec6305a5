"""Dense complex linear-algebra primitives the rest of the package builds on.

Everything works on plain ``numpy`` arrays of dtype complex128 and never
mutates its inputs.  Subspaces are carried around as orthonormal column
bases wrapped in :class:`Subspace`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, IndefiniteInput, NotHermitian

# Relative rank cut: singular values below RANK_TOL * max(shape) * sigma_max
# are treated as zero.  Every module inherits this default.
RANK_TOL = 1e-10


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a 2-d complex128 array and require finite entries."""
    m = np.atleast_2d(np.asarray(a, dtype=np.complex128))
    if m.size == 0:
        raise DimensionMismatch("empty matrix")
    if not (np.all(np.isfinite(m.real)) and np.all(np.isfinite(m.imag))):
        raise ValueError("matrix has non-finite entries")
    return m


def as_vector(v, dim: int | None = None) -> np.ndarray:
    """Coerce ``v`` to a 1-d complex128 array, optionally checking length."""
    w = np.asarray(v, dtype=np.complex128).reshape(-1)
    if dim is not None and w.shape[0] != dim:
        raise DimensionMismatch(f"expected vector of length {dim}, got {w.shape[0]}")
    return w


def opnorm(m) -> float:
    """Spectral norm (largest singular value); 0.0 for an all-zero matrix."""
    m = np.atleast_2d(np.asarray(m, dtype=np.complex128))
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


def _rank_cut(svals: np.ndarray, shape, tol_rank: float | None) -> float:
    if svals.size == 0:
        return 0.0
    smax = float(svals[0])
    rel = tol_rank if tol_rank is not None else RANK_TOL * max(shape)
    return rel * smax


def _fix_column_phases(q: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest entry is real positive.

    Fixes the gauge left free by the SVD so bases are reproducible across
    runs and LAPACK builds.
    """
    q = q.copy()
    for j in range(q.shape[1]):
        i = int(np.argmax(np.abs(q[:, j])))
        piv = q[i, j]
        if abs(piv) > 0:
            q[:, j] *= np.conj(piv) / abs(piv)
    return q


@dataclass(frozen=True)
class Subspace:
    """A subspace of C^ambient_dim given by an orthonormal column basis."""

    ambient_dim: int
    basis: np.ndarray  # ambient_dim x k, orthonormal columns
    tol_rank: float = field(default=RANK_TOL)

    def __post_init__(self):
        b = self.basis
        if b.ndim != 2 or b.shape[0] != self.ambient_dim:
            raise DimensionMismatch("basis shape does not match ambient dimension")
        if b.shape[1] > self.ambient_dim:
            raise DimensionMismatch("more basis columns than ambient dimension")
        k = b.shape[1]
        if k and opnorm(b.conj().T @ b - np.eye(k)) > 1e-8:
            raise ValueError("basis columns are not orthonormal")

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def projector(self) -> np.ndarray:
        """Orthogonal projector onto the subspace (ambient x ambient)."""
        return self.basis @ self.basis.conj().T

    def perp(self) -> "Subspace":
        """Orthogonal complement within the ambient space."""
        n, k = self.ambient_dim, self.dim
        if k == 0:
            return Subspace(n, _fix_column_phases(np.eye(n, dtype=np.complex128)), self.tol_rank)
        u, _, _ = np.linalg.svd(self.basis, full_matrices=True)
        return Subspace(n, _fix_column_phases(u[:, k:]), self.tol_rank)


def column_space(m, tol_rank: float | None = None) -> Subspace:
    """Orthonormal basis of the numerical column space of ``m``.

    The rank is the number of singular values above the (relative) cut;
    a zero matrix yields the zero subspace.
    """
    m = as_matrix(m)
    u, s, _ = np.linalg.svd(m)
    cut = _rank_cut(s, m.shape, tol_rank)
    rank = int(np.sum(s > cut))
    return Subspace(m.shape[0], _fix_column_phases(u[:, :rank]),
                    tol_rank if tol_rank is not None else RANK_TOL)


def kernel_space(m, tol_rank: float | None = None) -> Subspace:
    """Orthonormal basis of the numerical null space of ``m``."""
    m = as_matrix(m)
    _, s, vh = np.linalg.svd(m)
    cut = _rank_cut(s, m.shape, tol_rank)
    rank = int(np.sum(s > cut))
    return Subspace(m.shape[1], _fix_column_phases(vh[rank:].conj().T),
                    tol_rank if tol_rank is not None else RANK_TOL)


def numerical_rank(m, tol_rank: float | None = None) -> int:
    m = as_matrix(m)
    s = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(s > _rank_cut(s, m.shape, tol_rank)))


def solve_min_norm(a, b):
    """Minimum-norm least-squares solution of ``a x = b``.

    Returns ``(x, residual)`` with ``residual = ||a x - b||`` (Frobenius
    norm when ``b`` has several columns).
    """
    a = as_matrix(a)
    b_arr = np.asarray(b, dtype=np.complex128)
    rhs = b_arr.reshape(-1, 1) if b_arr.ndim == 1 else b_arr
    if rhs.shape[0] != a.shape[0]:
        raise DimensionMismatch("incompatible shapes in least-squares solve")
    x, _, _, _ = np.linalg.lstsq(a, rhs, rcond=None)
    residual = float(np.linalg.norm(a @ x - rhs))
    if b_arr.ndim == 1:
        x = x[:, 0]
    return x, residual


def hermitian_sqrt(m, tol: float = 1e-10) -> np.ndarray:
    """Positive-semidefinite square root of a Hermitian PSD matrix.

    Eigenvalues in ``[-tol * ||m||, 0)`` are clipped to zero so that defect
    Gramians of operators with norm 1 up to rounding stay admissible.
    Raises :class:`NotHermitian` or :class:`IndefiniteInput` otherwise.
    """
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch("square matrix required")
    scale = opnorm(m)
    if opnorm(m - m.conj().T) > tol * scale:
        raise NotHermitian("matrix is not Hermitian within tolerance")
    w, u = np.linalg.eigh((m + m.conj().T) / 2.0)
    if w.size and w[0] < -tol * scale:
        raise IndefiniteInput(f"eigenvalue {w[0]:.3e} below -tol*||M||")
    w = np.clip(w, 0.0, None)
    return (u * np.sqrt(w)) @ u.conj().T


def hermitian_inv_sqrt(m, tol: float = 1e-10) -> np.ndarray:
    """Inverse PSD square root; eigenvalues below ``tol * lambda_max`` raise.

    No regularization is applied: a floor violation signals a genuine
    hypothesis failure and must surface as an error.
    """
    from .errors import SingularNormalizer

    m = as_matrix(m)
    scale = opnorm(m)
    if opnorm(m - m.conj().T) > tol * max(scale, 1.0):
        raise NotHermitian("matrix is not Hermitian within tolerance")
    w, u = np.linalg.eigh((m + m.conj().T) / 2.0)
    if w.size == 0 or w[0] <= tol * w[-1] or w[-1] <= 0:
        raise SingularNormalizer("Gram matrix numerically singular")
    return (u / np.sqrt(w)) @ u.conj().T


@dataclass(frozen=True)
class SpectralMetrics:
    op_norm: float
    sigma_min: float
    eigvals: np.ndarray | None
    min_herm_eig: float | None


def spectral_metrics(m, herm_tol: float = 1e-10) -> SpectralMetrics:
    """Largest/smallest singular values, eigenvalues, and min Hermitian eigenvalue.

    ``eigvals`` is present only for square input; ``min_herm_eig`` only when
    the matrix is Hermitian within ``herm_tol * ||m||``.
    """
    m = as_matrix(m)
    s = np.linalg.svd(m, compute_uv=False)
    op_norm = float(s[0]) if s.size else 0.0
    sigma_min = float(s[-1]) if s.size else 0.0
    eigvals = None
    min_herm = None
    if m.shape[0] == m.shape[1]:
        eigvals = np.linalg.eigvals(m)
        if opnorm(m - m.conj().T) <= herm_tol * max(op_norm, 1e-300):
            min_herm = float(np.linalg.eigvalsh((m + m.conj().T) / 2.0)[0])
        elif op_norm == 0.0:
            min_herm = 0.0
    return SpectralMetrics(op_norm, sigma_min, eigvals, min_herm)


def multiset_distance(xs, ys) -> float:
    """Greedy nearest-neighbour matching distance between eigenvalue multisets.

    Pairs each value of ``xs`` (in a deterministic order) with its nearest
    unused value of ``ys`` and returns the largest pair distance.
    """
    xs = np.asarray(xs, dtype=np.complex128).reshape(-1)
    ys = np.asarray(ys, dtype=np.complex128).reshape(-1)
    if xs.shape != ys.shape:
        raise DimensionMismatch("multisets must have equal cardinality")
    order = np.lexsort((xs.imag, xs.real))
    remaining = list(ys)
    worst = 0.0
    for i in order:
        d = [abs(xs[i] - y) for y in remaining]
        j = int(np.argmin(d))
        worst = max(worst, d[j])
        remaining.pop(j)
    return worst


def gap_delta(qa: np.ndarray, qb: np.ndarray) -> float:
    """Projection gap between subspaces given by orthonormal bases."""
    if qa.shape[0] != qb.shape[0]:
        raise DimensionMismatch("ambient dimensions differ")

    def resid(q_onto, cols):
        if cols.shape[1] == 0:
            return 0.0
        if q_onto.shape[1] == 0:
            return opnorm(cols)
        return opnorm(cols - q_onto @ (q_onto.conj().T @ cols))

    return max(resid(qa, qb), resid(qb, qa))
