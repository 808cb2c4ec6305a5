"""Independent brute-force oracle for the coincidence-type residuals.

Everything in this module is assembled from raw numpy primitives and kept
deliberately free of imports from the rest of the package: the projector is
obtained through a pseudo-inverse instead of an LU solve, and the
complement subspace through a full SVD instead of the closed-form
parametrization.  Agreement between these values and the main code path is
asserted by the harness; the values themselves are not.
"""

from __future__ import annotations

import numpy as np


def _defect_ops(t: np.ndarray):
    n = t.shape[0]
    eye = np.eye(n, dtype=np.complex128)

    def psd_sqrt(m):
        w, u = np.linalg.eigh((m + m.conj().T) / 2.0)
        return (u * np.sqrt(np.clip(w, 0.0, None))) @ u.conj().T

    return psd_sqrt(eye - t.conj().T @ t), psd_sqrt(eye - t @ t.conj().T)


def _complement_basis(cols: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the orthogonal complement of the column span."""
    u, s, _ = np.linalg.svd(cols, full_matrices=True)
    rank = int(np.sum(s > 1e-12 * (s[0] if s.size else 1.0) * max(cols.shape)))
    return u[:, rank:]


def projector_matrix(t: np.ndarray, a: complex, z: complex) -> np.ndarray:
    """Oblique projector onto the complement of the a-shifted range, along
    the z-shifted range, via pseudo-inverse."""
    t = np.asarray(t, dtype=np.complex128)
    n = t.shape[0]
    d_t, _ = _defect_ops(t)
    eye = np.eye(n, dtype=np.complex128)
    m_a = np.vstack([t - a * eye, d_t])
    y_basis = _complement_basis(m_a)
    m_z = np.vstack([t - z * eye, d_t])
    stacked = np.hstack([m_z, y_basis])
    coeff = np.linalg.pinv(stacked)[n:, :]
    return y_basis @ coeff


def gamma_matrix(t: np.ndarray, a: complex) -> np.ndarray:
    """Julia unitary of the auxiliary contraction, assembled from scratch."""
    t = np.asarray(t, dtype=np.complex128)
    n = t.shape[0]
    d_t, _ = _defect_ops(t)
    eye = np.eye(n, dtype=np.complex128)
    shifted = t - a * eye
    mid = np.linalg.inv(shifted.conj().T @ shifted)
    q = eye + d_t @ mid @ d_t
    w, u = np.linalg.eigh((q + q.conj().T) / 2.0)
    q_inv_sqrt = (u / np.sqrt(w)) @ u.conj().T
    s_a = -np.linalg.inv(t.conj().T - np.conj(a) * eye) @ d_t @ q_inv_sqrt

    def psd_sqrt(m):
        ww, uu = np.linalg.eigh((m + m.conj().T) / 2.0)
        return (uu * np.sqrt(np.clip(ww, 0.0, None))) @ uu.conj().T

    d_sa = psd_sqrt(eye - s_a.conj().T @ s_a)
    d_sastar = psd_sqrt(eye - s_a @ s_a.conj().T)
    return np.block([[s_a, d_sastar], [d_sa, -s_a.conj().T]])


def char_matrix(t: np.ndarray, z: complex) -> np.ndarray:
    t = np.asarray(t, dtype=np.complex128)
    n = t.shape[0]
    d_t, d_tstar = _defect_ops(t)
    eye = np.eye(n, dtype=np.complex128)
    return -t + z * d_tstar @ np.linalg.inv(eye - z * t.conj().T) @ d_t


def coincidence_residual(t, a: complex, z: complex, f) -> float:
    """Oracle value of the two-route coincidence residual."""
    t = np.asarray(t, dtype=np.complex128)
    n = t.shape[0]
    f = np.asarray(f, dtype=np.complex128).reshape(-1)
    d_t, _ = _defect_ops(t)
    zeros = np.zeros(n, dtype=np.complex128)
    lhs = gamma_matrix(t, a) @ np.concatenate([char_matrix(t, z) @ d_t @ f, zeros])
    rhs = projector_matrix(t, a, z) @ np.concatenate([zeros, d_t @ f])
    return float(np.linalg.norm(lhs - rhs))


def split_residuals(t, a: complex, z: complex, f):
    """Oracle values of the closed-form split residuals (paper variant)."""
    t = np.asarray(t, dtype=np.complex128)
    n = t.shape[0]
    f = np.asarray(f, dtype=np.complex128).reshape(-1)
    d_t, d_tstar = _defect_ops(t)
    eye = np.eye(n, dtype=np.complex128)
    shifted = t - a * eye
    mid = np.linalg.inv(shifted.conj().T @ shifted)
    q = eye + d_t @ mid @ d_t
    w, u = np.linalg.eigh((q + q.conj().T) / 2.0)
    q_inv_sqrt = (u / np.sqrt(w)) @ u.conj().T
    h = q_inv_sqrt @ d_tstar @ np.linalg.inv(eye - z * t.conj().T) @ (z * eye - t) @ f
    gram = (1.0 + abs(z) ** 2) * eye - z * t.conj().T - np.conj(z) * t
    adj_inv = np.linalg.inv(t.conj().T - np.conj(a) * eye)
    j = np.linalg.inv(gram) @ ((t.conj().T - np.conj(z) * eye) @ adj_inv @ d_t @ h
                               + d_t @ (d_t @ f - h))
    first = float(np.linalg.norm((t - z * eye) @ j - adj_inv @ d_t @ h))
    second = float(np.linalg.norm(d_t @ j + h - d_t @ f))
    return first, second


def final_kernel_identity_residual(t, a: complex, z: complex, w: complex) -> float:
    """Oracle value of the compressed kernel-vs-characteristic residual."""
    t = np.asarray(t, dtype=np.complex128)
    n = t.shape[0]
    _, d_tstar = _defect_ops(t)
    u, s, _ = np.linalg.svd(d_tstar)
    rank = int(np.sum(s > 1e-12 * max(s[0] if s.size else 1.0, 1.0) * n))
    basis = u[:, :rank]
    # same deterministic gauge as the main path: biggest entry real positive
    for jcol in range(basis.shape[1]):
        i = int(np.argmax(np.abs(basis[:, jcol])))
        piv = basis[i, jcol]
        if abs(piv) > 0:
            basis[:, jcol] = basis[:, jcol] * (np.conj(piv) / abs(piv))
    embedded = np.vstack([basis, np.zeros_like(basis)])
    gamma = gamma_matrix(t, a)
    p_z = projector_matrix(t, a, z)
    p_w = projector_matrix(t, a, w)
    lhs = embedded.conj().T @ gamma.conj().T @ p_z @ p_w.conj().T @ gamma @ embedded
    theta_z = basis.conj().T @ char_matrix(t, z)
    theta_w = basis.conj().T @ char_matrix(t, w)
    rhs = theta_z @ theta_w.conj().T
    return float(np.linalg.norm(lhs - rhs, 2))
