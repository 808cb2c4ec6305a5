"""Two-sided evaluation of the coincidence claim between the characteristic
function and the oblique projector family.

One side conjugates the characteristic function by the Julia unitary of the
auxiliary contraction S_a; the other routes the same defect vector through
P_Y(z) after the coordinate swap J.  Both sides are computed here by
independent code paths and their distance is *reported*, never asserted:
on the scalar desk fixture the two sides genuinely differ (residual about
0.0286 at z = 1/2), and the harness must surface that number rather than
hide it.

Two variants of the split of [0; D_T f] are provided:

* ``paper``   - the closed-form candidate pair (h, j) built from the
  normal-equations inverse (I + |z|^2 - z T* - conj(z) T)^{-1}; this is an
  orthogonal-projection solve onto M_z and does not reproduce the oblique
  split exactly;
* ``oblique`` - the exact generator of the oblique split along Y, namely
  j = (I + conj(a) z - conj(a) T - z T*)^{-1} D_T^2 f, solved independently
  of the decomposition module for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .contraction import char_function, char_function_full
from .decomposition import ModelContext, apply_PY
from .errors import BadParam, DomainError, SingularResolvent, ToolkitError
from .linalg import as_vector, hermitian_inv_sqrt, hermitian_sqrt, opnorm


@dataclass(frozen=True)
class CoincidenceContext:
    ctx: ModelContext
    s_a: np.ndarray       # auxiliary contraction on H
    gamma_a: np.ndarray   # Julia unitary of s_a on H + H
    j_swap: np.ndarray    # coordinate swap [[0, I], [I, 0]]
    q_gram: np.ndarray    # I + D_T (T-a)^{-1} (T*-conj(a))^{-1} D_T
    q_inv_sqrt: np.ndarray
    defect_identity_residual: float


@dataclass(frozen=True)
class CoincidenceSample:
    z: complex
    f: np.ndarray
    lhs: np.ndarray
    rhs: np.ndarray
    residual: float


def build(ctx: ModelContext, identity_tol: float = 1e-10) -> CoincidenceContext:
    """Assemble S_a, its Julia unitary, and the swap.

    The algebraic identity I - S_a* S_a = Q^{-1} (with Q the Gram above) is
    enforced at build time; it guarantees S_a is a contraction and fixes its
    defect operator in closed form.
    """
    c = ctx.contraction
    n = c.n
    a = ctx.a
    eye = np.eye(n, dtype=np.complex128)
    t_minus_a = c.t - a * eye
    if np.linalg.svd(t_minus_a, compute_uv=False)[-1] <= 1e-12:
        raise SingularResolvent("T - aI numerically singular")
    # (T-a)^{-1}(T*-conj(a))^{-1} = ((T*-conj(a))(T-a))^{-1}, Hermitian PSD
    gram_mid = np.linalg.inv(t_minus_a.conj().T @ t_minus_a)
    q_gram = eye + c.d_t @ gram_mid @ c.d_t
    q_gram = (q_gram + q_gram.conj().T) / 2.0
    q_inv_sqrt = hermitian_inv_sqrt(q_gram)
    s_a = -np.linalg.solve(c.t.conj().T - np.conj(a) * eye, c.d_t) @ q_inv_sqrt

    defect = eye - s_a.conj().T @ s_a
    residual = opnorm(defect - np.linalg.inv(q_gram))
    if residual > identity_tol:
        raise ToolkitError(f"defect identity residual {residual:.3e} exceeds {identity_tol:.0e}")

    d_sa = hermitian_sqrt(defect)
    d_sastar = hermitian_sqrt(eye - s_a @ s_a.conj().T)
    gamma_a = np.block([[s_a, d_sastar], [d_sa, -s_a.conj().T]])
    zero = np.zeros((n, n), dtype=np.complex128)
    j_swap = np.block([[zero, eye], [eye, zero]])
    return CoincidenceContext(ctx=ctx, s_a=s_a, gamma_a=gamma_a, j_swap=j_swap,
                              q_gram=q_gram, q_inv_sqrt=q_inv_sqrt,
                              defect_identity_residual=residual)


def split_y_parameter(cc: CoincidenceContext, z: complex, f) -> np.ndarray:
    """Candidate parameter of the Y-part of [0; D_T f]:
    Q^{-1/2} D_{T*} (I - z T*)^{-1} (z - T) f."""
    c = cc.ctx.contraction
    z = complex(z)
    f = as_vector(f, c.n)
    eye = np.eye(c.n, dtype=np.complex128)
    pencil = eye - z * c.t.conj().T
    if np.linalg.svd(pencil, compute_uv=False)[-1] <= 1e-12:
        raise SingularResolvent(f"I - z T* singular at z = {z}")
    return cc.q_inv_sqrt @ c.d_tstar @ np.linalg.solve(pencil, (z * eye - c.t) @ f)


def split_generator(cc: CoincidenceContext, variant: str, z: complex, f) -> np.ndarray:
    """Generator of the M_z-part of the split of [0; D_T f].

    ``paper`` uses the normal-equations inverse with the candidate h;
    ``oblique`` solves the true two-component system along Y.
    """
    c = cc.ctx.contraction
    a = cc.ctx.a
    z = complex(z)
    f = as_vector(f, c.n)
    eye = np.eye(c.n, dtype=np.complex128)
    if variant == "paper":
        h = split_y_parameter(cc, z, f)
        gram = (1.0 + abs(z) ** 2) * eye - z * c.t.conj().T - np.conj(z) * c.t
        rhs = (c.t.conj().T - np.conj(z) * eye) @ np.linalg.solve(
            c.t.conj().T - np.conj(a) * eye, c.d_t @ h) + c.d_t @ (c.d_t @ f - h)
        return np.linalg.solve(gram, rhs)
    if variant == "oblique":
        pencil = (1.0 + np.conj(a) * z) * eye - np.conj(a) * c.t - z * c.t.conj().T
        s = np.linalg.svd(pencil, compute_uv=False)
        if s[-1] <= 1e-12 * max(s[0], 1.0):
            raise SingularResolvent(f"oblique pencil singular at z = {z}")
        return np.linalg.solve(pencil, c.d_t @ (c.d_t @ f))
    raise BadParam(f"unknown variant {variant!r}")


def split_residuals(cc: CoincidenceContext, variant: str, z: complex, f):
    """Component residuals of [0; D_T f] = [(T-z)j; D_T j] + [-(T*-abar)^{-1} D_T h; h].

    For the paper variant ``h`` is the closed-form candidate; for the
    oblique variant ``h = D_T (f - j)``, which zeroes the second component
    by construction.  Returns ``(first, second)``.
    """
    c = cc.ctx.contraction
    a = cc.ctx.a
    z = complex(z)
    f = as_vector(f, c.n)
    j = split_generator(cc, variant, z, f)
    if variant == "paper":
        h = split_y_parameter(cc, z, f)
    else:
        h = c.d_t @ (f - j)
    eye = np.eye(c.n, dtype=np.complex128)
    y_top = -np.linalg.solve(c.t.conj().T - np.conj(a) * eye, c.d_t @ h)
    first = float(np.linalg.norm((c.t - z * eye) @ j + y_top))
    second = float(np.linalg.norm(c.d_t @ j + h - c.d_t @ f))
    return first, second


def embed_top(cc: CoincidenceContext, x) -> np.ndarray:
    x = as_vector(x, cc.ctx.n)
    return np.concatenate([x, np.zeros(cc.ctx.n, dtype=np.complex128)])


def coincidence_residual(cc: CoincidenceContext, z: complex, f) -> CoincidenceSample:
    """Distance between the two routes Gamma_a Theta(z) D_T f and P_Y(z) J [D_T f; 0].

    Computed through independent code paths on both sides; the value is
    recorded, not asserted against zero.
    """
    z = complex(z)
    if abs(z) >= 1.0:
        raise DomainError("coincidence is evaluated on the open disc")
    c = cc.ctx.contraction
    f = as_vector(f, c.n)
    theta_df = char_function_full(c, z) @ (c.d_t @ f)
    lhs = cc.gamma_a @ embed_top(cc, theta_df)
    rhs = apply_PY(cc.ctx, z, cc.j_swap @ embed_top(cc, c.d_t @ f))
    residual = float(np.linalg.norm(lhs - rhs))
    return CoincidenceSample(z=z, f=f, lhs=lhs, rhs=rhs, residual=residual)


def fz_gram_check(cc: CoincidenceContext, z: complex):
    """Gram identity and lower bound for the column map j -> [(T-z)j; D_T j].

    The Gram equals I + |z|^2 - conj(z) T - z T* exactly, and its smallest
    eigenvalue is at least (1 - |z|)^2.  Returns ``(gram_residual,
    lower_bound_ok)``.
    """
    c = cc.ctx.contraction
    z = complex(z)
    eye = np.eye(c.n, dtype=np.complex128)
    cols = np.vstack([c.t - z * eye, c.d_t])
    gram = cols.conj().T @ cols
    closed = (1.0 + abs(z) ** 2) * eye - np.conj(z) * c.t - z * c.t.conj().T
    gram_residual = opnorm(gram - closed)
    smallest = float(np.linalg.eigvalsh((gram + gram.conj().T) / 2.0)[0])
    bound_ok = smallest >= (1.0 - abs(z)) ** 2 - 1e-10
    return gram_residual, bool(bound_ok)


def final_kernel_identity_residual(cc: CoincidenceContext, z: complex, w: complex) -> float:
    """Distance between Gamma_a* P_Y(z) P_Y(w)* Gamma_a compressed to the
    embedded second defect space and Theta(z) Theta(w)*.

    Reported, not asserted, for the same reason as the coincidence residual.
    """
    z, w = complex(z), complex(w)
    if abs(z) >= 1.0 or abs(w) >= 1.0:
        raise DomainError("identity is evaluated on the open disc")
    ctx = cc.ctx
    c = ctx.contraction
    basis = c.defect_tstar.basis
    embedded = np.vstack([basis, np.zeros_like(basis)])

    from .decomposition import projector_PY

    p_z = projector_PY(ctx, z).p_y
    p_w = projector_PY(ctx, w).p_y
    lhs = embedded.conj().T @ cc.gamma_a.conj().T @ p_z @ p_w.conj().T @ cc.gamma_a @ embedded
    theta_z = char_function(c, z)
    theta_w = char_function(c, w)
    rhs = theta_z @ theta_w.conj().T
    return opnorm(lhs - rhs)
