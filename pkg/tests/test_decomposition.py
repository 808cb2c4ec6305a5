import numpy as np
import pytest

from cnumodel import (
    arc_points,
    decompose,
    empirical_arc_chord,
    in_omega,
    make_context,
    projector_PY,
    straus_extension,
    subspace_M,
    validate,
)
from cnumodel.errors import DomainError, NotCnu
from cnumodel.gaps import direct_sum_check
from cnumodel.linalg import Subspace, gap_delta, opnorm

from conftest import GOLDEN, rng_for


def closed_form_py(z):
    """P_Y(z) for the scalar zero operator, derived by a 2x2 solve."""
    return np.array([[1.0, z], [1.0, z]], dtype=complex) / (1.0 + z)


def test_make_context_fix1(ctx1):
    assert abs(ctx1.c_a - GOLDEN) <= 1e-12
    assert abs(ctx1.epsilon - GOLDEN / 3.0) <= 1e-12
    expected = np.array([[1.0], [1.0]]) / np.sqrt(2.0)
    assert gap_delta(ctx1.y.basis, expected) <= 1e-13


def test_make_context_fix2(ctx2):
    assert ctx2.y.dim == 2
    # Y is the orthogonal complement of the a-shifted range
    m_a = subspace_M(ctx2, ctx2.a)
    assert opnorm(ctx2.y.basis.conj().T @ m_a.basis) <= 1e-12


def test_make_context_rejects_unitary():
    with pytest.raises(NotCnu):
        make_context(validate(np.array([[1.0]])), 1.0)


def test_in_omega(ctx1):
    assert in_omega(ctx1, 0.5)
    assert in_omega(ctx1, np.exp(0.1j))  # |z - 1| ~ 0.0999 < 0.206
    assert not in_omega(ctx1, -1.0)
    assert in_omega(ctx1, 2.0)


def test_subspace_m(ctx1, ctx2):
    for z in (0.5, -0.25j, 1.5):
        expected = np.array([[-z], [1.0]]) / np.sqrt(1 + abs(z) ** 2)
        assert gap_delta(subspace_M(ctx1, z).basis, expected) <= 1e-13
    m0 = subspace_M(ctx2, 0.0)
    cols = np.array([[0, 1], [0, 0], [1, 0], [0, 0]], dtype=complex)
    assert gap_delta(m0.basis, cols / np.linalg.norm(cols, axis=0)) <= 1e-13


def test_subspace_m_full_dim(ctx1, ctx2, random_contexts):
    rng = rng_for("mz-dim")
    for ctx in [ctx1, ctx2] + random_contexts:
        for _ in range(10):
            z = rng.uniform(0.1, 0.9) * np.exp(2j * np.pi * rng.uniform())
            assert subspace_M(ctx, z).dim == ctx.n


def test_decompose_closed_form(ctx1):
    g, y, residual = decompose(ctx1, 0.5, [0.0, 1.0])
    assert abs(g[0] - 2.0 / 3.0) <= 1e-12
    assert residual <= 1e-12
    py_f = ctx1.y.basis @ y
    assert np.allclose(py_f, [1.0 / 3.0, 1.0 / 3.0], atol=1e-12)


def test_decompose_pure_components(ctx1, ctx2, random_contexts):
    rng = rng_for("pure-components")
    for ctx in [ctx1, ctx2] + random_contexts:
        z = 0.5 * ctx.a
        m = subspace_M(ctx, z)
        f = m.basis @ (rng.standard_normal(m.dim) + 1j * rng.standard_normal(m.dim))
        _, y, residual = decompose(ctx, z, f)
        assert np.linalg.norm(y) <= 1e-10 * max(1.0, np.linalg.norm(f))
        assert residual <= 1e-10 * max(1.0, np.linalg.norm(f))

        fy = ctx.y.basis @ (rng.standard_normal(ctx.n) + 1j * rng.standard_normal(ctx.n))
        g, y2, _ = decompose(ctx, z, fy)
        assert np.linalg.norm(g) <= 1e-10 * max(1.0, np.linalg.norm(fy))
        assert np.linalg.norm(ctx.y.basis @ y2 - fy) <= 1e-10 * max(1.0, np.linalg.norm(fy))


def test_decompose_domain_error(ctx1):
    with pytest.raises(DomainError):
        decompose(ctx1, -1.0, [1.0, 0.0])


def test_projector_closed_form(ctx1):
    for z in (0.0, 0.5, 2.0, 0.3j, -0.4 + 0.2j):
        ev = projector_PY(ctx1, z)
        assert opnorm(ev.p_y - closed_form_py(z)) <= 1e-12
    # at z = 0 the projector copies the first coordinate into both slots
    ev0 = projector_PY(ctx1, 0.0)
    assert np.allclose(ev0.p_y @ np.array([2.0, -5.0]), [2.0, 2.0], atol=1e-12)


def test_projector_orthogonal_at_a(ctx1, ctx2, random_contexts):
    for ctx in [ctx1, ctx2] + random_contexts:
        ev = projector_PY(ctx, ctx.a)
        assert opnorm(ev.p_y - ctx.y.projector()) <= 1e-10


def test_projector_invariants(ctx1, ctx2, random_contexts):
    rng = rng_for("projector-invariants")
    for ctx in [ctx1, ctx2] + random_contexts:
        zs = [0.2 * ctx.a, -0.6 * ctx.a, 0.5j * ctx.a, 1.8 * ctx.a]
        zs += list(arc_points(ctx, 4))
        for z in zs:
            ev = projector_PY(ctx, z)
            p = ev.p_y
            assert opnorm(p @ p - p) <= 1e-9
            assert opnorm(p @ subspace_M(ctx, z).basis) <= 1e-9
            from cnumodel.linalg import column_space

            assert gap_delta(column_space(p).basis, ctx.y.basis) <= 1e-9
            for _ in range(5):
                f = rng.standard_normal(2 * ctx.n) + 1j * rng.standard_normal(2 * ctx.n)
                g, y, residual = decompose(ctx, z, f)
                emb = np.concatenate([g, np.zeros(ctx.n)])
                rec = (ctx.dilation.v0 - z * np.eye(2 * ctx.n)) @ emb + ctx.y.basis @ y
                assert np.linalg.norm(f - rec) <= 1e-9 * np.linalg.norm(f)


def test_straus_extension_fix1(ctx1):
    u, residual, dom, rng_dim = straus_extension(ctx1)
    assert np.allclose(u, [[0.0, 1.0], [1.0, 0.0]], atol=1e-12)
    assert residual <= 1e-12
    assert dom == rng_dim == 2


def test_straus_extension_general(ctx2, random_contexts):
    for ctx in [ctx2] + random_contexts:
        _, residual, _, _ = straus_extension(ctx)
        assert residual <= 1e-10 * ctx.n


def test_initial_space_meets_y_trivially(ctx1, ctx2, random_contexts):
    for ctx in [ctx1, ctx2] + random_contexts:
        n = ctx.n
        top = np.vstack([np.eye(n), np.zeros((n, n))]).astype(complex)
        trivial, closed, positive = direct_sum_check(Subspace(2 * n, top), ctx.y)
        assert trivial and closed and positive


def test_arc_points_and_probe(ctx1):
    pts = arc_points(ctx1, 16)
    assert len(pts) == 16
    assert all(abs(abs(z) - 1.0) <= 1e-12 for z in pts)
    assert all(abs(z - 1.0) < ctx1.epsilon for z in pts)
    assert np.allclose(arc_points(ctx1, 1), [1.0])
    # the split degenerates only opposite the base point, so the empirical
    # chord reaches all the way across
    assert empirical_arc_chord(ctx1) >= ctx1.epsilon
