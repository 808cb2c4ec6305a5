import numpy as np
import pytest

from cnumodel import (
    apply_R,
    compression_check,
    injectivity_check,
    intertwine_residual,
    kernel,
    psi_eval,
    s_beta,
    subspace_M,
)
from cnumodel.errors import NotInHbeta
from cnumodel.linalg import opnorm
from cnumodel.rkhs import reproducing_quadrature_residual

from conftest import rng_for


def fix1_kernel(z, w):
    return 2.0 * (1.0 + z * np.conj(w)) / ((1.0 + z) * (1.0 + np.conj(w)))


def test_psi_closed_forms(ctx1):
    # coordinates against the normalized diagonal direction; the basis sign
    # is fixed by the gauge convention, compare against the actual basis
    for z in (0.3, -0.4 + 0.2j, 2.0):
        coord = psi_eval(ctx1, [1.0, 0.0], z)[0]
        scale = (ctx1.y.basis[0, 0] + ctx1.y.basis[1, 0]).conj()
        assert abs(coord - scale / (1.0 + z)) <= 1e-12
        coord2 = psi_eval(ctx1, [0.0, 1.0], z)[0]
        assert abs(coord2 - scale * z / (1.0 + z)) <= 1e-12


def test_psi_vanishes_on_mz(ctx1, ctx2, random_contexts):
    rng = rng_for("psi-mz")
    for ctx in [ctx1, ctx2] + random_contexts:
        z = 0.4 * ctx.a
        m = subspace_M(ctx, z)
        f = m.basis @ (rng.standard_normal(m.dim) + 1j * rng.standard_normal(m.dim))
        assert np.linalg.norm(psi_eval(ctx, f, z)) <= 1e-10


def test_kernel_closed_form(ctx1):
    for z, w in [(0.5, 0.5), (0.3, -0.2), (0.5j, 0.25), (2.0, 0.1)]:
        k = kernel(ctx1, z, w).k[0, 0]
        assert abs(k - fix1_kernel(z, w)) <= 1e-12
    assert abs(kernel(ctx1, 0.5, 0.5).k[0, 0] - 10.0 / 9.0) <= 1e-12


def test_kernel_at_base_point(ctx1, ctx2, random_contexts):
    for ctx in [ctx1, ctx2] + random_contexts:
        k = kernel(ctx, ctx.a, ctx.a).k
        assert opnorm(k - np.eye(ctx.n)) <= 1e-10


def test_kernel_hermitian_structure(ctx1, ctx2, random_contexts):
    for ctx in [ctx1, ctx2] + random_contexts:
        pts = [0.0, 0.4 * ctx.a, -0.3j * ctx.a, 1.7 * ctx.a]
        for z in pts:
            for w in pts:
                kzw = kernel(ctx, z, w).k
                kwz = kernel(ctx, w, z).k
                assert opnorm(kzw.conj().T - kwz) <= 1e-10
        kd = kernel(ctx, pts[1], pts[1]).k
        assert np.linalg.eigvalsh((kd + kd.conj().T) / 2.0)[0] >= -1e-10


def test_kernel_gram_psd(ctx1, ctx2, random_contexts):
    for ctx in [ctx1, ctx2] + random_contexts:
        pts = [0.0, 0.5 * ctx.a, -0.4 * ctx.a, 0.3j * ctx.a,
               1.6 * ctx.a, (0.2 - 0.4j) * ctx.a, 2.5 * ctx.a, ctx.a]
        gram = np.block([[kernel(ctx, zi, zj).k for zj in pts] for zi in pts])
        w = np.linalg.eigvalsh((gram + gram.conj().T) / 2.0)
        assert w[0] >= -1e-10


def test_intertwine_closed_form(ctx1):
    assert intertwine_residual(ctx1, 0.5, [1.0]) <= 1e-13
    assert intertwine_residual(ctx1, 0.0, [1.0]) <= 1e-13


def test_intertwine_grid(ctx2, random_contexts):
    rng = rng_for("intertwine")
    for ctx in [ctx2] + random_contexts:
        for _ in range(20):
            z = rng.uniform(0.05, 0.9) * np.exp(2j * np.pi * rng.uniform())
            f = rng.standard_normal(ctx.n) + 1j * rng.standard_normal(ctx.n)
            assert intertwine_residual(ctx, z, f) <= 1e-10 * max(1.0, np.linalg.norm(f))


def test_apply_r_closed_form(ctx1):
    gp = apply_R(ctx1, 0.5, [-0.5, 1.0])
    assert np.allclose(gp, [1.0, 0.0], atol=1e-12)
    # difference quotient at an auxiliary point: both sides equal 4*sqrt(2)/5
    # in the gauge-fixed coordinate, checked against each other
    quot = (psi_eval(ctx1, [-0.5, 1.0], 0.25) - psi_eval(ctx1, [-0.5, 1.0], 0.5)) / (0.25 - 0.5)
    assert np.linalg.norm(quot - psi_eval(ctx1, gp, 0.25)) <= 1e-10
    assert abs(abs(quot[0]) - 4.0 * np.sqrt(2.0) / 5.0) <= 1e-12


def test_apply_r_in_y(ctx1, ctx2):
    for ctx in (ctx1, ctx2):
        f = ctx.y.basis[:, 0]
        gp = apply_R(ctx, ctx.a, f)
        assert np.linalg.norm(gp) <= 1e-10


def test_apply_r_difference_quotient(ctx2, random_contexts):
    rng = rng_for("diff-quotient")
    for ctx in [ctx2] + random_contexts:
        z = 0.45 * ctx.a
        f = rng.standard_normal(2 * ctx.n) + 1j * rng.standard_normal(2 * ctx.n)
        gp = apply_R(ctx, z, f)
        for w in [0.2 * ctx.a, -0.3 * ctx.a, 0.6j * ctx.a, 1.5 * ctx.a, 0.0]:
            quot = (psi_eval(ctx, f, w) - psi_eval(ctx, f, z)) / (w - z)
            assert np.linalg.norm(quot - psi_eval(ctx, gp, w)) \
                <= 1e-9 * max(1.0, np.linalg.norm(f))


def test_s_beta_closed_form(ctx1):
    sf, ires, vres = s_beta(ctx1, 0.5, [-0.5, 1.0])
    assert np.allclose(sf, [1.0, -0.5], atol=1e-12)
    assert abs(np.linalg.norm(sf) ** 2 - 1.25) <= 1e-12
    assert ires <= 1e-12 and vres <= 1e-12


def test_s_beta_zero_vector(ctx1):
    sf, ires, vres = s_beta(ctx1, 0.5, [0.0, 0.0])
    assert np.allclose(sf, 0.0) and ires == 0.0 and vres == 0.0


def test_s_beta_rejects_nonvanishing(ctx1):
    with pytest.raises(NotInHbeta):
        s_beta(ctx1, 0.5, [1.0, 1.0])


def test_s_beta_full_slice(ctx2, random_contexts):
    for ctx in [ctx2] + random_contexts:
        beta = ctx.a / 2.0
        m_beta = subspace_M(ctx, beta)
        for k in range(m_beta.dim):
            _, ires, vres = s_beta(ctx, beta, m_beta.basis[:, k])
            assert ires <= 1e-9 and vres <= 1e-9


def test_injectivity(ctx1, ctx2):
    assert injectivity_check(ctx1, [0.0, 0.5]) == 0
    with pytest.warns(RuntimeWarning):
        assert injectivity_check(ctx1, [0.0]) == ctx1.n
    assert injectivity_check(ctx2, [0.0, 0.5, -0.3, 0.4j]) == 0


def test_compression(ctx1, ctx2, random_contexts):
    assert compression_check(ctx1) <= 1e-14
    for ctx in [ctx2] + random_contexts:
        assert compression_check(ctx) <= 1e-10


def test_reproducing_quadrature(ctx1, ctx2, random_contexts):
    rng = rng_for("quadrature")
    for ctx in [ctx1, ctx2] + random_contexts:
        f = rng.standard_normal(2 * ctx.n) + 1j * rng.standard_normal(2 * ctx.n)
        g = rng.standard_normal(2 * ctx.n) + 1j * rng.standard_normal(2 * ctx.n)
        res = reproducing_quadrature_residual(ctx, f, g,
                                              [0.0, 0.4 * ctx.a, -0.35 * ctx.a])
        assert res <= 1e-8 * np.linalg.norm(f) * np.linalg.norm(g)
