import numpy as np
import pytest

from cnumodel import (
    build_debranges,
    choose_beta,
    evaluate,
    fredholm_report,
    intersection_dimension_report,
    kernel,
    ratio_contractivity_scan,
    reconstruction_residual,
    rho,
)
from cnumodel.errors import BadBeta
from cnumodel.linalg import hermitian_sqrt, opnorm

from conftest import rng_for

SAMPLES = [0.0, 0.3, -0.6, 0.2 + 0.3j, 1.7, -1.3, 0.5j, 0.9, -0.45j, 2.4]


def e_plus_closed(z):
    return np.sqrt(6.0 / 5.0) * (4.0 - z**2) / (3.0 * (1.0 + z))


def e_minus_closed(z):
    return 2.0 * np.sqrt(3.0 / 10.0) * (4.0 * z**2 - 1.0) / (3.0 * (1.0 + z))


def test_rho_symmetry():
    assert rho(0.3 + 0.2j, 0.1 - 0.5j) == np.conj(rho(0.1 - 0.5j, 0.3 + 0.2j))


def test_normalizers_fix1(ctx1):
    e = build_debranges(ctx1, 0.5)
    # Gram values are both 10/9; the prefactors are the rho terms
    assert abs(e.norm_plus[0, 0] - (5.0 / 6.0) ** -0.5) <= 1e-12
    assert abs(e.norm_minus[0, 0] - (10.0 / 3.0) ** -0.5) <= 1e-12


def test_build_rejects_bad_beta(ctx1):
    with pytest.raises(BadBeta):
        build_debranges(ctx1, 0.0)
    with pytest.raises(BadBeta):
        build_debranges(ctx1, 1.2)


def test_evaluate_closed_forms(ctx1):
    e = build_debranges(ctx1, 0.5)
    for z in SAMPLES:
        em, ep = evaluate(e, z)
        assert abs(ep[0, 0] - e_plus_closed(z)) <= 1e-12
        assert abs(em[0, 0] - e_minus_closed(z)) <= 1e-12
        ratio = np.linalg.solve(ep, em)[0, 0]
        assert abs(ratio - (4.0 * z**2 - 1.0) / (4.0 - z**2)) <= 1e-12


def test_evaluate_at_base_point(ctx1, ctx2, random_contexts):
    for ctx in [ctx1, ctx2] + random_contexts:
        beta = ctx.a / 2.0
        e = build_debranges(ctx, beta)
        _, ep = evaluate(e, beta)
        gram = rho(beta, beta) * kernel(ctx, beta, beta).k
        assert opnorm(ep - hermitian_sqrt(gram)) <= 1e-12
        w = np.linalg.eigvalsh((ep + ep.conj().T) / 2.0)
        assert w[0] >= -1e-10


def test_ratio_at_origin(ctx1):
    e = build_debranges(ctx1, 0.5)
    em, ep = evaluate(e, 0.0)
    assert abs(abs(np.linalg.solve(ep, em)[0, 0]) - 0.25) <= 1e-12


def test_reconstruction_fix1_exact(ctx1):
    e = build_debranges(ctx1, 0.5)
    for z in SAMPLES:
        for w in SAMPLES[:5]:
            if abs(rho(z, w)) < 1e-6:
                continue
            assert reconstruction_residual(e, z, w) <= 1e-12
    assert reconstruction_residual(e, 0.5, 0.5) <= 1e-10


def test_reconstruction_confluent_branch(ctx1):
    e = build_debranges(ctx1, 0.5)
    # z exactly reciprocal to conj(w): the quotient becomes a derivative
    assert reconstruction_residual(e, 2.0, 0.5) <= 1e-8
    assert reconstruction_residual(e, -2.5, -0.4) <= 1e-8


def test_reconstruction_general(ctx2, random_contexts):
    for ctx in [ctx2] + random_contexts:
        e = build_debranges(ctx, choose_beta(ctx))
        pts = [s * ctx.a for s in SAMPLES]
        worst = max(reconstruction_residual(e, z, w)
                    for z in pts for w in pts[:5] if abs(rho(z, w)) >= 1e-6)
        assert worst <= 1e-8


def test_ratio_contractivity_fix1(ctx1):
    e = build_debranges(ctx1, 0.5)
    scan = ratio_contractivity_scan(e, 64, 16)
    assert scan.max_disc_excess <= 1e-9
    assert scan.max_arc_defect <= 1e-8
    assert not scan.skipped


def test_ratio_contractivity_general(ctx2, random_contexts):
    for ctx in [ctx2] + random_contexts:
        e = build_debranges(ctx, choose_beta(ctx))
        scan = ratio_contractivity_scan(e, 64, 16)
        assert scan.max_disc_excess <= 1e-9
        assert scan.max_arc_defect <= 1e-8


def test_pair_kernel_gram_psd(ctx2):
    e = build_debranges(ctx2, choose_beta(ctx2))
    pts = [0.0, 0.35, -0.5, 0.2j, 1.9, 0.4 - 0.3j]
    blocks = []
    for z in pts:
        row = []
        for w in pts:
            em_z, ep_z = evaluate(e, z)
            em_w, ep_w = evaluate(e, w)
            row.append((ep_z @ ep_w.conj().T - em_z @ em_w.conj().T) / rho(z, w))
        blocks.append(row)
    gram = np.block(blocks)
    assert np.linalg.eigvalsh((gram + gram.conj().T) / 2.0)[0] >= -1e-10


def test_intersection_dims_fix1(ctx1):
    rep = intersection_dimension_report(ctx1, 0.5, [0.25, 0.5])
    assert [d1 for _, d1, _ in rep.per_z] == [0, 0]
    assert [d2 for _, _, d2 in rep.per_z] == [0, 0]
    assert rep.sums_closed


def test_intersection_dims_fix2(ctx2):
    rep = intersection_dimension_report(ctx2, 0.5, [0.25, -0.4, 1.6])
    for _, d1, d2 in rep.per_z:
        assert 0 <= d1 <= 2 and 0 <= d2 <= 2
    assert rep.dim_m0_beta_perp <= 2 and rep.dim_m0_q_perp <= 2


def test_fredholm_report_fix1(ctx1):
    inv_b, inv_q, idx0 = fredholm_report(ctx1, 0.5)
    assert inv_b and inv_q and idx0
    # the Grams evaluate to 10/9 in closed form
    assert abs(kernel(ctx1, 0.5, 0.5).k[0, 0] - 10.0 / 9.0) <= 1e-12
    assert abs(kernel(ctx1, 2.0, 2.0).k[0, 0] - 10.0 / 9.0) <= 1e-12


def test_fredholm_report_fix2(ctx2):
    inv_b, inv_q, idx0 = fredholm_report(ctx2, 0.5)
    assert inv_b and inv_q and idx0


def test_choose_beta_default(ctx1, ctx2, random_contexts):
    for ctx in [ctx1, ctx2] + random_contexts:
        beta = choose_beta(ctx)
        assert abs(beta - ctx.a / 2.0) <= 1e-12
