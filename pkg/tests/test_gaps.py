import numpy as np
import pytest

from cnumodel import arc_gap_scan, gap, subspace_M, validate
from cnumodel.errors import DimensionMismatch
from cnumodel.gaps import angle_stability_residual, direct_sum_check
from cnumodel.linalg import Subspace, column_space

from conftest import rng_for


def line(vec):
    v = np.asarray(vec, dtype=complex).reshape(-1, 1)
    return column_space(v)


def random_subspace(rng, ambient, dim=None):
    k = dim if dim is not None else int(rng.integers(1, ambient))
    m = rng.standard_normal((ambient, k)) + 1j * rng.standard_normal((ambient, k))
    return column_space(m)


def test_gap_identical():
    s = line([1.0, 2.0, -1.0])
    rep = gap(s, s)
    assert rep.delta <= 1e-14 and rep.delta_tilde <= 1e-7
    assert abs(np.cos(rep.angle) - 1.0) <= 1e-12


def test_gap_orthogonal():
    a = line([1.0, 0.0])
    b = line([0.0, 1.0])
    rep = gap(a, b)
    assert abs(rep.delta - 1.0) <= 1e-14
    assert abs(rep.delta_tilde - np.sqrt(2.0)) <= 1e-14
    assert abs(rep.angle - np.pi / 2) <= 1e-12


def test_gap_mismatch():
    with pytest.raises(DimensionMismatch):
        gap(line([1.0, 0.0]), line([1.0, 0.0, 0.0]))


def test_gap_one_dim_closed_form(ctx1):
    # principal angle between the a- and z-shifted ranges of the scalar
    # zero operator, via the explicit inner product
    m_a = subspace_M(ctx1, 1.0)
    m_z = subspace_M(ctx1, 0.9)
    u = np.array([-1.0, 1.0]) / np.sqrt(2.0)
    v = np.array([-0.9, 1.0]) / np.sqrt(1.81)
    expected = np.sqrt(1.0 - abs(np.vdot(u, v)) ** 2)
    assert abs(expected - 0.0525588331227673) <= 1e-13
    assert abs(gap(m_a, m_z).delta - expected) <= 1e-12


def test_gap_laws_random():
    rng = rng_for("gap-laws")
    for _ in range(500):
        ambient = int(rng.integers(2, 17))
        a = random_subspace(rng, ambient)
        b = random_subspace(rng, ambient)
        gab = gap(a, b)
        gba = gap(b, a)
        assert abs(gab.delta - gba.delta) <= 1e-12
        assert abs(gab.delta - gap(a.perp(), b.perp()).delta) <= 1e-10
        assert gab.delta <= gab.delta_tilde + 1e-10
        assert gab.delta_tilde <= 2.0 * gab.delta + 1e-10
        assert 0.0 <= gab.delta <= 1.0 + 1e-12


def test_direct_sum_check_cases(ctx1):
    m_half = subspace_M(ctx1, 0.5)
    flags = direct_sum_check(m_half, ctx1.y)
    assert flags == (True, True, True)

    s = line([1.0, 1.0, 0.0])
    assert direct_sum_check(s, s) == (False, True, False)

    a = line([1.0, 0.0])
    b = line([0.0, 1.0])
    assert direct_sum_check(a, b) == (True, True, True)


def test_direct_sum_flags_agree_random():
    rng = rng_for("lemma-flags")
    for _ in range(200):
        ambient = int(rng.integers(2, 12))
        a = random_subspace(rng, ambient)
        b = random_subspace(rng, ambient)
        trivial, closed, positive = direct_sum_check(a, b)
        assert (trivial and closed) == positive


def test_angle_stability_degenerate():
    rng = rng_for("stability-simple")
    a = random_subspace(rng, 6, 2)
    b = random_subspace(rng, 6, 2)
    assert angle_stability_residual(a, b, b) <= 1e-14


def test_angle_stability_orthogonal_pairs():
    rng = rng_for("stability-orth")
    for _ in range(100):
        ambient = int(rng.integers(2, 10))
        a = random_subspace(rng, ambient)
        b = a.perp()
        if b.dim == 0:
            continue
        c = random_subspace(rng, ambient)
        assert angle_stability_residual(a, b, c) <= 1e-9


def test_angle_stability_random_triples():
    rng = rng_for("stability-random")
    for _ in range(500):
        ambient = int(rng.integers(2, 17))
        n1 = random_subspace(rng, ambient)
        n2 = random_subspace(rng, ambient)
        n3 = random_subspace(rng, ambient)
        assert angle_stability_residual(n1, n2, n3) <= 1e-9


def test_angle_stability_model_triple(ctx1):
    m_z = subspace_M(ctx1, 0.9)
    m_a = subspace_M(ctx1, 1.0)
    assert angle_stability_residual(m_z, m_a, m_a) <= 1e-14


def test_arc_gap_scan_fix1(ctx1):
    max_gap, ok = arc_gap_scan(ctx1, 64)
    assert ok
    assert max_gap <= 1.0 / 3.0 + 1e-9
    # closed-form oracle: one-dimensional principal angle on the circle
    # gives gap |z - 1| / 2, maximal at the sampled arc ends
    expected = ctx1.epsilon * (1.0 - 1e-9) / 2.0
    assert abs(max_gap - expected) <= 1e-6


def test_arc_gap_scan_fix2_and_random(ctx2, random_contexts):
    for ctx in [ctx2] + random_contexts:
        max_gap, ok = arc_gap_scan(ctx, 64)
        assert ok and max_gap <= 1.0 / 3.0 + 1e-9


def test_arc_gap_scan_single_sample(ctx1):
    max_gap, ok = arc_gap_scan(ctx1, 1)
    assert ok and max_gap <= 1e-12
