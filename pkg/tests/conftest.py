import numpy as np
import pytest

from cnumodel import make_context, validate
from cnumodel.cli import generate_fixture

GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0  # sigma_min of the shifted zero-operator dilation


@pytest.fixture(scope="session")
def fix1():
    """The scalar zero operator: every quantity has a closed form."""
    return validate(np.array([[0.0]], dtype=complex))


@pytest.fixture(scope="session")
def fix2():
    """The nilpotent 2x2 Jordan block."""
    return validate(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex))


@pytest.fixture(scope="session")
def ctx1(fix1):
    return make_context(fix1, 1.0)


@pytest.fixture(scope="session")
def ctx2(fix2):
    return make_context(fix2, 1.0)


@pytest.fixture(scope="session")
def random_contractions():
    """A small stable of seeded cnu fixtures of assorted kinds and sizes."""
    specs = [("scaled_unitary", 3, 11), ("scaled_unitary", 5, 12),
             ("scaled_unitary", 8, 13), ("diagonal", 4, 14), ("diagonal", 6, 15)]
    return [validate(generate_fixture(kind, dim, seed=seed, r=0.9))
            for kind, dim, seed in specs]


@pytest.fixture(scope="session")
def random_contexts(random_contractions):
    return [make_context(c) for c in random_contractions]


def rng_for(name: str):
    """Deterministic per-test generator (stable across interpreter runs)."""
    import zlib

    return np.random.default_rng(zlib.crc32(name.encode()))
