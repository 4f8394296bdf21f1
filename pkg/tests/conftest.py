import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def dft_unitary(p):
    """``F[i, j] = exp(2 pi i ij / p) / sqrt(p)``, the kernel of the tubal transform."""
    idx = np.arange(p)
    return np.exp(2j * np.pi * np.outer(idx, idx) / p) / np.sqrt(p)


def dft_loop(x):
    """Unnormalized forward tubal transform of a 1-D tube by the defining sum."""
    p = len(x)
    return np.array([sum(x[m] * np.exp(2j * np.pi * m * l / p) for m in range(p)) for l in range(p)])


def rel(a, b):
    return np.linalg.norm(np.asarray(a) - np.asarray(b)) / max(np.linalg.norm(b), 1e-300)
