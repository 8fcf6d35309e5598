import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_complex(rng, shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def random_density(rng):
    """Random physical qubit state via a Bloch vector of length <= 1."""
    direction = rng.normal(size=3)
    direction /= np.linalg.norm(direction)
    r = rng.uniform(0.0, 1.0) * direction
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    y = np.array([[0, -1j], [1j, 0]], dtype=complex)
    z = np.array([[1, 0], [0, -1]], dtype=complex)
    return 0.5 * (np.eye(2, dtype=complex) + r[0] * x + r[1] * y + r[2] * z)


def taylor_expm(a, order=40):
    """Scaling + truncated Taylor series, independent of the library core."""
    a = np.asarray(a, dtype=complex)
    norm = np.linalg.norm(a)
    squarings = max(0, int(np.ceil(np.log2(max(norm, 1e-300) / 0.25))))
    m = a / 2**squarings
    out = np.eye(a.shape[0], dtype=complex)
    term = np.eye(a.shape[0], dtype=complex)
    for k in range(1, order + 1):
        term = term @ m / k
        out = out + term
    for _ in range(squarings):
        out = out @ out
    return out
