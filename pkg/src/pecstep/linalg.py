"""Dense complex linear algebra for 2x2 states and 4x4 superoperators.

Column-stacking convention throughout: vec(rho)[2j + i] = rho[i, j], so that
vec(A rho B) = (B^T kron A) vec(rho).
"""

import numpy as np
import scipy.linalg

# Basis convention: |1> = (1, 0)^T, |0> = (0, 1)^T, hence Z = diag(1, -1).
I2 = np.eye(2, dtype=complex)
X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULIS = (X, Y, Z)

for _m in (I2, X, Y, Z):
    _m.setflags(write=False)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def expm(a: np.ndarray) -> np.ndarray:
    """Matrix exponential of a square complex matrix.

    Relative accuracy ~1e-13 for norms up to ~50, which covers every
    generator arising here (only 2x2 and 4x4 matrices occur).
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expm requires a square matrix, got shape {a.shape}")
    return scipy.linalg.expm(a)


def vectorize(rho: np.ndarray) -> np.ndarray:
    """Column-stack a 2x2 matrix into a 4-vector."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError(f"vectorize expects a 2x2 matrix, got shape {rho.shape}")
    return rho.flatten(order="F")


def devectorize(v: np.ndarray) -> np.ndarray:
    """Inverse of vectorize."""
    v = np.asarray(v, dtype=complex)
    if v.shape != (4,):
        raise ValueError(f"devectorize expects a 4-vector, got shape {v.shape}")
    return v.reshape((2, 2), order="F")


def frobenius_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(np.asarray(a)))


def max_abs_diff(a: np.ndarray, b: np.ndarray) -> float:
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.max(np.abs(a - b)))
