"""Classical Hermitian forms and their coefficient hypermatrices.

A degree-k Hermitian form in ``n`` variables is represented by an order-2k
cubical hypermatrix ``A`` with ``h(z) = A * (conj(z), ..., conj(z), z, ..., z)``.
The representation is unique when ``A`` is Hermitian partially symmetric (HPS).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import factorial, prod

import numpy as np

from .core import DimensionError, as_hypermatrix, rel_err
from .matricization import cubically_balanced, psi, psi_inv

HERMITIAN_TOL = 1e-10
MAX_SYMMETRIC_DEGREE = 5


def multilinear_matmul(A, factors) -> np.ndarray:
    """Right multilinear matrix multiplication ``A * (X_1, ..., X_d)``.

    Entry ``j`` of the result is ``sum_k A[k] * prod_l X_l[k_l, j_l]``. A 1-D
    factor contracts its mode away entirely, so ``H * (conj(z), z)`` is the
    scalar ``z^H H z``.
    """
    A = as_hypermatrix(A)
    if len(factors) != A.ndim:
        raise DimensionError(f"need {A.ndim} factors, got {len(factors)}")
    out = A
    # contracting axis 0 each time and appending the new axis restores mode order
    for l, X in enumerate(factors):
        X = np.asarray(X)
        if X.shape[0] != A.shape[l]:
            raise DimensionError(f"factor {l} has {X.shape[0]} rows, mode has {A.shape[l]}")
        out = np.tensordot(out, X, axes=([0], [0]))
    return out


def outer_product(tensors) -> np.ndarray:
    """Segre outer product of a sequence of hypermatrices."""
    out = np.ones((), dtype=np.complex128)
    for T in tensors:
        out = np.multiply.outer(out, as_hypermatrix(T))
    return out


def _group_swap(A) -> np.ndarray:
    k = A.ndim // 2
    return A.transpose(tuple(range(k, 2 * k)) + tuple(range(k)))


def is_hermitian_tensor(A, tol: float = HERMITIAN_TOL) -> bool:
    """``A[i, j] == conj(A[j, i])`` under the swap of the two index groups."""
    A = as_hypermatrix(A)
    if A.ndim % 2:
        raise ValueError(f"Hermiticity needs even order, got {A.ndim}")
    k = A.ndim // 2
    if A.shape[:k] != A.shape[k:]:
        return False
    return rel_err(np.conj(_group_swap(A)), A) <= tol


def _adjacent_swaps(k: int, offset: int, extra: int):
    base = list(range(2 * k + extra))
    for a in range(k - 1):
        axes = base.copy()
        axes[offset + a], axes[offset + a + 1] = axes[offset + a + 1], axes[offset + a]
        yield tuple(axes)


def is_partially_symmetric(A, tol: float = HERMITIAN_TOL) -> bool:
    """Invariance under independent permutations of both index groups.

    Adjacent transpositions generate the symmetric group, so only those are
    tested.
    """
    A = as_hypermatrix(A)
    if A.ndim % 2 or len(set(A.shape)) > 1:
        raise ValueError(f"expected even-order cubical hypermatrix, got {A.shape}")
    k = A.ndim // 2
    for offset in (0, k):
        for axes in _adjacent_swaps(k, offset, 0):
            if rel_err(A.transpose(axes), A) > tol:
                return False
    return True


def is_hps(A, tol: float = HERMITIAN_TOL) -> bool:
    return is_hermitian_tensor(A, tol) and is_partially_symmetric(A, tol)


def _form_value(A, z) -> complex:
    k = A.ndim // 2
    zc = np.conj(z)
    return complex(multilinear_matmul(A, [zc] * k + [z] * k))


def eval_hermitian_form(H, z, tol: float = HERMITIAN_TOL) -> float:
    """Value of the degree-k Hermitian form with coefficient tensor ``H`` at ``z``."""
    H = as_hypermatrix(H)
    z = np.asarray(z, dtype=np.complex128)
    if H.ndim % 2 or len(set(H.shape)) > 1 or z.shape != (H.shape[0],):
        raise DimensionError(f"cannot evaluate {H.shape} coefficients at a vector of shape {z.shape}")
    if not is_hermitian_tensor(H, tol):
        raise ValueError("coefficient tensor is not Hermitian")
    val = _form_value(H, z)
    scale = np.linalg.norm(H) * np.linalg.norm(z) ** H.ndim
    if abs(val.imag) > tol * max(abs(val.real), scale, 1.0):
        raise ArithmeticError(f"form value has imaginary residue {val.imag:.3e}")
    return val.real


def _check_degree(k: int):
    if k > MAX_SYMMETRIC_DEGREE:
        raise ValueError(f"degree {k} exceeds the supported bound {MAX_SYMMETRIC_DEGREE} for S_k enumeration")


def _group_average(A, k: int, offset: int) -> np.ndarray:
    base = list(range(A.ndim))
    total = np.zeros_like(A)
    for perm in permutations(range(k)):
        axes = base.copy()
        for a, b in enumerate(perm):
            axes[offset + a] = offset + b
        total += A.transpose(axes)
    return total / factorial(k)


def psym(A) -> np.ndarray:
    """Partial symmetrizer on an order-(2k+1) tensor.

    Averages each frontal slice over ``S_k x S_k``; the product-group average
    factors into one average per index group.
    """
    A = as_hypermatrix(A)
    if A.ndim % 2 == 0 or len(set(A.shape[:-1])) > 1:
        raise DimensionError(f"expected (n,)*2k + (p,), got {A.shape}")
    k = (A.ndim - 1) // 2
    _check_degree(k)
    return _group_average(_group_average(A, k, 0), k, k)


def _check_perm(perm, k=None):
    perm = tuple(int(x) for x in perm)
    if sorted(perm) != list(range(len(perm))) or (k is not None and len(perm) != k):
        raise ValueError(f"invalid permutation {perm}")
    return perm


def perm_matrix(perm, n: int) -> np.ndarray:
    """Permutation matrix with ``P e_psi(i) = e_psi(perm . i)``.

    ``perm`` is 0-based and ``(perm . i)_m = i_{perm[m]}``.
    """
    perm = _check_perm(perm)
    k = len(perm)
    shape = (n,) * k
    N = n ** k
    P = np.zeros((N, N))
    for col in range(1, N + 1):
        i = psi_inv(col, shape)
        row = psi(tuple(i[perm[m]] for m in range(k)), shape)
        P[row - 1, col - 1] = 1.0
    return P


@dataclass
class SymmetryProjector:
    k: int
    n: int
    matrix: np.ndarray

    def perm(self, perm) -> np.ndarray:
        return perm_matrix(_check_perm(perm, self.k), self.n)


def p_sym(n: int, k: int) -> SymmetryProjector:
    """Average of all ``P_perm`` over ``S_k``: the orthogonal projector onto symmetric tensors."""
    _check_degree(k)
    N = n ** k
    total = np.zeros((N, N))
    for perm in permutations(range(k)):
        total += perm_matrix(perm, n)
    return SymmetryProjector(k, n, total / factorial(k))


def is_hpsym_matrix(M, proj: SymmetryProjector, tol: float = HERMITIAN_TOL) -> bool:
    M = np.asarray(M, dtype=np.complex128)
    N = proj.matrix.shape[0]
    if M.shape != (N, N):
        raise DimensionError(f"matrix {M.shape} does not match projector of size {N}")
    if rel_err(M.conj().T, M) > tol:
        return False
    P = proj.matrix
    return rel_err(P @ M @ P, M) <= tol


def hps_matrix_check(A, tol: float = HERMITIAN_TOL) -> bool:
    """HPS test through the cubically balanced matricization."""
    A = as_hypermatrix(A)
    n, k = A.shape[0], A.ndim // 2
    return is_hpsym_matrix(cubically_balanced(A), p_sym(n, k), tol)


def kron_power(W, k: int) -> np.ndarray:
    """Row-wise ``w (x) ... (x) w`` (k factors) for a batch ``W`` of shape ``(S, n)``.

    Row ``s`` is ``hvec(w_s o ... o w_s)``, so a form value is
    ``conj(v) @ M @ v`` with ``M`` the cubically balanced coefficient matrix.
    """
    W = np.asarray(W, dtype=np.complex128)
    S, n = W.shape
    V = np.ones((S, 1), dtype=np.complex128)
    for _ in range(k):
        # first index fastest: new factor varies slowest
        V = (W[:, :, None] * V[:, None, :]).reshape(S, -1)
    return V.reshape(S, prod((n,) * k))
