"""Joint unitary diagonalization of the frequency slices and its consequences.

A tensor is joint MTU diagonalizable when its slice matrices ``M_l`` (the
cubically balanced frequency slices) are Hermitian and pairwise commuting, so
one unitary ``Q`` diagonalizes all of them. With ``q_i`` the columns of ``Q``
and ``U_i = hvec_inv(conj(q_i))``,

    Ahat[..., l] = sum_i lambda_i[l] * conj(U_i) o U_i.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import DimensionError, as_hypermatrix, ifft_tubal, rel_err, tubal_dims
from .einstein import phi, phi_inv
from .hermitian import multilinear_matmul, outer_product
from .matricization import hvec_inv
from .tforms import FormValues, evaluation_point, is_t_hps

COMMUTE_TOL = 1e-10
DIAGONAL_TOL = 1e-8
HERMITIAN_TOL = 1e-10
REAL_TOL = 1e-9
TRUNCATION = 1e-12
CHOLESKY_PIVOT_RTOL = 1e-13
RETRIES = 3


class NotJointMTUError(ValueError):
    """The slice matrices do not commute."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class NumericalDegeneracyError(ArithmeticError):
    """No computed unitary diagonalizes every slice to tolerance."""


class NotHPDError(ValueError):
    """A slice matrix has a nonpositive eigenvalue."""


def _hermitian_slices(A, tol: float = HERMITIAN_TOL) -> np.ndarray:
    Ms = phi(A)
    for l, M in enumerate(Ms):
        if rel_err(M.conj().T, M) > tol:
            raise ValueError(f"frequency slice {l} is not Hermitian")
    return 0.5 * (Ms + np.conj(np.swapaxes(Ms, 1, 2)))


def check_joint_mtu(A, tol: float = COMMUTE_TOL):
    """Return ``(True, None)`` or ``(False, (l, m))`` for the first non-commuting pair.

    Slice indices are 0-based. ``M_l`` and ``M_m`` commute when
    ``||M_l M_m - M_m M_l||_F <= tol ||M_l||_F ||M_m||_F``.
    """
    Ms = _hermitian_slices(A)
    norms = np.linalg.norm(Ms, axis=(1, 2))
    p = len(Ms)
    for l in range(p - 1):
        rest = Ms[l + 1:]
        comm = Ms[l] @ rest - rest @ Ms[l]
        bad = np.linalg.norm(comm, axis=(1, 2)) > tol * norms[l] * norms[l + 1:]
        if bad.any():
            return False, (l, l + 1 + int(np.flatnonzero(bad)[0]))
    return True, None


@dataclass
class SpectralData:
    """``factors[i] = hvec_inv(conj(Q[:, i]))``; ``lambdas[i, l]`` is the eigenvalue of slice ``l``."""

    factors: list
    eigvecs: np.ndarray
    lambdas: np.ndarray  # N x p, real
    spatial_lambdas: np.ndarray = field(init=False)

    def __post_init__(self):
        self.spatial_lambdas = ifft_tubal(self.lambdas)

    @property
    def n(self) -> int:
        return self.factors[0].shape[0]

    @property
    def k(self) -> int:
        return self.factors[0].ndim

    @property
    def p(self) -> int:
        return self.lambdas.shape[1]

    def active_terms(self) -> np.ndarray:
        """Indices of terms not dropped by the ``1e-12`` relative truncation."""
        mags = np.max(np.abs(self.lambdas), axis=1)
        top = mags.max(initial=0.0)
        return np.flatnonzero(mags > TRUNCATION * top)


def _offdiag_ok(Q, Ms, tol):
    """First slice whose ``Q^H M Q`` has off-diagonal mass above ``tol ||M||``, or None."""
    D = np.conj(Q.T)[None] @ Ms @ Q[None]
    off = D - np.einsum("lii->li", D)[:, :, None] * np.eye(D.shape[1])[None]
    bad = np.linalg.norm(off, axis=(1, 2)) > tol * np.linalg.norm(Ms, axis=(1, 2))
    return None if not bad.any() else int(np.flatnonzero(bad)[0])


def _diagonalizer(Ms, mode: str, seed, tol: float):
    """Candidate ``Q`` from a seeded generic combination (or ``M_0`` alone in ``first-slice`` mode).

    Returns ``(Q, failing_slice)`` with ``failing_slice`` None on success.
    """
    if mode == "first-slice":
        Q = np.linalg.eigh(Ms[0])[1]
        return Q, _offdiag_ok(Q, Ms, tol)
    if mode != "generic":
        raise ValueError(f"unknown mode {mode!r}")
    rng = np.random.default_rng(seed)
    bad = None
    for _ in range(RETRIES):
        c = rng.standard_normal(len(Ms))
        Q = np.linalg.eigh(np.tensordot(c, Ms, axes=1))[1]
        bad = _offdiag_ok(Q, Ms, tol)
        if bad is None:
            break
    return Q, bad


def joint_eigendecompose(A, tol: float = DIAGONAL_TOL, mode: str = "generic", seed=0) -> SpectralData:
    """Common unitary eigenbasis of the slice matrices and the eigenvalue tubes."""
    A = as_hypermatrix(A)
    k, n, p = tubal_dims(A)
    ok, pair = check_joint_mtu(A)
    if not ok:
        raise NotJointMTUError(f"slices {pair[0]} and {pair[1]} do not commute", pair)
    Ms = _hermitian_slices(A)
    Q, bad = _diagonalizer(Ms, mode, seed, tol)
    if bad is not None:
        raise NumericalDegeneracyError(f"computed basis does not diagonalize slice {bad}")
    D = np.einsum("ji,ljk,ki->il", np.conj(Q), Ms, Q)
    if np.abs(D.imag).max(initial=0) > REAL_TOL * max(np.abs(D).max(initial=0), 1.0):
        raise NumericalDegeneracyError("eigenvalues have a large imaginary residue")
    factors = [hvec_inv(np.conj(Q[:, i]), (n,) * k) for i in range(n ** k)]
    return SpectralData(factors, Q, D.real.copy())


def spectral_reconstruct(S: SpectralData, n=None, k=None, p=None) -> np.ndarray:
    """``sum_i conj(U_i) o U_i o Lambda_i`` over the retained terms."""
    for name, want, have in (("n", n, S.n), ("k", k, S.k), ("p", p, S.p)):
        if want is not None and want != have:
            raise DimensionError(f"spectral data has {name}={have}, requested {want}")
    if len(S.factors) != S.lambdas.shape[0]:
        raise DimensionError("factor count differs from eigenvalue count")
    out = np.zeros((S.n,) * (2 * S.k) + (S.p,), dtype=np.complex128)
    for i in S.active_terms():
        U = S.factors[i]
        out += outer_product([np.conj(U), U, S.spatial_lambdas[i]])
    return out


def t_matrix_tensor_eigenvalues(A) -> np.ndarray:
    """Eigenvalues of each slice matrix, one row per slice, sorted descending."""
    A = as_hypermatrix(A)
    tubal_dims(A)
    return np.linalg.eigvalsh(_hermitian_slices(A))[:, ::-1]


@dataclass
class PositivityVerdict:
    positive: bool
    reason: str | None = None
    slice: int | None = None

    def __bool__(self):
        return self.positive


def _cholesky_ok(M) -> bool:
    try:
        L = np.linalg.cholesky(M)
    except np.linalg.LinAlgError:
        return False
    # a vanishing pivot means M is singular even if the factorization ran
    return np.min(np.abs(np.diag(L))) ** 2 > CHOLESKY_PIVOT_RTOL * np.linalg.norm(M)


def algorithm3_positivity(A, mode: str = "generic", seed=0, tol: float = DIAGONAL_TOL,
                          require_hps: bool = True) -> PositivityVerdict:
    """Sufficient test for t-Hermitian positive definiteness of a commutant form.

    TRUE when every slice matrix is positive definite (Cholesky succeeds) and
    one computed unitary diagonalizes all slices. Every failure returns FALSE
    with a reason code.
    """
    A = as_hypermatrix(A)
    try:
        tubal_dims(A)
    except DimensionError:
        return PositivityVerdict(False, "bad-shape")
    if require_hps and not is_t_hps(A):
        return PositivityVerdict(False, "not-hps")
    try:
        Ms = _hermitian_slices(A)
    except ValueError:
        return PositivityVerdict(False, "not-hermitian")
    for l, M in enumerate(Ms):
        if not _cholesky_ok(M):
            return PositivityVerdict(False, "cholesky-failed", l)
    _, bad = _diagonalizer(Ms, mode, seed, tol)
    if bad is not None:
        return PositivityVerdict(False, "not-commuting", bad)
    return PositivityVerdict(True)


@dataclass
class SpectralEvaluation:
    u_weights: np.ndarray  # N x p
    result: FormValues


def spectral_form_eval(S: SpectralData, Z) -> SpectralEvaluation:
    """Form values as ``sum_i lambda_i * u_i`` with ``u_i[l] = |U_i * (w, ..., w)|^2``."""
    Z = evaluation_point(Z)
    if Z.shape != (S.n, S.p):
        raise DimensionError(f"evaluation point {Z.shape} does not match n={S.n}, p={S.p}")
    N = len(S.factors)
    u = np.zeros((N, S.p))
    for i in S.active_terms():
        U = S.factors[i]
        for l in range(S.p):
            u[i, l] = abs(complex(multilinear_matmul(U, [Z[:, l]] * S.k))) ** 2
    return SpectralEvaluation(u, FormValues.from_freq(np.sum(S.lambdas * u, axis=0)))


def spectral_power(A, alpha: float, mode: str = "generic", seed=0) -> np.ndarray:
    """Solve ``B^alpha = A`` slicewise with ``lambda -> lambda^(1/alpha)``."""
    if np.iscomplexobj(alpha) or not np.isfinite(alpha):
        raise ValueError(f"alpha must be a finite real number, got {alpha}")
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    A = as_hypermatrix(A)
    k, n, p = tubal_dims(A)
    S = joint_eigendecompose(A, mode=mode, seed=seed)
    if np.any(S.lambdas <= 0):
        i, l = np.argwhere(S.lambdas <= 0)[0]
        raise NotHPDError(f"slice {l} has nonpositive eigenvalue {S.lambdas[i, l]:.3e}")
    Q = S.eigvecs
    roots = S.lambdas ** (1.0 / alpha)
    Ms = np.einsum("ij,jl,kj->lik", Q, roots, np.conj(Q))
    return phi_inv(Ms, n, k)

