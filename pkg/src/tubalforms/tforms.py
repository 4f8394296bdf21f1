"""Degree-k t-Hermitian forms evaluated at points of the tubal algebra.

A tubal vector of indeterminates is never built symbolically. An evaluation
point is a list of ``p`` vectors ``z^(l)``, the frequency slices of the tubal
vector being plugged in; the conjugated arguments are handled as entrywise
conjugation in the frequency domain.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DimensionError, as_hypermatrix, fft_tubal, ifft_tubal, tubal_dims
from .hermitian import (
    HERMITIAN_TOL,
    is_hermitian_tensor,
    is_hps,
    kron_power,
)
from .matricization import frequency_slice_matrices

DESCENT_ITERS = 50
DESCENT_STEP = 0.1
FD_STEP = 1e-5
SAMPLE_CHUNK = 20000


@dataclass
class TubalVectorValue:
    spatial: np.ndarray  # n x p
    freq: np.ndarray  # n x p


@dataclass
class FormValues:
    freq_values: np.ndarray  # p reals
    spatial_tube: np.ndarray  # p complex

    @classmethod
    def from_freq(cls, values) -> "FormValues":
        values = np.asarray(values, dtype=float)
        return cls(values, ifft_tubal(values))


def evaluation_point(Z, n: int | None = None, p: int | None = None) -> np.ndarray:
    """Normalize ``Z`` (a list of p vectors or an ``n x p`` array) to an ``n x p`` array."""
    if isinstance(Z, np.ndarray) and Z.ndim == 2:
        Z = Z.astype(np.complex128)
    else:
        cols = [np.asarray(z, dtype=np.complex128) for z in Z]
        if not cols or any(c.ndim != 1 or c.shape != cols[0].shape for c in cols):
            raise DimensionError("evaluation point slices must be vectors of equal length")
        Z = np.stack(cols, axis=1)
    if n is not None and Z.shape[0] != n:
        raise DimensionError(f"slice vectors have length {Z.shape[0]}, expected {n}")
    if p is not None and Z.shape[1] != p:
        raise DimensionError(f"evaluation point has {Z.shape[1]} slices, expected {p}")
    return Z


def tubal_eval(Z) -> TubalVectorValue:
    """The tubal vector whose frequency slice ``l`` is ``z^(l)``."""
    freq = evaluation_point(Z)
    return TubalVectorValue(ifft_tubal(freq), freq)


def _freq_multilinear(Ahat, factors_hat) -> np.ndarray:
    out = Ahat
    for F in factors_hat:
        # contracts the leading mode and appends the new one before the tubal mode
        out = np.einsum("a...l,abl->...bl", out, F)
    return out


def _as_tubal_factor(X) -> np.ndarray:
    X = as_hypermatrix(X)
    if X.ndim == 2:
        X = X[:, None, :]
    if X.ndim != 3:
        raise DimensionError(f"tubal factor must be n x m x p, got {X.shape}")
    return X


def t_multilinear_product(A, factors) -> np.ndarray:
    """Right t-multilinear product ``A *_t (X_1, ..., X_d)``.

    Each factor is a spatial ``n_j x m_j x p`` tensor (an ``n_j x p`` array is a
    tubal vector). Frequency slice ``l`` of the result is the multilinear
    matrix product of the slices at ``l``.
    """
    A = as_hypermatrix(A)
    if A.ndim < 2:
        raise DimensionError(f"expected a tensor with a tubal mode, got {A.shape}")
    p = A.shape[-1]
    factors = [_as_tubal_factor(X) for X in factors]
    if len(factors) != A.ndim - 1:
        raise DimensionError(f"need {A.ndim - 1} factors, got {len(factors)}")
    for j, X in enumerate(factors):
        if X.shape[0] != A.shape[j] or X.shape[2] != p:
            raise DimensionError(f"factor {j} of shape {X.shape} does not conform with {A.shape}")
    out = _freq_multilinear(fft_tubal(A), [fft_tubal(X) for X in factors])
    return ifft_tubal(out)


def is_t_hps(A, tol: float = HERMITIAN_TOL) -> bool:
    """Every frequency slice is Hermitian and partially symmetric."""
    try:
        k, n, p = tubal_dims(A)
    except DimensionError:
        return False
    Ahat = fft_tubal(A)
    return all(is_hps(Ahat[..., l], tol) for l in range(p))


def _require_t_hps(A, tol):
    if not is_t_hps(A, tol):
        raise ValueError("coefficient tensor is not t-Hermitian partially symmetric")


def eval_t_hermitian_form(A, Z, tol: float = HERMITIAN_TOL) -> FormValues:
    """Evaluate ``h_A`` at the tubal vector with frequency slices ``Z``.

    Computed through the full t-multilinear product in the frequency domain;
    slice ``l`` is the classical form of ``Ahat[..., l]`` at ``z^(l)``.
    """
    A = as_hypermatrix(A)
    k, n, p = tubal_dims(A)
    Z = evaluation_point(Z, n, p)
    _require_t_hps(A, tol)
    Ahat = fft_tubal(A)
    Xh = Z[:, None, :]
    vals = _freq_multilinear(Ahat, [np.conj(Xh)] * k + [Xh] * k).reshape(p)
    scale = np.linalg.norm(Ahat.reshape(-1, p), axis=0) * np.linalg.norm(Z, axis=0) ** (2 * k)
    bad = np.abs(vals.imag) > tol * np.maximum(np.maximum(np.abs(vals.real), scale), 1.0)
    if bad.any():
        l = int(np.flatnonzero(bad)[0])
        raise ArithmeticError(f"slice {l} form value has imaginary residue {vals[l].imag:.3e}")
    return FormValues.from_freq(vals.real)


def theta_decompose(A, tol: float = HERMITIAN_TOL) -> list[np.ndarray]:
    """The ``p`` classical coefficient tensors: the frequency slices of ``A``."""
    A = as_hypermatrix(A)
    tubal_dims(A)
    _require_t_hps(A, tol)
    Ahat = fft_tubal(A)
    return [Ahat[..., l].copy() for l in range(A.shape[-1])]


def psi_lift(coeffs, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Inverse of :func:`theta_decompose`: stack as frequency slices and transform back."""
    coeffs = [as_hypermatrix(C) for C in coeffs]
    if not coeffs:
        raise ValueError("need at least one coefficient tensor")
    shape = coeffs[0].shape
    for l, C in enumerate(coeffs):
        if C.shape != shape:
            raise ValueError(f"component {l} has shape {C.shape}, expected {shape}")
        if C.ndim % 2 or len(set(C.shape)) != 1 or not is_hps(C, tol):
            raise ValueError(f"component {l} is not Hermitian partially symmetric")
    return ifft_tubal(np.stack(coeffs, axis=-1))


@dataclass
class SampleTestResult:
    """Per-slice minimum estimates of a t-Hermitian form on unit spheres."""

    minima: np.ndarray
    argmins: np.ndarray  # n x p, column l attains minima[l]

    @property
    def disproved(self) -> bool:
        """A nonpositive minimum is a witness against positive definiteness."""
        return bool(np.any(self.minima <= 0))

    def witnesses(self):
        return [(l, self.argmins[:, l], float(self.minima[l]))
                for l in np.flatnonzero(self.minima <= 0)]


def _unit_samples(rng, S, n):
    W = rng.standard_normal((S, n)) + 1j * rng.standard_normal((S, n))
    return W / np.linalg.norm(W, axis=1, keepdims=True)


def _batch_values(M, W, k):
    V = kron_power(W, k)
    return np.sum(np.conj(V) * (V @ M.T), axis=1).real


def _descend(M, w, k):
    """Projected descent on the sphere with finite-difference gradients."""
    n = w.size

    def f(x):
        z = x[:n] + 1j * x[n:]
        return _batch_values(M, (z / np.linalg.norm(z))[None, :], k)[0]

    x = np.concatenate([w.real, w.imag])
    fx = f(x)
    step = DESCENT_STEP
    eye = np.eye(2 * n) * FD_STEP
    for _ in range(DESCENT_ITERS):
        g = np.array([(f(x + e) - f(x - e)) / (2 * FD_STEP) for e in eye])
        gn = np.linalg.norm(g)
        if gn == 0:
            break
        trial = x - step * g / gn
        trial /= np.linalg.norm(trial)
        ft = f(trial)
        if ft < fx:
            x, fx = trial, ft
        else:
            step /= 2
    z = x[:n] + 1j * x[n:]
    return fx, z / np.linalg.norm(z)


def t_hpd_sample_test(A, samples: int = 10000, seed=0, refine: int = 3,
                      tol: float = HERMITIAN_TOL) -> SampleTestResult:
    """Estimate each slice's minimum over uniform unit-sphere points.

    The best ``refine`` samples per slice are polished by local descent.
    All-positive minima are evidence of t-positive definiteness, not proof.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    A = as_hypermatrix(A)
    k, n, p = tubal_dims(A)
    _require_t_hps(A, tol)
    rng = np.random.default_rng(seed)
    Ms = frequency_slice_matrices(A)
    Ms = 0.5 * (Ms + np.conj(np.swapaxes(Ms, 1, 2)))
    minima = np.empty(p)
    argmins = np.empty((n, p), dtype=np.complex128)
    for l in range(p):
        best_vals = np.empty(0)
        best_W = np.empty((0, n), dtype=np.complex128)
        remaining = samples
        while remaining > 0:
            S = min(SAMPLE_CHUNK, remaining)
            W = _unit_samples(rng, S, n)
            vals = _batch_values(Ms[l], W, k)
            best_vals = np.concatenate([best_vals, vals])
            best_W = np.concatenate([best_W, W])
            keep = np.argsort(best_vals)[: max(refine, 1)]
            best_vals, best_W = best_vals[keep], best_W[keep]
            remaining -= S
        minima[l], argmins[:, l] = best_vals[0], best_W[0]
        for w in best_W[:refine]:
            val, z = _descend(Ms[l], w, k)
            if val < minima[l]:
                minima[l], argmins[:, l] = val, z
    return SampleTestResult(minima, argmins)


def t_hermitian_check(A, tol: float = HERMITIAN_TOL) -> bool:
    """Every frequency slice is a Hermitian tensor (no symmetry requirement)."""
    Ahat = fft_tubal(A)
    return all(is_hermitian_tensor(Ahat[..., l], tol) for l in range(Ahat.shape[-1]))
