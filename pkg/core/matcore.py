#!/usr/bin/env python3
"""
Dense symmetric / SPD linear-algebra kernels.

Every other module consumes these. Matrices are plain float64 ``numpy``
arrays; ``SpdMatrix`` wraps an array together with the Cholesky factor that
proves it is positive definite.
"""

import logging
import math
from typing import Callable, Sequence, Union

import numpy as np
import scipy.linalg
from pydantic import BaseModel, ConfigDict

from core.config import settings
from utils.error_handler import (
    ConvergenceFailure,
    DimensionMismatch,
    NotPositiveDefinite,
    NotSymmetric,
    ZeroVector,
)

logger = logging.getLogger(__name__)

ArrayLike = Union[np.ndarray, Sequence[Sequence[float]], "SpdMatrix"]


def max_norm(a: np.ndarray) -> float:
    """Infinity norm (max absolute row sum)."""
    a = np.atleast_2d(a)
    if a.size == 0:
        return 0.0
    return float(np.max(np.sum(np.abs(a), axis=-1)))


def _as_square(a: ArrayLike) -> np.ndarray:
    if isinstance(a, SpdMatrix):
        return a.matrix
    arr = np.array(a, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise DimensionMismatch("square matrix", arr.shape, what="shape")
    return arr


def symmetrize(a: ArrayLike, tolerance: float = None) -> np.ndarray:
    """Return (A + Aᵀ)/2, rejecting inputs whose asymmetry exceeds tolerance·‖A‖∞."""
    arr = _as_square(a)
    tol = settings.symmetry_tolerance if tolerance is None else tolerance
    asymmetry = float(np.max(np.abs(arr - arr.T)))
    if asymmetry > tol * max(max_norm(arr), np.finfo(float).tiny):
        raise NotSymmetric(asymmetry, tol)
    return 0.5 * (arr + arr.T)


class EigenDecomposition(BaseModel):
    """Eigenvalues in non-increasing order with matching orthonormal eigenvector columns."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        q = self.eigenvectors
        return (q * self.eigenvalues) @ q.T


class SpdMatrix(BaseModel):
    """Symmetric positive-definite matrix carrying its lower Cholesky factor as evidence."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    matrix: np.ndarray
    lower: np.ndarray

    @classmethod
    def from_array(cls, a: ArrayLike) -> "SpdMatrix":
        if isinstance(a, SpdMatrix):
            return a
        s = symmetrize(a)
        lower = cholesky(s)
        s.setflags(write=False)
        lower.setflags(write=False)
        return cls(matrix=s, lower=lower)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def logdet(self) -> float:
        return 2.0 * float(np.sum(np.log(np.diag(self.lower))))

    def inverse(self) -> np.ndarray:
        return scipy.linalg.cho_solve((self.lower, True), np.eye(self.dim))


def cholesky(s: ArrayLike) -> np.ndarray:
    """Lower-triangular L with L·Lᵀ = S; the SPD test for every other operation."""
    if isinstance(s, SpdMatrix):
        return s.lower.copy()
    arr = symmetrize(s)
    try:
        return scipy.linalg.cholesky(arr, lower=True)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise NotPositiveDefinite(f"Cholesky factorization failed: {e}") from e


def as_spd(s: ArrayLike) -> SpdMatrix:
    return SpdMatrix.from_array(s)


def ldl(s: ArrayLike):
    """
    Unit lower-triangular L and positive diagonal D with S = L·D·Lᵀ.

    Derived from the Cholesky factor C = L·D^{1/2}, so no symmetric pivoting
    is ever applied.

    Returns:
        Tuple (L, D) of d×d arrays.
    """
    c = cholesky(s)
    pivots = np.diag(c)
    return c / pivots, np.diag(pivots ** 2)


def jacobi_eigen(s: ArrayLike, max_sweeps: int = None, tolerance: float = None) -> EigenDecomposition:
    """
    Cyclic Jacobi eigensolver for symmetric matrices.

    Sweeps over the strict upper triangle, zeroing each (p, q) entry with a
    plane rotation, until the off-diagonal Frobenius norm drops below
    ``tolerance·‖S‖_F``.

    Raises:
        ConvergenceFailure: when ``max_sweeps`` sweeps do not reach the threshold.
    """
    a = symmetrize(s).copy()
    n = a.shape[0]
    max_sweeps = settings.jacobi_max_sweeps if max_sweeps is None else max_sweeps
    tolerance = settings.jacobi_tolerance if tolerance is None else tolerance
    v = np.eye(n)
    threshold = tolerance * float(np.linalg.norm(a))

    def off_norm(m: np.ndarray) -> float:
        return float(np.sqrt(max(np.sum(m * m) - np.sum(np.diag(m) ** 2), 0.0)))

    sweeps = 0
    while off_norm(a) > threshold:
        if sweeps >= max_sweeps:
            raise ConvergenceFailure(
                f"Jacobi eigensolver did not converge in {max_sweeps} sweeps "
                f"(off-diagonal norm {off_norm(a):.3e})"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                if a[p, q] == 0.0:
                    continue
                phi = 0.5 * math.atan2(2.0 * a[p, q], a[q, q] - a[p, p])
                c, sn = math.cos(phi), math.sin(phi)
                rot = np.array([[c, sn], [-sn, c]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                v[:, idx] = v[:, idx] @ rot
        sweeps += 1

    logger.debug(f"Jacobi eigensolver converged after {sweeps} sweeps (n={n})")
    order = np.argsort(-np.diag(a), kind="stable")
    return EigenDecomposition(eigenvalues=np.diag(a)[order].copy(), eigenvectors=v[:, order])


def sym_eigen(s: ArrayLike) -> EigenDecomposition:
    """Symmetric eigendecomposition, eigenvalues sorted non-increasing."""
    if settings.eigensolver == "jacobi":
        return jacobi_eigen(s)
    a = symmetrize(s)
    try:
        w, q = scipy.linalg.eigh(a)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise ConvergenceFailure(f"LAPACK eigh failed: {e}") from e
    return EigenDecomposition(eigenvalues=w[::-1].copy(), eigenvectors=q[:, ::-1].copy())


def _spectral_map(p: ArrayLike, fn: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    spd = as_spd(p)
    eig = sym_eigen(spd.matrix)
    # clamp rounding of tiny eigenvalues
    lam = np.maximum(eig.eigenvalues, np.finfo(float).tiny)
    q = eig.eigenvectors
    out = (q * fn(lam)) @ q.T
    return 0.5 * (out + out.T)


def spd_pow(p: ArrayLike, t: float) -> np.ndarray:
    return _spectral_map(p, lambda lam: lam ** t)


def spd_sqrt(p: ArrayLike) -> np.ndarray:
    return _spectral_map(p, np.sqrt)


def spd_inv_sqrt(p: ArrayLike) -> np.ndarray:
    return _spectral_map(p, lambda lam: 1.0 / np.sqrt(lam))


def spd_log(p: ArrayLike) -> np.ndarray:
    return _spectral_map(p, np.log)


def householder_align(v: Sequence[float]) -> np.ndarray:
    """
    Rotation P with P·v = ‖v‖₂·e₁.

    Builds the Householder reflection sending v/‖v‖ to e₁, then negates its
    last row so that det(P) = +1 (the last coordinate of P·v is zero, so the
    image is unchanged). For d = 1 no rotation can flip a negative scalar and
    the reflection [[-1]] is returned.

    Raises:
        ZeroVector: when v is the zero vector.
    """
    v = np.asarray(v, dtype=float).ravel()
    norm = float(np.linalg.norm(v))
    if v.size == 0 or norm == 0.0:
        raise ZeroVector("householder_align requires a nonzero vector")
    d = v.size
    w = v / norm
    w[0] -= 1.0
    wn = float(w @ w)
    if wn <= 1e-30:
        return np.eye(d)
    h = np.eye(d) - (2.0 / wn) * np.outer(w, w)
    if d > 1:
        h[-1, :] *= -1.0
    return h


def complex_eigenvalues(a: ArrayLike, b: ArrayLike, tolerance: float = None) -> np.ndarray:
    """
    Eigenvalues of the complex matrix A + iB through the real block embedding.

    M = [[A, -B], [B, A]] has spectrum eig(A+iB) ∪ conj(eig(A+iB)). An
    eigenvector [w₁; w₂] of M splits as [z; -iz] + [y; iy] where the first
    part (z = (w₁ + i·w₂)/2) belongs to A + iB and the second to A - iB, so
    within each cluster of equal eigenvalues the rank of the z-parts counts
    the copies owned by A + iB.

    Returns:
        n complex eigenvalues sorted by decreasing real then imaginary part.
    """
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    a = a.reshape(1, 1) if a.ndim == 0 else a
    b = b.reshape(1, 1) if b.ndim == 0 else b
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(a.shape, b.shape, what="block shape")
    n = a.shape[0]
    tol = settings.conjugate_pair_tolerance if tolerance is None else tolerance

    m = np.block([[a, -b], [b, a]])
    try:
        vals, vecs = scipy.linalg.eig(m)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise ConvergenceFailure(f"eigenvalues of block embedding failed: {e}") from e

    order = np.lexsort((vals.imag, vals.real))
    clusters = []
    for k in order:
        if clusters and abs(vals[k] - vals[clusters[-1][0]]) <= tol * (1.0 + abs(vals[k])):
            clusters[-1].append(k)
        else:
            clusters.append([k])

    result = []
    for members in clusters:
        z = vecs[:n, members] + 1j * vecs[n:, members]
        sv = np.linalg.svd(z, compute_uv=False)
        owned = int(np.sum(sv > 1e-6))
        result.extend([complex(np.mean(vals[members]))] * owned)

    if len(result) != n:
        raise ConvergenceFailure(
            f"could not pair block-embedding eigenvalues: recovered {len(result)} of {n}"
        )
    result.sort(key=lambda z: (-z.real, -z.imag))
    return np.array(result, dtype=complex)
