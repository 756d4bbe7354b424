"""Positive semidefinite weights and the semi-inner product they induce.

A weight ``A`` on C^n defines ``<x, y>_A = <A x, y>`` and the seminorm
``||x||_A = sqrt(<x, x>_A)``.  The ambient inner product is linear in the
first argument and conjugate-linear in the second, ``<u, v> = v^H u``;
every module in the package uses this convention.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotHermitian, NotPSD, ZeroRank, ZeroWeight

DEFAULT_RANK_TOL = 1e-10
DEFAULT_HERMITICITY_TOL = 1e-8
DEFAULT_NUM_TOL = 1e-9


def ambient_inner(u, v):
    """Ambient inner product <u, v> = v^H u (linear in u)."""
    return complex(np.vdot(v, u))


def _as_square(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    return a


@dataclass(frozen=True)
class Weight:
    """Validated PSD weight with cached spectral data.

    Instances are immutable (arrays are marked read-only) and safe to share
    across threads.  Construct through :func:`make_weight`.
    """

    dim: int
    matrix: np.ndarray        # n x n Hermitian PSD (symmetrized input)
    eigvals: np.ndarray       # all n eigenvalues, descending
    eigvecs: np.ndarray       # unitary columns matching eigvals
    rank: int                 # eigenvalues above the relative cutoff
    range_basis: np.ndarray   # n x rank orthonormal columns spanning R(A)
    d: np.ndarray             # the `rank` positive eigenvalues
    sqrt_a: np.ndarray
    pinv_a: np.ndarray
    pinv_sqrt_a: np.ndarray
    proj_range: np.ndarray    # orthogonal projector onto R(A)
    rank_tol: float

    def check_vector(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        if x.shape != (self.dim,):
            raise DimensionMismatch(
                f"vector shape {x.shape} does not match weight dimension {self.dim}"
            )
        return x

    def check_matrix(self, m) -> np.ndarray:
        m = _as_square(m)
        if m.shape != (self.dim, self.dim):
            raise DimensionMismatch(
                f"matrix shape {m.shape} does not match weight dimension {self.dim}"
            )
        return m

    def semi_inner(self, x, y) -> complex:
        """<x, y>_A = <A x, y>, linear in x and conjugate-linear in y."""
        x = self.check_vector(x)
        y = self.check_vector(y)
        return complex(np.vdot(y, self.matrix @ x))

    def semi_norm(self, x) -> float:
        """||x||_A, computed in reduced coordinates so it is exactly >= 0."""
        return float(np.linalg.norm(self.reduce_vector(x)))

    def reduce_vector(self, x) -> np.ndarray:
        """Coordinates D^{1/2} V^* x of x in the range-space Hilbert space."""
        x = self.check_vector(x)
        return np.sqrt(self.d) * (self.range_basis.conj().T @ x)

    def lift_vector(self, u) -> np.ndarray:
        """Inverse of :meth:`reduce_vector` on R(A): x = V D^{-1/2} u."""
        u = np.asarray(u, dtype=complex)
        if u.shape != (self.rank,):
            raise DimensionMismatch(
                f"reduced vector shape {u.shape} does not match rank {self.rank}"
            )
        return self.range_basis @ (u / np.sqrt(self.d))

    def a_unit_sample(self, count: int, seed: int) -> np.ndarray:
        """Deterministic sample of A-unit vectors, one per row.

        Draws uniform unit vectors u in C^rank and lifts them through
        V D^{-1/2}, so every row x has ||x||_A = 1 and lies in R(A).
        """
        if self.rank < 1:
            raise ZeroRank("cannot sample A-unit vectors for a rank-0 weight")
        rng = np.random.default_rng(seed)
        z = rng.standard_normal((count, self.rank)) + 1j * rng.standard_normal(
            (count, self.rank)
        )
        z /= np.linalg.norm(z, axis=1, keepdims=True)
        return z @ (self.range_basis / np.sqrt(self.d)).T


def make_weight(
    matrix,
    rank_tol: float = DEFAULT_RANK_TOL,
    hermiticity_tol: float = DEFAULT_HERMITICITY_TOL,
) -> Weight:
    """Validate and factor a PSD weight matrix.

    The input is symmetrized as (M + M^H)/2 after a hermiticity gate;
    eigenvalues at or below ``rank_tol * lambda_max`` are truncated to zero,
    which defines the rank and the range basis.

    Raises
    ------
    NotHermitian
        if ||M - M^H|| / ||M|| exceeds ``hermiticity_tol``.
    NotPSD
        if a retained eigenvalue lies below ``-rank_tol * lambda_max``.
    ZeroWeight
        if the matrix is numerically zero.
    """
    m = _as_square(matrix)
    if not 0.0 < rank_tol < 1.0:
        raise ValueError(f"rank_tol must lie in (0, 1), got {rank_tol}")
    scale = np.linalg.norm(m, 2) if m.size else 0.0
    if scale == 0.0:
        raise ZeroWeight("weight matrix is exactly zero")
    herm_defect = np.linalg.norm(m - m.conj().T, 2) / scale
    if herm_defect > hermiticity_tol:
        raise NotHermitian(
            f"relative hermiticity defect {herm_defect:.3e} exceeds {hermiticity_tol:.3e}"
        )
    sym = (m + m.conj().T) / 2.0

    eigvals, eigvecs = np.linalg.eigh(sym)
    order = np.argsort(-eigvals, kind="stable")  # stable: ties keep eigh order
    eigvals = eigvals[order]
    eigvecs = eigvecs[:, order]

    lam_max = eigvals[0]
    if lam_max <= 0.0:
        if eigvals[-1] < -rank_tol * abs(eigvals).max():
            raise NotPSD(f"most negative eigenvalue {eigvals[-1]:.3e} with no positive part")
        raise ZeroWeight("weight matrix is numerically zero")
    cutoff = rank_tol * lam_max
    if eigvals[-1] < -cutoff:
        raise NotPSD(
            f"eigenvalue {eigvals[-1]:.3e} below -rank_tol * lambda_max = {-cutoff:.3e}"
        )

    rank = int(np.count_nonzero(eigvals > cutoff))
    if rank == 0:
        raise ZeroWeight("all eigenvalues truncated; weight is numerically zero")

    d = eigvals[:rank].copy()
    v = eigvecs[:, :rank].copy()
    sqrt_a = (v * np.sqrt(d)) @ v.conj().T
    pinv_a = (v / d) @ v.conj().T
    pinv_sqrt_a = (v / np.sqrt(d)) @ v.conj().T
    proj = v @ v.conj().T

    w = Weight(
        dim=m.shape[0],
        matrix=sym,
        eigvals=eigvals,
        eigvecs=eigvecs,
        rank=rank,
        range_basis=v,
        d=d,
        sqrt_a=sqrt_a,
        pinv_a=pinv_a,
        pinv_sqrt_a=pinv_sqrt_a,
        proj_range=proj,
        rank_tol=rank_tol,
    )
    for arr in (w.matrix, w.eigvals, w.eigvecs, w.range_basis, w.d, w.sqrt_a,
                w.pinv_a, w.pinv_sqrt_a, w.proj_range):
        arr.setflags(write=False)
    return w
