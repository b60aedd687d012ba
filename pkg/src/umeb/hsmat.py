"""Dense complex matrices under the Hilbert-Schmidt inner product.

A pure state of C^d (x) C^d' with amplitudes a_kl in the product basis
|k>|l'> corresponds to the d x d' matrix [a_kl].  Inner products, Schmidt
rank and maximal entanglement all translate into statements about these
matrices, so everything downstream works on 2-D ``complex128`` arrays.

Matrices are plain numpy arrays; collections of matrices are stacked as
``(n, rows, cols)`` arrays.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError

#: residual norm below which a direction counts as linearly dependent
RANK_TOL = 1e-9
#: allowed |<A_i, A_j> - delta_ij|
ORTHO_TOL = 1e-10
#: allowed deviation of sum |a_kl|^2 from one
NORM_TOL = 1e-10


def as_matrix(a) -> np.ndarray:
    """Return ``a`` as a finite 2-D complex array (a copy only if needed)."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or 0 in m.shape:
        raise DimensionError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def _same_shape(a: np.ndarray, b: np.ndarray, op: str) -> None:
    if a.shape != b.shape:
        raise DimensionError(f"{op}: shape mismatch {a.shape} vs {b.shape}")


def hs_inner(a, b) -> complex:
    """Tr(A^dagger B)."""
    a, b = as_matrix(a), as_matrix(b)
    _same_shape(a, b, "hs_inner")
    return complex(np.vdot(a, b))


def hs_norm(a) -> float:
    return float(np.linalg.norm(as_matrix(a)))


def kron(a, b) -> np.ndarray:
    """Kronecker product; entry (i*rB + k, j*cB + l) is A[i, j] * B[k, l]."""
    return np.kron(as_matrix(a), as_matrix(b))


def hadamard(a, b) -> np.ndarray:
    """Entrywise product of two equally shaped matrices."""
    a, b = as_matrix(a), as_matrix(b)
    _same_shape(a, b, "hadamard")
    return a * b


def singular_values(a) -> np.ndarray:
    """Singular values in descending order, ``min(rows, cols)`` of them."""
    return np.linalg.svd(as_matrix(a), compute_uv=False)


def gram(mats) -> np.ndarray:
    """Gram matrix G[i, j] = Tr(A_i^dagger A_j) of a stack of matrices."""
    v = np.asarray(mats, dtype=np.complex128)
    v = v.reshape(v.shape[0], -1)
    return v.conj() @ v.T


def root_of_unity(k, d: int) -> np.ndarray:
    """exp(2 pi i k / d), exact at multiples of a quarter turn."""
    k = np.mod(np.asarray(k), d)
    z = np.exp(2j * np.pi * k / d)
    quarter = (4 * k) % d == 0
    exact = np.array([1, 1j, -1, -1j])[(4 * k // d) % 4]
    return np.where(quarter, exact, z)


def shift_matrix(q: int) -> np.ndarray:
    """Cyclic shift S with S[r, (r + 1) mod q] = 1, so that S^q = I."""
    return np.roll(np.eye(q, dtype=np.complex128), 1, axis=1)


def phase_rows(q: int, j: int) -> np.ndarray:
    """Rank-one q x q matrix whose every row is (1, z^j, z^2j, ..., z^(q-1)j), z = exp(2 pi i / q)."""
    row = root_of_unity(j * np.arange(q), q)
    return np.tile(row, (q, 1))


# --- states ---------------------------------------------------------------


@dataclass(frozen=True)
class StateVector:
    """Normalized pure state of C^dim_a (x) C^dim_b.

    ``amplitudes`` is flat, index ``k * dim_b + l`` holding the coefficient of
    |k>|l'>, which is the usual ``np.kron`` ordering.
    """

    dim_a: int
    dim_b: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if self.dim_a < 1 or self.dim_b < 1:
            raise DimensionError("local dimensions must be positive")
        if amps.size != self.dim_a * self.dim_b:
            raise DimensionError(
                f"{amps.size} amplitudes do not fit a {self.dim_a}x{self.dim_b} system"
            )
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized (|psi|^2 = {norm2!r})")
        object.__setattr__(self, "amplitudes", amps)

    def inner(self, other: "StateVector") -> complex:
        """<self|other>."""
        if (self.dim_a, self.dim_b) != (other.dim_a, other.dim_b):
            raise DimensionError("states live in different spaces")
        return complex(np.vdot(self.amplitudes, other.amplitudes))


def state_to_matrix(psi: StateVector) -> np.ndarray:
    return psi.amplitudes.reshape(psi.dim_a, psi.dim_b).copy()


def matrix_to_state(a, dims: tuple[int, int] | None = None) -> StateVector:
    a = as_matrix(a)
    if dims is not None and tuple(dims) != a.shape:
        raise DimensionError(f"matrix shape {a.shape} does not match dims {tuple(dims)}")
    return StateVector(a.shape[0], a.shape[1], a.reshape(-1))


def schmidt_number(psi: StateVector, tol: float = RANK_TOL) -> int:
    """Schmidt rank = numerical rank of the coefficient matrix."""
    s = singular_values(state_to_matrix(psi))
    return int(np.count_nonzero(s > tol))


# --- subspaces ------------------------------------------------------------


@dataclass(frozen=True)
class MatrixSubspace:
    """Hilbert-Schmidt orthonormal spanning list of a subspace of M_{rows x cols}."""

    rows: int
    cols: int
    basis: np.ndarray = field(repr=False)

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=np.complex128)
        if b.size == 0:
            b = np.zeros((0, self.rows, self.cols), dtype=np.complex128)
        if b.ndim != 3 or b.shape[1:] != (self.rows, self.cols):
            raise DimensionError(
                f"basis of shape {b.shape} does not match ambient {self.rows}x{self.cols}"
            )
        if b.shape[0] > self.rows * self.cols:
            raise DimensionError("more basis elements than the ambient dimension")
        if b.shape[0]:
            dev = np.abs(gram(b) - np.eye(b.shape[0])).max()
            if dev > ORTHO_TOL:
                raise ValueError(f"basis is not orthonormal (deviation {dev:.3g})")
        object.__setattr__(self, "basis", b)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def ambient_dim(self) -> int:
        return self.rows * self.cols

    def vectors(self) -> np.ndarray:
        """Basis as rows of vec(A) (row-major flattening)."""
        return self.basis.reshape(self.dim, -1)

    def projector(self) -> np.ndarray:
        """Orthogonal projector onto the subspace, acting on vec(X)."""
        v = self.vectors()
        return v.T @ v.conj()

    def project(self, x) -> np.ndarray:
        x = as_matrix(x)
        if x.shape != (self.rows, self.cols):
            raise DimensionError("matrix does not live in the ambient space")
        return (self.projector() @ x.reshape(-1)).reshape(x.shape)


def _reorthogonalize(v: np.ndarray, q: list[np.ndarray]) -> np.ndarray:
    # two passes of classical GS keep the residual orthogonal to working precision
    for _ in range(2):
        for u in q:
            v = v - np.vdot(u, v) * u
    return v


def orthonormalize(
    mats: Iterable, shape: tuple[int, int] | None = None, tol: float = RANK_TOL
) -> MatrixSubspace:
    """Gram-Schmidt in input order; inputs whose residual norm is below ``tol`` are dropped."""
    mats = [as_matrix(m) for m in mats]
    if not mats:
        if shape is None:
            raise DimensionError("an empty input needs an explicit ambient shape")
        return MatrixSubspace(shape[0], shape[1], np.zeros((0, *shape)))
    rows, cols = mats[0].shape
    if shape is not None and tuple(shape) != (rows, cols):
        raise DimensionError("inputs do not match the given ambient shape")
    q: list[np.ndarray] = []
    for m in mats:
        if m.shape != (rows, cols):
            raise DimensionError(f"mixed shapes {m.shape} and {(rows, cols)}")
        r = _reorthogonalize(m.reshape(-1), q)
        nrm = np.linalg.norm(r)
        if nrm > tol:
            q.append(r / nrm)
    return MatrixSubspace(rows, cols, np.array(q).reshape(len(q), rows, cols))


def complement(sub: MatrixSubspace, tol: float = RANK_TOL) -> MatrixSubspace:
    """Orthonormal basis of the HS-orthogonal complement.

    The standard matrix units are projected off ``sub``; the unit with the
    largest remaining residual is taken next (ties broken by row-major
    index) until every residual drops below ``tol``.
    """
    n = sub.ambient_dim
    resid = np.eye(n, dtype=np.complex128) - sub.projector()  # column k = residual of unit k
    out: list[np.ndarray] = []
    basis = list(sub.vectors())
    while len(out) + sub.dim < n:
        norms = np.linalg.norm(resid, axis=0)
        k = int(np.argmax(norms))
        if norms[k] <= tol:
            break
        v = _reorthogonalize(resid[:, k], basis + out)
        v /= np.linalg.norm(v)
        out.append(v)
        resid -= np.outer(v, v.conj() @ resid)
    return MatrixSubspace(sub.rows, sub.cols, np.array(out).reshape(len(out), sub.rows, sub.cols))


def projection_distance(a: MatrixSubspace, b: MatrixSubspace) -> float:
    """Spectral norm of the difference of the two orthogonal projectors."""
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise DimensionError("subspaces live in different ambient spaces")
    return float(np.linalg.norm(a.projector() - b.projector(), 2))
