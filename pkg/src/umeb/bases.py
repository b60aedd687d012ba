"""Primitive orthonormal families of matrices and their embeddings.

Every member is stored with unit Hilbert-Schmidt norm, so a "unitary"
member U of a d x d family satisfies (sqrt(d) U)(sqrt(d) U)^dagger = I, and
a maximally entangled d x d' member has all singular values 1/sqrt(d).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Any, Mapping, Sequence

import numpy as np

from . import hsmat
from .errors import DimensionError, DomainError


class Claim(str, enum.Enum):
    MEB = "MEB"
    UMEB = "UMEB"
    UB = "UB"
    UUB = "UUB"
    SV1B = "SV1B"
    USV1B = "USV1B"
    NONE = "NONE"


COMPLETE_CLAIMS = frozenset({Claim.MEB, Claim.SV1B, Claim.UB})
UNEXTENDIBLE_CLAIMS = frozenset({Claim.UMEB, Claim.UUB, Claim.USV1B})


@dataclass(frozen=True)
class BasisSet:
    """Ordered, labelled family of unit-norm ``dim_a x dim_b`` matrices."""

    dim_a: int
    dim_b: int
    members: np.ndarray = field(repr=False)
    labels: tuple[str, ...]
    provenance: Mapping[str, Any] = field(default_factory=dict)
    claim: Claim = Claim.NONE

    def __post_init__(self):
        m = np.asarray(self.members, dtype=np.complex128)
        if m.ndim != 3 or m.shape[1:] != (self.dim_a, self.dim_b):
            raise DimensionError(
                f"members of shape {m.shape} do not match {self.dim_a}x{self.dim_b}"
            )
        if len(self.labels) != m.shape[0]:
            raise ValueError("one label per member is required")
        if not np.all(np.isfinite(m)):
            raise ValueError("member entries must be finite")
        norms = np.linalg.norm(m.reshape(m.shape[0], -1), axis=1)
        if m.shape[0] and np.abs(norms - 1).max() > hsmat.ORTHO_TOL:
            raise ValueError("members must have unit Hilbert-Schmidt norm")
        claim = Claim(self.claim)
        n, full = m.shape[0], self.dim_a * self.dim_b
        if claim in COMPLETE_CLAIMS and n != full:
            raise ValueError(f"claim {claim.value} needs {full} members, got {n}")
        if claim in UNEXTENDIBLE_CLAIMS and not n < full:
            raise ValueError(f"claim {claim.value} needs fewer than {full} members, got {n}")
        object.__setattr__(self, "members", m)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "claim", claim)
        object.__setattr__(self, "provenance", dict(self.provenance))

    def __len__(self) -> int:
        return self.members.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.dim_a, self.dim_b

    @property
    def is_square(self) -> bool:
        return self.dim_a == self.dim_b

    def gram(self) -> np.ndarray:
        return hsmat.gram(self.members)

    def span(self) -> hsmat.MatrixSubspace:
        return hsmat.orthonormalize(self.members, shape=self.shape)

    def with_claim(self, claim: Claim | str) -> "BasisSet":
        return replace(self, claim=Claim(claim))


def _shift_phase(d: int, m: int) -> np.ndarray:
    k = np.arange(d)
    out = np.zeros((d, m, d, m), dtype=np.complex128)
    for n in range(d):
        for j in range(m):
            out[n, j, k, (k + j) % m] = hsmat.root_of_unity(n * k, d)
    return out.reshape(d * m, d, m) / np.sqrt(d)


def weyl_ub(d: int) -> BasisSet:
    """Weyl unitary basis of M_{d x d}.

    Member (m, n) is (1/sqrt d) sum_k xi^(m k) |k><(k + n) mod d|,
    xi = exp(2 pi i / d), ordered lexicographically in (m, n).
    """
    if d < 1:
        raise DomainError(f"dimension must be positive, got d={d}")
    labels = tuple(f"W({m},{n})" for m in range(d) for n in range(d))
    return BasisSet(d, d, _shift_phase(d, d), labels, {"name": "weyl", "params": {"d": d}}, Claim.UB)


def shift_phase_sv1b(d: int, m: int) -> BasisSet:
    """Singular-value-1 basis of M_{d x m} (a maximally entangled basis of C^d (x) C^m).

    A(n, j) = (1/sqrt d) sum_{k<d} xi_d^(n k) |k><(k + j) mod m|. Rows are
    distinct columns of the identity up to phases, which needs ``d <= m``.
    """
    if d < 1 or m < 1:
        raise DomainError(f"dimensions must be positive, got d={d}, m={m}")
    if d > m:
        raise DomainError(f"maximal entanglement in C^{d} (x) C^{m} requires d <= m")
    labels = tuple(f"A({n},{j})" for n in range(d) for j in range(m))
    return BasisSet(d, m, _shift_phase(d, m), labels, {"name": "sv1b", "params": {"d": d, "m": m}}, Claim.SV1B)


GOLDEN = (1 + np.sqrt(5)) / 2
BRAVYI_COS = -7 / 8


def bravyi_vectors() -> np.ndarray:
    """The six real unit vectors (|i'> +- b|i+1'>)/a, b the golden ratio, a = sqrt(1 + b^2)."""
    a = np.sqrt(1 + GOLDEN**2)
    e = np.eye(3)
    vecs = []
    for i in range(3):
        for sign in (1, -1):
            vecs.append((e[i] + sign * GOLDEN * e[(i + 1) % 3]) / a)
    return np.array(vecs)


def bravyi_unitaries() -> np.ndarray:
    """U_j = I - (1 - e^{i theta}) |psi_j><psi_j| with cos theta = -7/8, sin theta > 0."""
    phase = complex(BRAVYI_COS, np.sqrt(1 - BRAVYI_COS**2))
    psi = bravyi_vectors()
    return np.array([np.eye(3) - (1 - phase) * np.outer(p, p.conj()) for p in psi])


def bravyi33() -> BasisSet:
    """Six-member unextendible maximally entangled set of C^3 (x) C^3.

    Member j is the coefficient matrix of (I (x) U_j)|Phi+>, i.e. U_j^T / sqrt 3.
    """
    mats = np.transpose(bravyi_unitaries(), (0, 2, 1)) / np.sqrt(3)
    labels = tuple(f"u{j}" for j in range(1, 7))
    return BasisSet(3, 3, mats, labels, {"name": "bravyi33", "params": {}}, Claim.UMEB)


def pad_columns(b: BasisSet, new_dim_b: int) -> BasisSet:
    """Zero-pad every member on the right; the claim is reset to NONE."""
    if new_dim_b < b.dim_b:
        raise DomainError(f"cannot pad {b.dim_b} columns down to {new_dim_b}")
    return embed_block(b, 0, 0, b.dim_a, new_dim_b)


def embed_block(
    b: BasisSet, row_offset: int, col_offset: int, ambient_rows: int, ambient_cols: int
) -> BasisSet:
    """Place each member as a block at the given offset inside a zero matrix."""
    if row_offset < 0 or col_offset < 0:
        raise DomainError("offsets must be non-negative")
    if row_offset + b.dim_a > ambient_rows or col_offset + b.dim_b > ambient_cols:
        raise DomainError(
            f"{b.dim_a}x{b.dim_b} block at ({row_offset},{col_offset}) "
            f"overflows {ambient_rows}x{ambient_cols}"
        )
    out = np.zeros((len(b), ambient_rows, ambient_cols), dtype=np.complex128)
    out[:, row_offset : row_offset + b.dim_a, col_offset : col_offset + b.dim_b] = b.members
    prov = {
        "name": "embed",
        "params": {"offset": [row_offset, col_offset], "ambient": [ambient_rows, ambient_cols]},
        "source": dict(b.provenance),
    }
    return BasisSet(ambient_rows, ambient_cols, out, b.labels, prov, Claim.NONE)


def concat(parts: Sequence[BasisSet], provenance: Mapping[str, Any], claim: Claim = Claim.NONE) -> BasisSet:
    """Join equally shaped families, keeping member order."""
    shapes = {p.shape for p in parts}
    if len(shapes) != 1:
        raise DimensionError(f"cannot concatenate families of shapes {sorted(shapes)}")
    (da, db), = shapes
    members = np.concatenate([p.members for p in parts])
    labels = tuple(lab for p in parts for lab in p.labels)
    return BasisSet(da, db, members, labels, provenance, claim)
