"""UMEB constructions built from matrix-space decompositions.

Constructors only assemble families; they never assert unextendibility on
their own.  The claims they attach are checked by :mod:`umeb.certify`.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import block_diag

from . import hsmat
from .bases import BasisSet, Claim, concat, embed_block, pad_columns, shift_phase_sv1b, weyl_ub
from .errors import ClaimError, DimensionError, DomainError, PreconditionError


def _require_unitary_family(b: BasisSet, what: str) -> None:
    if not b.is_square:
        raise DomainError(f"{what} must be square, got {b.dim_a}x{b.dim_b}")
    dev = np.abs(b.gram() - np.eye(len(b))).max() if len(b) else 0.0
    if dev > hsmat.ORTHO_TOL:
        raise PreconditionError(f"{what} is not orthonormal (Gram deviation {dev:.3g})")
    d = b.dim_a
    scaled = np.sqrt(d) * b.members
    prod = scaled @ np.conj(np.transpose(scaled, (0, 2, 1)))
    udev = np.abs(prod - np.eye(d)).max() if len(b) else 0.0
    if udev > hsmat.ORTHO_TOL:
        raise PreconditionError(f"{what}: sqrt(d) * member is not unitary (deviation {udev:.3g})")


def _require_complete(b: BasisSet, what: str) -> None:
    if len(b) != b.dim_a * b.dim_b:
        raise PreconditionError(f"{what} must be a complete basis ({b.dim_a * b.dim_b} members), got {len(b)}")


def _require_incomplete(b: BasisSet, what: str) -> None:
    if len(b) >= b.dim_a * b.dim_b:
        raise ClaimError(
            f"{what} has {len(b)} members; an unextendible set needs fewer than {b.dim_a * b.dim_b}"
        )


def theorem1_scale(base: BasisSet, q: int, ub: BasisSet | None = None) -> BasisSet:
    """Lift an N-member unextendible unitary set in d x d to (qd)^2 - q(d^2 - N) members in qd x qd.

    With S the q x q cyclic shift and T_j the rank-one phase matrix whose
    rows are (1, z^j, ..., z^(q-1)j), z = exp(2 pi i / q):

    * U-family: (S^k o T_j) (x) u / sqrt(q) for k in [1, q), j in [0, q),
      u over ``ub`` (defaults to ``weyl_ub(d)``); these fill every
      off-diagonal block pattern.
    * V-family: (I o T_j) (x) v / sqrt(q) for j in [0, q), v over ``base``;
      block-diagonal, with the q phase patterns forming a Vandermonde system.

    ``q = 1`` returns ``base``'s members unchanged.
    """
    if q < 1:
        raise DomainError(f"q must be a positive integer, got {q}")
    _require_unitary_family(base, "base")
    _require_incomplete(base, "base")
    d = base.dim_a
    if ub is None:
        ub = weyl_ub(d)
    _require_unitary_family(ub, "ub")
    _require_complete(ub, "ub")
    if ub.dim_a != d:
        raise DimensionError(f"ub is {ub.dim_a}x{ub.dim_a} but base is {d}x{d}")

    shift = hsmat.shift_matrix(q)
    mats, labels = [], []
    for k in range(1, q):
        pattern = np.linalg.matrix_power(shift, k)
        for j in range(q):
            block = hsmat.hadamard(pattern, hsmat.phase_rows(q, j)) / np.sqrt(q)
            for u, lab in zip(ub.members, ub.labels):
                mats.append(np.kron(block, u))
                labels.append(f"U[k={k},j={j}]{lab}")
    eye = np.eye(q, dtype=np.complex128)
    for j in range(q):
        block = hsmat.hadamard(eye, hsmat.phase_rows(q, j)) / np.sqrt(q)
        for v, lab in zip(base.members, base.labels):
            mats.append(np.kron(block, v))
            labels.append(f"V[j={j}]{lab}" if q > 1 else lab)
    prov = {"name": "theorem1", "params": {"q": q}, "base": dict(base.provenance)}
    n = q * q * d * d - q * (d * d - len(base))
    members = np.array(mats).reshape(n, q * d, q * d)
    return BasisSet(q * d, q * d, members, tuple(labels), prov, Claim.UMEB)


def example1_double(ub: BasisSet, uub: BasisSet) -> BasisSet:
    """2p^2 + 2m members in 2p x 2p from a p x p unitary basis and an m-member unextendible one.

    Block-diagonal part (+-U (+) U)/sqrt 2, anti-diagonal part
    [[0, V], [V, 0]]/sqrt 2 and [[0, -V], [V, 0]]/sqrt 2.
    """
    _require_unitary_family(ub, "ub")
    _require_unitary_family(uub, "uub")
    if ub.dim_a != uub.dim_a:
        raise DomainError(f"ub is {ub.dim_a}x{ub.dim_a} but uub is {uub.dim_a}x{uub.dim_a}")
    _require_complete(ub, "ub")
    _require_incomplete(uub, "uub")
    p = ub.dim_a
    zero = np.zeros((p, p))
    diag = prop1_equal_blocks(ub)
    mats = list(diag.members)
    labels = list(diag.labels)
    for sign, tag in ((1, "+"), (-1, "-")):
        for v, lab in zip(uub.members, uub.labels):
            mats.append(np.block([[zero, sign * v], [v, zero]]) / np.sqrt(2))
            labels.append(f"X{tag}{lab}")
    prov = {"name": "example1", "params": {"p": p}, "ub": dict(ub.provenance), "uub": dict(uub.provenance)}
    return BasisSet(2 * p, 2 * p, np.array(mats), tuple(labels), prov, Claim.UMEB)


def prop1_equal_blocks(ub: BasisSet) -> BasisSet:
    """Unitary basis (+-U_i (+) U_i)/sqrt 2 of the block-diagonal subspace with two p x p blocks."""
    _require_unitary_family(ub, "ub")
    _require_complete(ub, "ub")
    p = ub.dim_a
    mats, labels = [], []
    for sign, tag in ((1, "+"), (-1, "-")):
        for u, lab in zip(ub.members, ub.labels):
            mats.append(block_diag(sign * u, u) / np.sqrt(2))
            labels.append(f"D{tag}{lab}")
    prov = {"name": "prop1", "params": {"p": p}, "ub": dict(ub.provenance)}
    return BasisSet(2 * p, 2 * p, np.array(mats).reshape(-1, 2 * p, 2 * p), tuple(labels), prov, Claim.NONE)


def check_truncation(d: int, d_prime: int, i: int) -> None:
    """Raise DomainError unless (d, d', i) is admissible for the column truncation."""
    if d < 1 or d >= d_prime:
        raise DomainError(f"Theorem 2 requires 1 <= d < d' (got d={d}, d'={d_prime})")
    if d_prime >= 2 * d:
        if not 1 <= i < d:
            raise DomainError(f"Theorem 2 case (i) (d' >= 2d) requires 1 <= i < d, got i={i} with d={d}")
    else:
        r = d_prime - d
        if not 1 <= i <= r:
            raise DomainError(f"Theorem 2 case (ii) (d' = d + r, r = {r}) requires 1 <= i <= r, got i={i}")


def theorem2_truncate(d: int, d_prime: int, i: int) -> BasisSet:
    """Maximally entangled basis of the matrices whose last ``i`` columns vanish.

    Its complement lives on ``i < d`` columns, so no element of it has full
    rank d; the d(d' - i) members are unextendible in C^d (x) C^d'.
    """
    check_truncation(d, d_prime, i)
    b = pad_columns(shift_phase_sv1b(d, d_prime - i), d_prime)
    prov = {"name": "theorem2", "params": {"d": d, "dprime": d_prime, "i": i}}
    return BasisSet(d, d_prime, b.members, b.labels, prov, Claim.UMEB)


def prop2_compose(d: int, d_prime: int, uub: BasisSet) -> BasisSet:
    """Complete MEB on the first d' - d columns plus an unextendible d x d set on the last d."""
    if d_prime < 2 * d:
        raise DomainError(f"Proposition 2 requires d' >= 2d (got d={d}, d'={d_prime})")
    if uub.shape != (d, d):
        raise PreconditionError(f"uub must be {d}x{d}, got {uub.dim_a}x{uub.dim_b}")
    _require_unitary_family(uub, "uub")
    _require_incomplete(uub, "uub")
    head = pad_columns(shift_phase_sv1b(d, d_prime - d), d_prime)
    tail = embed_block(uub, 0, d_prime - d, d, d_prime)
    prov = {"name": "prop2", "params": {"d": d, "dprime": d_prime}, "uub": dict(uub.provenance)}
    return concat([head, tail], prov, Claim.UMEB)
