"""Spectral obstructions to local-unitary equivalence of unitary families.

If two unextendible sets are equivalent, products of pairs of members on
one side are conjugate to products on the other side, so their spectra
agree.  The eigenvalue *orders* (least n with lambda^n = 1, possibly
infinite) are therefore an invariant; an eigenphase whose cosine is a
rational outside {0, +-1/2, +-1} has infinite order by Niven's theorem.

Only this necessary condition is implemented.  "No obstruction found"
does not mean the families are equivalent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .bases import BasisSet
from .errors import DimensionError, DomainError, PreconditionError

N_MAX = 1000
DENOM_MAX = 64
ORDER_TOL = 1e-9
UNITARY_TOL = 1e-10

_NIVEN = frozenset(Fraction(x) for x in ("0", "1/2", "-1/2", "1", "-1"))


@dataclass(frozen=True)
class Order:
    """``kind`` is one of "finite", "infiniteByNiven", "unresolved"."""

    kind: str
    n: int | None = None
    cosine: Fraction | None = None

    def to_dict(self) -> dict:
        if self.kind == "finite":
            return {"kind": "finite", "n": self.n}
        if self.kind == "infiniteByNiven":
            return {"kind": "infiniteByNiven", "cosine": [self.cosine.numerator, self.cosine.denominator]}
        return {"kind": "unresolved"}


UNRESOLVED = Order("unresolved")


def _rational_cosine(phase: float, denom_max: int, tol: float) -> Order:
    cos = float(np.cos(phase))
    frac = Fraction(cos).limit_denominator(denom_max)
    if abs(cos - float(frac)) <= tol and frac not in _NIVEN:
        return Order("infiniteByNiven", cosine=frac)
    return UNRESOLVED


def classify_order(
    phase: float, n_max: int = N_MAX, denom_max: int = DENOM_MAX, tol: float = ORDER_TOL
) -> Order:
    """Order of e^{i phase}: finite(n), infinite (rational cosine, Niven), or unresolved."""
    return classify_orders(np.array([phase]), n_max, denom_max, tol)[0]


def classify_orders(
    phases, n_max: int = N_MAX, denom_max: int = DENOM_MAX, tol: float = ORDER_TOL, chunk: int = 2048
) -> list[Order]:
    """Vectorised :func:`classify_order` over a flat array of phases."""
    phases = np.asarray(phases, dtype=float).reshape(-1)
    ns = np.arange(1, n_max + 1)
    out: list[Order] = []
    for start in range(0, phases.size, chunk):
        block = phases[start : start + chunk]
        # |e^{i n t} - 1| = 2 |sin(n t / 2)|
        err = 2 * np.abs(np.sin(np.outer(block, ns) / 2))
        hit = err <= tol
        first = np.argmax(hit, axis=1)
        found = hit[np.arange(block.size), first]
        for t, ok, idx in zip(block, found, first):
            out.append(Order("finite", n=int(ns[idx])) if ok else _rational_cosine(t, denom_max, tol))
    return out


def eigenphases(u: np.ndarray) -> np.ndarray:
    """Sorted eigenphases in (-pi, pi] of a unitary (or a stack of them)."""
    ph = np.angle(np.linalg.eigvals(u))
    ph = np.where(ph <= -np.pi + 1e-12, np.pi, ph)
    return np.sort(ph, axis=-1)


def _scaled_unitaries(b: BasisSet) -> np.ndarray:
    if not b.is_square:
        raise DimensionError(f"spectra need square members, got {b.dim_a}x{b.dim_b}")
    u = np.sqrt(b.dim_a) * b.members
    dev = np.abs(u @ np.conj(np.transpose(u, (0, 2, 1))) - np.eye(b.dim_a)).max() if len(b) else 0.0
    if dev > UNITARY_TOL:
        raise PreconditionError(f"sqrt(d) * member is not unitary (deviation {dev:.3g})")
    return u


@dataclass(frozen=True)
class SpectralProfile:
    """Eigenphases of (sqrt d U_i)(sqrt d U_j) for each listed ordered pair (i, j)."""

    pairs: np.ndarray
    phases: np.ndarray = field(repr=False)
    orders: tuple[tuple[Order, ...], ...] = field(repr=False)

    def count(self, kind: str) -> int:
        return sum(o.kind == kind for row in self.orders for o in row)

    def to_dict(self, labels: Sequence[str] | None = None) -> list[dict]:
        rows = []
        for (i, j), ph, ords in zip(self.pairs, self.phases, self.orders):
            entry = {"i": int(i), "j": int(j)}
            if labels is not None:
                entry["labels"] = [labels[i], labels[j]]
            entry["phases"] = [float(x) for x in ph]
            entry["orders"] = [o.to_dict() for o in ords]
            rows.append(entry)
        return rows


def _profile(pairs: np.ndarray, phases: np.ndarray, **kw) -> SpectralProfile:
    flat = classify_orders(phases.reshape(-1), **kw)
    d = phases.shape[1] if phases.ndim == 2 else 0
    orders = tuple(tuple(flat[k * d : (k + 1) * d]) for k in range(len(pairs)))
    return SpectralProfile(pairs, phases, orders)


def pair_product_spectra(b: BasisSet, indices: Sequence[int] | None = None, **kw) -> SpectralProfile:
    """Spectra of every ordered pair product among ``indices`` (all members by default), row-major order."""
    u = _scaled_unitaries(b)
    idx = np.arange(len(b)) if indices is None else np.asarray(indices, dtype=int)
    ii, jj = np.meshgrid(idx, idx, indexing="ij")
    pairs = np.stack([ii.ravel(), jj.ravel()], axis=1)
    prods = u[pairs[:, 0]] @ u[pairs[:, 1]]
    return _profile(pairs, eigenphases(prods).reshape(len(pairs), b.dim_a), **kw)


def member_spectra(b: BasisSet, **kw) -> SpectralProfile:
    """Spectra of the single members sqrt(d) U_i, stored as pairs (i, i) with phases of U_i alone."""
    u = _scaled_unitaries(b)
    pairs = np.stack([np.arange(len(b))] * 2, axis=1)
    return _profile(pairs, eigenphases(u).reshape(len(b), b.dim_a), **kw)


@dataclass(frozen=True)
class EquivalenceReport:
    verdict: str
    infinite_a: int
    infinite_b: int
    pairs: int

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "infiniteByNivenA": self.infinite_a,
            "infiniteByNivenB": self.infinite_b,
            "pairsPerSide": self.pairs,
        }


INEQUIVALENT = "inequivalent (spectral order obstruction)"
NO_OBSTRUCTION = "no obstruction found"


def inequivalence_witness(a: BasisSet, b: BasisSet, **kw) -> EquivalenceReport:
    if not (a.is_square and b.is_square):
        raise DomainError("both families must be square")
    if a.shape != b.shape or len(a) != len(b):
        raise DimensionError(
            f"cannot compare {len(a)} members of {a.dim_a}x{a.dim_b} with {len(b)} of {b.dim_a}x{b.dim_b}"
        )
    na = pair_product_spectra(a, **kw).count("infiniteByNiven")
    nb = pair_product_spectra(b, **kw).count("infiniteByNiven")
    verdict = INEQUIVALENT if (na > 0) != (nb > 0) else NO_OBSTRUCTION
    return EquivalenceReport(verdict, na, nb, len(a) ** 2)
