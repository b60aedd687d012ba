"""Checks that a family is an unextendible set of maximally entangled states.

A candidate passes when it is orthonormal, every member has all singular
values 1/sqrt(d), and its orthogonal complement contains no matrix of that
kind.  The last condition is settled either by a column-support argument
(every complement matrix has rank < d) or, failing that, by a multi-start
search for a maximally entangled complement element.  The search can find
a witness of extendibility but only ever produces *evidence* of
unextendibility, and the report keeps the two apart.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Union

import numpy as np
from scipy.optimize import least_squares

from . import hsmat
from .bases import BasisSet
from .errors import DomainError

#: entries with modulus above this make a column count as occupied
SUPPORT_TOL = 1e-9


class Verdict(str, enum.Enum):
    CERTIFIED_UMEB = "certifiedUMEB"
    EVIDENCE_UMEB = "evidenceUMEB"
    EXTENDIBLE = "extendible"
    INCONCLUSIVE = "inconclusive"
    FAILED_BASIC_CHECKS = "failedBasicChecks"
    COMPLETE_BASIS = "completeBasis"


@dataclass(frozen=True)
class SearchConfig:
    restarts: int = 200
    max_iterations: int = 2000
    step: float = 0.1
    decay: float = 0.995
    seed: int = 0
    evidence_margin: float = 1e-3
    # best value within this of 1 is reported as a witness
    witness_tol: float = 1e-9
    # best ascent points handed to the local least-squares polish
    polish_starts: int = 8

    def __post_init__(self):
        if self.restarts < 1 or self.max_iterations < 1:
            raise ValueError("restarts and max_iterations must be positive")
        if self.polish_starts < 0:
            raise ValueError("polish_starts must be non-negative")
        if self.evidence_margin <= 0:
            raise ValueError("evidence_margin must be positive")
        if not (self.step > 0 and 0 < self.decay <= 1):
            raise ValueError("step must be positive and decay in (0, 1]")

    def to_dict(self) -> dict:
        return {
            "restarts": self.restarts,
            "maxIterations": self.max_iterations,
            "step": self.step,
            "decay": self.decay,
            "seed": self.seed,
            "evidenceMargin": self.evidence_margin,
            "witnessTol": self.witness_tol,
            "polishStarts": self.polish_starts,
        }


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    max_deviation: float


@dataclass(frozen=True)
class StructuralRankCertificate:
    """Every complement element is supported on ``columns`` (fewer than d), so its rank is at most ``max_rank``."""

    max_rank: int
    columns: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"kind": "StructuralRankCertificate", "maxRank": self.max_rank, "columns": list(self.columns)}


@dataclass(frozen=True)
class NumericalEvidence:
    best_value: float
    restarts: int
    iterations: int
    seed: int
    witness: np.ndarray | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        return {
            "kind": "NumericalEvidence",
            "bestValue": self.best_value,
            "restarts": self.restarts,
            "iterations": self.iterations,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class NotApplicable:
    reason: str

    def to_dict(self) -> dict:
        return {"kind": "NotApplicable", "reason": self.reason}


Unextendibility = Union[StructuralRankCertificate, NumericalEvidence, NotApplicable]


@dataclass(frozen=True)
class CertificationReport:
    dims: tuple[int, int]
    members: int
    orthonormality: CheckResult
    entanglement: CheckResult
    complement_dim: int | None
    unextendibility: Unextendibility
    verdict: Verdict
    witness: np.ndarray | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "members": self.members,
            "orthonormality": {
                "pass": self.orthonormality.passed,
                "maxGramDeviation": self.orthonormality.max_deviation,
            },
            "entanglement": {
                "pass": self.entanglement.passed,
                "maxSingularValueDeviation": self.entanglement.max_deviation,
            },
            "complementDim": self.complement_dim,
            "unextendibility": self.unextendibility.to_dict(),
            "verdict": self.verdict.value,
        }


def check_orthonormal(b: BasisSet, tol: float = hsmat.ORTHO_TOL) -> CheckResult:
    if len(b) == 0:
        return CheckResult(True, 0.0)
    dev = float(np.abs(b.gram() - np.eye(len(b))).max())
    return CheckResult(dev <= tol, dev)


def check_max_entangled(b: BasisSet, tol: float = hsmat.ORTHO_TOL) -> CheckResult:
    """Largest |sigma - 1/sqrt(dim_a)| over all members and singular values."""
    if b.dim_a > b.dim_b:
        raise DomainError(f"maximal entanglement is defined here for dim_a <= dim_b, got {b.dim_a}x{b.dim_b}")
    if len(b) == 0:
        return CheckResult(True, 0.0)
    s = np.linalg.svd(b.members, compute_uv=False)
    dev = float(np.abs(s - 1 / np.sqrt(b.dim_a)).max())
    return CheckResult(dev <= tol, dev)


def structural_certificate(comp: hsmat.MatrixSubspace, dim_a: int | None = None) -> StructuralRankCertificate | None:
    """Column-support certificate that ``comp`` holds no maximally entangled matrix."""
    dim_a = comp.rows if dim_a is None else dim_a
    occupied = np.any(np.abs(comp.basis) > SUPPORT_TOL, axis=(0, 1))
    cols = tuple(int(c) for c in np.flatnonzero(occupied))
    if len(cols) < dim_a:
        return StructuralRankCertificate(len(cols), cols)
    return None


def sigma_min_objective(comp: hsmat.MatrixSubspace, coeffs: np.ndarray) -> np.ndarray:
    """sqrt(d) * sigma_min(sum_j c_j B_j) for each row of ``coeffs`` (rows assumed unit norm)."""
    coeffs = np.atleast_2d(coeffs)
    m = np.einsum("rn,nab->rab", coeffs, comp.basis)
    s = np.linalg.svd(m, compute_uv=False)
    return np.sqrt(comp.rows) * s[:, -1]


def _polish(basis: np.ndarray, c0: np.ndarray) -> np.ndarray:
    n, d = basis.shape[0], basis.shape[1]
    eye = np.eye(d)

    def resid(x):
        m = np.tensordot(x[:n] + 1j * x[n:], basis, axes=1)
        r = d * m @ m.conj().T - eye
        return np.concatenate([r.real.ravel(), r.imag.ravel()])

    x0 = np.concatenate([c0.real, c0.imag])
    sol = least_squares(resid, x0, method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=200 * (2 * n + 1))
    c = sol.x[:n] + 1j * sol.x[n:]
    nrm = np.linalg.norm(c)
    return c / nrm if nrm > 0 else c0


def numeric_unextendibility(
    comp: hsmat.MatrixSubspace, cfg: SearchConfig = SearchConfig()
) -> NumericalEvidence | NotApplicable:
    """Multi-start projected ascent of f(c) = sqrt(d) sigma_min(sum_j c_j B_j) over unit c.

    f <= 1 on the unit sphere, with equality exactly on maximally entangled
    complement elements.  All restarts run as one batch; the ascent
    direction is conj(u^dagger B_j v) for the smallest singular triple
    (u, sigma, v), taking the last triple LAPACK returns when sigma_min is
    degenerate (a subgradient choice).

    Maxima where f reaches 1 are flat to second order along some
    directions, so the ascent stalls a little below 1 there.  The best
    ``cfg.polish_starts`` points are therefore refined by Levenberg-Marquardt
    on the residual d M M^dagger - I, which vanishes exactly at maximally
    entangled M.
    """
    if comp.dim == 0:
        return NotApplicable("candidate is a complete basis; unextendibility needs n < d d'")
    if comp.rows > comp.cols:
        raise DomainError("dim_a must not exceed dim_b")
    basis = comp.basis
    n, d, dp = basis.shape
    flat = basis.reshape(n, d * dp)
    rng = np.random.default_rng(cfg.seed)
    c = rng.standard_normal((cfg.restarts, comp.dim)) + 1j * rng.standard_normal((cfg.restarts, comp.dim))
    c /= np.linalg.norm(c, axis=1, keepdims=True)
    scale = np.sqrt(comp.rows)

    best_val = np.full(cfg.restarts, -np.inf)
    best_c = c.copy()
    step = cfg.step
    for _ in range(cfg.max_iterations):
        m = (c @ flat).reshape(-1, d, dp)
        u, s, vh = np.linalg.svd(m, full_matrices=False)
        val = scale * s[:, -1]
        improved = val > best_val
        best_val[improved] = val[improved]
        best_c[improved] = c[improved]
        # w_j = u^dagger B_j v
        bv = (vh[:, -1, :].conj() @ basis.reshape(n * d, dp).T).reshape(-1, n, d)
        w = np.einsum("rna,ra->rn", bv, u[:, :, -1].conj())
        g = w.conj()
        g -= np.real(np.sum(c.conj() * g, axis=1, keepdims=True)) * c
        c = c + step * g
        c /= np.linalg.norm(c, axis=1, keepdims=True)
        step *= cfg.decay
    for r in np.argsort(-best_val, kind="stable")[: cfg.polish_starts]:
        c = _polish(basis, best_c[r])
        val = sigma_min_objective(comp, c)[0]
        if val > best_val[r]:
            best_val[r], best_c[r] = val, c

    top = int(np.argmax(best_val))  # first restart index on ties
    best = float(min(best_val[top], 1.0))
    witness = None
    if best >= 1 - cfg.witness_tol:
        witness = np.einsum("n,nab->ab", best_c[top], basis)
        witness /= np.linalg.norm(witness)
    return NumericalEvidence(best, cfg.restarts, cfg.max_iterations, cfg.seed, witness)


def certify(b: BasisSet, cfg: SearchConfig = SearchConfig(), tol: float = hsmat.ORTHO_TOL) -> CertificationReport:
    ortho = check_orthonormal(b, tol)
    if b.dim_a > b.dim_b:
        ent = CheckResult(False, float("inf"))
    else:
        ent = check_max_entangled(b, tol)
    if not (ortho.passed and ent.passed):
        return CertificationReport(
            b.shape, len(b), ortho, ent, None,
            NotApplicable("basic checks failed"), Verdict.FAILED_BASIC_CHECKS,
        )

    comp = hsmat.complement(b.span())
    if comp.dim == 0:
        return CertificationReport(
            b.shape, len(b), ortho, ent, 0,
            NotApplicable("candidate is a complete basis; unextendibility needs n < d d'"),
            Verdict.COMPLETE_BASIS,
        )
    cert = structural_certificate(comp, b.dim_a)
    if cert is not None:
        return CertificationReport(b.shape, len(b), ortho, ent, comp.dim, cert, Verdict.CERTIFIED_UMEB)

    ev = numeric_unextendibility(comp, cfg)
    if ev.witness is not None:
        verdict = Verdict.EXTENDIBLE
    elif ev.best_value <= 1 - cfg.evidence_margin:
        verdict = Verdict.EVIDENCE_UMEB
    else:
        verdict = Verdict.INCONCLUSIVE
    return CertificationReport(b.shape, len(b), ortho, ent, comp.dim, ev, verdict, ev.witness)
