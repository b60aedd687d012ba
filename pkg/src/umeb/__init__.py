"""Maximally entangled bases and unextendible maximally entangled bases of C^d (x) C^d'."""

from .bases import BasisSet, Claim, bravyi33, embed_block, pad_columns, shift_phase_sv1b, weyl_ub
from .certify import CertificationReport, SearchConfig, Verdict
from .construct import example1_double, prop1_equal_blocks, prop2_compose, theorem1_scale, theorem2_truncate
from .errors import ClaimError, DimensionError, DomainError, PreconditionError, UMEBError

__all__ = [
    "BasisSet",
    "CertificationReport",
    "Claim",
    "ClaimError",
    "DimensionError",
    "DomainError",
    "PreconditionError",
    "SearchConfig",
    "UMEBError",
    "Verdict",
    "bravyi33",
    "embed_block",
    "example1_double",
    "pad_columns",
    "prop1_equal_blocks",
    "prop2_compose",
    "shift_phase_sv1b",
    "theorem1_scale",
    "theorem2_truncate",
    "weyl_ub",
]
