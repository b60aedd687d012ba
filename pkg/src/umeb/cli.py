"""Command-line front end: ``construct``, ``certify``, ``spectra``, ``compare``.

Exit codes
    0   success (certify: certifiedUMEB, evidenceUMEB or completeBasis)
    1   certify: basic checks failed
    2   certify: extendible (witness written to the report)
    3   certify: inconclusive
    64  usage error or malformed input file
    65  parameters outside a construction's domain, or incompatible inputs
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import bases, construct, equiv, fileio
from .certify import SearchConfig, Verdict, certify
from .errors import UMEBError
from .fileio import FormatError, dumps, matrix_to_json

log = logging.getLogger("umeb")

EX_OK, EX_FAILED, EX_EXTENDIBLE, EX_INCONCLUSIVE = 0, 1, 2, 3
EX_USAGE, EX_DATAERR = 64, 65

VERDICT_EXIT = {
    Verdict.CERTIFIED_UMEB: EX_OK,
    Verdict.EVIDENCE_UMEB: EX_OK,
    Verdict.COMPLETE_BASIS: EX_OK,
    Verdict.FAILED_BASIC_CHECKS: EX_FAILED,
    Verdict.EXTENDIBLE: EX_EXTENDIBLE,
    Verdict.INCONCLUSIVE: EX_INCONCLUSIVE,
}

BUILTIN_BASES = {"bravyi33": bases.bravyi33}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _need(args, *names):
    missing = [f"--{n.replace('_', '')}" for n in names if getattr(args, n) is None]
    if missing:
        raise _Fail(EX_USAGE, f"{args.method} needs {', '.join(missing)}")


def _load(path: str) -> bases.BasisSet:
    try:
        return fileio.read_basis(path)
    except FileNotFoundError:
        raise _Fail(EX_USAGE, f"no such file: {path}") from None
    except FormatError as exc:
        raise _Fail(EX_USAGE, f"{path}: {exc}") from None


def _base(name: str) -> bases.BasisSet:
    if name in BUILTIN_BASES:
        return BUILTIN_BASES[name]()
    return _load(name)


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        fileio.write_atomic(out, text)


def build(args) -> bases.BasisSet:
    m = args.method
    if m == "weyl":
        _need(args, "d")
        return bases.weyl_ub(args.d)
    if m == "sv1b":
        _need(args, "d", "dprime")
        return bases.shift_phase_sv1b(args.d, args.dprime)
    if m == "bravyi33":
        return bases.bravyi33()
    if m == "theorem1":
        _need(args, "q", "base")
        return construct.theorem1_scale(_base(args.base), args.q)
    if m == "example1":
        _need(args, "base")
        uub = _base(args.base)
        if args.p is not None and args.p != uub.dim_a:
            raise _Fail(EX_DATAERR, f"--p {args.p} does not match the {uub.dim_a}x{uub.dim_b} base")
        return construct.example1_double(bases.weyl_ub(uub.dim_a), uub)
    if m == "theorem2":
        _need(args, "d", "dprime", "i")
        return construct.theorem2_truncate(args.d, args.dprime, args.i)
    if m == "prop2":
        _need(args, "d", "dprime", "base")
        return construct.prop2_compose(args.d, args.dprime, _base(args.base))
    raise _Fail(EX_USAGE, f"unknown method {m}")


def cmd_construct(args) -> int:
    b = build(args)
    _emit(fileio.dump_basis(b), args.out)
    log.info("%s: %d members in %dx%d", args.method, len(b), b.dim_a, b.dim_b)
    return EX_OK


def cmd_certify(args) -> int:
    b = _load(args.input)
    cfg = SearchConfig(restarts=args.restarts, max_iterations=args.max_iterations, seed=args.seed)
    rep = certify(b, cfg, tol=args.tol)
    data = {"formatVersion": fileio.FORMAT_VERSION, "inputDigest": fileio.digest(args.input)}
    data["searchConfig"] = cfg.to_dict()
    data["tol"] = args.tol
    data.update(rep.to_dict())
    if rep.verdict is Verdict.EXTENDIBLE:
        data["witness"] = matrix_to_json(rep.witness)
    _emit(dumps(data, indent=2) + "\n", args.out)
    log.info("verdict: %s", rep.verdict.value)
    return VERDICT_EXIT[rep.verdict]


def cmd_spectra(args) -> int:
    b = _load(args.input)
    if not b.is_square:
        raise _Fail(EX_DATAERR, f"spectra need a square basis, got {b.dim_a}x{b.dim_b}")
    prof = equiv.pair_product_spectra(b)
    data = {
        "formatVersion": fileio.FORMAT_VERSION,
        "inputDigest": fileio.digest(args.input),
        "dims": [b.dim_a, b.dim_b],
        "members": len(b),
        "infiniteByNiven": prof.count("infiniteByNiven"),
        "pairs": prof.to_dict(b.labels),
    }
    _emit(dumps(data, indent=2) + "\n", args.out)
    return EX_OK


def cmd_compare(args) -> int:
    a, b = _load(args.first), _load(args.second)
    rep = equiv.inequivalence_witness(a, b)
    data = {
        "formatVersion": fileio.FORMAT_VERSION,
        "inputDigests": [fileio.digest(args.first), fileio.digest(args.second)],
    }
    data.update(rep.to_dict())
    _emit(dumps(data, indent=2) + "\n", args.out)
    return EX_OK


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="umeb", description="Construct and certify (unextendible) maximally entangled bases.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="build a basis set and write it as JSON")
    c.add_argument("method", choices=["weyl", "sv1b", "bravyi33", "theorem1", "example1", "theorem2", "prop2"])
    for flag in ("d", "dprime", "i", "q", "p"):
        c.add_argument(f"--{flag}", type=int)
    c.add_argument("--base", help="builtin name (bravyi33) or path to a basis file")
    c.add_argument("--out", help="output path (default: stdout)")
    c.set_defaults(func=cmd_construct)

    r = sub.add_parser("certify", help="check orthonormality, entanglement and unextendibility")
    r.add_argument("input")
    r.add_argument("--restarts", type=int, default=SearchConfig.restarts)
    r.add_argument("--max-iterations", type=int, default=SearchConfig.max_iterations)
    r.add_argument("--seed", type=int, default=SearchConfig.seed)
    r.add_argument("--tol", type=float, default=1e-10)
    r.add_argument("--out")
    r.set_defaults(func=cmd_certify)

    s = sub.add_parser("spectra", help="eigenphases and orders of all pair products")
    s.add_argument("input")
    s.add_argument("--out")
    s.set_defaults(func=cmd_spectra)

    m = sub.add_parser("compare", help="look for a spectral obstruction to equivalence")
    m.add_argument("first")
    m.add_argument("second")
    m.add_argument("--out")
    m.set_defaults(func=cmd_compare)
    return p


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except _Fail as exc:
        print(f"umeb: {exc}", file=sys.stderr)
        return exc.code
    except UMEBError as exc:
        print(f"umeb: {exc}", file=sys.stderr)
        return EX_DATAERR
    except ValueError as exc:
        print(f"umeb: {exc}", file=sys.stderr)
        return EX_DATAERR


if __name__ == "__main__":
    sys.exit(main())
