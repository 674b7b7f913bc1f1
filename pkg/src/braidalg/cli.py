"""Command-line front end.

Subcommands:

  ybe <R>                          Yang-Baxter verdict (exit 0 pass / 1 fail)
  biinv <R>                        inverse and second-inverse status
  present <preset> <R> [-n N]      emit a presentation document
  nf <preset> <R> <poly> [-n N]    normal form of a polynomial
  hilbert <preset> <R> -D d [-n N] graded dimension vector
  verify <preset> <R> -D d [--mode exact|probabilistic] [--seed S] [-n N]
  square-iso <R> -D d              graded-dimension comparison of the two
                                   double constructions

<R> is a builtin name (glq2, identity:N, flip:N) or a path to an R-matrix
document.  Output is deterministic: identical invocations produce
byte-identical documents (timings go to stderr).  Exit codes: 0 pass,
1 computational failure or failed verdict, 2 usage error.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from . import bialg, ideals, presents, rmat
from .linalg import SingularMatrixError
from .ncalg import (NCAlgError, Presentation, format_poly, parse_poly)
from .qscalar import QScalarError
from .rewrite import OrientationError, orient_relations
from .rmat import RMatrixDocumentError

CONVENTION_LINE = ("# index convention: R^{ij}_{kl}; upper indices are outputs, "
                   "index pairs flattened row-major as (i-1)*N+(j-1)")


class UsageError(ValueError):
    """Bad input that should exit with status 2."""


def resolve_rmatrix(source: str):
    """Builtin name or document path -> (RMatrix, label)."""
    try:
        builtin = rmat.builtin_rmatrix(source)
    except RMatrixDocumentError as e:
        raise UsageError(str(e)) from None
    if builtin is not None:
        if source == "glq2":
            # fail fast if the shipped data were ever corrupted (flip:N is
            # intentionally not biinvertible, so only glq2 is guarded)
            if not rmat.ybe_check(builtin)[0] or rmat.second_inverse(builtin) is None:
                raise RuntimeError("shipped glq2 R-matrix failed its own "
                                   "Yang-Baxter/biinvertibility validation")
        return builtin, source
    path = Path(source)
    if not path.is_file():
        raise UsageError(f"no builtin R-matrix or file named {source!r}")
    try:
        return rmat.load_rmatrix(path.read_text()), source
    except (RMatrixDocumentError, QScalarError) as e:
        raise UsageError(f"bad R-matrix document {source!r}: {e}") from None


def _build(preset: str, R, n: int) -> Presentation:
    if preset not in presents.PRESETS:
        raise UsageError(f"unknown preset {preset!r} (use one of {', '.join(presents.PRESETS)})")
    if preset != "chain" and n != 1:
        raise UsageError("-n applies to the chain preset only")
    return presents.build_preset(preset, R, n)


# ---------------------------------------------------------------------------
# presentation documents
# ---------------------------------------------------------------------------

_GEN_RE = re.compile(r"^([A-Za-z][A-Za-z0-9_.]*)\[(\d+),(\d+)\]$")


def format_presentation_document(P: Presentation, preset: str, rlabel: str,
                                 copies: int) -> str:
    lines = [
        "# braidalg presentation document",
        CONVENTION_LINE,
        f"preset: {preset}",
        f"rmatrix: {rlabel}",
        f"dim: {P.dim}",
        f"copies: {copies}",
        "generators: " + " ".join(str(g) for g in P.roster),
    ]
    lines.extend("relation: " + format_poly(r, P) for r in P.relations)
    return "\n".join(lines) + "\n"


def parse_presentation_document(text: str):
    """Parse a presentation document; returns (metadata dict, Presentation)."""
    from .ncalg import Generator

    meta = {}
    roster = []
    relation_srcs = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition(":")
        key, value = key.strip(), value.strip()
        if key == "generators":
            for tok in value.split():
                m = _GEN_RE.match(tok)
                if not m:
                    raise NCAlgError(f"bad generator token {tok!r}")
                roster.append(Generator(m.group(1), int(m.group(2)), int(m.group(3))))
        elif key == "relation":
            relation_srcs.append(value)
        else:
            meta[key] = value
    if "dim" not in meta:
        raise NCAlgError("presentation document lacks a dim field")
    P = Presentation(int(meta["dim"]), roster, [], name=meta.get("preset", ""))
    rels = [parse_poly(src, P) for src in relation_srcs]
    return meta, Presentation(int(meta["dim"]), roster, rels,
                              name=meta.get("preset", ""))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_ybe(args, out):
    R, _ = resolve_rmatrix(args.rmatrix)
    ok, wit = rmat.ybe_check(R)
    if ok:
        out.write("YBE: PASS\n")
        return 0
    o, s, residue = wit
    out.write("YBE: FAIL\n")
    out.write(f"witness: entry {o} <- {s}: residue {residue}\n")
    return 1


def cmd_biinv(args, out):
    R, _ = resolve_rmatrix(args.rmatrix)
    try:
        rmat.invert(R)
        invertible = True
    except SingularMatrixError:
        invertible = False
    second = rmat.second_inverse(R) is not None if invertible else False
    out.write(f"invertible: {'yes' if invertible else 'no'}\n")
    out.write(f"second_inverse: {'present' if second else 'absent'}\n")
    return 0 if (invertible and second) else 1


def cmd_present(args, out):
    R, rlabel = resolve_rmatrix(args.rmatrix)
    P = _build(args.preset, R, args.n)
    out.write(format_presentation_document(P, args.preset, rlabel, args.n))
    return 0


def cmd_nf(args, out):
    R, _ = resolve_rmatrix(args.rmatrix)
    P = _build(args.preset, R, args.n)
    try:
        p = parse_poly(args.poly, P)
    except NCAlgError as e:
        raise UsageError(f"bad polynomial: {e}") from None
    rules = orient_relations(P)
    residue, _ = rules.reduce(p)
    out.write(format_poly(residue, P) + "\n")
    return 0


def cmd_hilbert(args, out):
    R, rlabel = resolve_rmatrix(args.rmatrix)
    P = _build(args.preset, R, args.n)
    dims = ideals.hilbert_dims(P, args.degree)
    out.write(CONVENTION_LINE + "\n")
    out.write(f"preset: {args.preset}\n")
    out.write(f"rmatrix: {rlabel}\n")
    out.write(f"degree_bound: {args.degree}\n")
    out.write(f"dims: {dims}\n")
    return 0


def cmd_verify(args, out):
    R, rlabel = resolve_rmatrix(args.rmatrix)
    if args.preset not in ("bm", "chain"):
        raise UsageError("verify supports the bm and chain presets")
    if args.preset != "chain" and args.n != 1:
        raise UsageError("-n applies to the chain preset only")
    if args.degree < 4:
        raise UsageError("verify needs a degree bound of at least 4 "
                         "(the coproduct of a quadratic relation is quartic)")
    report = bialg.verify_bialgebra(
        R, preset=args.preset, n=args.n, bound=args.degree, mode=args.mode,
        seed=args.seed, rmatrix_label=rlabel)
    out.write(report.to_document())
    print(f"wall time: {report.wall_time_s:.3f}s", file=sys.stderr)
    return 0 if report.passed else 1


def cmd_square_iso(args, out):
    R, rlabel = resolve_rmatrix(args.rmatrix)
    rep = presents.square_iso_witness(R, args.degree)
    out.write(CONVENTION_LINE + "\n")
    out.write("report: square-iso\n")
    out.write(f"rmatrix: {rlabel}\n")
    out.write(f"degree_bound: {rep.bound}\n")
    out.write(f"square_dims: {rep.square_dims}\n")
    out.write(f"chain_dims: {rep.chain_dims}\n")
    out.write(f"equal: {'yes' if rep.equal else 'no'}\n")
    return 0 if rep.equal else 1


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(
        prog="braidalg",
        description="exact workbench for R-matrix braided-group presentations")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_rmatrix(p):
        p.add_argument("rmatrix", help="builtin name (glq2, identity:N, flip:N) or document path")
        p.add_argument("-o", "--output", default=None,
                       help="write the emitted document to a file instead of stdout")

    def add_preset(p):
        p.add_argument("preset", help="one of: frt, bm, square, chain")
        p.add_argument("-n", type=int, default=1, help="number of chain copies")

    p = sub.add_parser("ybe", help="check the Yang-Baxter equation")
    add_rmatrix(p)
    p.set_defaults(func=cmd_ybe)

    p = sub.add_parser("biinv", help="inverse and second-inverse status")
    add_rmatrix(p)
    p.set_defaults(func=cmd_biinv)

    p = sub.add_parser("present", help="emit a presentation document")
    add_preset(p)
    add_rmatrix(p)
    p.set_defaults(func=cmd_present)

    p = sub.add_parser("nf", help="normal form of a polynomial")
    add_preset(p)
    add_rmatrix(p)
    p.add_argument("poly", help="polynomial in the textual syntax")
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("hilbert", help="graded dimension vector")
    add_preset(p)
    add_rmatrix(p)
    p.add_argument("-D", dest="degree", type=int, required=True,
                   help="degree bound")
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("verify", help="degree-bounded bialgebra verification")
    add_preset(p)
    add_rmatrix(p)
    p.add_argument("-D", dest="degree", type=int, default=4, help="degree bound (>= 4)")
    p.add_argument("--mode", choices=("exact", "probabilistic"), default="exact")
    p.add_argument("--seed", type=int, default=bialg.DEFAULT_SEED,
                   help="seed for probabilistic evaluation points")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("square-iso", help="compare the two double constructions")
    add_rmatrix(p)
    p.add_argument("-D", dest="degree", type=int, required=True,
                   help="degree bound")
    p.set_defaults(func=cmd_square_iso)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if getattr(args, "n", 1) < 1:
            raise UsageError("-n must be at least 1")
        if getattr(args, "output", None):
            with open(args.output, "w") as fh:
                return args.func(args, fh)
        return args.func(args, sys.stdout)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except (OrientationError, SingularMatrixError, QScalarError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    except NCAlgError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
