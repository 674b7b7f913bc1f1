"""Coalgebra data and degree-bounded braided-bialgebra verification.

The matrix coproduct sends u[i,j] to sum_k L.u[i,k] * R.u[k,j] inside the
braided tensor square (left factor below the right factor in the monomial
order), with counit u[i,j] -> delta_ij.  verify_bialgebra drives the whole
claim check for a preset: Yang-Baxter and biinvertibility status of R,
orientation of the presentation, then

  * homomorphism: the coproduct image of every relation must lie in the
    tensor-square ideal at the degree bound (with a replayable certificate,
    or a nonzero residue as counterexample witness),
  * counit laws on generators and relations,
  * coassociativity as a formal identity on generators.

The overall verdict aggregates the Yang-Baxter precondition: a failing YBE
fails the report (with the exact nonzero entry residue as witness), since
the braid statistics are only a braiding when YBE holds.  An absent second
inverse is flagged as a warning but does not by itself fail the report;
the axioms above can hold without it.

Exact mode works over Q(q) end to end.  Probabilistic mode reruns the
pipeline over plain rationals at k sampled values of q (avoiding 0, +-1
and poles); it is fast but non-certifying, and the sampled points are
recorded in the report.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import presents
from .ideals import reduce_mod_ideal, substitute_generators
from .linalg import SingularMatrixError
from .ncalg import Generator, NCPoly, Presentation, format_poly, word_str
from .presents import TensorSquare
from .qscalar import PoleError
from .rewrite import OrientationError
from .rmat import RMatrix, invert, second_inverse, ybe_check

DEFAULT_SEED = 7261
DEFAULT_POINTS = 3


class CoproductError(ValueError):
    """Ill-formed coproduct specification."""


@dataclass
class CoproductSpec:
    """Generator images in a braided tensor square, plus the counit."""

    images: dict     # base generator -> NCPoly over square.presentation
    counit: dict     # base generator -> coefficient


def matrix_coproduct(P: Presentation, square: TensorSquare) -> CoproductSpec:
    """The matrix coproduct u[i,j] -> sum_k L.u[i,k] * R.u[k,j], counit delta."""
    if square.base.roster != P.roster:
        raise CoproductError("square was not built over this presentation")
    one = P.field.one
    zero = P.field.zero
    images = {}
    counit = {}
    for g in P.roster:
        terms = {}
        for k in range(1, P.dim + 1):
            lg = square.left[Generator(g.copy, g.row, k)]
            rg = square.right[Generator(g.copy, k, g.col)]
            terms[(lg, rg)] = one
        images[g] = NCPoly(terms)
        counit[g] = one if g.row == g.col else zero
    return CoproductSpec(images, counit)


# ---------------------------------------------------------------------------
# individual axiom checks
# ---------------------------------------------------------------------------

@dataclass
class RelationVerdict:
    index: int
    relation: str
    passed: bool
    certificate: tuple = None   # ((left, idx, right, coeff) ...) when passed
    residue: str = None         # nonzero residue rendering when failed


def verify_homomorphism(P: Presentation, spec: CoproductSpec,
                        square: TensorSquare, bound: int, collect=True):
    """Check that every relation maps into the tensor-square ideal.

    Returns (verdicts, completion_warning).
    """
    if bound < 4:
        raise ValueError("degree bound must be at least 4")
    SQ = square.presentation
    verdicts = []
    warning = False
    for i, r in enumerate(P.relations):
        image = substitute_generators(r, spec.images, SQ, bound=bound)
        residue, cert, warned = reduce_mod_ideal(image, SQ, bound, collect=collect)
        warning = warning or warned
        if residue.is_zero():
            verdicts.append(RelationVerdict(
                i, format_poly(r, P), True,
                certificate=cert.terms if cert is not None else None))
        else:
            verdicts.append(RelationVerdict(
                i, format_poly(r, P), False, residue=format_poly(residue, SQ)))
    return verdicts, warning


def _factor_split(square: TensorSquare):
    left_inv = {v: k for k, v in square.left.items()}
    right_inv = {v: k for k, v in square.right.items()}
    return left_inv, right_inv


def _apply_counit_side(image: NCPoly, spec: CoproductSpec,
                       square: TensorSquare, side: str, field) -> NCPoly:
    """(eps (x) id) for side "left", (id (x) eps) for side "right"."""
    left_inv, right_inv = _factor_split(square)
    out = NCPoly.zero()
    for w, c in image.terms.items():
        coeff = c
        word = []
        for g in w:
            if g in left_inv:
                base = left_inv[g]
                if side == "left":
                    coeff = coeff * spec.counit[base]
                else:
                    word.append(base)
            elif g in right_inv:
                base = right_inv[g]
                if side == "right":
                    coeff = coeff * spec.counit[base]
                else:
                    word.append(base)
            else:
                raise CoproductError(f"image generator {g} is in neither factor")
        if coeff:
            out = out + NCPoly.term(tuple(word), coeff)
    return out


def verify_counit(P: Presentation, spec: CoproductSpec, square: TensorSquare):
    """(eps (x) id) Delta = id = (id (x) eps) Delta, and eps kills relations.

    Returns (passed, detail) with detail naming the first failure.
    """
    field = P.field
    for g in P.roster:
        image = spec.images[g]
        gname = str(g)
        lhs = _apply_counit_side(image, spec, square, "left", field)
        if lhs != NCPoly.gen(g, field.one):
            return False, f"(eps (x) id) Delta {gname} = {format_poly(lhs, P)} != {gname}"
        rhs = _apply_counit_side(image, spec, square, "right", field)
        if rhs != NCPoly.gen(g, field.one):
            return False, f"(id (x) eps) Delta {gname} = {format_poly(rhs, P)} != {gname}"
    for i, r in enumerate(P.relations):
        total = field.zero
        for w, c in r.terms.items():
            v = c
            for g in w:
                v = v * spec.counit[g]
            total = total + v
        if total:
            return False, f"eps(relation {i}) = {field.to_str(total)} != 0"
    return True, None


def verify_coassoc(P: Presentation, spec: CoproductSpec, square: TensorSquare):
    """(Delta (x) id) Delta = (id (x) Delta) Delta as formal sums.

    Images must be sums of (left generator)*(right generator) words; the two
    sides are expanded into the free algebra on three relabeled copies and
    compared symbol by symbol (no relations are involved).
    """
    left_inv, right_inv = _factor_split(square)

    def pair_terms(g):
        image = spec.images[g]
        pairs = []
        for w, c in image.terms.items():
            if len(w) != 2 or w[0] not in left_inv or w[1] not in right_inv:
                raise CoproductError(
                    f"image of {g} is not a sum of left*right words")
            pairs.append((left_inv[w[0]], right_inv[w[1]], c))
        return pairs

    def tag(g, t):
        return Generator(f"T{t}.{g.copy}", g.row, g.col)

    for g in P.roster:
        lhs = {}
        rhs = {}
        for a, b, c in pair_terms(g):
            for a1, a2, c2 in pair_terms(a):     # Delta applied to the left leg
                w = (tag(a1, 1), tag(a2, 2), tag(b, 3))
                lhs[w] = lhs.get(w, P.field.zero) + c * c2
            for b1, b2, c2 in pair_terms(b):     # Delta applied to the right leg
                w = (tag(a, 1), tag(b1, 2), tag(b2, 3))
                rhs[w] = rhs.get(w, P.field.zero) + c * c2
        lhs = {w: c for w, c in lhs.items() if c}
        rhs = {w: c for w, c in rhs.items() if c}
        if lhs != rhs:
            return False, f"coassociativity fails on {g}"
    return True, None


# ---------------------------------------------------------------------------
# the full pipeline
# ---------------------------------------------------------------------------

@dataclass
class VerificationReport:
    """Machine-readable outcome of a degree-bounded bialgebra check."""

    preset: str
    rmatrix: str
    copies: int
    degree_bound: int
    mode: str
    points: list = dc_field(default_factory=list)
    ybe: bool = None
    ybe_witness: str = None
    invertible: bool = None
    second_inverse: bool = None
    orientation: str = None            # "ok" or the failure message
    warnings: list = dc_field(default_factory=list)
    relation_verdicts: list = dc_field(default_factory=list)
    counit: bool = None
    counit_detail: str = None
    coassoc: bool = None
    coassoc_detail: str = None
    completion_warning: bool = False
    square_relations: list = dc_field(default_factory=list)
    failure: str = None
    passed: bool = False
    wall_time_s: float = 0.0           # informational; not serialized

    def to_document(self) -> str:
        doc = {
            "report": "verify",
            "index_convention": "R^{ij}_{kl}; upper indices are outputs, "
                                "index pairs flattened row-major as (i-1)*N+(j-1)",
            "preset": self.preset,
            "rmatrix": self.rmatrix,
            "copies": self.copies,
            "degree_bound": self.degree_bound,
            "mode": self.mode,
            "points": self.points,
            "ybe": self.ybe,
            "ybe_witness": self.ybe_witness,
            "invertible": self.invertible,
            "second_inverse": self.second_inverse,
            "orientation": self.orientation,
            "warnings": self.warnings,
            "relations": [
                {
                    "index": v.index,
                    "relation": v.relation,
                    "verdict": "pass" if v.passed else "fail",
                    **({"certificate": [
                        {"left": word_str(lw), "relation": idx,
                         "right": word_str(rw), "coeff": str(c)}
                        for lw, idx, rw, c in v.certificate]}
                       if v.certificate is not None else {}),
                    **({"residue": v.residue} if v.residue is not None else {}),
                }
                for v in self.relation_verdicts
            ],
            "counit": self.counit,
            "counit_detail": self.counit_detail,
            "coassoc": self.coassoc,
            "coassoc_detail": self.coassoc_detail,
            "completion_warning": self.completion_warning,
            "square_relations": self.square_relations,
            "failure": self.failure,
            "passed": self.passed,
        }
        return json.dumps(doc, indent=2) + "\n"


def _verify_once(R: RMatrix, preset: str, n: int, bound: int, collect: bool):
    """One full build-and-check pass over R's own coefficient field.

    Returns (verdicts, counit pair, coassoc pair, completion warning,
    square presentation) or raises OrientationError / SingularMatrixError.
    """
    P = presents.build_preset(preset, R, n)
    square = presents.braided_tensor_square(P, R)
    spec = matrix_coproduct(P, square)
    verdicts, warning = verify_homomorphism(P, spec, square, bound, collect=collect)
    counit_ok, counit_detail = verify_counit(P, spec, square)
    coassoc_ok, coassoc_detail = verify_coassoc(P, spec, square)
    return verdicts, (counit_ok, counit_detail), (coassoc_ok, coassoc_detail), warning, square


def _verify_at_point(P: Presentation, square: TensorSquare, spec: CoproductSpec,
                     q0: Fraction, bound: int):
    """Evaluate the symbolic presentation and rerun the checks over Q.

    Relations are evaluated in place (never rebuilt), so the verdicts stay
    aligned with the symbolic relation list even if the evaluated span
    degenerates at the sample point.
    """
    from .qscalar import QQ

    def ev_poly(p):
        return p.map_coefficients(lambda c: c.evaluate(q0))

    SQ = square.presentation
    SQ_q = Presentation(SQ.dim, SQ.roster, [ev_poly(r) for r in SQ.relations],
                        field=QQ, name=SQ.name)
    P_q = Presentation(P.dim, P.roster, [ev_poly(r) for r in P.relations],
                       field=QQ, name=P.name, prune=False)
    square_q = TensorSquare(SQ_q, P_q, square.left, square.right)
    spec_q = CoproductSpec({g: ev_poly(img) for g, img in spec.images.items()},
                           {g: c.evaluate(q0) for g, c in spec.counit.items()})
    verdicts = []
    warning = False
    for i, r in enumerate(P.relations):
        image = substitute_generators(ev_poly(r), spec_q.images, SQ_q, bound=bound)
        residue, _, warned = reduce_mod_ideal(image, SQ_q, bound, collect=False)
        warning = warning or warned
        if residue.is_zero():
            verdicts.append(RelationVerdict(i, format_poly(r, P), True))
        else:
            verdicts.append(RelationVerdict(i, format_poly(r, P), False,
                                            residue=format_poly(residue, SQ_q)))
    counit = verify_counit(P_q, spec_q, square_q)
    coassoc = verify_coassoc(P_q, spec_q, square_q)
    return verdicts, counit, coassoc, warning


def sample_points(R: RMatrix, seed: int, count: int):
    """Deterministic sample values of q avoiding 0, +-1, and poles of R
    and of R^-1."""
    rng = random.Random(seed)
    points = []
    attempts = 0
    while len(points) < count:
        attempts += 1
        if attempts > 200:
            raise RuntimeError("could not sample enough good evaluation points")
        q0 = Fraction(rng.randint(2, 19), rng.randint(1, 7))
        if rng.random() < 0.5:
            q0 = -q0
        if q0 in points or q0 in (0, 1, -1):
            continue
        try:
            Rq = R.evaluate(q0)
            invert(Rq)
        except (PoleError, SingularMatrixError):
            continue
        points.append(q0)
    return points


def verify_bialgebra(R: RMatrix, preset: str = "bm", n: int = 1, bound: int = 4,
                     mode: str = "exact", seed: int = DEFAULT_SEED,
                     num_points: int = DEFAULT_POINTS,
                     rmatrix_label: str = "") -> VerificationReport:
    """Run the full braided-bialgebra claim check for a preset."""
    if preset not in ("bm", "chain"):
        raise ValueError(f"preset {preset!r} is not verifiable (use bm or chain)")
    if mode not in ("exact", "probabilistic"):
        raise ValueError(f"unknown mode {mode!r}")
    t0 = time.perf_counter()
    report = VerificationReport(preset=preset, rmatrix=rmatrix_label,
                                copies=n, degree_bound=bound, mode=mode)
    ok, wit = ybe_check(R)
    report.ybe = ok
    if not ok:
        out, src, residue = wit
        report.ybe_witness = f"entry {out} <- {src}: residue {residue}"
        report.warnings.append("R does not satisfy the Yang-Baxter equation")
    try:
        invert(R)
        report.invertible = True
    except SingularMatrixError:
        report.invertible = False
        report.failure = "R is singular; presentations are undefined"
        report.wall_time_s = time.perf_counter() - t0
        return report
    report.second_inverse = second_inverse(R) is not None
    if not report.second_inverse:
        report.warnings.append("second inverse absent (R is not biinvertible)")

    try:
        if mode == "exact":
            verdicts, counit, coassoc, warning, square = _verify_once(
                R, preset, n, bound, collect=True)
            report.points = []
            report.square_relations = [
                format_poly(r, square.presentation) for r in square.presentation.relations]
        else:
            points = sample_points(R, seed, num_points)
            report.points = [str(p) for p in points]
            P = presents.build_preset(preset, R, n)
            square = presents.braided_tensor_square(P, R)
            spec = matrix_coproduct(P, square)
            verdicts = None
            counit = (True, None)
            coassoc = (True, None)
            warning = False
            for q0 in points:
                vq, cq, aq, wq = _verify_at_point(P, square, spec, q0, bound)
                warning = warning or wq
                if verdicts is None:
                    verdicts = vq
                else:
                    verdicts = [new if (old.passed and not new.passed) else old
                                for old, new in zip(verdicts, vq)]
                if counit[0] and not cq[0]:
                    counit = cq
                if coassoc[0] and not aq[0]:
                    coassoc = aq
    except OrientationError as e:
        report.orientation = str(e)
        report.failure = f"orientation failure: {e}"
        report.wall_time_s = time.perf_counter() - t0
        return report
    except SingularMatrixError as e:
        report.failure = f"singular matrix during build: {e}"
        report.wall_time_s = time.perf_counter() - t0
        return report

    report.orientation = "ok"
    report.relation_verdicts = verdicts
    report.counit, report.counit_detail = counit
    report.coassoc, report.coassoc_detail = coassoc
    report.completion_warning = warning
    if warning:
        report.warnings.append(
            "completion adjoined extra rules (quadratic system not confluent)")
    # the Yang-Baxter precondition is part of the verified claim; absence of
    # the second inverse is only flagged (the axioms can hold without it)
    report.passed = (report.ybe and all(v.passed for v in verdicts)
                     and report.counit and report.coassoc)
    report.wall_time_s = time.perf_counter() - t0
    return report
