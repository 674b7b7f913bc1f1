"""Degree-bounded ideal membership, Hilbert dimensions, and substitution.

Two independent engines decide membership in the two-sided ideal generated
by a presentation's quadratic relations:

  * method "rewrite": reduce against the degree-bounded completed rewrite
    system (TruncatedGB).  Exact in both directions, and the default.
  * method "span": assemble the degree-d sandwich span
    {m * r * m' : deg <= d} by exact sparse elimination and reduce against
    it.  Slower, but shares no reduction machinery with the rewrite path;
    it is the cross-checking oracle.

Positive answers come with a replayable certificate: an explicit list of
(left monomial, relation index, right monomial, coefficient) whose sum
reproduces the polynomial exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import SparseEchelon
from .ncalg import NCAlgError, NCPoly, Presentation, RosterMismatchError
from .rewrite import expand_steps, truncated_gb


class MissingImageError(NCAlgError):
    """substitute_generators met a generator without an image."""


@dataclass(frozen=True)
class MembershipCertificate:
    """p = sum of coeff * left * relations[index] * right over the terms."""

    terms: tuple  # of (left word, relation index, right word, coefficient)

    def replay(self, relations) -> NCPoly:
        total = NCPoly.zero()
        for left, idx, right, c in self.terms:
            total = total + relations[idx].sandwich(left, right).scale(c)
        return total


def _merge_cert(steps) -> MembershipCertificate:
    acc = {}
    for lw, idx, rw, c in expand_steps(steps):
        k = (lw, idx, rw)
        v = acc.get(k)
        v = c if v is None else v + c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)
    terms = tuple((lw, idx, rw, c) for (lw, idx, rw), c in
                  sorted(acc.items(), key=lambda kv: (kv[0][1], kv[0][0], kv[0][2])))
    return MembershipCertificate(terms)


def reduce_mod_ideal(p: NCPoly, P: Presentation, bound: int, collect=True):
    """Canonical residue of p modulo the ideal, valid for deg(p) <= bound.

    Returns (residue, certificate, completion_warning); the certificate
    accounts for p - residue.
    """
    if p.degree() > bound:
        raise ValueError(f"degree {p.degree()} exceeds bound {bound}")
    gb = truncated_gb(P, bound)
    residue, steps = gb.reduce(p, collect=collect)
    cert = _merge_cert(steps) if collect else None
    return residue, cert, gb.completion_warning


def ideal_membership(p: NCPoly, P: Presentation, bound: int, method="rewrite"):
    """Decide p in the span of {m * r * m' : deg <= bound}.

    Returns (True, certificate) or (False, None).
    """
    if method == "rewrite":
        residue, cert, _ = reduce_mod_ideal(p, P, bound)
        return (True, cert) if residue.is_zero() else (False, None)
    if method == "span":
        return _membership_by_span(p, P, bound)
    raise ValueError(f"unknown method {method!r}")


def ideal_membership_sampled(p: NCPoly, P: Presentation, bound: int, points):
    """Membership tested at numeric values of q.  Fast but NON-CERTIFYING:
    agreement at finitely many points does not prove membership over Q(q),
    and relations may degenerate at unlucky points.  Returns a bare bool."""
    from .qscalar import QQ

    for q0 in points:
        Pq = Presentation(P.dim, P.roster,
                          [r.map_coefficients(lambda c: c.evaluate(q0))
                           for r in P.relations],
                          field=QQ, name=P.name)
        pq = p.map_coefficients(lambda c: c.evaluate(q0))
        residue, _, _ = reduce_mod_ideal(pq, Pq, bound, collect=False)
        if not residue.is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# sandwich-span engine
# ---------------------------------------------------------------------------

def _span_echelon(P: Presentation, degree: int) -> SparseEchelon:
    """Echelon basis of the degree-d component of the ideal, with sandwich
    tracking.  Built recursively: V_d = sum over generators g of
    g * V_{d-1} + V_{d-1} * g, seeded by V_2 = span(relations)."""
    cache = P._cache.setdefault("span", {})
    if degree in cache:
        return cache[degree]
    key = P.order.key
    ech = SparseEchelon(key)
    if degree >= 2:
        if degree == 2:
            for i, r in enumerate(P.relations):
                ech.insert(dict(r.terms), aux={((), i, ()): P.field.one})
        else:
            prev = _span_echelon(P, degree - 1)
            for row, aux in prev.canonical_with_aux():
                for g in P.roster:
                    ech.insert({(g,) + w: c for w, c in row.items()},
                               aux={((g,) + lw, i, rw): c for (lw, i, rw), c in aux.items()})
                    ech.insert({w + (g,): c for w, c in row.items()},
                               aux={(lw, i, rw + (g,)): c for (lw, i, rw), c in aux.items()})
    cache[degree] = ech
    return ech


def _membership_by_span(p: NCPoly, P: Presentation, bound: int):
    if p.degree() > bound:
        raise ValueError(f"degree {p.degree()} exceeds bound {bound}")
    cert_acc = {}
    for d, part in p.homogeneous_parts().items():
        if not part:
            continue
        if d < 2:
            return (False, None)
        ech = _span_echelon(P, d)
        residue, aux = ech.reduce(dict(part.terms), aux={})
        if residue:
            return (False, None)
        for k, c in aux.items():
            v = cert_acc.get(k)
            v = -c if v is None else v - c
            if v:
                cert_acc[k] = v
            else:
                cert_acc.pop(k, None)
    terms = tuple((lw, i, rw, c) for (lw, i, rw), c in
                  sorted(cert_acc.items(), key=lambda kv: (kv[0][1], kv[0][0], kv[0][2])))
    return (True, MembershipCertificate(terms))


def span_rank(P: Presentation, degree: int) -> int:
    """Exact rank of the degree-d sandwich span (oracle for hilbert_dims)."""
    if degree < 2:
        return 0
    return _span_echelon(P, degree).rank


# ---------------------------------------------------------------------------
# Hilbert dimensions and span comparison
# ---------------------------------------------------------------------------

def hilbert_dims(P: Presentation, bound: int, method="rewrite"):
    """Dimensions of the graded components 0..bound of the quotient algebra."""
    if method == "span":
        g = P.ngens
        return [g ** d - span_rank(P, d) for d in range(bound + 1)]
    if method != "rewrite":
        raise ValueError(f"unknown method {method!r}")
    gb = truncated_gb(P, bound)
    return [gb.rs.count_normal_words(d) for d in range(bound + 1)]


def relation_span_equal(P1: Presentation, P2: Presentation) -> bool:
    """Whether the degree-2 relation spans coincide (same roster required)."""
    if P1.roster != P2.roster:
        raise RosterMismatchError("presentations have different rosters")
    # stored relations are canonical reduced echelon bases of the spans
    return list(P1.relations) == list(P2.relations)


def substitute_generators(p: NCPoly, images: dict, target: Presentation,
                          bound=None, reduce=False) -> NCPoly:
    """Multiplicative extension of a generator-image map.

    images maps each generator to an NCPoly over the target presentation.
    With reduce=True the result is taken to normal form in the target;
    otherwise it is returned raw (as needed for membership checking).
    """
    one = target.field.one
    out = NCPoly.zero()
    for w, c in p.terms.items():
        prod = NCPoly.unit(one)
        for g in w:
            img = images.get(g)
            if img is None:
                raise MissingImageError(f"no image for generator {g}")
            prod = prod * img
        out = out + prod.scale(c)
    if bound is not None and out.degree() > bound:
        raise ValueError(f"substituted degree {out.degree()} exceeds bound {bound}")
    if reduce:
        from .rewrite import orient_relations
        residue, _ = orient_relations(target).reduce(out)
        return residue
    return out
