"""Relation orientation, rewriting, and degree-bounded completion.

orient_relations solves a homogeneous quadratic relation set for its
leading monomials: the reduced echelon basis of the relation span (with
respect to the presentation's monomial order) gives rules

    leading word  ->  combination of strictly smaller words,

and orientation fails exactly when solving forces a rule whose left side
is an ascending cross-copy word, which is what a singular exchange block
produces (see orient_relations).  Each rule carries a provenance: the
exact combination of stored relations it equals, so every chain of
rewrites can be replayed as an ideal-membership certificate.

Because no confluence is guaranteed for quadratic rewrite systems in
general, reduction alone only proves membership (residue zero), never
non-membership.  TruncatedGB closes the gap exactly: it resolves every
overlap ambiguity of composed degree <= D, adjoining the reduced residues
as extra (provenance-carrying) rules.  After that, normal forms are
canonical on all elements of degree <= D, so a nonzero residue is an
exact witness of non-membership at that degree bound.  Any adjoined rule
is reported as a completion warning: it witnesses that the quadratic
system by itself was not confluent.
"""

from __future__ import annotations

import heapq
import itertools

from .linalg import SparseEchelon
from .ncalg import NCPoly, Presentation, word_str


class OrientationError(ValueError):
    """The relation set cannot be solved for its leading monomials."""


class Rule:
    """Rewrite rule lhs -> rhs with lhs - rhs a certified ideal element.

    provenance is a tuple of (left word, relation index, right word, coeff)
    with  lhs - rhs = sum coeff * left * relation * right.
    """

    __slots__ = ("lhs", "rhs", "provenance")

    def __init__(self, lhs, rhs: NCPoly, provenance):
        self.lhs = tuple(lhs)
        self.rhs = rhs
        self.provenance = tuple(provenance)

    def element(self, one) -> NCPoly:
        """lhs - rhs as a polynomial (one is the field unit)."""
        return NCPoly.term(self.lhs, one) - self.rhs

    def __repr__(self):
        return f"Rule({word_str(self.lhs)} -> ...)"


class RewriteSystem:
    """An indexed set of rules over one presentation's monomial order."""

    def __init__(self, presentation: Presentation, rules):
        self.presentation = presentation
        self.order = presentation.order
        self.rules = {}
        self.lengths = ()
        self._redex_cache = {}
        for rule in rules:
            self.add(rule)

    def add(self, rule: Rule):
        self.rules[rule.lhs] = rule
        self.lengths = tuple(sorted({len(w) for w in self.rules}))
        self._redex_cache.clear()

    def __iter__(self):
        return iter(self.rules.values())

    def __len__(self):
        return len(self.rules)

    def find_redex(self, word):
        """Leftmost-outermost match: (position, rule) or None."""
        hit = self._redex_cache.get(word)
        if hit is not None:
            return hit if hit != () else None
        res = ()
        n = len(word)
        for pos in range(n):
            for L in self.lengths:
                if pos + L > n:
                    break
                rule = self.rules.get(word[pos:pos + L])
                if rule is not None:
                    res = (pos, rule)
                    break
            if res:
                break
        self._redex_cache[word] = res if res else ()
        return res if res else None

    def reduce(self, p: NCPoly, collect=False):
        """Fully reduce p; returns (residue, steps).

        steps is a list of (left word, rule, right word, coeff) with
        p = residue + sum coeff * left * (lhs - rhs) * right.
        """
        terms = dict(p.terms)
        steps = [] if collect else None
        key = self.order.key
        # lazy-deletion max-heap over reducible words
        heap = []
        seq = itertools.count()
        for w in terms:
            if self.find_redex(w):
                heapq.heappush(heap, (_negkey(key(w)), next(seq), w))
        while heap:
            _, _, w = heapq.heappop(heap)
            c = terms.get(w)
            if not c:
                continue
            hit = self.find_redex(w)
            if hit is None:
                continue
            pos, rule = hit
            left, right = w[:pos], w[pos + len(rule.lhs):]
            del terms[w]
            for rw, rc in rule.rhs.terms.items():
                nw = left + rw + right
                v = c * rc
                s = terms.get(nw)
                had = nw in terms
                s = v if s is None else s + v
                if s:
                    terms[nw] = s
                    if not had and self.find_redex(nw):
                        heapq.heappush(heap, (_negkey(key(nw)), next(seq), nw))
                else:
                    terms.pop(nw, None)
            if collect:
                steps.append((left, rule, right, c))
        return NCPoly(terms), steps

    def normal_words(self, degree):
        """All words of the given degree containing no rule left side."""
        gens = self.presentation.roster
        maxlen = self.lengths[-1] if self.lengths else 0
        out = []

        def extend(word, d):
            if d == degree:
                out.append(word)
                return
            for g in gens:
                w2 = word + (g,)
                if any(w2[-L:] in self.rules for L in self.lengths if L <= len(w2)):
                    continue
                extend(w2, d + 1)

        if maxlen == 0:
            # free algebra
            def free(word, d):
                if d == degree:
                    out.append(word)
                    return
                for g in gens:
                    free(word + (g,), d + 1)
            free((), 0)
        else:
            extend((), 0)
        return out

    def count_normal_words(self, degree):
        if not self.lengths:
            return len(self.presentation.roster) ** degree
        if self.lengths == (2,):
            return self._count_quadratic(degree)
        return len(self.normal_words(degree))

    def _count_quadratic(self, degree):
        # transfer-matrix count: normal words are walks avoiding bad pairs
        gens = self.presentation.roster
        if degree == 0:
            return 1
        vec = {g: 1 for g in gens}
        for _ in range(degree - 1):
            nxt = {}
            for g in gens:
                n = 0
                for h in gens:
                    if (g, h) not in self.rules:
                        n += vec.get(h, 0)
                if n:
                    nxt[g] = n
            vec = nxt
        return sum(vec.values())


def _negkey(k):
    length, prec = k
    return (-length, tuple(-x for x in prec))


def expand_steps(steps):
    """Flatten reduction steps into certificate terms over stored relations."""
    cert = []
    for left, rule, right, c in steps:
        for lw, idx, rw, cc in rule.provenance:
            cert.append((left + lw, idx, rw + right, c * cc))
    return cert


# ---------------------------------------------------------------------------
# orientation
# ---------------------------------------------------------------------------

def orient_relations(P: Presentation) -> RewriteSystem:
    """Solve the quadratic relations for their leading monomials.

    The reduced echelon basis of the relation span yields one rule per
    pivot word.  Cross-copy relations are exchange blocks: they may only
    rewrite "wrong-order" words (a later-copy generator passing an
    earlier-copy one) downwards.  When the exchange coefficient matrix is
    singular, solving the system forces a rule for an ascending cross-copy
    word that no given relation led with; that is the unsolvable case
    reported as OrientationError (permuting the generator precedence may
    help).  A relation explicitly written with an ascending leading word
    is taken at face value and oriented as given.
    """
    cached = P._cache.get("rules")
    if cached is not None:
        return cached
    order = P.order
    source_leads = {order.leading_word(r) for r in P.source_relations if r}
    ech = SparseEchelon(order.key)
    for r in P.relations:
        if r:
            ech.insert(dict(r.terms))
    copy_rank = {}
    for g in P.roster:
        copy_rank.setdefault(g.copy, len(copy_rank))
    rules = []
    for row in ech.canonical():
        lead = max(row, key=order.key)
        g, h = lead
        if copy_rank[g.copy] < copy_rank[h.copy] and lead not in source_leads:
            raise OrientationError(
                f"cannot orient for this order: exchange coefficient matrix "
                f"is singular (forced a rule for the ascending cross-copy "
                f"word {word_str(lead)})")
        rhs = NCPoly({w: -c for w, c in row.items() if w != lead})
        prov = _provenance_for(row, lead, P)
        rules.append(Rule(lead, rhs, prov))
    rs = RewriteSystem(P, rules)
    P._cache["rules"] = rs
    return rs


def _provenance_for(row, lead, P: Presentation):
    """Express a monic echelon row as a combination of stored relations.

    Stored relations are themselves the canonical echelon basis, so the row
    is a stored relation whenever its leading word matches; otherwise solve
    the small degree-2 system against the stored basis.
    """
    order = P.order
    for i, r in enumerate(P.relations):
        if order.leading_word(r) == lead and dict(r.terms) == row:
            return ((), i, (), P.field.one),
    ech = SparseEchelon(order.key)
    for i, r in enumerate(P.relations):
        ech.insert(dict(r.terms), aux={i: P.field.one})
    residue, aux = ech.reduce(dict(row), aux={})
    if residue:
        raise OrientationError("oriented rule escapes the stored relation span")
    return tuple(((), i, (), -c) for i, c in sorted(aux.items()))


def normal_form(p: NCPoly, rules: RewriteSystem, degree_cap=None) -> NCPoly:
    """Iterated leftmost-outermost rewriting to an irreducible polynomial."""
    if degree_cap is not None and p.degree() > degree_cap:
        raise ValueError(f"degree {p.degree()} exceeds cap {degree_cap}")
    residue, _ = rules.reduce(p)
    return residue


# ---------------------------------------------------------------------------
# degree-bounded completion
# ---------------------------------------------------------------------------

class TruncatedGB:
    """Rewrite system completed on all overlaps of composed degree <= bound.

    After construction, reduction is confluent on every element of degree
    <= bound, so the residue decides ideal membership exactly in both
    directions.  added_rules lists the non-quadratic rules that had to be
    adjoined; a nonempty list is the completion warning surfaced to
    callers (the quadratic system alone was not confluent).
    """

    def __init__(self, P: Presentation, bound: int):
        self.presentation = P
        self.bound = bound
        base = orient_relations(P)
        self.rs = RewriteSystem(P, list(base))
        self.added_rules = []
        key = P.order.key
        pending = []
        seq = itertools.count()

        def enqueue(r1: Rule, r2: Rule):
            n1, n2 = len(r1.lhs), len(r2.lhs)
            for ell in range(1, min(n1, n2)):
                if r1.lhs[n1 - ell:] == r2.lhs[:ell]:
                    w = r1.lhs + r2.lhs[ell:]
                    if len(w) <= bound:
                        heapq.heappush(pending, (len(w), key(w), next(seq), w, r1, r2, ell))

        rules0 = list(self.rs)
        for r1 in rules0:
            for r2 in rules0:
                enqueue(r1, r2)
        while pending:
            _, _, _, w, r1, r2, ell = heapq.heappop(pending)
            one = P.field.one
            suffix = w[len(r1.lhs):]
            prefix = w[:len(w) - len(r2.lhs)]
            p1 = r1.rhs.sandwich((), suffix)
            p2 = r2.rhs.sandwich(prefix, ())
            diff = p1 - p2
            if not diff:
                continue
            residue, steps = self.rs.reduce(diff, collect=True)
            if not residue:
                continue
            prov = {}
            _prov_accumulate(prov, r2.provenance, prefix, (), one)
            _prov_accumulate(prov, r1.provenance, (), suffix, -one)
            for left, rule, right, c in steps:
                _prov_accumulate(prov, rule.provenance, left, right, -c)
            lead = P.order.leading_word(residue)
            lc = residue.terms[lead]
            inv = one / lc
            rhs = NCPoly({ww: -c * inv for ww, c in residue.terms.items() if ww != lead})
            new = Rule(lead, rhs, tuple((lw, i, rw, c * inv)
                                        for (lw, i, rw), c in sorted_prov(prov)))
            self.rs.add(new)
            self.added_rules.append(new)
            for r in list(self.rs):
                enqueue(r, new)
                if r is not new:
                    enqueue(new, r)

    @property
    def completion_warning(self) -> bool:
        return bool(self.added_rules)

    def reduce(self, p: NCPoly, collect=False):
        return self.rs.reduce(p, collect=collect)


def _prov_accumulate(prov: dict, provenance, left, right, c):
    for lw, idx, rw, cc in provenance:
        k = (left + lw, idx, rw + right)
        v = prov.get(k)
        v = c * cc if v is None else v + c * cc
        if v:
            prov[k] = v
        else:
            prov.pop(k, None)


def sorted_prov(prov: dict):
    return sorted(prov.items(), key=lambda kv: (kv[0][1], kv[0][0], kv[0][2]))


def truncated_gb(P: Presentation, bound: int) -> TruncatedGB:
    gb = P._cache.get(("gb", bound))
    if gb is None:
        gb = TruncatedGB(P, bound)
        P._cache[("gb", bound)] = gb
    return gb
