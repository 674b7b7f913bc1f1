"""Free associative algebra over an exact coefficient field.

Generators are matrix entries: a copy label (such as "u", "u2", or a
tensor-factor tag like "L.u") together with a row and column index, printed
label[row,col].  A monomial is a word, i.e. a tuple of generators; the
empty word is the unit.  A polynomial is a dict {word: coefficient} with no
zero coefficients stored.

The monomial order is degree-lexicographic: longer words are larger, and
words of equal length compare by generator precedence, which is roster
position.  Builders list later chain copies (and the right tensor factor)
after earlier ones, so "later copy passes earlier copy" words are leading.

Everything here is immutable after construction and safe to share.
"""

from __future__ import annotations

from typing import NamedTuple

from .qscalar import QQ, QQ_Q


class NCAlgError(ValueError):
    """Base error for free-algebra operations."""


class PolyParseError(NCAlgError):
    """Malformed polynomial expression."""


class RosterMismatchError(NCAlgError):
    """Operation across presentations with different generator rosters."""


class Generator(NamedTuple):
    copy: str
    row: int
    col: int

    def __str__(self):
        return f"{self.copy}[{self.row},{self.col}]"


EMPTY_WORD = ()


def word_str(word) -> str:
    return "*".join(str(g) for g in word) if word else "1"


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

class NCPoly:
    """Noncommutative polynomial: finite map from words to coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms:
            self.terms = {w: c for w, c in terms.items() if c}
        else:
            self.terms = {}

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def zero(cls):
        return cls._raw({})

    @classmethod
    def unit(cls, one):
        return cls._raw({EMPTY_WORD: one})

    @classmethod
    def gen(cls, g: Generator, one):
        return cls._raw({(g,): one})

    @classmethod
    def term(cls, word, coeff):
        return cls._raw({tuple(word): coeff} if coeff else {})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, NCPoly) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return NCPoly._raw(out)

    def __neg__(self):
        return NCPoly._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not self.terms or not other.terms:
            return NCPoly._raw({})
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                v = c1 * c2
                s = out.get(w)
                s = v if s is None else s + v
                if s:
                    out[w] = s
                else:
                    del out[w]
        return NCPoly._raw(out)

    def scale(self, c):
        if not c:
            return NCPoly._raw({})
        return NCPoly._raw({w: c * v for w, v in self.terms.items()})

    def sandwich(self, left, right):
        """left * self * right for monomials given as words."""
        left, right = tuple(left), tuple(right)
        if not left and not right:
            return self
        return NCPoly._raw({left + w + right: c for w, c in self.terms.items()})

    def degree(self):
        """Maximal word length, or -1 for the zero polynomial."""
        return max((len(w) for w in self.terms), default=-1)

    def is_homogeneous(self, d=None):
        lens = {len(w) for w in self.terms}
        if not lens:
            return True
        if d is None:
            return len(lens) == 1
        return lens == {d}

    def homogeneous_parts(self):
        parts = {}
        for w, c in self.terms.items():
            parts.setdefault(len(w), {})[w] = c
        return {d: NCPoly._raw(t) for d, t in sorted(parts.items())}

    def map_coefficients(self, f):
        out = {}
        for w, c in self.terms.items():
            v = f(c)
            if v:
                out[w] = v
        return NCPoly._raw(out)

    def generators(self):
        gens = set()
        for w in self.terms:
            gens.update(w)
        return gens

    def __repr__(self):
        if not self.terms:
            return "NCPoly(0)"
        body = " + ".join(f"({c})*{word_str(w)}" for w, c in self.terms.items())
        return f"NCPoly({body})"


# ---------------------------------------------------------------------------
# monomial order
# ---------------------------------------------------------------------------

class DegLexOrder:
    """Degree-lexicographic order with precedence by roster position."""

    __slots__ = ("precedence",)

    def __init__(self, roster):
        self.precedence = {g: i for i, g in enumerate(roster)}

    def key(self, word):
        prec = self.precedence
        return (len(word), tuple(prec[g] for g in word))

    def leading_word(self, p: NCPoly):
        if not p.terms:
            return None
        return max(p.terms, key=self.key)

    def sorted_words(self, words, reverse=True):
        return sorted(words, key=self.key, reverse=reverse)


# ---------------------------------------------------------------------------
# presentations
# ---------------------------------------------------------------------------

class Presentation:
    """Generator roster plus homogeneous quadratic relation set.

    relations are stored as the canonical reduced echelon basis of their
    span (monic leading words, fully reduced), ordered by descending
    leading word, so equal spans give equal stored relation lists.
    """

    def __init__(self, dim, roster, relations, field=QQ_Q, name="", prune=True):
        self.dim = dim
        self.roster = tuple(roster)
        if len(set(self.roster)) != len(self.roster):
            raise NCAlgError("duplicate generators in roster")
        self.field = field
        self.name = name
        self.order = DegLexOrder(self.roster)
        gens = set(self.roster)
        for r in relations:
            if not r.is_homogeneous(2):
                raise NCAlgError("relations must be homogeneous of degree 2")
            if not r.generators() <= gens:
                raise NCAlgError("relation uses generators outside the roster")
        self.source_relations = tuple(r for r in relations if r)
        if prune:
            self.relations = tuple(_prune(self.source_relations, self.order))
        else:
            self.relations = self.source_relations
        self._cache = {}

    @property
    def ngens(self):
        return len(self.roster)

    def gen(self, copy, row, col) -> Generator:
        g = Generator(copy, row, col)
        if g not in self.order.precedence:
            raise NCAlgError(f"{g} is not a roster generator")
        return g

    def poly(self, terms) -> NCPoly:
        return NCPoly(terms)

    def relabel(self, mapping, name=None) -> "Presentation":
        """New presentation with copy labels renamed by mapping (a dict)."""
        def m(g):
            return Generator(mapping.get(g.copy, g.copy), g.row, g.col)

        roster = [m(g) for g in self.roster]
        rels = [NCPoly({tuple(m(g) for g in w): c for w, c in r.terms.items()})
                for r in self.relations]
        return Presentation(self.dim, roster, rels, self.field,
                            self.name if name is None else name, prune=False)

    def __repr__(self):
        return (f"Presentation({self.name or 'anonymous'}: {self.ngens} generators, "
                f"{len(self.relations)} relations)")


def _prune(relations, order):
    """Canonical reduced echelon basis of the degree-2 relation span."""
    from .linalg import SparseEchelon
    ech = SparseEchelon(order.key)
    for r in relations:
        if r:
            ech.insert(dict(r.terms))
    return [NCPoly(row) for row in ech.canonical()]


# ---------------------------------------------------------------------------
# polynomial text syntax:  coefficients in the scalar grammar, generators
# as copy[i,j], '*' both for scalar multiple and word concatenation.
# ---------------------------------------------------------------------------

def _poly_tokenize(text):
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("int", int(text[i:j])))
            i = j
        elif ch in "+-*/^()[],":
            toks.append((ch, ch))
            i += 1
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] in "._"):
                j += 1
            toks.append(("name", text[i:j]))
            i = j
        else:
            raise PolyParseError(f"unexpected character {ch!r} at position {i}")
    toks.append(("end", None))
    return toks


class _PolyParser:
    """Recursive-descent parser producing an NCPoly over a roster."""

    def __init__(self, text, roster, field):
        self.toks = _poly_tokenize(text)
        self.pos = 0
        self.text = text
        self.field = field
        self.gens = {(g.copy, g.row, g.col): g for g in roster}

    def peek(self):
        return self.toks[self.pos][0]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, kind):
        t = self.next()
        if t[0] != kind:
            raise PolyParseError(f"expected {kind!r}, got {t[0]!r} in {self.text!r}")
        return t

    def parse(self) -> NCPoly:
        v = self.expr()
        if self.peek() != "end":
            raise PolyParseError(f"trailing input in {self.text!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in "+-":
            op = self.next()[0]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.factor()
        while self.peek() in "*/":
            op = self.next()[0]
            w = self.factor()
            if op == "*":
                v = v * w
            else:
                c = _as_scalar(w, self.field)
                if c is None:
                    raise PolyParseError("division by a non-scalar")
                if not c:
                    raise PolyParseError("division by zero")
                v = v.scale(self.field.one / c)
        return v

    def factor(self):
        if self.peek() == "-":
            self.next()
            return -self.factor()
        if self.peek() == "+":
            self.next()
            return self.factor()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.next()
            sign = 1
            if self.peek() == "-":
                self.next()
                sign = -1
            e = sign * self.expect("int")[1]
            c = _as_scalar(base, self.field)
            if c is None:
                raise PolyParseError("'^' applies to scalars only")
            if e < 0 and not c:
                raise PolyParseError("division by zero")
            return NCPoly.unit(self.field.one).scale(_pow_coeff(c, e, self.field))
        return base

    def atom(self):
        kind, val = self.next()
        if kind == "int":
            return NCPoly.unit(self.field.one).scale(self.field.from_int(val))
        if kind == "name":
            if val == "q" and self.peek() != "[":
                if self.field is QQ:
                    raise PolyParseError("symbolic q in an evaluated-mode polynomial")
                return NCPoly.unit(self.field.one).scale(self.field.parse("q"))
            self.expect("[")
            row = self.expect("int")[1]
            self.expect(",")
            col = self.expect("int")[1]
            self.expect("]")
            g = self.gens.get((val, row, col))
            if g is None:
                raise PolyParseError(f"unknown generator {val}[{row},{col}]")
            return NCPoly.gen(g, self.field.one)
        if kind == "(":
            v = self.expr()
            self.expect(")")
            return v
        raise PolyParseError(f"unexpected token {kind!r} in {self.text!r}")


def _as_scalar(p: NCPoly, field):
    if not p.terms:
        return field.zero
    if set(p.terms) == {EMPTY_WORD}:
        return p.terms[EMPTY_WORD]
    return None


def _pow_coeff(c, e, field):
    if e < 0:
        c = field.one / c
        e = -e
    out = field.one
    for _ in range(e):
        out = out * c
    return out


def parse_poly(text: str, presentation: Presentation) -> NCPoly:
    return _PolyParser(text, presentation.roster, presentation.field).parse()


def format_coeff(c) -> str:
    return str(c)


def _term_str(word, c, field):
    """One term as (sign, body) with the sign split off for joining."""
    cs = format_coeff(c)
    neg = cs.startswith("-")
    if neg:
        cs_abs = format_coeff(-c)
    else:
        cs_abs = cs
    if not word:
        body = cs_abs if _scalar_is_simple(cs_abs) else f"({cs_abs})"
        return neg, body
    if c == field.one:
        return False, word_str(word)
    if c == -field.one:
        return True, word_str(word)
    if not _scalar_is_simple(cs_abs):
        cs_abs = f"({cs_abs})"
    return neg, f"{cs_abs} * {word_str(word)}"


def _scalar_is_simple(s: str) -> bool:
    # no top-level '+'/'-'/space means it can stand unparenthesized
    return not any(ch in s for ch in " +")


def format_poly(p: NCPoly, presentation: Presentation) -> str:
    """Deterministic rendering: terms in descending monomial order."""
    if not p.terms:
        return "0"
    field = presentation.field
    order = presentation.order
    parts = []
    for w in order.sorted_words(p.terms):
        neg, body = _term_str(w, p.terms[w], field)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)
