"""Exact arithmetic in Q(q), the field of rational functions of one parameter q.

A Laurent polynomial is a dict {exponent: integer coefficient} with no zero
coefficients stored; the zero polynomial is the empty dict.  A rational
function is a reduced fraction num/den of two Laurent polynomials with
integer coefficients, normalized so that

  * den is an ordinary polynomial (lowest exponent 0) with positive leading
    coefficient,
  * num and den share no polynomial factor and no integer content,

which makes equality (and hence zero-testing) a structural comparison.
Values are immutable; all operations return new objects, so they are safe
to share between threads.
"""

from __future__ import annotations

import math
from fractions import Fraction


class QScalarError(ValueError):
    """Base error for scalar arithmetic and parsing."""


class ScalarParseError(QScalarError):
    """Malformed coefficient expression."""


class ZeroDenominatorError(QScalarError, ZeroDivisionError):
    """Division by the zero rational function."""


class PoleError(QScalarError, ZeroDivisionError):
    """Evaluation of a rational function at a zero of its denominator."""


# ---------------------------------------------------------------------------
# integer dense-polynomial helpers (low degree first, no trailing zeros)
# ---------------------------------------------------------------------------

def _trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _content(c):
    g = 0
    for x in c:
        g = math.gcd(g, x)
    return g


def _prim(c):
    g = _content(c)
    if g in (0, 1):
        return list(c)
    return [x // g for x in c]


def _pseudo_rem(a, b):
    """Pseudo-remainder of dense integer polynomials a, b (b nonzero)."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        la = a[-1]
        a = [x * lb for x in a]
        shift = da - db
        for i, bi in enumerate(b):
            a[shift + i] -= la * bi
        _trim(a)
    return a


def _poly_gcd(a, b):
    """gcd in Z[x] of dense integer polynomials, content included, lc > 0."""
    a, b = _trim(list(a)), _trim(list(b))
    if not a:
        g = list(b)
    elif not b:
        g = list(a)
    else:
        cont = math.gcd(_content(a), _content(b))
        a, b = _prim(a), _prim(b)
        while b:
            r = _pseudo_rem(a, b)
            a, b = b, _prim(r)
        g = [x * cont for x in _prim(a)]
    if g and g[-1] < 0:
        g = [-x for x in g]
    return g


def _poly_div_exact(a, g):
    """Quotient a/g in Z[x]; requires g | a (checked)."""
    a = _trim(list(a))
    g = _trim(list(g))
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return []
    dq = len(a) - len(g)
    if dq < 0:
        raise ArithmeticError("inexact polynomial division")
    q = [0] * (dq + 1)
    lg = g[-1]
    while a:
        da = len(a) - 1
        if da < len(g) - 1:
            raise ArithmeticError("inexact polynomial division")
        c, r = divmod(a[-1], lg)
        if r:
            raise ArithmeticError("inexact polynomial division")
        shift = da - (len(g) - 1)
        q[shift] = c
        for i, gi in enumerate(g):
            a[shift + i] -= c * gi
        _trim(a)
    return q


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Integer-coefficient Laurent polynomial in q, as {exponent: coefficient}."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        if coeffs:
            self.coeffs = {e: c for e, c in coeffs.items() if c}
        else:
            self.coeffs = {}

    @classmethod
    def const(cls, n):
        return cls({0: n}) if n else cls()

    @classmethod
    def term(cls, coeff, exp):
        return cls({exp: coeff}) if coeff else cls()

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        r = LaurentPoly.__new__(LaurentPoly)
        r.coeffs = out
        return r

    def __neg__(self):
        r = LaurentPoly.__new__(LaurentPoly)
        r.coeffs = {e: -c for e, c in self.coeffs.items()}
        return r

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            return LaurentPoly()
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        r = LaurentPoly.__new__(LaurentPoly)
        r.coeffs = out
        return r

    def scale(self, n):
        if not n:
            return LaurentPoly()
        r = LaurentPoly.__new__(LaurentPoly)
        r.coeffs = {e: c * n for e, c in self.coeffs.items()}
        return r

    def shift(self, k):
        """Multiply by q^k."""
        r = LaurentPoly.__new__(LaurentPoly)
        r.coeffs = {e + k: c for e, c in self.coeffs.items()}
        return r

    def min_exp(self):
        return min(self.coeffs) if self.coeffs else 0

    def max_exp(self):
        return max(self.coeffs) if self.coeffs else 0

    def lead_coeff(self):
        """Coefficient of the highest power (0 for the zero polynomial)."""
        return self.coeffs[max(self.coeffs)] if self.coeffs else 0

    def dense(self):
        """Dense list of coefficients of self * q^(-min_exp), low degree first."""
        if not self.coeffs:
            return []
        lo = self.min_exp()
        out = [0] * (self.max_exp() - lo + 1)
        for e, c in self.coeffs.items():
            out[e - lo] = c
        return out

    @classmethod
    def from_dense(cls, dense, shift=0):
        return cls({i + shift: c for i, c in enumerate(dense) if c})

    def evaluate(self, q0: Fraction) -> Fraction:
        if q0 == 0:
            raise PoleError("cannot evaluate a Laurent polynomial at q = 0")
        total = Fraction(0)
        for e, c in self.coeffs.items():
            total += c * q0 ** e
        return total

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                body = str(abs(c))
            else:
                qpow = "q" if e == 1 else f"q^{e}"
                body = qpow if abs(c) == 1 else f"{abs(c)}*{qpow}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self.coeffs!r})"


_LP_ZERO = LaurentPoly()
_LP_ONE = LaurentPoly({0: 1})


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RatFunc:
    """Canonical fraction of integer Laurent polynomials; a field element of Q(q)."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly = _LP_ONE):
        if den.is_zero():
            raise ZeroDenominatorError("zero denominator")
        num, den = _normalize(num, den)
        self.num = num
        self.den = den

    @classmethod
    def _raw(cls, num, den):
        # internal: trusted canonical input
        r = cls.__new__(cls)
        r.num = num
        r.den = den
        return r

    @classmethod
    def from_int(cls, n):
        return cls._raw(LaurentPoly.const(n), _LP_ONE)

    @classmethod
    def q_power(cls, k):
        return cls._raw(LaurentPoly.term(1, k), _LP_ONE)

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def is_one(self):
        return self.num.coeffs == {0: 1} and self.den.coeffs == {0: 1}

    def __eq__(self, other):
        if isinstance(other, int):
            other = RatFunc.from_int(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        if isinstance(other, int):
            other = RatFunc.from_int(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, int):
            other = RatFunc.from_int(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = RatFunc.from_int(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        # fast path: both denominators trivial (the common case in practice)
        if self.den is _LP_ONE and other.den is _LP_ONE:
            return RatFunc._raw(self.num * other.num, _LP_ONE)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int):
            other = RatFunc.from_int(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDenominatorError("division by the zero function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFunc.from_int(other) / self

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDenominatorError("inverse of the zero function")
        return RatFunc(self.den, self.num)

    def evaluate(self, q0) -> Fraction:
        """Exact value at q = q0 (a nonzero rational); raises PoleError at poles."""
        q0 = Fraction(q0)
        if q0 == 0:
            raise PoleError("q = 0 is outside the Laurent domain")
        d = self.den.evaluate(q0)
        if d == 0:
            raise PoleError(f"pole at q = {q0}")
        return self.num.evaluate(q0) / d

    def __str__(self):
        if self.den.coeffs == {0: 1}:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFunc({self})"


def _normalize(num: LaurentPoly, den: LaurentPoly):
    if num.is_zero():
        return _LP_ZERO, _LP_ONE
    # clear the q-power of den into num (den becomes an ordinary polynomial,
    # nonzero at 0)
    m = den.min_exp()
    if m:
        den = den.shift(-m)
        num = num.shift(-m)
    if den.coeffs == {0: 1}:
        return num, _LP_ONE
    if den.coeffs == {0: -1}:
        return -num, _LP_ONE
    g = _poly_gcd(num.dense(), den.dense())
    if g != [1]:
        nshift = num.min_exp()
        num = LaurentPoly.from_dense(_poly_div_exact(num.dense(), g), nshift)
        den = LaurentPoly.from_dense(_poly_div_exact(den.dense(), g))
    if den.lead_coeff() < 0:
        num, den = -num, -den
    if den.coeffs == {0: 1}:
        den = _LP_ONE
    return num, den


ZERO = RatFunc.from_int(0)
ONE = RatFunc.from_int(1)
Q = RatFunc.q_power(1)
QINV = RatFunc.q_power(-1)


# ---------------------------------------------------------------------------
# coefficient fields: RatFunc for exact mode, Fraction for evaluated mode
# ---------------------------------------------------------------------------

class RatFuncField:
    """Field handle for Q(q) coefficients."""

    name = "Q(q)"
    zero = ZERO
    one = ONE

    @staticmethod
    def from_int(n):
        return RatFunc.from_int(n)

    @staticmethod
    def parse(text):
        return parse_scalar(text)

    @staticmethod
    def to_str(c):
        return str(c)


class FractionField:
    """Field handle for plain rational coefficients (evaluated mode)."""

    name = "Q"
    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def from_int(n):
        return Fraction(n)

    @staticmethod
    def parse(text):
        return Fraction(text)

    @staticmethod
    def to_str(c):
        return str(c)


QQ_Q = RatFuncField()
QQ = FractionField()


# ---------------------------------------------------------------------------
# parsing and printing of coefficient expressions
# ---------------------------------------------------------------------------
#
# grammar: integers, the symbol q, ^ with a (possibly negative) integer
# exponent, binary + - * /, unary -, parentheses; whitespace ignored.

def _tokenize(text):
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
        elif ch in "+-*/^()":
            toks.append((ch, ch))
            i += 1
        elif ch == "q":
            toks.append(("q", "q"))
            i += 1
        else:
            raise ScalarParseError(f"unexpected character {ch!r} at position {i}")
    toks.append(("end", None))
    return toks


class _ScalarParser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.pos = 0
        self.text = text

    def peek(self):
        return self.toks[self.pos][0]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, kind):
        t = self.next()
        if t[0] != kind:
            raise ScalarParseError(f"expected {kind!r}, got {t[0]!r} in {self.text!r}")
        return t

    def parse(self):
        v = self.expr()
        if self.peek() != "end":
            raise ScalarParseError(f"trailing input in {self.text!r}")
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
            v = v * w if op == "*" else v / w
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
            e = self.exponent()
            return _rat_pow(base, e)
        return base

    def exponent(self):
        sign = 1
        if self.peek() == "-":
            self.next()
            sign = -1
        t = self.expect("int")
        return sign * t[1]

    def atom(self):
        kind, val = self.next()
        if kind == "int":
            return RatFunc.from_int(val)
        if kind == "q":
            return Q
        if kind == "(":
            v = self.expr()
            self.expect(")")
            return v
        raise ScalarParseError(f"unexpected token {kind!r} in {self.text!r}")


def _rat_pow(base: RatFunc, e: int) -> RatFunc:
    if e < 0:
        base = base.inverse()
        e = -e
    out = ONE
    for _ in range(e):
        out = out * base
    return out


def parse_scalar(text: str) -> RatFunc:
    """Parse a coefficient expression into a canonical rational function."""
    return _ScalarParser(text).parse()
