"""Exact scalars: rationals and reduced fractions over the polynomial ring Q[q].

Two field modes.  Symbolic mode works in Q(q) with every value kept as a
reduced fraction a/b of polynomials (gcd 1, b monic), so equality is
structural.  Specialized mode fixes q at a rational number that is provably
not a root of unity and works in plain Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd

from .errors import DomainError, FieldMismatch, ParseError

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# polynomials in q, sparse {exponent: Fraction}, exponents >= 0, no zeros


class QPoly:
    """Polynomial in q over Q.  Immutable once built."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        # coeffs may contain zeros or int values; normalize here
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                if v:
                    c[e] = v if isinstance(v, Fraction) else Fraction(v)
        self.c = c

    @staticmethod
    def zero() -> "QPoly":
        return QPoly()

    @staticmethod
    def const(v) -> "QPoly":
        return QPoly({0: Fraction(v)})

    @staticmethod
    def q_power(k: int) -> "QPoly":
        if k < 0:
            raise DomainError("QPoly exponents must be non-negative")
        return QPoly({k: _ONE})

    def is_zero(self) -> bool:
        return not self.c

    def is_one(self) -> bool:
        return self.c == {0: _ONE}

    def degree(self) -> int:
        # degree of the zero polynomial reported as -1
        return max(self.c) if self.c else -1

    def min_exp(self) -> int:
        return min(self.c) if self.c else 0

    def leading(self) -> Fraction:
        return self.c[max(self.c)] if self.c else _ZERO

    def constant_term(self) -> Fraction:
        return self.c.get(0, _ZERO)

    def is_monomial(self) -> bool:
        return len(self.c) == 1

    def __eq__(self, other):
        return isinstance(other, QPoly) and self.c == other.c

    def __hash__(self):
        return hash(tuple(sorted(self.c.items())))

    def __repr__(self):
        return f"QPoly({self.c!r})"

    def add(self, other: "QPoly") -> "QPoly":
        c = dict(self.c)
        for e, v in other.c.items():
            w = c.get(e, _ZERO) + v
            if w:
                c[e] = w
            else:
                c.pop(e, None)
        out = QPoly.__new__(QPoly)
        out.c = c
        return out

    def neg(self) -> "QPoly":
        out = QPoly.__new__(QPoly)
        out.c = {e: -v for e, v in self.c.items()}
        return out

    def sub(self, other: "QPoly") -> "QPoly":
        return self.add(other.neg())

    def mul(self, other: "QPoly") -> "QPoly":
        a, b = self.c, other.c
        if not a or not b:
            return QPoly.zero()
        if len(a) > len(b):
            a, b = b, a
        c = {}
        for e1, v1 in a.items():
            for e2, v2 in b.items():
                e = e1 + e2
                w = c.get(e, _ZERO) + v1 * v2
                if w:
                    c[e] = w
                else:
                    del c[e]
        out = QPoly.__new__(QPoly)
        out.c = c
        return out

    def scale(self, v: Fraction) -> "QPoly":
        if not v:
            return QPoly.zero()
        out = QPoly.__new__(QPoly)
        out.c = {e: w * v for e, w in self.c.items()}
        return out

    def shift(self, k: int) -> "QPoly":
        # multiply by q^k; k may be negative only when every exponent allows it
        if not self.c:
            return self
        out = QPoly.__new__(QPoly)
        out.c = {e + k: v for e, v in self.c.items()}
        if k < 0 and any(e < 0 for e in out.c):
            raise DomainError("shift below q^0")
        return out

    def pow_int(self, n: int) -> "QPoly":
        if n < 0:
            raise DomainError("negative QPoly power")
        r = QPoly.const(1)
        b = self
        while n:
            if n & 1:
                r = r.mul(b)
            b = b.mul(b)
            n >>= 1
        return r

    def eval_at(self, v: Fraction) -> Fraction:
        # Horner on the dense range is wasteful for sparse input; direct sum
        return sum((cv * v ** e for e, cv in self.c.items()), _ZERO)

    def divexact(self, d: "QPoly") -> "QPoly":
        """Exact polynomial division.  The caller guarantees divisibility."""
        if d.is_zero():
            raise DomainError("division by the zero polynomial")
        if self.is_zero():
            return self
        rem = dict(self.c)
        dd = d.degree()
        lead = d.c[dd]
        out = {}
        while rem:
            e = max(rem)
            if e < dd:
                raise DomainError("inexact polynomial division")
            coeff = rem[e] / lead
            out[e - dd] = coeff
            for de, dv in d.c.items():
                t = e - dd + de
                w = rem.get(t, _ZERO) - coeff * dv
                if w:
                    rem[t] = w
                else:
                    rem.pop(t, None)
        res = QPoly.__new__(QPoly)
        res.c = out
        return res


# gcd machinery: primitive PRS over int coefficient lists, with fast paths


def _to_int_list(p: QPoly):
    """Clear denominators and content; return primitive int list, low to high."""
    d = p.degree()
    dens = 1
    for v in p.c.values():
        dens = dens * v.denominator // _int_gcd(dens, v.denominator)
    lst = [0] * (d + 1)
    for e, v in p.c.items():
        lst[e] = int(v * dens)
    g = 0
    for v in lst:
        g = _int_gcd(g, v)
    if g > 1:
        lst = [v // g for v in lst]
    if lst[-1] < 0:
        lst = [-v for v in lst]
    return lst


def _trim(u):
    while u and u[-1] == 0:
        u.pop()
    return u


def _int_primitive(u):
    g = 0
    for v in u:
        g = _int_gcd(g, v)
    if g > 1:
        u = [v // g for v in u]
    if u and u[-1] < 0:
        u = [-v for v in u]
    return u


def _int_divexact(u, v):
    """Try int-coefficient long division u / v; None when not divisible."""
    u = u[:]
    dv = len(v) - 1
    lv = v[-1]
    out = [0] * (len(u) - dv)
    while len(u) - 1 >= dv:
        lu = u[-1]
        if lu % lv:
            return None
        c = lu // lv
        k = len(u) - 1 - dv
        out[k] = c
        for i in range(dv + 1):
            u[k + i] -= c * v[i]
        _trim(u)
        if not u:
            return out
    return None if u else out


def _prem(u, v):
    """Pseudo-remainder of u by v over Z (both trimmed, v nonzero)."""
    r = u[:]
    dv = len(v) - 1
    lv = v[-1]
    while len(r) - 1 >= dv:
        m = r[-1]
        r = [lv * c for c in r]
        k = len(r) - 1 - dv
        for i in range(dv + 1):
            r[k + i] -= m * v[i]
        _trim(r)
        if not r:
            return r
    return r


def _int_poly_gcd(u, v):
    u, v = _int_primitive(u), _int_primitive(v)
    if len(u) < len(v):
        u, v = v, u
    # exact-division fast path; hits whenever one argument divides the other
    w = _int_divexact(u, v)
    if w is not None:
        return v
    while True:
        r = _prem(u, v)
        if not r:
            return v
        r = _int_primitive(r)
        if len(r) == 1:
            return [1]
        u, v = v, r


def poly_gcd(p: QPoly, g: QPoly) -> QPoly:
    """Monic gcd in Q[q].  gcd with 0 is the other argument made monic."""
    if p.is_zero():
        return _monic(g)
    if g.is_zero():
        return _monic(p)
    sa, sb = p.min_exp(), g.min_exp()
    s = min(sa, sb)
    p0 = p.shift(-sa) if sa else p
    g0 = g.shift(-sb) if sb else g
    if p0.degree() == 0 or g0.degree() == 0:
        return QPoly.q_power(s)
    core = _int_poly_gcd(_to_int_list(p0), _to_int_list(g0))
    out = QPoly({e: Fraction(v, core[-1]) for e, v in enumerate(core)})
    return out.shift(s) if s else out


def _monic(p: QPoly) -> QPoly:
    lc = p.leading()
    if lc == 1:
        return p
    return p.scale(1 / lc)


# ---------------------------------------------------------------------------
# field specification


class FieldSpec:
    """Either the symbolic field Q(q) or Q with q specialized to a rational."""

    __slots__ = ("mode", "q_value")

    def __init__(self, mode: str, q_value=None):
        if mode == "symbolic":
            if q_value is not None:
                raise DomainError("symbolic mode takes no q value")
        elif mode == "specialized":
            q_value = Fraction(q_value)
            if q_value in (0, 1, -1):
                raise DomainError("specialized q must avoid 0, 1, -1")
        else:
            raise DomainError(f"unknown field mode {mode!r}")
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "q_value", q_value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldSpec is immutable")

    @staticmethod
    def symbolic() -> "FieldSpec":
        return FieldSpec("symbolic")

    @staticmethod
    def specialized(q_value) -> "FieldSpec":
        return FieldSpec("specialized", q_value)

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and self.mode == other.mode
            and self.q_value == other.q_value
        )

    def __hash__(self):
        return hash((self.mode, self.q_value))

    def __repr__(self):
        if self.mode == "symbolic":
            return "FieldSpec.symbolic()"
        return f"FieldSpec.specialized({self.q_value!r})"

    # element constructors

    def zero(self) -> "Scalar":
        return self.from_fraction(_ZERO)

    def one(self) -> "Scalar":
        return self.from_fraction(_ONE)

    def q(self) -> "Scalar":
        if self.mode == "specialized":
            return Scalar._frac(self, self.q_value)
        return Scalar._sym_raw(self, QPoly.q_power(1), QPoly.const(1))

    def from_int(self, n: int) -> "Scalar":
        return self.from_fraction(Fraction(n))

    def from_fraction(self, v) -> "Scalar":
        v = Fraction(v)
        if self.mode == "specialized":
            return Scalar._frac(self, v)
        return Scalar._sym_raw(self, QPoly.const(v), QPoly.const(1))

    def parse(self, text: str) -> "Scalar":
        return parse_scalar(text, self)


# ---------------------------------------------------------------------------
# scalars


class Scalar:
    """Immutable field element.  Symbolic values are canonical fractions."""

    __slots__ = ("field", "a", "b", "_h")

    # construction --------------------------------------------------

    @staticmethod
    def _frac(field: FieldSpec, v: Fraction) -> "Scalar":
        s = object.__new__(Scalar)
        object.__setattr__(s, "field", field)
        object.__setattr__(s, "a", v)
        object.__setattr__(s, "b", None)
        object.__setattr__(s, "_h", None)
        return s

    @staticmethod
    def _sym_raw(field: FieldSpec, a: QPoly, b: QPoly) -> "Scalar":
        # caller promises a/b already canonical: gcd 1, b monic nonzero
        s = object.__new__(Scalar)
        object.__setattr__(s, "field", field)
        object.__setattr__(s, "a", a)
        object.__setattr__(s, "b", b)
        object.__setattr__(s, "_h", None)
        return s

    @staticmethod
    def _sym_make(field: FieldSpec, a: QPoly, b: QPoly) -> "Scalar":
        if b.is_zero():
            raise DomainError("division by the zero function")
        if a.is_zero():
            return Scalar._sym_raw(field, QPoly.zero(), QPoly.const(1))
        g = poly_gcd(a, b)
        if not g.is_one():
            a = a.divexact(g)
            b = b.divexact(g)
        lc = b.leading()
        if lc != 1:
            a = a.scale(1 / lc)
            b = b.scale(1 / lc)
        return Scalar._sym_raw(field, a, b)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        if self.b is None:
            return self.a == 0
        return self.a.is_zero()

    def is_one(self) -> bool:
        if self.b is None:
            return self.a == 1
        return self.a.is_one() and self.b.is_one()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.field == other.field and self.a == other.a and self.b == other.b

    def __hash__(self):
        h = self._h
        if h is None:
            if self.b is None:
                h = hash((self.field, self.a))
            else:
                h = hash((self.field, self.a, self.b))
            object.__setattr__(self, "_h", h)
        return h

    # arithmetic ----------------------------------------------------

    def _check(self, other: "Scalar"):
        if self.field != other.field:
            raise FieldMismatch("scalars from different fields")

    def __add__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        self._check(other)
        if self.b is None:
            return Scalar._frac(self.field, self.a + other.a)
        a, b, c, d = self.a, self.b, other.a, other.b
        if b == d:
            return Scalar._sym_make(self.field, a.add(c), b)
        g = poly_gcd(b, d)
        if g.is_one():
            # cross terms stay reduced, product of monic is monic
            return Scalar._sym_raw(self.field, a.mul(d).add(c.mul(b)), b.mul(d))
        b1 = b.divexact(g)
        d1 = d.divexact(g)
        t = a.mul(d1).add(c.mul(b1))
        if t.is_zero():
            return Scalar._sym_raw(self.field, QPoly.zero(), QPoly.const(1))
        h = poly_gcd(t, g)
        if not h.is_one():
            t = t.divexact(h)
            g = g.divexact(h)
        return Scalar._sym_raw(self.field, t, b1.mul(d1).mul(g))

    def __neg__(self):
        if self.b is None:
            return Scalar._frac(self.field, -self.a)
        return Scalar._sym_raw(self.field, self.a.neg(), self.b)

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        self._check(other)
        if self.b is None:
            return Scalar._frac(self.field, self.a * other.a)
        a, b, c, d = self.a, self.b, other.a, other.b
        if a.is_zero() or c.is_zero():
            return Scalar._sym_raw(self.field, QPoly.zero(), QPoly.const(1))
        g1 = poly_gcd(a, d)
        g2 = poly_gcd(c, b)
        if not g1.is_one():
            a = a.divexact(g1)
            d = d.divexact(g1)
        if not g2.is_one():
            c = c.divexact(g2)
            b = b.divexact(g2)
        return Scalar._sym_raw(self.field, a.mul(c), b.mul(d))

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        self._check(other)
        if other.is_zero():
            raise DomainError("division by zero")
        if self.b is None:
            return Scalar._frac(self.field, self.a / other.a)
        return self * other.inverse()

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise DomainError("zero has no inverse")
        if self.b is None:
            return Scalar._frac(self.field, 1 / self.a)
        a, b = self.b, self.a
        lc = b.leading()
        if lc != 1:
            a = a.scale(1 / lc)
            b = b.scale(1 / lc)
        return Scalar._sym_raw(self.field, a, b)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise DomainError("Scalar powers take integer exponents")
        if n < 0:
            return self.inverse() ** (-n)
        if self.b is None:
            return Scalar._frac(self.field, self.a ** n)
        # powers of a reduced fraction stay reduced; denominator stays monic
        return Scalar._sym_raw(self.field, self.a.pow_int(n), self.b.pow_int(n))

    def specialize(self, field: FieldSpec) -> "Scalar":
        """Evaluate at the q of a specialized field."""
        if field.mode != "specialized":
            raise DomainError("specialize needs a specialized target field")
        if self.b is None:
            return Scalar._frac(field, self.a)
        den = self.b.eval_at(field.q_value)
        if den == 0:
            raise DomainError("denominator vanishes at the specialization point")
        return Scalar._frac(field, self.a.eval_at(field.q_value) / den)

    # printing ------------------------------------------------------

    def __str__(self):
        if self.b is None:
            return str(self.a)
        if self.a.is_zero():
            return "0"
        num = _poly_str(self.a)
        if self.b.is_one():
            return num
        if len(self.a.c) > 1:
            num = f"({num})"
        if self.b.is_monomial():
            # monic monomial q^k prints bare
            e = self.b.degree()
            den = "q" if e == 1 else f"q^{e}"
        else:
            den = f"({_poly_str(self.b)})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"<Scalar {self}>"


def _term_str(e: int, v: Fraction) -> str:
    if e == 0:
        return str(v)
    qpart = "q" if e == 1 else f"q^{e}"
    if v == 1:
        return qpart
    if v == -1:
        return "-" + qpart
    return f"{v}*{qpart}"


def _poly_str(p: QPoly) -> str:
    parts = []
    for e in sorted(p.c, reverse=True):
        t = _term_str(e, p.c[e])
        if not parts:
            parts.append(t)
        elif t.startswith("-"):
            parts.append("-" + t[1:])
        else:
            parts.append("+" + t)
    return "".join(parts)


# ---------------------------------------------------------------------------
# q-integer combinatorics


def q_int(n: int, field: FieldSpec) -> Scalar:
    """The balanced q-integer [n] = (q^n - q^-n)/(q - q^-1)."""
    if n < 0:
        raise DomainError("q_int takes n >= 0")
    if n == 0:
        return field.zero()
    if field.mode == "specialized":
        v = field.q_value
        num = sum((v ** (2 * k) for k in range(n)), _ZERO)
        return Scalar._frac(field, num / v ** (n - 1))
    num = QPoly({2 * k: _ONE for k in range(n)})
    return Scalar._sym_raw(field, num, QPoly.q_power(n - 1))


def q_factorial(n: int, field: FieldSpec) -> Scalar:
    if n < 0:
        raise DomainError("q_factorial takes n >= 0")
    out = field.one()
    for k in range(1, n + 1):
        out = out * q_int(k, field)
    return out


def q_binomial(n: int, m: int, field: FieldSpec) -> Scalar:
    if n < 0 or m < 0 or m > n:
        raise DomainError("q_binomial needs 0 <= m <= n")
    return q_factorial(n, field) / (q_factorial(m, field) * q_factorial(n - m, field))


# ---------------------------------------------------------------------------
# literal parser
#
#   expr   := term (('+'|'-') term)*
#   term   := factor (('*'|'/') factor)*
#   factor := ['-'] base ('^' signed-integer)?
#   base   := unsigned-integer | 'q' | '(' expr ')'


class _Parser:
    __slots__ = ("text", "pos", "field")

    def __init__(self, text: str, field: FieldSpec):
        self.text = text
        self.pos = 0
        self.field = field

    def skip_ws(self):
        t, n = self.text, len(self.text)
        while self.pos < n and t[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expr(self) -> Scalar:
        v = self.term()
        while True:
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                v = v + self.term()
            elif ch == "-":
                self.pos += 1
                v = v - self.term()
            else:
                return v

    def term(self) -> Scalar:
        v = self.factor()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                v = v * self.factor()
            elif ch == "/":
                self.pos += 1
                v = v / self.factor()
            else:
                return v

    def factor(self) -> Scalar:
        neg = False
        if self.peek() == "-":
            neg = True
            self.pos += 1
        v = self.base()
        if self.peek() == "^":
            self.pos += 1
            v = v ** self.signed_int()
        return -v if neg else v

    def base(self) -> Scalar:
        ch = self.peek()
        if ch == "q":
            self.pos += 1
            return self.field.q()
        if ch == "(":
            self.pos += 1
            v = self.expr()
            if self.peek() != ")":
                raise ParseError("expected ')'", self.pos)
            self.pos += 1
            return v
        if ch.isdigit():
            return self.field.from_int(self.unsigned_int())
        if ch == "":
            raise ParseError("unexpected end of input", self.pos)
        raise ParseError(f"unexpected character {ch!r}", self.pos)

    def unsigned_int(self) -> int:
        self.skip_ws()
        t, n = self.text, len(self.text)
        start = self.pos
        while self.pos < n and t[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected an integer", self.pos)
        return int(t[start:self.pos])

    def signed_int(self) -> int:
        sign = 1
        ch = self.peek()
        if ch == "-":
            sign = -1
            self.pos += 1
        elif ch == "+":
            self.pos += 1
        return sign * self.unsigned_int()


def parse_scalar(text: str, field: FieldSpec) -> Scalar:
    """Parse a scalar literal.  parse -> print -> parse is a fixed point."""
    p = _Parser(text, field)
    v = p.expr()
    p.skip_ws()
    if p.pos != len(text):
        raise ParseError(f"trailing input {text[p.pos:]!r}", p.pos)
    return v
