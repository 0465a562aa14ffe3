"""Exact arithmetic in real subfields of cyclotomic fields.

A value is stored as an integer polynomial in zeta_n (a primitive n-th
root of unity) over a common denominator, reduced modulo the n-th
cyclotomic polynomial.  Only values fixed by complex conjugation (real
values) are allowed through the public constructors.  Equality is
exact; order comparisons run certified interval refinement and only
fall back to more precision when intervals overlap, so no result ever
depends on floating point.

Square roots are not a primitive: surd identities are verified by
polynomial relations on trig combinations instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from . import _kernel

Rational = Fraction

_MIN_PREC = 64


class ExactError(ValueError):
    """Domain error in exact arithmetic."""


# ---------------------------------------------------------------------------
# cyclotomic polynomials and per-conductor reduction data


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def _poly_divide_exact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials, highest degree last."""
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c == 0:
            continue
        q, r = divmod(c, lead)
        if r:
            raise ArithmeticError("non-exact polynomial division")
        out[i - dd] = q
        for j, dj in enumerate(den):
            num[i - dd + j] -= q * dj
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return out


_CYCLO_CACHE: dict[int, tuple[int, ...]] = {}


def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, low first."""
    cached = _CYCLO_CACHE.get(n)
    if cached is not None:
        return cached
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divide_exact(poly, list(cyclotomic_polynomial(d)))
    result = tuple(poly)
    _CYCLO_CACHE[n] = result
    return result


class _Context:
    """Reduction data for one conductor."""

    __slots__ = ("n", "phi", "poly", "rows")

    def __init__(self, n: int):
        self.n = n
        self.poly = cyclotomic_polynomial(n)
        self.phi = len(self.poly) - 1
        # rows[k] = coefficients of x**(phi+k) reduced mod poly
        self.rows: list[list[int]] = []

    def rows_upto(self, degree: int) -> list[list[int]]:
        """Reduction rows covering exponents phi .. degree."""
        phi = self.phi
        while len(self.rows) < degree - phi + 1:
            if not self.rows:
                row = [-c for c in self.poly[:phi]]
            else:
                prev = self.rows[-1]
                row = [0] + list(prev[: phi - 1])
                top = prev[phi - 1]
                if top:
                    for j in range(phi):
                        row[j] -= top * self.poly[j]
            self.rows.append(row)
        return self.rows

    def reduce(self, coeffs: list[int]) -> list[int]:
        phi = self.phi
        if len(coeffs) <= phi:
            out = list(coeffs) + [0] * (phi - len(coeffs))
            return out
        rows = self.rows_upto(len(coeffs) - 1)
        return _kernel.reduce_tail(coeffs, rows, phi)


_CONTEXTS: dict[int, _Context] = {}


def _context(n: int) -> _Context:
    ctx = _CONTEXTS.get(n)
    if ctx is None:
        ctx = _Context(n)
        _CONTEXTS[n] = ctx
    return ctx


# ---------------------------------------------------------------------------
# certified intervals


@dataclass(frozen=True)
class Interval:
    """Certified enclosure lo <= value <= hi at a working precision."""

    lo: object  # mpmath.mpf
    hi: object  # mpmath.mpf
    precision_bits: int

    def width(self):
        return self.hi - self.lo

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]@{self.precision_bits}"


def _eval_interval(n: int, num: tuple[int, ...], den: int, prec: int) -> Interval:
    iv = mpmath.iv
    old = iv.prec
    iv.prec = prec + 12
    try:
        total = iv.mpf(0)
        for j, c in enumerate(num):
            if c:
                if j == 0:
                    total += c
                else:
                    total += c * iv.cos(iv.pi * (2 * j) / n)
        total /= den
        lo_raw, hi_raw = total._mpi_
        return Interval(
            lo=mpmath.mp.make_mpf(lo_raw),
            hi=mpmath.mp.make_mpf(hi_raw),
            precision_bits=prec,
        )
    finally:
        iv.prec = old


# ---------------------------------------------------------------------------
# the number type


def _gcd_many(values) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, v)
    return g


class CyclotomicReal:
    """A real element of Q(zeta_n), immutable.

    Internal form: (num, den) where num is a tuple of ints of length
    phi(n) giving the numerator polynomial in zeta_n, reduced mod the
    n-th cyclotomic polynomial, and den is a positive int.
    """

    __slots__ = ("n", "num", "den", "_key", "_iv64")

    def __init__(self, n: int, num, den: int, _trusted: bool = False):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            den = -den
            num = [-c for c in num]
        num = list(num)
        ctx = _context(n)
        if len(num) != ctx.phi:
            num = ctx.reduce(num)
        g = math.gcd(_gcd_many(num), den)
        if g > 1:
            num = [c // g for c in num]
            den //= g
        self.n = n
        self.num = tuple(num)
        self.den = den
        self._key = None
        self._iv64 = None
        if not _trusted and not self._is_conjugation_fixed():
            raise ExactError("value is not real (not fixed by conjugation)")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rational(cls, q) -> "CyclotomicReal":
        q = Fraction(q)
        return cls(1, [q.numerator], q.denominator, _trusted=True)

    # -- representation helpers --------------------------------------------

    def _galois(self, k: int) -> "CyclotomicReal":
        """Apply zeta_n -> zeta_n**k (k coprime to n)."""
        n = self.n
        coeffs = [0] * n
        for j, c in enumerate(self.num):
            if c:
                coeffs[(j * k) % n] += c
        ctx = _context(n)
        return CyclotomicReal(n, ctx.reduce(coeffs), self.den, _trusted=True)

    def _is_conjugation_fixed(self) -> bool:
        if self.n <= 2:
            return True
        conj = self._galois(self.n - 1)
        return conj.num == self.num and conj.den == self.den

    def lift(self, m: int) -> "CyclotomicReal":
        """Rewrite at conductor m (n must divide m)."""
        n = self.n
        if m == n:
            return self
        if m % n != 0:
            raise ExactError(f"cannot lift conductor {n} to {m}")
        step = m // n
        coeffs = [0] * ((len(self.num) - 1) * step + 1)
        for j, c in enumerate(self.num):
            coeffs[j * step] = c
        ctx = _context(m)
        return CyclotomicReal(m, ctx.reduce(coeffs), self.den, _trusted=True)

    @property
    def is_zero(self) -> bool:
        return not any(self.num)

    def _canonical(self) -> "CyclotomicReal":
        """Rewrite at the smallest conductor dividing n that contains it."""
        n = self.n
        if n == 1:
            return self
        for m in _divisors(n)[:-1]:
            if self._fixed_by_subfield_galois(m) is False:
                continue
            reduced = self._rewrite_in_subfield(m)
            if reduced is not None:
                return reduced
        return self

    def _fixed_by_subfield_galois(self, m: int) -> bool:
        n = self.n
        for k in range(1, n):
            if k % m == 1 % m and math.gcd(k, n) == 1 and k != 1:
                g = self._galois(k)
                if g.num != self.num or g.den != self.den:
                    return False
        return True

    def _rewrite_in_subfield(self, m: int):
        """Express self in the power basis of zeta_m, or None if not there."""
        n = self.n
        ctxn = _context(n)
        phi_m = _context(m).phi
        step = n // m
        # columns: zeta_m**j lifted to conductor n
        cols = []
        for j in range(phi_m):
            coeffs = [0] * (j * step + 1)
            coeffs[j * step] = 1
            cols.append(ctxn.reduce(coeffs))
        target = [Fraction(c, self.den) for c in self.num]
        sol = _solve_rational_system(cols, ctxn.phi, target)
        if sol is None:
            return None
        den = 1
        for s in sol:
            den = den * s.denominator // math.gcd(den, s.denominator)
        num = [int(s * den) for s in sol]
        return CyclotomicReal(m, num, den, _trusted=True)

    def key(self):
        """Canonical hashable key: equal values share equal keys."""
        if self._key is None:
            c = self._canonical()
            self._key = (c.n, c.num, c.den)
        return self._key

    def canonical(self) -> "CyclotomicReal":
        n, num, den = self.key()
        return CyclotomicReal(n, num, den, _trusted=True)

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, CyclotomicReal):
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicReal.from_rational(other)
        return None

    def _aligned(self, other: "CyclotomicReal"):
        n = self.n * other.n // math.gcd(self.n, other.n)
        return self.lift(n), other.lift(n)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._aligned(other)
        den = a.den * b.den // math.gcd(a.den, b.den)
        fa = den // a.den
        fb = den // b.den
        num = [x * fa + y * fb for x, y in zip(a.num, b.num)]
        return CyclotomicReal(a.n, num, den, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicReal(self.n, [-c for c in self.num], self.den, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._aligned(other)
        ctx = _context(a.n)
        if ctx.phi == 1:
            num = [a.num[0] * b.num[0] * (1 if a.n == 1 else 1)]
            if a.n == 2:
                num = [a.num[0] * b.num[0]]
            return CyclotomicReal(a.n, num, a.den * b.den, _trusted=True)
        rows = ctx.rows_upto(2 * ctx.phi - 2)
        num = _kernel.mul_reduced(list(a.num), list(b.num), rows, ctx.phi)
        return CyclotomicReal(a.n, num, a.den * b.den, _trusted=True)

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicReal":
        if self.is_zero:
            raise ZeroDivisionError("division by exact zero")
        n = self.n
        ctx = _context(n)
        phi = ctx.phi
        if phi == 1:
            return CyclotomicReal(n, [self.den], self.num[0], _trusted=True)
        rows = ctx.rows_upto(2 * phi - 2)
        cols = []
        for j in range(phi):
            shifted = [0] * j + list(self.num)
            cols.append(ctx.reduce(shifted))
        target = [Fraction(1)] + [Fraction(0)] * (phi - 1)
        sol = _solve_rational_system(cols, phi, target)
        if sol is None:
            raise ArithmeticError("inverse solve failed")  # pragma: no cover
        den = 1
        for s in sol:
            den = den * s.denominator // math.gcd(den, s.denominator)
        num = [int(s * den) * self.den for s in sol]
        return CyclotomicReal(n, num, den, _trusted=True)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CyclotomicReal.from_rational(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).is_zero

    def __ne__(self, other):
        eq = self.__eq__(other)
        if eq is NotImplemented:
            return NotImplemented
        return not eq

    def __hash__(self):
        return hash(self.key())

    def interval(self, precision_bits: int = _MIN_PREC) -> Interval:
        if precision_bits == _MIN_PREC and self._iv64 is not None:
            return self._iv64
        iv = _eval_interval(self.n, self.num, self.den, precision_bits)
        if precision_bits == _MIN_PREC:
            self._iv64 = iv
        return iv

    def sign(self) -> int:
        """Certified sign: -1, 0 or 1."""
        if self.is_zero:
            return 0
        prec = _MIN_PREC
        while True:
            iv = self.interval(prec)
            if iv.lo > 0:
                return 1
            if iv.hi < 0:
                return -1
            prec *= 2

    def __lt__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() < 0

    def __le__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() <= 0

    def __gt__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() > 0

    def __ge__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() >= 0

    def __bool__(self):
        return not self.is_zero

    def __float__(self):
        iv = self.interval(_MIN_PREC)
        return float((iv.lo + iv.hi) / 2)

    def decimal(self, digits: int = 50) -> str:
        """Decimal string correct to the requested number of digits."""
        prec = max(_MIN_PREC, int(digits * 3.4) + 32)
        iv = self.interval(prec)
        old = mpmath.mp.prec
        mpmath.mp.prec = prec
        try:
            mid = (iv.lo + iv.hi) / 2
            return mpmath.nstr(mid, digits, strip_zeros=False)
        finally:
            mpmath.mp.prec = old

    # -- queries -------------------------------------------------------------

    def as_rational(self):
        """The value as a Fraction if it is rational, else None."""
        if any(self.num[1:]):
            return None
        return Fraction(self.num[0], self.den)

    def __repr__(self):
        q = self.as_rational()
        if q is not None:
            return f"CyclotomicReal({q})"
        return (
            f"CyclotomicReal(conductor={self.n}, ~{float(self):.6f})"
        )

    def to_pair(self):
        """Canonical (conductor, coefficient strings) serialized form."""
        c = self.canonical()
        return c.n, [f"{x}/{c.den}" if c.den != 1 else str(x) for x in c.num]


def _solve_rational_system(cols, nrows: int, target):
    """Solve sum_j x_j*cols[j] = target over Q; None if inconsistent."""
    ncols = len(cols)
    # augmented matrix, rows = equations
    mat = [[Fraction(cols[j][i]) for j in range(ncols)] + [Fraction(target[i])]
           for i in range(nrows)]
    pivot_cols = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if mat[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivot_cols.append(c)
        r += 1
        if r == nrows:
            break
    # consistency
    for i in range(r, nrows):
        if mat[i][ncols]:
            return None
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivot_cols):
        sol[c] = mat[i][ncols]
    return sol


# ---------------------------------------------------------------------------
# public operations


ZERO = CyclotomicReal.from_rational(0)
ONE = CyclotomicReal.from_rational(1)


def embed(q) -> CyclotomicReal:
    """A rational number as a CyclotomicReal."""
    return CyclotomicReal.from_rational(q)


_TRIG_CACHE: dict[Fraction, CyclotomicReal] = {}


def cos_pi(q) -> CyclotomicReal:
    """Exact cos(q*pi) for rational q."""
    q = Fraction(q) % 2
    cached = _TRIG_CACHE.get(q)
    if cached is not None:
        return cached
    n = q.denominator
    m = q.numerator
    c = 2 * n
    coeffs = [0] * c
    coeffs[m % c] += 1
    coeffs[(-m) % c] += 1
    ctx = _context(c)
    value = CyclotomicReal(c, ctx.reduce(coeffs), 2, _trusted=True)
    _TRIG_CACHE[q] = value
    return value


def sin_pi(q) -> CyclotomicReal:
    """Exact sin(q*pi) for rational q."""
    return cos_pi(Fraction(1, 2) - Fraction(q))


def trig_of_rational_angle(q, kind: str) -> CyclotomicReal:
    """Exact cos or sin of q*pi; kind is 'cos' or 'sin'."""
    if kind == "cos":
        return cos_pi(q)
    if kind == "sin":
        return sin_pi(q)
    raise ExactError(f"unknown trig kind: {kind!r}")


def is_rational(x: CyclotomicReal):
    """The exact rational value of x, or None when x is irrational."""
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    return x.as_rational()


def compare(x: CyclotomicReal, y: CyclotomicReal) -> str:
    """'less', 'equal' or 'greater', decided exactly."""
    x = CyclotomicReal._coerce(x)
    y = CyclotomicReal._coerce(y)
    s = (x - y).sign()
    return {-1: "less", 0: "equal", 1: "greater"}[s]


# ---------------------------------------------------------------------------
# constant-expression parser


class ParseError(ValueError):
    """Syntax error in a constant expression, with offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN_INT = "int"
_TOKEN_NAME = "name"
_TOKEN_OP = "op"
_TOKEN_END = "end"


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append((_TOKEN_INT, int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(text) and text[j].isalpha():
                j += 1
            tokens.append((_TOKEN_NAME, text[i:j], i))
            i = j
            continue
        if ch in "+-*/()":
            tokens.append((_TOKEN_OP, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append((_TOKEN_END, None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, value, position = self.next()
        if kind != _TOKEN_OP or value != op:
            raise ParseError(f"expected {op!r}", position)

    def parse(self) -> CyclotomicReal:
        value = self.expr()
        kind, _, position = self.peek()
        if kind != _TOKEN_END:
            raise ParseError("trailing input", position)
        return value

    def expr(self) -> CyclotomicReal:
        value = self.term()
        while True:
            kind, op, _ = self.peek()
            if kind == _TOKEN_OP and op in "+-":
                self.next()
                rhs = self.term()
                value = value + rhs if op == "+" else value - rhs
            else:
                return value

    def term(self) -> CyclotomicReal:
        value = self.factor()
        while True:
            kind, op, position = self.peek()
            if kind == _TOKEN_OP and op in "*/":
                self.next()
                rhs = self.factor()
                if op == "*":
                    value = value * rhs
                else:
                    if rhs.is_zero:
                        raise ZeroDivisionError(
                            f"division by exact zero (at position {position})"
                        )
                    value = value / rhs
            else:
                return value

    def factor(self) -> CyclotomicReal:
        kind, value, position = self.peek()
        if kind == _TOKEN_OP and value == "-":
            self.next()
            return -self.factor()
        return self.atom()

    def atom(self) -> CyclotomicReal:
        kind, value, position = self.next()
        if kind == _TOKEN_INT:
            return embed(value)
        if kind == _TOKEN_NAME:
            if value not in ("sin", "cos"):
                raise ParseError(f"unknown name {value!r}", position)
            self.expect_op("(")
            arg = self.expr()
            self.expect_op(")")
            q = is_rational(arg)
            if q is None:
                raise ParseError(
                    f"argument of {value} must be rational", position
                )
            return trig_of_rational_angle(q, value)
        if kind == _TOKEN_OP and value == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError("expected a value", position)


def parse_constant(text: str) -> CyclotomicReal:
    """Parse an exact constant expression.

    Grammar: integers, sin(q)/cos(q) with rational q meaning
    sin(q*pi)/cos(q*pi), operators + - * / and parentheses.
    """
    return _Parser(text).parse()
