"""Exact arithmetic in Q(i)(q^(1/12)).

Every q-dependent quantity in the library is a :class:`Scalar`: a rational
function in x = q^(1/12) with Gaussian-rational coefficients.

Internally a scalar is stored as ``re + i*im`` where both parts are real
rational functions kept in lowest terms with flint polynomials.  The
canonical ``num/den`` form over Q(i) is produced on demand.
"""
from __future__ import annotations

import re as _re
from fractions import Fraction
from functools import lru_cache

import flint

STEP = 12  # exponents are stored as integer multiples of 1/STEP

_ONE_POLY = flint.fmpq_poly([1])
_ZERO_POLY = flint.fmpq_poly([])


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, flint.fmpq):
        return Fraction(int(c.p), int(c.q))
    return Fraction(c)


def _valuation(p) -> int:
    if p[0] != 0:
        return 0
    for k, c in enumerate(p.coeffs()):
        if c != 0:
            return k
    raise ValueError("valuation of zero polynomial")


class GaussianRational:
    """A number re + im*i with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    def __add__(self, o):
        o = _as_gauss(o)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-_as_gauss(o))

    def __mul__(self, o):
        o = _as_gauss(o)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, o):
        return self * _as_gauss(o).inverse()

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, o):
        try:
            o = _as_gauss(o)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def render(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return _imag_str(self.im)
        sign = " - " if self.im < 0 else " + "
        return f"({self.re}{sign}{_imag_str(abs(self.im))})"


def _imag_str(v: Fraction) -> str:
    if v == 1:
        return "i"
    if v == -1:
        return "-i"
    return f"{v}*i"


def _as_gauss(o) -> GaussianRational:
    if isinstance(o, GaussianRational):
        return o
    if isinstance(o, (int, Fraction)):
        return GaussianRational(o, 0)
    raise TypeError(f"cannot coerce {type(o).__name__} to GaussianRational")


class LaurentQ:
    """Finite Laurent polynomial in q^(1/12) with Gaussian-rational coefficients.

    ``terms`` maps an exponent, stored as an integer count of twelfths, to a
    nonzero coefficient.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for e, c in (terms or {}).items():
            c = _as_gauss(c)
            if c:
                clean[int(e)] = c
        self.terms = dict(sorted(clean.items()))

    def __eq__(self, o):
        return isinstance(o, LaurentQ) and self.terms == o.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {0: GaussianRational(1)}

    def min_exponent(self) -> int:
        return next(iter(self.terms))

    def to_scalar(self) -> "Scalar":
        out = Scalar.zero()
        for e, c in self.terms.items():
            out = out + Scalar.from_gauss(c) * Scalar.monomial(e)
        return out

    def render(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.terms.items():
            neg, body = _term_str(c, e)
            if not pieces:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append((" - " if neg else " + ") + body)
        return "".join(pieces)

    def __repr__(self):
        return f"LaurentQ({self.render()!r})"


def _exp_str(e: int) -> str:
    f = Fraction(e, STEP)
    if f == 1:
        return "q"
    return f"q^({f})"


def _term_str(c: GaussianRational, e: int):
    """Return (is_negative, body) for one term c*q^(e/12)."""
    neg = False
    if not c.im:
        neg = c.re < 0
        mag = abs(c.re)
        coeff = None if mag == 1 and e != 0 else str(mag)
    elif not c.re:
        neg = c.im < 0
        coeff = _imag_str(abs(c.im))
    else:
        coeff = c.render()
    if e == 0:
        return neg, coeff
    mono = _exp_str(e)
    return neg, mono if coeff is None else f"{coeff}*{mono}"


class _RF:
    """Real rational function x^s * n(x)/d(x) in lowest terms.

    n(0) != 0 unless n == 0, d(0) == 1, gcd(n, d) == 1.
    """

    __slots__ = ("s", "n", "d")

    def __init__(self, s, n, d):
        self.s = s
        self.n = n
        self.d = d

    def is_zero(self):
        return self.n.is_zero()

    def is_poly(self):
        return self.d.is_one()


_RF_ZERO = _RF(0, _ZERO_POLY, _ONE_POLY)
_RF_ONE = _RF(0, _ONE_POLY, _ONE_POLY)


def _rf_make(s, n, d, reduce=True):
    if n.is_zero():
        return _RF_ZERO
    if n[0] == 0:
        v = _valuation(n)
        n = n.right_shift(v)
        s += v
    if d[0] == 0:
        v = _valuation(d)
        d = d.right_shift(v)
        s -= v
    if reduce and not d.is_constant():
        g = n.gcd(d)
        if not g.is_one():
            n = n // g
            d = d // g
    c = d[0]
    if c != 1:
        n = n / c
        d = d / c
    return _RF(s, n, d)


def _rf_add(a, b):
    if a.n.is_zero():
        return b
    if b.n.is_zero():
        return a
    s = min(a.s, b.s)
    an = a.n if a.s == s else a.n.left_shift(a.s - s)
    bn = b.n if b.s == s else b.n.left_shift(b.s - s)
    if a.d.is_one() and b.d.is_one():
        return _rf_make(s, an + bn, _ONE_POLY, reduce=False)
    if a.d == b.d:
        return _rf_make(s, an + bn, a.d)
    g = a.d.gcd(b.d)
    if g.is_one():
        return _rf_make(s, an * b.d + bn * a.d, a.d * b.d, reduce=True)
    ad = a.d // g
    bd = b.d // g
    num = an * bd + bn * ad
    den = ad * b.d
    # only factors of g can be shared with the new numerator
    h = num.gcd(g) if not num.is_zero() else _ONE_POLY
    if not h.is_one():
        num = num // h
        den = den // h
    return _rf_make(s, num, den, reduce=False)


def _rf_neg(a):
    if a.n.is_zero():
        return a
    return _RF(a.s, -a.n, a.d)


def _rf_mul(a, b):
    if a.n.is_zero() or b.n.is_zero():
        return _RF_ZERO
    an, ad, bn, bd = a.n, a.d, b.n, b.d
    if not bd.is_one() and not an.is_constant():
        g = an.gcd(bd)
        if not g.is_one():
            an = an // g
            bd = bd // g
    if not ad.is_one() and not bn.is_constant():
        g = bn.gcd(ad)
        if not g.is_one():
            bn = bn // g
            ad = ad // g
    return _rf_make(a.s + b.s, an * bn, ad * bd, reduce=False)


def _rf_inv(a):
    if a.n.is_zero():
        raise ZeroDivisionError("division by zero")
    c = a.n[0]
    return _RF(-a.s, a.d / c, a.n / c)


def _rf_eq(a, b):
    return a.s == b.s and a.n == b.n and a.d == b.d


def _poly_key(p):
    return tuple((int(c.p), int(c.q)) for c in p.coeffs())


class Scalar:
    """Element of Q(i)(q^(1/12)), immutable."""

    __slots__ = ("_re", "_im", "_hash")

    def __init__(self, re=_RF_ZERO, im=_RF_ZERO):
        self._re = re
        self._im = im
        self._hash = None

    # construction -------------------------------------------------------
    @staticmethod
    def zero() -> "Scalar":
        return _ZERO

    @staticmethod
    def one() -> "Scalar":
        return _ONE

    @staticmethod
    def from_int(c) -> "Scalar":
        c = _frac(c)
        if c == 0:
            return _ZERO
        return Scalar(_RF(0, flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator)]), _ONE_POLY))

    @staticmethod
    def from_gauss(c: GaussianRational) -> "Scalar":
        return Scalar(Scalar.from_int(c.re)._re, Scalar.from_int(c.im)._re)

    @staticmethod
    def i() -> "Scalar":
        return _I

    @staticmethod
    def monomial(twelfths: int, coeff=1) -> "Scalar":
        """coeff * q^(twelfths/12)."""
        c = _frac(coeff)
        if c == 0:
            return _ZERO
        return Scalar(_RF(int(twelfths), flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator)]), _ONE_POLY))

    @staticmethod
    def q_power(e) -> "Scalar":
        """q^e for a rational e with denominator dividing 12."""
        e = Fraction(e) * STEP
        if e.denominator != 1:
            raise ValueError(f"exponent {e / STEP} is not in (1/12)Z")
        return Scalar.monomial(int(e))

    @staticmethod
    def coerce(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar.from_int(x)
        if isinstance(x, GaussianRational):
            return Scalar.from_gauss(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")

    # arithmetic ---------------------------------------------------------
    def __add__(self, o):
        if not isinstance(o, Scalar):
            o = Scalar.coerce(o)
        return Scalar(_rf_add(self._re, o._re), _rf_add(self._im, o._im))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(_rf_neg(self._re), _rf_neg(self._im))

    def __sub__(self, o):
        if not isinstance(o, Scalar):
            o = Scalar.coerce(o)
        return self + (-o)

    def __rsub__(self, o):
        return Scalar.coerce(o) - self

    def __mul__(self, o):
        if not isinstance(o, Scalar):
            o = Scalar.coerce(o)
        a, b, c, d = self._re, self._im, o._re, o._im
        if b.n.is_zero() and d.n.is_zero():
            return Scalar(_rf_mul(a, c))
        if a.n.is_zero() and c.n.is_zero():
            return Scalar(_rf_neg(_rf_mul(b, d)))
        re = _rf_add(_rf_mul(a, c), _rf_neg(_rf_mul(b, d)))
        im = _rf_add(_rf_mul(a, d), _rf_mul(b, c))
        return Scalar(re, im)

    __rmul__ = __mul__

    def inv(self) -> "Scalar":
        a, b = self._re, self._im
        if b.n.is_zero():
            return Scalar(_rf_inv(a))
        if a.n.is_zero():
            return Scalar(_RF_ZERO, _rf_neg(_rf_inv(b)))
        nrm = _rf_inv(_rf_add(_rf_mul(a, a), _rf_mul(b, b)))
        return Scalar(_rf_mul(a, nrm), _rf_neg(_rf_mul(b, nrm)))

    def __truediv__(self, o):
        return self * Scalar.coerce(o).inv()

    def __rtruediv__(self, o):
        return Scalar.coerce(o) * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out, base = _ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "Scalar":
        """Complex conjugation of coefficients (q is real)."""
        return Scalar(self._re, _rf_neg(self._im))

    # predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return self._re.n.is_zero() and self._im.n.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def is_one(self) -> bool:
        return self._im.n.is_zero() and _rf_eq(self._re, _RF_ONE)

    def is_real(self) -> bool:
        return self._im.n.is_zero()

    def __eq__(self, o):
        if not isinstance(o, Scalar):
            try:
                o = Scalar.coerce(o)
            except TypeError:
                return NotImplemented
        return _rf_eq(self._re, o._re) and _rf_eq(self._im, o._im)

    def __hash__(self):
        if self._hash is None:
            parts = []
            for p in (self._re, self._im):
                parts.append((p.s, _poly_key(p.n), _poly_key(p.d)))
            self._hash = hash(tuple(parts))
        return self._hash

    def __reduce__(self):
        return (_rebuild, (self._state(),))

    def _state(self):
        return tuple((p.s, _poly_key(p.n), _poly_key(p.d)) for p in (self._re, self._im))

    # canonical form -----------------------------------------------------
    @property
    def num(self) -> LaurentQ:
        return _canonical(self)[0]

    @property
    def den(self) -> LaurentQ:
        return _canonical(self)[1]

    def render(self) -> str:
        num, den = _canonical(self)
        if den.is_one():
            return num.render()
        return f"({num.render()})/({den.render()})"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Scalar({self.render()!r})"


def _rebuild(state):
    parts = []
    for s, n, d in state:
        parts.append(_RF(s, flint.fmpq_poly([flint.fmpq(a, b) for a, b in n]),
                         flint.fmpq_poly([flint.fmpq(a, b) for a, b in d])))
    return Scalar(*parts)


_ZERO = Scalar()
_ONE = Scalar(_RF_ONE)
_I = Scalar(_RF_ZERO, _RF_ONE)


# --- canonical num/den over Q(i) ----------------------------------------

def _gpoly_trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _gpoly_divmod(a, b):
    a = list(a)
    q = [GaussianRational(0)] * max(len(a) - len(b) + 1, 1)
    lead_inv = b[-1].inverse()
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] * lead_inv
        q[k] = c
        for j, bj in enumerate(b):
            a[k + j] = a[k + j] - c * bj
        _gpoly_trim(a)
    return _gpoly_trim(q), a


def _gpoly_gcd(a, b):
    a, b = _gpoly_trim(list(a)), _gpoly_trim(list(b))
    while b:
        _, r = _gpoly_divmod(a, b)
        a, b = b, r
    return a


def _poly_to_gauss(p, imag=False):
    out = []
    for c in p.coeffs():
        f = _frac(c)
        out.append(GaussianRational(0, f) if imag else GaussianRational(f, 0))
    return out


def _gpoly_add(a, b):
    n = max(len(a), len(b))
    out = []
    for k in range(n):
        x = a[k] if k < len(a) else GaussianRational(0)
        y = b[k] if k < len(b) else GaussianRational(0)
        out.append(x + y)
    return _gpoly_trim(out)


def _laurent_from(shift, coeffs):
    return LaurentQ({shift + k: c for k, c in enumerate(coeffs) if c})


@lru_cache(maxsize=4096)
def _canonical_cached(state):
    x = _rebuild(state)
    return _canonical_uncached(x)


def _canonical(x: Scalar):
    return _canonical_cached(x._state())


def _canonical_uncached(x: Scalar):
    a, b = x._re, x._im
    if b.n.is_zero() or a.n.is_zero():
        part, imag = (a, False) if b.n.is_zero() else (b, True)
        if part.n.is_zero():
            return LaurentQ(), LaurentQ({0: 1})
        num = _laurent_from(part.s, _poly_to_gauss(part.n, imag))
        den = _laurent_from(0, _poly_to_gauss(part.d))
        return num, den
    # mixed case: put both parts over the real lcm, then cancel over Q(i)
    g = a.d.gcd(b.d)
    lcm = (a.d // g) * b.d
    s = min(a.s, b.s)
    na = (a.n * (lcm // a.d)).left_shift(a.s - s)
    nb = (b.n * (lcm // b.d)).left_shift(b.s - s)
    num = _gpoly_add(_poly_to_gauss(na), _poly_to_gauss(nb, imag=True))
    den = _poly_to_gauss(lcm)
    common = _gpoly_gcd(num, den)
    if len(common) > 1:
        num, _ = _gpoly_divmod(num, common)
        den, _ = _gpoly_divmod(den, common)
    lead = den[0].inverse()
    num = [c * lead for c in num]
    den = [c * lead for c in den]
    return _laurent_from(s, num), _laurent_from(0, den)


# --- q-numbers -----------------------------------------------------------

@lru_cache(maxsize=None)
def quantum_integer(n: int) -> Scalar:
    """[n] = q^(n/2) - q^(-n/2)."""
    if n == 0:
        return _ZERO
    return Scalar.monomial(6 * n) - Scalar.monomial(-6 * n)


@lru_cache(maxsize=None)
def quantum_factorial(n: int) -> Scalar:
    """[n]! = [1][2]...[n]."""
    if n < 0:
        raise ValueError("quantum factorial of a negative integer")
    out = _ONE
    for k in range(1, n + 1):
        out = out * quantum_integer(k)
    return out


# --- parsing -------------------------------------------------------------

_TOKEN = _re.compile(r"\s*(?:(\d+)|(.))")


class _Parser:
    def __init__(self, text: str):
        self.toks = []
        for m in _TOKEN.finditer(text):
            if m.group(1) is not None:
                self.toks.append(("int", int(m.group(1))))
            elif m.group(2) is not None and not m.group(2).isspace():
                self.toks.append(("sym", m.group(2)))
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self, sym=None):
        tok = self.peek()
        if tok[0] is None or (sym is not None and tok[1] != sym):
            raise ValueError(f"parse error near token {self.pos}: expected {sym!r}, got {tok[1]!r}")
        self.pos += 1
        return tok

    def expr(self):
        out = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self):
        out = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            f = self.unary()
            out = out * f if op == "*" else out / f
        return out

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        kind, val = self.peek()
        if kind == "int":
            self.take()
            base = Scalar.from_int(val)
        elif val == "i":
            self.take()
            base = _I
        elif val == "q":
            self.take()
            if self.peek()[1] == "^":
                self.take()
                return Scalar.q_power(self.exponent())
            return Scalar.monomial(STEP)
        elif val == "(":
            self.take()
            base = self.expr()
            self.take(")")
        else:
            raise ValueError(f"parse error: unexpected {val!r}")
        if self.peek()[1] == "^":
            self.take()
            e = self.exponent()
            if e.denominator != 1:
                raise ValueError("fractional power of a non-monomial")
            base = base ** int(e)
        return base

    def exponent(self) -> Fraction:
        if self.peek()[1] == "(":
            self.take()
            sign = 1
            if self.peek()[1] == "-":
                self.take()
                sign = -1
            num = self.take()[1]
            e = Fraction(num)
            if self.peek()[1] == "/":
                self.take()
                e = e / self.take()[1]
            self.take(")")
            return sign * e
        sign = 1
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        kind, val = self.take()
        if kind != "int":
            raise ValueError("parse error in exponent")
        return Fraction(sign * val)


def parse_scalar(text: str) -> Scalar:
    """Parse the canonical text format (and simple arithmetic expressions)."""
    p = _Parser(text)
    if not p.toks:
        raise ValueError("empty scalar")
    out = p.expr()
    if p.pos != len(p.toks):
        raise ValueError(f"parse error: trailing input at token {p.pos}")
    return out
