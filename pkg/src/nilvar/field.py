"""Exact scalars: rationals, polynomials over Q and reduced rational functions in t."""
from fractions import Fraction
import math

Rational = Fraction

INF = math.inf


class DivisionByZero(ZeroDivisionError):
    pass


class NoLimit(ArithmeticError):
    pass


class PoleAtPoint(ArithmeticError):
    pass


def rational(x) -> Fraction:
    """Parse "p/q", "p", int or Fraction into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            p, q = s.split("/")
            q = int(q)
            if q == 0:
                raise DivisionByZero("zero denominator in " + s)
            return Fraction(int(p), q)
        return Fraction(int(s))
    raise TypeError("not a rational: %r" % (x,))


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def _trim(cs):
    n = len(cs)
    while n and not cs[n - 1]:
        n -= 1
    return tuple(cs[:n])


class Polynomial:
    """Ascending coefficient tuple; the zero polynomial is ()."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        self.c = _trim([rational(x) for x in coeffs])

    @classmethod
    def _raw(cls, c):
        p = object.__new__(cls)
        p.c = c
        return p

    @classmethod
    def monomial(cls, coeff, k: int):
        coeff = rational(coeff)
        if not coeff:
            return cls._raw(())
        return cls._raw((Fraction(0),) * k + (coeff,))

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.c == other.c
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return "Polynomial(%s)" % [format_rational(x) for x in self.c]

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    @property
    def lead(self) -> Fraction:
        return self.c[-1]

    def order(self):
        """Lowest exponent with a nonzero coefficient; +inf for zero."""
        for i, x in enumerate(self.c):
            if x:
                return i
        return INF

    def is_monomial(self) -> bool:
        return bool(self.c) and self.order() == len(self.c) - 1

    def __add__(self, other):
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return Polynomial._raw(_trim(out))

    def __neg__(self):
        return Polynomial._raw(tuple(-x for x in self.c))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        a, b = self.c, other.c
        if not a or not b:
            return Polynomial._raw(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Polynomial._raw(_trim(out))

    def scale(self, s: Fraction):
        if not s:
            return Polynomial._raw(())
        return Polynomial._raw(tuple(x * s for x in self.c))

    def shift(self, k: int):
        """Multiply by t^k (k may be negative if the low terms vanish)."""
        if not self.c:
            return self
        if k >= 0:
            return Polynomial._raw((Fraction(0),) * k + self.c)
        return Polynomial._raw(self.c[-k:])

    def divmod(self, other):
        if not other.c:
            raise DivisionByZero("polynomial division by zero")
        r = list(self.c)
        db = len(other.c) - 1
        lb = other.c[-1]
        if len(r) - 1 < db:
            return Polynomial._raw(()), self
        q = [Fraction(0)] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            coef = r[k + db] / lb
            q[k] = coef
            if coef:
                for j, y in enumerate(other.c):
                    r[k + j] -= coef * y
        return Polynomial._raw(_trim(q)), Polynomial._raw(_trim(r[:db]))

    def monic(self):
        if not self.c:
            return self
        return self.scale(1 / self.c[-1])

    def __call__(self, t0):
        acc = Fraction(0)
        for x in reversed(self.c):
            acc = acc * t0 + x
        return acc


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd (zero if both are zero)."""
    while b:
        a, b = b, a.divmod(b)[1]
        # keep coefficients small
        b = b.monic()
    return a.monic()


ONE_POLY = Polynomial._raw((Fraction(1),))


class RatFunc:
    """Reduced num/den with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Polynomial):
            num = Polynomial(num)
        if den is None:
            den = ONE_POLY
        elif not isinstance(den, Polynomial):
            den = Polynomial(den)
        if not den:
            raise DivisionByZero("zero denominator")
        self.num, self.den = _reduce(num, den)

    @classmethod
    def _raw(cls, num, den):
        f = object.__new__(cls)
        f.num = num
        f.den = den
        return f

    @classmethod
    def const(cls, q):
        q = rational(q)
        return cls._raw(Polynomial._raw((q,) if q else ()), ONE_POLY)

    @classmethod
    def monomial(cls, coeff, k: int):
        """coeff * t^k for any integer k."""
        coeff = rational(coeff)
        if not coeff:
            return cls._raw(Polynomial._raw(()), ONE_POLY)
        if k >= 0:
            return cls._raw(Polynomial.monomial(coeff, k), ONE_POLY)
        return cls._raw(Polynomial._raw((coeff,)), Polynomial.monomial(1, -k))

    def __repr__(self):
        return "RatFunc(%s, %s)" % (
            [format_rational(x) for x in self.num.c],
            [format_rational(x) for x in self.den.c],
        )

    def __str__(self):
        def show(p):
            terms = []
            for i, x in enumerate(p.c):
                if x:
                    terms.append(format_rational(x) + ("" if i == 0 else "*t" if i == 1 else "*t^%d" % i))
            return " + ".join(terms) or "0"
        if self.den.c == ONE_POLY.c:
            return show(self.num)
        return "(%s)/(%s)" % (show(self.num), show(self.den))

    def __bool__(self):
        return bool(self.num)

    def is_const(self) -> bool:
        return self.den.c == ONE_POLY.c and len(self.num.c) <= 1

    def const_value(self) -> Fraction:
        return self.num.c[0] if self.num.c else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num.c == other.num.c and self.den.c == other.den.c
        if isinstance(other, (int, Fraction)):
            return self.is_const() and self.const_value() == other
        return NotImplemented

    def __hash__(self):
        if self.is_const():
            return hash(self.const_value())
        return hash((self.num.c, self.den.c))

    def __add__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        if self.den.c == o.den.c:
            return _make(self.num + o.num, self.den)
        return _make(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFunc._raw(self.num.scale(Fraction(other)), self.den)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return _make(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero("inverse of zero")
        return _make(self.den, self.num)

    def __truediv__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = RatFunc.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out


def _lift(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction)):
        return RatFunc.const(x)
    return None


def _reduce(num: Polynomial, den: Polynomial):
    if not num:
        return Polynomial._raw(()), ONE_POLY
    if den.degree == 0:
        return num.scale(1 / den.lead), ONE_POLY
    if den.is_monomial():
        k = min(num.order(), den.degree)
        lc = den.lead
        return num.shift(-k).scale(1 / lc), Polynomial.monomial(1, den.degree - k)
    if num.degree == 0 or num.is_monomial():
        k = min(num.order(), den.order())
        num, den = num.shift(-k), den.shift(-k)
        lc = den.lead
        return num.scale(1 / lc), den.scale(1 / lc)
    g = poly_gcd(num, den)
    if g.degree > 0:
        num = num.divmod(g)[0]
        den = den.divmod(g)[0]
    lc = den.lead
    return num.scale(1 / lc), den.scale(1 / lc)


def _make(num, den):
    if not den:
        raise DivisionByZero("zero denominator")
    n, d = _reduce(num, den)
    return RatFunc._raw(n, d)


T = RatFunc.monomial(1, 1)


def as_ratfunc(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    return RatFunc.const(x)


def is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, RatFunc))


def arith(a, b, op: str):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise DivisionByZero("division by zero")
        if isinstance(a, RatFunc) or isinstance(b, RatFunc):
            return as_ratfunc(a) / as_ratfunc(b)
        return Fraction(a) / Fraction(b)
    raise ValueError("unknown op " + op)


def valuation_at_zero(f):
    f = as_ratfunc(f)
    if not f.num:
        return INF
    return f.num.order() - f.den.order()


def limit_at_zero(f) -> Fraction:
    f = as_ratfunc(f)
    v = valuation_at_zero(f)
    if v == INF or v > 0:
        return Fraction(0)
    if v < 0:
        raise NoLimit("valuation %d < 0" % v)
    return f.num.c[f.num.order()] / f.den.c[f.den.order()]


def evaluate(f, t0) -> Fraction:
    if isinstance(f, (int, Fraction)):
        return Fraction(f)
    t0 = rational(t0)
    d = f.den(t0)
    if not d:
        raise PoleAtPoint("pole at t = %s" % format_rational(t0))
    return f.num(t0) / d


def simplify(x):
    """Collapse a constant RatFunc to a Fraction."""
    if isinstance(x, RatFunc) and x.is_const():
        return x.const_value()
    if isinstance(x, int):
        return Fraction(x)
    return x


# text encodings

def to_text(x):
    if isinstance(x, RatFunc):
        return {
            "num": [format_rational(c) for c in x.num.c],
            "den": [format_rational(c) for c in x.den.c],
        }
    return format_rational(Fraction(x))


def from_text(obj):
    if isinstance(obj, dict):
        return RatFunc(Polynomial(obj["num"]), Polynomial(obj["den"]))
    if isinstance(obj, list):
        return RatFunc(Polynomial(obj))
    return rational(obj)


def is_canonical_text(obj) -> bool:
    """True iff obj already is the canonical encoding of its value."""
    try:
        return to_text(from_text(obj)) == obj
    except (ValueError, ZeroDivisionError, KeyError, TypeError):
        return False
