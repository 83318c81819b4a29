"""Coefficient rings.

Ring elements are plain Python objects with arithmetic operators:
``int`` for the integers, :class:`~fractions.Fraction` for the rationals,
:class:`ModInt` for prime fields and :class:`~ybhomology.laurent.LaurentPoly`
for ``Q[y, 1/y]`` and ``Q[q, 1/q]``.  A :class:`Ring` object supplies
everything operators cannot express: Euclidean division, norms, units,
canonical associates, parsing and formatting.

Rings are identified by the short codes used in the JSON interchange formats:
``"Z"``, ``"Q"``, ``"Qy"``, ``"Qq"`` and ``"Fp:<p>"``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .laurent import LaurentPoly

__all__ = [
    "Ring",
    "ModInt",
    "RationalFunction",
    "FractionField",
    "ZZ",
    "QQ",
    "QY",
    "QQ_Q",
    "GF",
    "ring_from_code",
    "parse_expression",
    "UnsupportedRingError",
]


class UnsupportedRingError(ValueError):
    pass


class ModInt:
    """Residue class modulo a prime ``p``."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.p = p
        self.v = v % p

    def _val(self, other):
        if isinstance(other, ModInt):
            if other.p != self.p:
                raise ValueError("modulus mismatch")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return None

    def __add__(self, other):
        o = self._val(other)
        return NotImplemented if o is None else ModInt(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._val(other)
        return NotImplemented if o is None else ModInt(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._val(other)
        return NotImplemented if o is None else ModInt(o - self.v, self.p)

    def __mul__(self, other):
        o = self._val(other)
        return NotImplemented if o is None else ModInt(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModInt(-self.v, self.p)

    def inverse(self):
        return ModInt(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._val(other)
        if o is None:
            return NotImplemented
        return ModInt(self.v * pow(o, -1, self.p), self.p)

    def __pow__(self, k):
        return ModInt(pow(self.v, k, self.p), self.p)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        o = self._val(other)
        if o is None:
            return NotImplemented
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"ModInt({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class RationalFunction:
    """Quotient ``num/den`` of Laurent polynomials; an element of ``Q(v)``.

    Kept unreduced; equality is decided by cross multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, LaurentPoly):
            raise TypeError("numerator must be a LaurentPoly")
        if den is None:
            den = LaurentPoly.constant(1, num.var)
        if not den:
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = num, den

    def _lift(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, LaurentPoly):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction)):
            return RationalFunction(LaurentPoly.constant(other, self.num.var))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k):
        if k < 0:
            return RationalFunction(self.den ** (-k), self.num ** (-k)) if self.num else 1 / self
        return RationalFunction(self.num**k, self.den**k)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        # only equal-by-representation objects hash alike; fine for dict keys of reduced forms
        return hash((self.num, self.den))

    def __str__(self):
        return f"({self.num})/({self.den})"

    __repr__ = __str__


# ---------------------------------------------------------------------------
# rings


class Ring:
    """Base class of ring descriptors."""

    code = "?"
    euclidean = True
    is_field = False

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def coerce(self, x):
        raise NotImplementedError

    def norm(self, a):
        """Euclidean norm of a nonzero element; units have norm 0."""
        raise NotImplementedError

    def divmod(self, a, b):
        raise NotImplementedError

    def is_unit(self, a):
        raise NotImplementedError

    def canonical(self, a):
        """Return ``(assoc, unit)`` with ``assoc == unit * a``."""
        raise NotImplementedError

    def unit_inverse(self, u):
        raise NotImplementedError

    def sort_key(self, a):
        raise NotImplementedError

    def format(self, a):
        return str(a)

    def exact_div(self, a, b):
        q, r = self.divmod(a, b)
        if r:
            raise ArithmeticError(f"{self.format(b)} does not divide {self.format(a)}")
        return q

    def canonical_associate(self, a):
        if not a:
            raise ValueError("zero has no canonical associate")
        return self.canonical(a)[0]

    def xgcd(self, a, b):
        """``(g, s, t)`` with ``g = s*a + t*b`` a gcd of ``a`` and ``b``."""
        r0, r1 = a, b
        s0, s1 = self.one(), self.zero()
        t0, t1 = self.zero(), self.one()
        while r1:
            q, r = self.divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        return r0, s0, t0

    def primitive_unit(self, values):
        """A unit that tidies a row of elements, or ``None`` when nothing helps.

        Used by elimination to keep coefficient growth in check.
        """
        return None

    def parse(self, text):
        return self.coerce(parse_expression(str(text), self._parse_var()))

    def _parse_var(self):
        return None

    def __eq__(self, other):
        return isinstance(other, Ring) and self.code == other.code

    def __hash__(self):
        return hash(self.code)

    def __repr__(self):
        return f"Ring({self.code!r})"

    def __reduce__(self):
        return (ring_from_code, (self.code,))


class IntegerRing(Ring):
    code = "Z"

    def zero(self):
        return 0

    def one(self):
        return 1

    def coerce(self, x):
        if isinstance(x, LaurentPoly):
            if not x:
                return 0
            if not x.is_constant() or x.coeffs[0].denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return int(x.coeffs[0])
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return int(x)
        if isinstance(x, int):
            return x
        raise TypeError(f"cannot coerce {x!r} to Z")

    def norm(self, a):
        return abs(a) - 1

    def divmod(self, a, b):
        if b == 0:
            raise ZeroDivisionError("integer division by zero")
        return divmod(a, b)

    def is_unit(self, a):
        return a == 1 or a == -1

    def canonical(self, a):
        return (a, 1) if a > 0 else (-a, -1)

    def unit_inverse(self, u):
        return u

    def sort_key(self, a):
        return a


class _Field(Ring):
    is_field = True

    def norm(self, a):
        return 0

    def is_unit(self, a):
        return bool(a)

    def divmod(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero")
        return a / b, self.zero()

    def canonical(self, a):
        inv = self.unit_inverse(a)
        return self.one(), inv

    def unit_inverse(self, u):
        return self.one() / u


class RationalField(_Field):
    code = "Q"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def coerce(self, x):
        if isinstance(x, LaurentPoly):
            if not x:
                return Fraction(0)
            if not x.is_constant():
                raise ValueError(f"{x} is not a rational constant")
            return x.coeffs[0]
        return Fraction(x)

    def sort_key(self, a):
        return a


class PrimeField(_Field):
    def __init__(self, p):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise UnsupportedRingError(f"Fp requires p prime, got {p}")
        self.p = p
        self.code = f"Fp:{p}"

    def zero(self):
        return ModInt(0, self.p)

    def one(self):
        return ModInt(1, self.p)

    def coerce(self, x):
        if isinstance(x, ModInt):
            return ModInt(x.v, self.p)
        if isinstance(x, LaurentPoly):
            if not x:
                return self.zero()
            if not x.is_constant():
                raise ValueError(f"{x} is not a constant")
            x = x.coeffs[0]
        x = Fraction(x)
        return ModInt(x.numerator * pow(x.denominator, -1, self.p), self.p)

    def unit_inverse(self, u):
        return u.inverse()

    def sort_key(self, a):
        return a.v


class LaurentRing(Ring):
    """``Q[v, 1/v]``; Euclidean for the span norm."""

    def __init__(self, var):
        self.var = var
        self.code = "Qy" if var == "y" else "Qq"

    def zero(self):
        return LaurentPoly(var=self.var)

    def one(self):
        return LaurentPoly.constant(1, self.var)

    def gen(self):
        return LaurentPoly.gen(self.var)

    def coerce(self, x):
        if isinstance(x, LaurentPoly):
            if x.var != self.var and x.coeffs and not x.is_constant():
                raise ValueError(f"{x} is not in Q[{self.var}^(+-1)]")
            return LaurentPoly._raw(x.low, x.coeffs, self.var)
        if isinstance(x, ModInt):
            raise TypeError("cannot coerce a residue class into a Laurent ring")
        return LaurentPoly.constant(Fraction(x), self.var)

    def norm(self, a):
        return len(a.coeffs) - 1

    def divmod(self, a, b):
        return a.divmod(b)

    def is_unit(self, a):
        return len(a.coeffs) == 1

    def canonical(self, a):
        return a.canonical()

    def unit_inverse(self, u):
        return u.unit_inverse()

    def sort_key(self, a):
        assoc = a
        return (assoc.span(), assoc.low, assoc.coeffs)

    def primitive_unit(self, values):
        """``c * v^k`` making the row integral with content 1 and lowest exponent 0."""
        den = 1
        num = 0
        low = None
        for a in values:
            if not a.coeffs:
                continue
            low = a.low if low is None else min(low, a.low)
            for c in a.coeffs:
                den = math.lcm(den, c.denominator)
        if low is None:
            return None
        for a in values:
            for c in a.coeffs:
                num = math.gcd(num, c.numerator * (den // c.denominator))
        if den == 1 and num == 1 and low == 0:
            return None
        return LaurentPoly._raw(-low, (Fraction(den, num),), self.var)

    def _parse_var(self):
        return self.var


class FractionField(Ring):
    """Fraction field ``Q(v)`` of a Laurent ring; only used for exact comparisons."""

    euclidean = False
    is_field = True

    def __init__(self, base):
        self.base = base
        self.var = base.var
        self.code = f"Frac({base.code})"

    def zero(self):
        return RationalFunction(self.base.zero())

    def one(self):
        return RationalFunction(self.base.one())

    def coerce(self, x):
        if isinstance(x, RationalFunction):
            return x
        return RationalFunction(self.base.coerce(x))

    def is_unit(self, a):
        return bool(a)

    def norm(self, a):
        return 0

    def divmod(self, a, b):
        return a / b, self.zero()

    def unit_inverse(self, u):
        return 1 / u

    def canonical(self, a):
        return self.one(), 1 / a

    def sort_key(self, a):
        return str(a)

    def __reduce__(self):
        return (FractionField, (self.base,))


ZZ = IntegerRing()
QQ = RationalField()
QY = LaurentRing("y")
QQ_Q = LaurentRing("q")


def GF(p):
    return PrimeField(p)


def ring_from_code(code):
    """Parse a ring code such as ``"Z"``, ``"Qy"`` or ``"Fp:7"``."""
    code = str(code).strip()
    if code == "Z":
        return ZZ
    if code == "Q":
        return QQ
    if code == "Qy":
        return QY
    if code == "Qq":
        return QQ_Q
    if code.startswith("Fp:"):
        try:
            p = int(code[3:])
        except ValueError:
            raise UnsupportedRingError(f"bad prime in ring code {code!r}") from None
        return PrimeField(p)
    raise UnsupportedRingError(f"unknown ring code {code!r}")


# ---------------------------------------------------------------------------
# coefficient expressions

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]\w*)|(\S))")


def _tokenize(text):
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        num, name, sym = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            tokens.append(("name", name))
        else:
            tokens.append(("sym", sym))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text, var):
        self.tokens = _tokenize(text)
        self.i = 0
        if var is None:
            names = [v for k, v in self.tokens if k == "name" and v in ("y", "q")]
            var = names[0] if names else "y"
        self.var = var

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ValueError(f"unexpected token {tok[1]!r} in coefficient expression")
        self.i += 1
        return tok

    def expr(self):
        sign = 1
        if self.peek() in (("sym", "-"), ("sym", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        value = self.term()
        if sign < 0:
            value = -value
        while self.peek() in (("sym", "+"), ("sym", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek() in (("sym", "*"), ("sym", "/")):
            op = self.take()[1]
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if not rhs.is_constant():
                    raise ValueError("division is only allowed by rational constants")
                value = value * LaurentPoly.constant(1 / rhs.coeffs[0], value.var)
        return value

    def factor(self):
        base = self.atom()
        if self.peek() == ("sym", "^"):
            self.take()
            exp_sign = 1
            if self.peek() in (("sym", "-"), ("sym", "+")):
                exp_sign = -1 if self.take()[1] == "-" else 1
            if self.peek() == ("sym", "("):
                self.take()
                e = self.expr()
                self.take("sym", ")")
                if not e.is_constant() or e.coeffs[0].denominator != 1:
                    raise ValueError("exponent must be an integer")
                k = int(e.coeffs[0])
            else:
                k = self.take("num")[1]
            base = base ** (exp_sign * k)
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return LaurentPoly.constant(val, self.var)
        if kind == "name":
            self.take()
            if val not in ("y", "q"):
                raise ValueError(f"unknown symbol {val!r}")
            if val != self.var:
                raise ValueError(f"variable {val!r} not allowed in this ring")
            return LaurentPoly.gen(val)
        if (kind, val) == ("sym", "("):
            self.take()
            v = self.expr()
            self.take("sym", ")")
            return v
        if (kind, val) in (("sym", "-"), ("sym", "+")):
            self.take()
            v = self.factor()
            return -v if val == "-" else v
        raise ValueError(f"unexpected token {val!r} in coefficient expression")


def parse_expression(text, var=None):
    """Parse a coefficient string like ``"1-y^2"`` or ``"q^-1 - q"``.

    Returns a :class:`LaurentPoly`; constants come back as constant
    polynomials.  ``var`` restricts which variable may appear.
    """
    parser = _Parser(text, var)
    if not parser.tokens:
        raise ValueError("empty coefficient expression")
    value = parser.expr()
    if parser.i != len(parser.tokens):
        raise ValueError(f"trailing input in coefficient expression {text!r}")
    return value
