"""Exact Laurent polynomials in one variable over the rationals.

A :class:`LaurentPoly` is stored as a lowest exponent plus a dense tuple of
:class:`fractions.Fraction` coefficients whose first and last entries are
nonzero.  The zero polynomial has an empty coefficient tuple.

The ring ``Q[y, 1/y]`` is Euclidean with respect to the *span*
(highest exponent minus lowest exponent); :meth:`LaurentPoly.divmod`
implements that division.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["LaurentPoly", "laurent_divmod"]


def _strip(low, coeffs):
    """Drop zero coefficients from both ends."""
    start = 0
    end = len(coeffs)
    while start < end and not coeffs[start]:
        start += 1
    while end > start and not coeffs[end - 1]:
        end -= 1
    if start == end:
        return 0, ()
    return low + start, tuple(coeffs[start:end])


class LaurentPoly:
    """Element of ``Q[v, 1/v]`` for a named variable ``v``."""

    __slots__ = ("low", "coeffs", "var", "_hash")

    def __init__(self, terms=None, var="y"):
        self.var = var
        self._hash = None
        if not terms:
            self.low, self.coeffs = 0, ()
            return
        lo = min(terms)
        hi = max(terms)
        dense = [Fraction(0)] * (hi - lo + 1)
        for e, c in terms.items():
            dense[e - lo] += Fraction(c)
        self.low, self.coeffs = _strip(lo, dense)

    @classmethod
    def _raw(cls, low, coeffs, var):
        obj = cls.__new__(cls)
        obj.var = var
        obj._hash = None
        obj.low, obj.coeffs = _strip(low, coeffs)
        return obj

    @classmethod
    def constant(cls, c, var="y"):
        return cls._raw(0, (Fraction(c),), var)

    @classmethod
    def monomial(cls, exponent, coeff=1, var="y"):
        return cls._raw(exponent, (Fraction(coeff),), var)

    @classmethod
    def gen(cls, var="y"):
        return cls.monomial(1, 1, var)

    # -- inspection -----------------------------------------------------

    @property
    def high(self):
        return self.low + len(self.coeffs) - 1

    def span(self):
        """Euclidean norm: ``high - low``; ``-1`` for zero."""
        return len(self.coeffs) - 1

    def terms(self):
        return {self.low + k: c for k, c in enumerate(self.coeffs) if c}

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return self.low == 0 and len(self.coeffs) == 1

    def is_unit(self):
        return len(self.coeffs) == 1

    def leading(self):
        return self.coeffs[-1]

    def __bool__(self):
        return bool(self.coeffs)

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.var != self.var and other.coeffs and self.coeffs:
                if not (other.is_constant() or self.is_constant()):
                    raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        if isinstance(other, (int, Rational)):
            return LaurentPoly._raw(0, (Fraction(other),), self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.coeffs:
            return self
        if not self.coeffs:
            return LaurentPoly._raw(other.low, other.coeffs, self.var)
        lo = min(self.low, other.low)
        hi = max(self.high, other.high)
        out = [Fraction(0)] * (hi - lo + 1)
        for k, c in enumerate(self.coeffs):
            out[self.low - lo + k] = c
        off = other.low - lo
        for k, c in enumerate(other.coeffs):
            out[off + k] += c
        return LaurentPoly._raw(lo, out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.low, tuple(-c for c in self.coeffs), self.var)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return LaurentPoly._raw(0, (), self.var)
        if len(b) == 1:
            c = b[0]
            return LaurentPoly._raw(self.low + other.low, tuple(x * c for x in a), self.var)
        if len(a) == 1:
            c = a[0]
            return LaurentPoly._raw(self.low + other.low, tuple(c * x for x in b), self.var)
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, z in enumerate(b):
                if z:
                    out[i + j] += x * z
        return LaurentPoly._raw(self.low + other.low, out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_unit():
                raise ZeroDivisionError("negative power of a non-unit")
            return LaurentPoly._raw(self.low * k, (self.coeffs[0] ** k,), self.var)
        result = LaurentPoly._raw(0, (Fraction(1),), self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def unit_inverse(self):
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit")
        return LaurentPoly._raw(-self.low, (1 / self.coeffs[0],), self.var)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divmod(self, other):
        """Euclidean division: ``self = q*other + r`` with ``span(r) < span(other)``."""
        other = self._coerce(other)
        b = other.coeffs
        if not b:
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        var = self.var
        a = self.coeffs
        if not a:
            zero = LaurentPoly._raw(0, (), var)
            return zero, zero
        db = len(b) - 1
        if len(b) == 1:
            inv = 1 / b[0]
            q = LaurentPoly._raw(self.low - other.low, tuple(c * inv for c in a), var)
            return q, LaurentPoly._raw(0, (), var)
        # polynomial long division of the shifted coefficient lists
        rem = list(a)
        da = len(a) - 1
        if da < db:
            return LaurentPoly._raw(0, (), var), self
        lead_inv = 1 / b[-1]
        quot = [Fraction(0)] * (da - db + 1)
        for k in range(da - db, -1, -1):
            c = rem[k + db]
            if c:
                c = c * lead_inv
                quot[k] = c
                for j in range(db + 1):
                    if b[j]:
                        rem[k + j] -= c * b[j]
        q = LaurentPoly._raw(self.low - other.low, quot, var)
        r = LaurentPoly._raw(self.low, rem[:db], var)
        return q, r

    def __divmod__(self, other):
        return self.divmod(other)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    # -- normal forms ---------------------------------------------------

    def canonical(self):
        """Return ``(assoc, unit)`` with ``assoc == unit * self``.

        ``assoc`` has lowest exponent 0 and leading coefficient 1.
        """
        if not self.coeffs:
            raise ValueError("zero has no canonical associate")
        lead = self.coeffs[-1]
        unit = LaurentPoly._raw(-self.low, (1 / lead,), self.var)
        assoc = LaurentPoly._raw(0, tuple(c / lead for c in self.coeffs), self.var)
        return assoc, unit

    def canonical_associate(self):
        return self.canonical()[0]

    def sort_key(self):
        return (self.span(), self.low, self.coeffs)

    # -- substitution ---------------------------------------------------

    def evaluate(self, value):
        """Evaluate at ``value`` (any object supporting ``*``, ``+`` and ``**``)."""
        total = 0
        for e, c in self.terms().items():
            total = total + c * value**e
        return total

    # -- comparison and display -----------------------------------------

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.low == other.low and self.coeffs == other.coeffs
        if isinstance(other, (int, Rational)):
            if not other:
                return not self.coeffs
            return self.low == 0 and self.coeffs == (Fraction(other),)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.low == 0 and len(self.coeffs) <= 1:
                self._hash = hash(self.coeffs[0] if self.coeffs else 0)
            else:
                self._hash = hash((self.low, self.coeffs))
        return self._hash

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in range(self.high, self.low - 1, -1):
            c = self.coeffs[e - self.low]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if e == 0:
                body = str(mag)
            else:
                mono = self.var if e == 1 else f"{self.var}^{e}"
                if mag == 1:
                    body = mono
                else:
                    body = f"{mag}*{mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"LaurentPoly({str(self)!r}, var={self.var!r})"


def laurent_divmod(a, b):
    """Euclidean division in ``Q[v, 1/v]``; see :meth:`LaurentPoly.divmod`."""
    return a.divmod(b)
