"""Exact scalars: Gaussian rationals and truncated polynomials.

``GaussQ`` is the field QQ(i) with exact rational real and imaginary parts;
equality is exact, there is no floating-point mode.  ``TruncScalar`` is an
element of the truncated polynomial ring R_d = QQ(i)[eps]/(eps^d), stored as
the list of its d coefficients.  A truncated scalar is a unit exactly when
its constant coefficient is nonzero.

Arithmetic never coerces across truncation orders: combining values of
different order d raises ``MismatchedOrder``.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction

try:  # GMP-backed rationals when available; plain Fractions otherwise
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

from .errors import MismatchedOrder, NotAUnit, NotDivisible

_FRAC = r"-?\d+(?:/\d+)?"
_GQ_RE = _re.compile(rf"^({_FRAC})(?:\s*([+-])\s*({_FRAC})i)?$")

_RAT_ZERO = _Q(0)


class GaussQ:
    """A Gaussian rational a + b*i with exact rational components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if type(re) is not type(_RAT_ZERO):
            re = _Q(re)
        if type(im) is not type(_RAT_ZERO):
            im = _Q(im)
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    def __setattr__(self, name, value):
        raise AttributeError("GaussQ is immutable")

    # arithmetic; the imaginary parts are usually zero, so short-circuit them

    def __add__(self, other):
        other = _coerce(other)
        return GaussQ(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return GaussQ(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if not self.im and not other.im:
            return GaussQ(self.re * other.re)
        return GaussQ(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if not self.im and not other.im:
            if not other.re:
                raise ZeroDivisionError("division by zero GaussQ")
            return GaussQ(self.re / other.re)
        n = other.re * other.re + other.im * other.im
        if not n:
            raise ZeroDivisionError("division by zero GaussQ")
        return GaussQ(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussQ(other)
        if not isinstance(other, GaussQ):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    # text form ---------------------------------------------------------------

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __repr__(self):
        return f"GaussQ({self.re!r}, {self.im!r})"

    @staticmethod
    def parse(text: str) -> "GaussQ":
        """Parse "a/b" or "a/b+c/di" (also with '-' before the imaginary part)."""
        m = _GQ_RE.match(text.strip())
        if m is None:
            raise ValueError(f"not a GaussQ literal: {text!r}")
        re_part = _Q(Fraction(m.group(1)))
        if m.group(3) is None:
            return GaussQ(re_part)
        im_part = _Q(Fraction(m.group(3)))
        if m.group(2) == "-":
            im_part = -im_part
        return GaussQ(re_part, im_part)


def _coerce(x) -> GaussQ:
    if isinstance(x, GaussQ):
        return x
    if isinstance(x, (int, Fraction, type(_RAT_ZERO))):
        return GaussQ(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to GaussQ")


GQ_ZERO = GaussQ(0)
GQ_ONE = GaussQ(1)


class TruncScalar:
    """Element of R_d = QQ(i)[eps]/(eps^d); coeffs[k] multiplies eps^k."""

    __slots__ = ("d", "coeffs")

    def __init__(self, d, coeffs=()):
        if d < 1:
            raise ValueError("truncation order must be positive")
        cs = [_coerce(c) for c in coeffs]
        if len(cs) > d:
            raise ValueError(f"{len(cs)} coefficients exceed order {d}")
        cs.extend([GQ_ZERO] * (d - len(cs)))
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("TruncScalar is immutable")

    @staticmethod
    def const(d, value) -> "TruncScalar":
        return TruncScalar(d, [value])

    @staticmethod
    def eps(d, power=1) -> "TruncScalar":
        """The monomial eps^power in R_d (zero once power >= d)."""
        if power >= d:
            return TruncScalar(d)
        cs = [GQ_ZERO] * d
        cs[power] = GQ_ONE
        return TruncScalar(d, cs)

    # ring structure -----------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, TruncScalar):
            raise TypeError("expected a TruncScalar")
        if self.d != other.d:
            raise MismatchedOrder(f"orders differ: {self.d} vs {other.d}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, GaussQ)):
            other = TruncScalar.const(self.d, other)
        self._check(other)
        return TruncScalar(self.d, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, GaussQ)):
            other = TruncScalar.const(self.d, other)
        self._check(other)
        return TruncScalar(self.d, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return TruncScalar(self.d, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussQ)):
            return TruncScalar(self.d, [a * other for a in self.coeffs])
        return trunc_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussQ)):
            return TruncScalar(self.d, [a * other for a in self.coeffs])
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, TruncScalar):
            return NotImplemented
        return self.d == other.d and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.d, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def is_unit(self) -> bool:
        return bool(self.coeffs[0])

    def constant_term(self) -> GaussQ:
        return self.coeffs[0]

    def __str__(self):
        return "[" + ", ".join(str(c) for c in self.coeffs) + "]"

    def __repr__(self):
        return f"TruncScalar({self.d}, {[str(c) for c in self.coeffs]})"


def trunc_mul(a: TruncScalar, b: TruncScalar) -> TruncScalar:
    """Product in R_d: coefficient convolution truncated at degree d."""
    a._check(b)
    d = a.d
    out = [GQ_ZERO] * d
    for i, ca in enumerate(a.coeffs):
        if not ca:
            continue
        for j in range(d - i):
            cb = b.coeffs[j]
            if cb:
                out[i + j] = out[i + j] + ca * cb
    return TruncScalar(d, out)


def trunc_inv(a: TruncScalar) -> TruncScalar:
    """Multiplicative inverse of a unit of R_d.

    Coefficients are recovered degree by degree from a*x = 1.
    """
    if not a.is_unit():
        raise NotAUnit("constant term is zero")
    d = a.d
    inv0 = GQ_ONE / a.coeffs[0]
    out = [inv0] + [GQ_ZERO] * (d - 1)
    for k in range(1, d):
        acc = GQ_ZERO
        for j in range(1, k + 1):
            acc = acc + a.coeffs[j] * out[k - j]
        out[k] = -acc * inv0
    return TruncScalar(d, out)


def residue_pair(f: TruncScalar, g: TruncScalar) -> GaussQ:
    """Pairing <f,g>_d: the eps^(d-1) coefficient of f*g."""
    f._check(g)
    d = f.d
    acc = GQ_ZERO
    for k in range(d):
        acc = acc + f.coeffs[k] * g.coeffs[d - 1 - k]
    return acc


def embed_subring(a: TruncScalar, d: int) -> TruncScalar:
    """Image of a in R_d under eps_c -> eps_d^(d/c), for c dividing d."""
    c = a.d
    if d % c != 0:
        raise NotDivisible(f"{c} does not divide {d}")
    step = d // c
    out = [GQ_ZERO] * d
    for k, coeff in enumerate(a.coeffs):
        out[k * step] = coeff
    return TruncScalar(d, out)
