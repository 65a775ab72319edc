"""Exact scalar arithmetic: rationals, Gaussian rationals and real quadratic extensions.

Rationals are plain ``fractions.Fraction`` values (always reduced, positive
denominator).  ``GRat`` is the Gaussian-rational field Q(i); ``QuadExt``
represents a + b*sqrt(d) for a fixed square-free d > 0.  The two extension
types interoperate with ``Fraction``/``int`` but never with each other unless
the GRat value is real.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

Rat = Fraction


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return None


@dataclass(frozen=True)
class GRat:
    """Gaussian rational re + im*i with exact Fraction parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    # -- constructors -------------------------------------------------
    @staticmethod
    def of(x) -> "GRat":
        if isinstance(x, GRat):
            return x
        f = _as_fraction(x)
        if f is None:
            raise TypeError(f"cannot coerce {x!r} to GRat")
        return GRat(f)

    # -- predicates ----------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def sign(self) -> int:
        """Sign of a real value; raises on non-real input."""
        if self.im != 0:
            raise ValueError(f"sign of non-real value {self}")
        return (self.re > 0) - (self.re < 0)

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        o = GRat.of(other) if not isinstance(other, GRat) else other
        return GRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GRat(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-(GRat.of(other)))

    def __rsub__(self, other):
        return GRat.of(other) + (-self)

    def __mul__(self, other):
        o = GRat.of(other) if not isinstance(other, GRat) else other
        return GRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self) -> "GRat":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("division by zero GRat")
        return GRat(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = GRat.of(other) if not isinstance(other, GRat) else other
        return self * o.inverse()

    def __rtruediv__(self, other):
        return GRat.of(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = GRat(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "GRat":
        return GRat(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GRat.of(other)
        if not isinstance(other, GRat):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    # -- formatting ----------------------------------------------------
    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"GRat({self})"


ZERO = GRat(0)
ONE = GRat(1)
I = GRat(0, 1)


def format_scalar(v) -> str:
    """Canonical text for a scalar (GRat, QuadExt, Fraction or int)."""
    if isinstance(v, QuadExt):
        return str(v)
    if isinstance(v, (int, Fraction)):
        v = GRat.of(v)
    re, im = v.re, v.im
    if im == 0:
        return str(re)
    if re == 0:
        if im == 1:
            return "i"
        if im == -1:
            return "-i"
        return f"{im}*i"
    ims = "i" if im == 1 else ("-i" if im == -1 else f"{im}*i")
    if im > 0:
        return f"({re}+{ims})" if not ims.startswith("-") else f"({re}{ims})"
    return f"({re}{ims})"


def _sqrt_exact(n: int):
    r = isqrt(n)
    return r if r * r == n else None


@dataclass(frozen=True)
class QuadExt:
    """Real quadratic irrationality a + b*sqrt(d), d square-free positive."""

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.d <= 0:
            raise ValueError("radicand must be positive")

    @staticmethod
    def of(x, d: int) -> "QuadExt":
        if isinstance(x, QuadExt):
            if x.d != d and x.b != 0:
                raise ValueError("mixing distinct radicands")
            return QuadExt(x.a, x.b, d)
        if isinstance(x, GRat):
            if not x.is_real:
                raise ValueError("cannot embed non-real GRat into a real quadratic field")
            return QuadExt(x.re, Fraction(0), d)
        f = _as_fraction(x)
        if f is None:
            raise TypeError(f"cannot coerce {x!r} into Q(sqrt({d}))")
        return QuadExt(f, Fraction(0), d)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    @property
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def _coerce(self, other) -> "QuadExt":
        return QuadExt.of(other, self.d)

    def __add__(self, other):
        o = self._coerce(other)
        return QuadExt(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        return QuadExt(self.a * o.a + self.b * o.b * self.d, self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        n = self.a * self.a - self.b * self.b * self.d
        if n == 0:
            if self.is_zero:
                raise ZeroDivisionError("division by zero QuadExt")
            raise ValueError("radicand is a perfect square; element not invertible this way")
        return QuadExt(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def conjugate(self) -> "QuadExt":
        """Complex conjugation; real values are fixed."""
        return self

    def galois_conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.d)

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(d)."""
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        if self.a == 0:
            return 1 if self.b > 0 else -1
        if self.a > 0 and self.b > 0:
            return 1
        if self.a < 0 and self.b < 0:
            return -1
        # mixed signs: compare a^2 with b^2 d
        lhs, rhs = self.a * self.a, self.b * self.b * self.d
        if lhs == rhs:
            return 0
        dominant_a = lhs > rhs
        return (1 if self.a > 0 else -1) if dominant_a else (1 if self.b > 0 else -1)

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(GRat(self.a))
        return hash((self.a, self.b, self.d))

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        bs = "" if abs(self.b) == 1 else f"{abs(self.b)}*"
        core = f"{bs}sqrt({self.d})"
        if self.a == 0:
            return core if self.b > 0 else f"-{core}"
        op = "+" if self.b > 0 else "-"
        return f"({self.a}{op}{core})"

    def __repr__(self):
        return f"QuadExt({self})"


# ---------------------------------------------------------------------------
# Generic helpers over the scalar union GRat | QuadExt.


def conj(v):
    """Complex conjugation over the scalar union."""
    if isinstance(v, (GRat, QuadExt)):
        return v.conjugate()
    return v


def is_zero(v) -> bool:
    if isinstance(v, (GRat, QuadExt)):
        return v.is_zero
    return v == 0


def is_negative_real(v) -> bool:
    """Exact check that a scalar is real and < 0."""
    if isinstance(v, GRat):
        return v.is_real and v.re < 0
    if isinstance(v, QuadExt):
        return v.sign() < 0
    return v < 0


def is_positive_rational(v) -> bool:
    """Membership in Q_+ (used by the simple-singularity rule)."""
    if isinstance(v, GRat):
        return v.is_real and v.re > 0
    if isinstance(v, QuadExt):
        return v.is_rational and v.a > 0
    return v > 0


def reciprocal(v):
    if isinstance(v, (GRat, QuadExt)):
        return v.inverse()
    return 1 / Fraction(v)


def as_grat_or_none(v):
    """Collapse a scalar to GRat when it is representable there."""
    if isinstance(v, GRat):
        return v
    if isinstance(v, QuadExt):
        return GRat(v.a) if v.b == 0 else None
    f = _as_fraction(v)
    return None if f is None else GRat(f)
