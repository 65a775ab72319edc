"""Exact univariate and sparse bivariate polynomials over Q(i).

``Poly1`` stores coefficients by ascending degree; the zero polynomial has an
empty coefficient tuple and the distinguished degree ``NEG_INFINITY`` (never
an integer).  ``Poly2`` is a sparse map from exponent pairs to nonzero
coefficients.  Coefficients are ``GRat`` in the main pipeline; the same code
also runs over ``QuadExt`` values (field operations only).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from ..errors import DegenerateElimination, ZeroPolynomial
from .scalars import GRat, QuadExt, conj, is_zero


class _NegInf:
    """Degree of the zero polynomial; compares below every integer."""

    def __lt__(self, other):
        return not isinstance(other, _NegInf)

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return isinstance(other, _NegInf)

    def __eq__(self, other):
        return isinstance(other, _NegInf)

    def __hash__(self):
        return hash("NEG_INFINITY")

    def __repr__(self):
        return "NEG_INFINITY"


NEG_INFINITY = _NegInf()


def _coerce_scalar(x):
    if isinstance(x, (GRat, QuadExt)):
        return x
    if isinstance(x, (int, Fraction)):
        return GRat.of(x)
    raise TypeError(f"bad coefficient {x!r}")


class Poly1:
    """Dense univariate polynomial, coefficients indexed by degree."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var="t"):
        cs = [_coerce_scalar(c) for c in coeffs]
        while cs and is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    # -- constructors --------------------------------------------------
    @staticmethod
    def const(c, var="t"):
        return Poly1([c], var=var)

    @staticmethod
    def zero(var="t"):
        return Poly1((), var=var)

    @staticmethod
    def variable(var="t"):
        return Poly1([0, 1], var=var)

    @staticmethod
    def from_roots(roots, var="t"):
        p = Poly1.const(1, var=var)
        for r in roots:
            p = p * Poly1([_coerce_scalar(r) * GRat(-1), 1], var=var)
        return p

    # -- basics ----------------------------------------------------------
    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INFINITY

    def coeff(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return GRat(0)

    @property
    def lead(self):
        if not self.coeffs:
            raise ZeroPolynomial("leading coefficient of zero polynomial")
        return self.coeffs[-1]

    def __eq__(self, other):
        if not isinstance(other, Poly1):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Poly1):
            other = Poly1.const(other, var=self.var)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly1(
            [self.coeff(k) + other.coeff(k) for k in range(n)], var=self.var
        )

    __radd__ = __add__

    def __neg__(self):
        return Poly1([-c for c in self.coeffs], var=self.var)

    def __sub__(self, other):
        if not isinstance(other, Poly1):
            other = Poly1.const(other, var=self.var)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly1):
            other = Poly1.const(other, var=self.var)
        if self.is_zero or other.is_zero:
            return Poly1.zero(var=self.var)
        out = [GRat(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly1(out, var=self.var)

    __rmul__ = __mul__

    def scale(self, c):
        c = _coerce_scalar(c)
        return Poly1([a * c for a in self.coeffs], var=self.var)

    def divmod(self, other):
        """Division with remainder over the coefficient field."""
        if other.is_zero:
            raise ZeroPolynomial("division by zero polynomial")
        q = Poly1.zero(var=self.var)
        r = self
        inv_lead = other.lead.inverse()
        while not r.is_zero and r.degree >= other.degree:
            k = r.degree - other.degree
            c = r.lead * inv_lead
            mono = Poly1([0] * k + [c], var=self.var)
            q = q + mono
            r = r - mono * other
        return q, r

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def divides(self, other) -> bool:
        if self.is_zero:
            return other.is_zero
        return other.divmod(self)[1].is_zero

    def monic(self) -> "Poly1":
        if self.is_zero:
            return self
        return self.scale(self.lead.inverse())

    def derivative(self) -> "Poly1":
        return Poly1(
            [self.coeffs[k] * GRat(k) for k in range(1, len(self.coeffs))],
            var=self.var,
        )

    def eval(self, x):
        x = _coerce_scalar(x)
        out = GRat(0)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def shift(self, a) -> "Poly1":
        """p(t + a)"""
        a = _coerce_scalar(a)
        out = Poly1.zero(var=self.var)
        base = Poly1([a, 1], var=self.var)
        power = Poly1.const(1, var=self.var)
        for c in self.coeffs:
            out = out + power.scale(c)
            power = power * base
        return out

    def reverse(self) -> "Poly1":
        """t^deg * p(1/t)"""
        return Poly1(list(reversed(self.coeffs)), var=self.var)

    def conjugate(self) -> "Poly1":
        return Poly1([conj(c) for c in self.coeffs], var=self.var)

    def is_real(self) -> bool:
        return all(isinstance(c, GRat) and c.is_real for c in self.coeffs)

    def real_fractions(self):
        if not self.is_real():
            raise ValueError("polynomial has non-real coefficients")
        return [c.re for c in self.coeffs]

    def rational_content(self) -> Fraction:
        """Positive rational c with p/c primitive over the Gaussian integers."""
        if self.is_zero:
            return Fraction(1)
        num_gcd = 0
        den_lcm = 1
        for c in self.coeffs:
            if not isinstance(c, GRat):
                return Fraction(1)
            for part in (c.re, c.im):
                if part == 0:
                    continue
                num_gcd = _gcd_int(num_gcd, abs(part.numerator))
                den_lcm = den_lcm * part.denominator // _gcd_int(den_lcm, part.denominator)
        if num_gcd == 0:
            return Fraction(1)
        return Fraction(num_gcd, den_lcm)

    def primitive(self) -> "Poly1":
        c = self.rational_content()
        return self.scale(GRat(1 / c)) if c != 1 else self

    def __str__(self):
        from .grammar import format_poly1

        return format_poly1(self)

    def __repr__(self):
        return f"Poly1({self})"


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def poly_gcd(a: Poly1, b: Poly1) -> Poly1:
    """Monic greatest common divisor by the Euclidean algorithm."""
    if a.is_zero:
        return b.monic()
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def squarefree_part(p: Poly1) -> Poly1:
    """p / gcd(p, p'), monic."""
    if p.is_zero:
        raise ZeroPolynomial("squarefree part of zero polynomial")
    g = poly_gcd(p, p.derivative())
    return (p // g).monic()


def squarefree_decomposition(p: Poly1):
    """Yun's algorithm: list of (squarefree factor, multiplicity)."""
    if p.is_zero:
        raise ZeroPolynomial("decomposition of zero polynomial")
    p = p.monic()
    out = []
    if p.degree == 0:
        return out
    g = poly_gcd(p, p.derivative())
    c = p // g
    d = p.derivative() // g - c.derivative()
    k = 1
    while c.degree > 0:
        a = poly_gcd(c, d)
        if a.degree > 0:
            out.append((a.monic(), k))
        c2 = c // a
        d = d // a - c2.derivative()
        c = c2
        k += 1
    return out


# ---------------------------------------------------------------------------
# Sturm counting.


def _sign_at(fracs, x):
    """Sign of a rational-coefficient polynomial at x in Q or +/-infinity."""
    if x == "+inf":
        return (fracs[-1] > 0) - (fracs[-1] < 0)
    if x == "-inf":
        lead = fracs[-1] if (len(fracs) - 1) % 2 == 0 else -fracs[-1]
        return (lead > 0) - (lead < 0)
    v = Fraction(0)
    for c in reversed(fracs):
        v = v * x + c
    return (v > 0) - (v < 0)


def _variations(signs):
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(p: Poly1, lo="-inf", hi="+inf") -> int:
    """Exact number of distinct real roots of p in the open interval (lo, hi).

    Requires real coefficients; the chain is built on the squarefree part, so
    non-squarefree input is tolerated (distinct roots are counted).
    """
    if p.is_zero:
        raise ZeroPolynomial("Sturm count of zero polynomial")
    q = squarefree_part(p)
    if q.degree == 0:
        return 0
    chain = [q.real_fractions()]
    dq = q.derivative()
    if not dq.is_zero:
        chain.append(dq.real_fractions())
        a, b = q, dq
        while True:
            r = -(a % b)
            if r.is_zero:
                break
            chain.append(r.real_fractions())
            a, b = b, r
    lo_v = lo if isinstance(lo, str) else Fraction(lo)
    hi_v = hi if isinstance(hi, str) else Fraction(hi)
    count = _variations([_sign_at(c, lo_v) for c in chain]) - _variations(
        [_sign_at(c, hi_v) for c in chain]
    )
    # Sturm counts roots in (lo, hi]; open the right end.
    if not isinstance(hi_v, str) and q.eval(hi_v).is_zero:
        count -= 1
    return count


# ---------------------------------------------------------------------------
# Gaussian-rational root extraction.


def _gaussian_divisor_candidates(norm: int):
    """All Gaussian integers whose norm divides ``norm`` (norm > 0)."""
    divisors = set()
    k = 1
    while k * k <= norm:
        if norm % k == 0:
            divisors.add(k)
            divisors.add(norm // k)
        k += 1
    out = set()
    for d in divisors:
        x = 0
        while x * x <= d:
            rem = d - x * x
            y = isqrt(rem)
            if y * y == rem:
                for sx in (x, -x):
                    for sy in (y, -y):
                        out.add((sx, sy))
            x += 1
    out.discard((0, 0))
    return out


def _clear_to_gaussian_integers(p: Poly1):
    den = 1
    for c in p.coeffs:
        for part in (c.re, c.im):
            den = den * part.denominator // _gcd_int(den, part.denominator)
    return [(int(c.re * den), int(c.im * den)) for c in p.coeffs]


_ROOT_NORM_CAP = 10**12


def gaussian_rational_roots(p: Poly1):
    """Roots of p lying in Q(i), with multiplicities, via norm enumeration.

    Returns (roots: dict GRat -> multiplicity, residual: Poly1 monic) where the
    residual collects the factors without Gaussian-rational roots.
    """
    if p.is_zero:
        raise ZeroPolynomial("roots of zero polynomial")
    roots = {}
    residual = Poly1.const(1, var=p.var)
    for factor, mult in squarefree_decomposition(p):
        f = factor
        if f.coeff(0).is_zero:
            roots[GRat(0)] = roots.get(GRat(0), 0) + mult
            f = f // Poly1([0, 1], var=p.var)
        while f.degree >= 1:
            ints = _clear_to_gaussian_integers(f)
            a0 = ints[0]
            an = ints[-1]
            n0 = a0[0] * a0[0] + a0[1] * a0[1]
            n1 = an[0] * an[0] + an[1] * an[1]
            if n0 > _ROOT_NORM_CAP or n1 > _ROOT_NORM_CAP:
                break
            found = None
            for px, py in sorted(_gaussian_divisor_candidates(n0)):
                for qx, qy in sorted(_gaussian_divisor_candidates(n1)):
                    qn = qx * qx + qy * qy
                    cand = GRat(Fraction(px * qx + py * qy, qn), Fraction(py * qx - px * qy, qn))
                    if f.eval(cand).is_zero:
                        found = cand
                        break
                if found is not None:
                    break
            if found is None:
                break
            roots[found] = roots.get(found, 0) + mult
            f = f // Poly1([-found, GRat(1)], var=p.var)
        if f.degree >= 1:
            residual = residual * (f.monic() ** mult if False else _pow(f.monic(), mult))
    return roots, residual


def _pow(p: Poly1, n: int) -> Poly1:
    out = Poly1.const(1, var=p.var)
    for _ in range(n):
        out = out * p
    return out


# ---------------------------------------------------------------------------
# Sparse bivariate polynomials.


class Poly2:
    """Sparse bivariate polynomial: {(i, j): coefficient}, no zero entries."""

    __slots__ = ("terms", "vars")

    def __init__(self, terms=None, vars=("x", "y")):
        tt = {}
        if terms:
            for (i, j), c in (terms.items() if isinstance(terms, dict) else terms):
                c = _coerce_scalar(c)
                if not is_zero(c):
                    key = (int(i), int(j))
                    acc = tt.get(key)
                    c = c if acc is None else acc + c
                    if is_zero(c):
                        tt.pop(key, None)
                    else:
                        tt[key] = c
        self.terms = tt
        self.vars = tuple(vars)

    # -- constructors --------------------------------------------------
    @staticmethod
    def zero(vars=("x", "y")):
        return Poly2({}, vars=vars)

    @staticmethod
    def const(c, vars=("x", "y")):
        return Poly2({(0, 0): c}, vars=vars)

    @staticmethod
    def var_x(vars=("x", "y")):
        return Poly2({(1, 0): 1}, vars=vars)

    @staticmethod
    def var_y(vars=("x", "y")):
        return Poly2({(0, 1): 1}, vars=vars)

    # -- basics ----------------------------------------------------------
    @property
    def is_zero(self):
        return not self.terms

    def coeff(self, i, j):
        return self.terms.get((i, j), GRat(0))

    @property
    def total_degree(self):
        if not self.terms:
            return NEG_INFINITY
        return max(i + j for i, j in self.terms)

    @property
    def order(self):
        """Minimal total degree of a nonzero term (the local vanishing order)."""
        if not self.terms:
            return NEG_INFINITY
        return min(i + j for i, j in self.terms)

    def degree_in(self, axis: int):
        if not self.terms:
            return NEG_INFINITY
        return max(k[axis] for k in self.terms)

    def __eq__(self, other):
        if not isinstance(other, Poly2):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Poly2):
            other = Poly2.const(other, vars=self.vars)
        tt = dict(self.terms)
        for k, c in other.terms.items():
            acc = tt.get(k)
            s = c if acc is None else acc + c
            if is_zero(s):
                tt.pop(k, None)
            else:
                tt[k] = s
        return Poly2(tt, vars=self.vars)

    __radd__ = __add__

    def __neg__(self):
        return Poly2({k: -c for k, c in self.terms.items()}, vars=self.vars)

    def __sub__(self, other):
        if not isinstance(other, Poly2):
            other = Poly2.const(other, vars=self.vars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly2):
            other = Poly2.const(other, vars=self.vars)
        out = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                k = (i1 + i2, j1 + j2)
                acc = out.get(k)
                c = a * b if acc is None else acc + a * b
                if is_zero(c):
                    out.pop(k, None)
                else:
                    out[k] = c
        return Poly2(out, vars=self.vars)

    __rmul__ = __mul__

    def scale(self, c):
        c = _coerce_scalar(c)
        if is_zero(c):
            return Poly2.zero(vars=self.vars)
        return Poly2({k: v * c for k, v in self.terms.items()}, vars=self.vars)

    def pow(self, n: int) -> "Poly2":
        out = Poly2.const(1, vars=self.vars)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- calculus and substitution ------------------------------------------
    def derivative(self, axis: int) -> "Poly2":
        out = {}
        for (i, j), c in self.terms.items():
            e = (i, j)[axis]
            if e == 0:
                continue
            k = (i - 1, j) if axis == 0 else (i, j - 1)
            out[k] = out.get(k, GRat(0)) + c * GRat(e)
        return Poly2(out, vars=self.vars)

    def eval(self, x, y):
        x = _coerce_scalar(x)
        y = _coerce_scalar(y)
        out = GRat(0)
        for (i, j), c in self.terms.items():
            out = out + c * (x**i) * (y**j)
        return out

    def eval_x(self, x) -> Poly1:
        """Substitute the first variable; univariate in the second."""
        x = _coerce_scalar(x)
        out = {}
        for (i, j), c in self.terms.items():
            out[j] = out.get(j, GRat(0)) + c * (x**i)
        n = max(out) + 1 if out else 0
        return Poly1([out.get(k, GRat(0)) for k in range(n)], var=self.vars[1])

    def eval_y(self, y) -> Poly1:
        y = _coerce_scalar(y)
        out = {}
        for (i, j), c in self.terms.items():
            out[i] = out.get(i, GRat(0)) + c * (y**j)
        n = max(out) + 1 if out else 0
        return Poly1([out.get(k, GRat(0)) for k in range(n)], var=self.vars[0])

    def translate(self, a, b) -> "Poly2":
        """p(x + a, y + b)"""
        a = _coerce_scalar(a)
        b = _coerce_scalar(b)
        xa = Poly2({(1, 0): 1, (0, 0): a}, vars=self.vars)
        yb = Poly2({(0, 1): 1, (0, 0): b}, vars=self.vars)
        return self.subst(xa, yb)

    def subst(self, px: "Poly2", py: "Poly2") -> "Poly2":
        """Substitute polynomials for the two variables."""
        max_i = self.degree_in(0) if self.terms else 0
        max_j = self.degree_in(1) if self.terms else 0
        if isinstance(max_i, _NegInf):
            return Poly2.zero(vars=px.vars)
        xpows = [Poly2.const(1, vars=px.vars)]
        for _ in range(max_i):
            xpows.append(xpows[-1] * px)
        ypows = [Poly2.const(1, vars=px.vars)]
        for _ in range(max_j):
            ypows.append(ypows[-1] * py)
        out = Poly2.zero(vars=px.vars)
        for (i, j), c in self.terms.items():
            out = out + (xpows[i] * ypows[j]).scale(c)
        return out

    def subst_first_chart(self, new_vars=None) -> "Poly2":
        """(x, y) -> (x, x*t): substitute the second variable by x*t."""
        nv = new_vars or (self.vars[0], "t")
        return Poly2({(i + j, j): c for (i, j), c in self.terms.items()}, vars=nv)

    def subst_second_chart(self, new_vars=None) -> "Poly2":
        """(x, y) -> (u*y, y): substitute the first variable by u*y."""
        nv = new_vars or ("u", self.vars[1])
        return Poly2({(i, i + j): c for (i, j), c in self.terms.items()}, vars=nv)

    def divide_x_power(self, n: int) -> "Poly2":
        if any(i < n for (i, j) in self.terms):
            raise ValueError("not divisible by x^n")
        return Poly2({(i - n, j): c for (i, j), c in self.terms.items()}, vars=self.vars)

    def divide_y_power(self, n: int) -> "Poly2":
        if any(j < n for (i, j) in self.terms):
            raise ValueError("not divisible by y^n")
        return Poly2({(i, j - n): c for (i, j), c in self.terms.items()}, vars=self.vars)

    def swap_vars(self) -> "Poly2":
        return Poly2(
            {(j, i): c for (i, j), c in self.terms.items()},
            vars=(self.vars[1], self.vars[0]),
        )

    def conjugate(self) -> "Poly2":
        return Poly2({k: conj(c) for k, c in self.terms.items()}, vars=self.vars)

    def is_real(self) -> bool:
        return all(isinstance(c, GRat) and c.is_real for c in self.terms.values())

    # -- structure ---------------------------------------------------------
    def lowest_form(self) -> "Poly2":
        """Sum of the terms of minimal total degree (the tangent cone)."""
        if self.is_zero:
            return self
        m = self.order
        return Poly2(
            {k: c for k, c in self.terms.items() if k[0] + k[1] == m}, vars=self.vars
        )

    def tangent_direction(self):
        """If the lowest form is c*(y - a*x)^m return ('finite', a);
        if it is c*x^m return ('infinity', None); otherwise None."""
        lf = self.lowest_form()
        if lf.is_zero:
            return None
        m = lf.order
        cx = lf.coeff(m, 0)
        cy = lf.coeff(0, m)
        if is_zero(cy):
            expected = Poly2({(m, 0): cx}, vars=self.vars)
            return ("infinity", None) if lf == expected else None
        # lowest form should be cy * (y - a x)^m; read a from the (1, m-1) term
        a = (lf.coeff(1, m - 1) / cy) / GRat(-m) if m >= 1 else GRat(0)
        model = Poly2({(0, 1): 1, (1, 0): -a}, vars=self.vars).pow(m).scale(cy)
        return ("finite", a) if lf == model else None

    def as_poly1_coeffs_in_y(self):
        """Coefficient list in the second variable: entry j is a Poly1 in x."""
        d = self.degree_in(1)
        if isinstance(d, _NegInf):
            return []
        out = []
        for j in range(d + 1):
            col = {}
            for (i, jj), c in self.terms.items():
                if jj == j:
                    col[i] = c
            n = max(col) + 1 if col else 0
            out.append(Poly1([col.get(k, GRat(0)) for k in range(n)], var=self.vars[0]))
        return out

    @staticmethod
    def from_poly1_coeffs_in_y(cols, vars=("x", "y")):
        tt = {}
        for j, p in enumerate(cols):
            for i, c in enumerate(p.coeffs):
                if not is_zero(c):
                    tt[(i, j)] = c
        return Poly2(tt, vars=vars)

    def divmod_single(self, f: "Poly2"):
        """Division by one polynomial under graded-lex order; exact iff r == 0."""
        if f.is_zero:
            raise ZeroPolynomial("division by zero polynomial")

        def key(k):
            return (k[0] + k[1], k[0])

        flead = max(f.terms, key=key)
        fc = f.terms[flead]
        q = Poly2.zero(vars=self.vars)
        r = Poly2.zero(vars=self.vars)
        g = self
        while not g.is_zero:
            glead = max(g.terms, key=key)
            gi, gj = glead
            fi, fj = flead
            if gi >= fi and gj >= fj:
                mono = Poly2({(gi - fi, gj - fj): g.terms[glead] / fc}, vars=self.vars)
                q = q + mono
                g = g - mono * f
            else:
                mono = Poly2({glead: g.terms[glead]}, vars=self.vars)
                r = r + mono
                g = g - mono
        return q, r

    def divides(self, other: "Poly2") -> bool:
        if self.is_zero:
            return other.is_zero
        return other.divmod_single(self)[1].is_zero

    def __str__(self):
        from .grammar import format_poly2

        return format_poly2(self)

    def __repr__(self):
        return f"Poly2({self})"


# ---------------------------------------------------------------------------
# Resultants.


def resultant_y(f: Poly2, g: Poly2) -> Poly1:
    """Sylvester resultant eliminating the second variable; Poly1 in the first.

    Computed by evaluation and Lagrange interpolation of the determinant of the
    Sylvester matrix (entries are polynomials in x).
    """
    m = f.degree_in(1)
    n = g.degree_in(1)
    if isinstance(m, _NegInf) or isinstance(n, _NegInf):
        raise DegenerateElimination("resultant with the zero polynomial")
    if m < 1 and n < 1:
        raise DegenerateElimination("both inputs are constant in y")
    if m < 1:
        base = f.eval_y(0)
        out = Poly1.const(1, var=f.vars[0])
        for _ in range(n):
            out = out * base
        return out
    if n < 1:
        base = g.eval_y(0)
        out = Poly1.const(1, var=f.vars[0])
        for _ in range(m):
            out = out * base
        return out
    fc = f.as_poly1_coeffs_in_y()
    gc = g.as_poly1_coeffs_in_y()
    bound = f.degree_in(0) * n + g.degree_in(0) * m
    xs = [GRat(k) for k in range(bound + 1)]
    vals = []
    for x0 in xs:
        frow = [c.eval(x0) for c in fc]
        grow = [c.eval(x0) for c in gc]
        size = m + n
        mat = [[GRat(0)] * size for _ in range(size)]
        for r in range(n):
            for k in range(m + 1):
                mat[r][r + (m - k)] = frow[k]
        for r in range(m):
            for k in range(n + 1):
                mat[n + r][r + (n - k)] = grow[k]
        vals.append(_det(mat))
    return _lagrange(xs, vals, var=f.vars[0])


def _det(mat):
    n = len(mat)
    mat = [row[:] for row in mat]
    det = GRat(1)
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if not mat[r][col].is_zero:
                pivot = r
                break
        if pivot is None:
            return GRat(0)
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            det = -det
        pv = mat[col][col]
        det = det * pv
        inv = pv.inverse()
        for r in range(col + 1, n):
            if mat[r][col].is_zero:
                continue
            factor = mat[r][col] * inv
            mat[r] = [a - factor * b for a, b in zip(mat[r], mat[col])]
    return det


def _lagrange(xs, ys, var="x"):
    out = Poly1.zero(var=var)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi.is_zero:
            continue
        num = Poly1.const(1, var=var)
        den = GRat(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            num = num * Poly1([-xj, GRat(1)], var=var)
            den = den * (xi - xj)
        out = out + num.scale(yi / den)
    return out


def order_at_zero(p: Poly1):
    """Order of vanishing at 0 (NEG_INFINITY for the zero polynomial)."""
    if p.is_zero:
        return NEG_INFINITY
    for k, c in enumerate(p.coeffs):
        if not is_zero(c):
            return k
    return NEG_INFINITY


# ---------------------------------------------------------------------------
# Bivariate gcd (primitive PRS over Q(i)[x][y]).


def _bp_content(cols):
    g = Poly1.zero()
    for c in cols:
        g = poly_gcd(g, c)
        if g.degree == 0:
            break
    return g if not g.is_zero else Poly1.const(1)


def _bp_scale_div(cols, d: Poly1):
    return [c // d for c in cols]


def _bp_prem(a, b):
    """Pseudo-remainder of coefficient lists (entries Poly1 in x)."""
    a = list(a)
    da, db = len(a) - 1, len(b) - 1
    lb = b[-1]
    for _ in range(da - db + 1):
        if len(a) - 1 < db or not a:
            break
        la = a[-1]
        a = [c * lb for c in a[:-1]]
        shift = len(a) - db
        for k in range(db):
            a[shift + k] = a[shift + k] - la * b[k]
        while a and a[-1].is_zero:
            a.pop()
    return a


def poly2_gcd(f: Poly2, g: Poly2) -> Poly2:
    """Gcd in Q(i)[x, y], normalized with monic leading Poly1 coefficient."""
    if f.is_zero:
        return _normalize_poly2(g)
    if g.is_zero:
        return _normalize_poly2(f)
    fc = f.as_poly1_coeffs_in_y()
    gc = g.as_poly1_coeffs_in_y()
    if len(fc) == 1 or len(gc) == 1:
        # at least one is univariate in x: gcd of all x-contents
        cont = poly_gcd(_bp_content(fc), _bp_content(gc))
        return Poly2.from_poly1_coeffs_in_y([cont], vars=f.vars)
    cont_f = _bp_content(fc)
    cont_g = _bp_content(gc)
    cont = poly_gcd(cont_f, cont_g)
    a = _bp_scale_div(fc, cont_f)
    b = _bp_scale_div(gc, cont_g)
    if len(a) < len(b):
        a, b = b, a
    while True:
        r = _bp_prem(a, b)
        if not r:
            break
        rc = _bp_content(r)
        a, b = b, _bp_scale_div(r, rc)
        if len(b) == 1:
            b = [Poly1.const(1)]
            break
    pp = b
    out_cols = [c * cont for c in pp]
    return _normalize_poly2(Poly2.from_poly1_coeffs_in_y(out_cols, vars=f.vars))


def _normalize_poly2(p: Poly2) -> Poly2:
    if p.is_zero:
        return p
    cols = p.as_poly1_coeffs_in_y()
    lead = cols[-1].lead
    return p.scale(lead.inverse())


# ---------------------------------------------------------------------------
# Implicitization of a polynomial parametrization.


def implicitize(xs: Poly1, ys: Poly1, vars=("x", "y")) -> Poly2:
    """Equation of the curve (x, y) = (xs(s), ys(s)) via Res_s, made primitive."""
    sx = Poly2({(1, 0): 1}, vars=vars)
    sy = Poly2({(0, 1): 1}, vars=vars)
    dx = max(len(xs.coeffs), 1)
    dy = max(len(ys.coeffs), 1)
    size = (dx - 1) + (dy - 1)
    if size == 0:
        raise DegenerateElimination("constant parametrization")
    # Sylvester matrix in s with Poly2 entries; Bareiss-free small expansion.
    fa = [Poly2.const(c, vars=vars) for c in xs.coeffs]
    fa[0] = fa[0] - sx
    fb = [Poly2.const(c, vars=vars) for c in ys.coeffs]
    fb[0] = fb[0] - sy
    da, db = len(fa) - 1, len(fb) - 1
    n = da + db
    mat = [[Poly2.zero(vars=vars) for _ in range(n)] for _ in range(n)]
    for r in range(db):
        for k in range(da + 1):
            mat[r][r + (da - k)] = fa[k]
    for r in range(da):
        for k in range(db + 1):
            mat[db + r][r + (db - k)] = fb[k]
    res = _det_poly2(mat)
    return _poly2_primitive(res)


def _det_poly2(mat):
    """Determinant by expansion with memoized minors (small matrices only)."""
    n = len(mat)
    from functools import lru_cache

    cols_all = tuple(range(n))

    def minor(rows, cols):
        if len(rows) == 1:
            return mat[rows[0]][cols[0]]
        total = None
        r = rows[0]
        rest = rows[1:]
        for idx, c in enumerate(cols):
            entry = mat[r][c]
            if entry.is_zero:
                continue
            sub = minor(rest, cols[:idx] + cols[idx + 1 :])
            term = entry * sub
            if idx % 2 == 1:
                term = -term
            total = term if total is None else total + term
        return total if total is not None else Poly2.zero(vars=mat[0][0].vars)

    return minor(cols_all, cols_all)


def _poly2_primitive(p: Poly2) -> Poly2:
    if p.is_zero:
        return p
    num_gcd = 0
    den_lcm = 1
    for c in p.terms.values():
        for part in (c.re, c.im):
            if part == 0:
                continue
            num_gcd = _gcd_int(num_gcd, abs(part.numerator))
            den_lcm = den_lcm * part.denominator // _gcd_int(den_lcm, part.denominator)
    if num_gcd == 0:
        return p
    return p.scale(GRat(Fraction(den_lcm, num_gcd)))
