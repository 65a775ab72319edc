"""Scalar and polynomial layer: field axioms, gcd, Sturm, resultants, grammar."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logmodel.exactalg import (
    GRat,
    QuadExt,
    gaussian_rational_roots,
    implicitize,
    order_at_zero,
    parse_poly1,
    parse_poly2,
    poly2_gcd,
    poly_gcd,
    resultant_y,
    squarefree_part,
    sturm_count,
    Poly1,
    Poly2,
)
from logmodel.errors import ParseError


def rnd_gr(rng):
    return GRat(
        Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
        Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
    )


def rnd_quad(rng):
    return QuadExt(
        Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
        Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
        2,
    )


def test_field_axioms_randomized():
    rng = random.Random(20240101)
    for _ in range(1000):
        a, b, c = rnd_gr(rng), rnd_gr(rng), rnd_gr(rng)
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        if not a.is_zero:
            assert a * a.inverse() == GRat(1)
        assert a.conjugate().conjugate() == a
        q, r, s = rnd_quad(rng), rnd_quad(rng), rnd_quad(rng)
        assert (q + r) + s == q + (r + s)
        assert q * (r + s) == q * r + q * s
        if not q.is_zero and q.a * q.a != q.b * q.b * 2:
            assert q * q.inverse() == QuadExt(1, 0, 2)


def test_quadext_sign():
    assert QuadExt(Fraction(1, 4), Fraction(1, 10), 2).sign() > 0
    assert QuadExt(Fraction(-3), Fraction(2), 2).sign() < 0  # 2*sqrt(2) < 3
    assert QuadExt(Fraction(-1), Fraction(1), 2).sign() > 0  # sqrt(2) > 1
    assert QuadExt(0, Fraction(-1), 2).sign() < 0


@given(
    st.fractions(min_value=-5, max_value=5),
    st.fractions(min_value=-5, max_value=5),
)
def test_grat_conjugation_multiplicative(re, im):
    z = GRat(re, im)
    w = GRat(im, re)
    assert (z * w).conjugate() == z.conjugate() * w.conjugate()


# -- gcd / squarefree -------------------------------------------------------


def P(text):
    return parse_poly1(text, var="t")


def test_poly_gcd_examples():
    assert poly_gcd(P("t^2-1"), P("t-1")) == P("t-1")
    assert poly_gcd(P("t^2-4"), P("t^2-1")) == P("1")
    a = P("(t-2)*(t+2)*(t-1)")
    b = P("(t-2)^2")
    assert poly_gcd(a, b) == P("t-2")
    assert poly_gcd(Poly1.zero(), P("2t-4")) == P("t-2")


def test_squarefree_examples():
    assert squarefree_part(P("(t-2)^2*(t+1)")) == P("(t-2)*(t+1)")
    assert squarefree_part(P("t^2-4")) == P("t^2-4")
    assert squarefree_part(P("t^4")) == P("t")


# -- Sturm -------------------------------------------------------------------


def test_sturm_examples():
    assert sturm_count(P("t^2-4")) == 2
    assert sturm_count(P("t^3-t")) == 3
    assert sturm_count(P("t^2+1")) == 1 - 1  # no real roots
    assert sturm_count(P("t^2-4"), 0, "+inf") == 1
    assert sturm_count(P("t^2-4"), 2, "+inf") == 0  # open interval
    assert sturm_count(P("t^2-4"), Fraction(-3), Fraction(0)) == 1


def test_sturm_modified_quartic_no_real_roots():
    # biquadratic arising from the modified four-cusp escape function with
    # parameters 1/10 and -1/10; its z-discriminant is negative.
    lam = Fraction(-1, 10)
    a = Fraction(21, 10)
    c4 = 1 + 2 * lam * a
    c2 = -(a * a) - 4 - 34 * a * lam
    c0 = 4 * a * a + 32 * a * lam
    quartic = Poly1([c0, 0, c2, 0, c4])
    disc = c2 * c2 - 4 * c4 * c0
    assert disc == Fraction(-237215, 10000)
    assert sturm_count(quartic) == 0


def _distinct_root_poly(rng, deg):
    roots = rng.sample(range(-12, 13), deg)
    return Poly1.from_roots([Fraction(r) for r in roots]), sorted(roots)


def test_sturm_against_direct_counts():
    rng = random.Random(77)
    for _ in range(60):
        deg = rng.choice([2, 3, 4])
        p, roots = _distinct_root_poly(rng, deg)
        lo = rng.randint(-15, 0)
        hi = rng.randint(1, 15)
        expected = sum(1 for r in roots if lo < r < hi)
        assert sturm_count(p, lo, hi) == expected
        assert sturm_count(p) == len(roots)


def test_sturm_multiplicative_on_coprime():
    rng = random.Random(3)
    for _ in range(20):
        r1 = rng.sample(range(-20, 0), 2)
        r2 = rng.sample(range(1, 20), 2)
        p = Poly1.from_roots([Fraction(r) for r in r1])
        q = Poly1.from_roots([Fraction(r) for r in r2])
        assert sturm_count(p * q) == sturm_count(p) + sturm_count(q)


# -- resultants ---------------------------------------------------------------


def B(text, vars=("x", "y")):
    return parse_poly2(text, vars=vars)


def _sylvester_det_2x2_case():
    # independent 4x4 determinant for Res_y(x - y^2, x + y^2), expanded by hand
    # with Fraction arithmetic over a few x values and interpolated by numpy-free
    # Lagrange (degree 2 is enough: evaluate at x = 0, 1, 2).
    import itertools

    def det4(m):
        total = Fraction(0)
        for perm in itertools.permutations(range(4)):
            sgn = 1
            seen = list(perm)
            for i in range(4):
                for j in range(i + 1, 4):
                    if seen[i] > seen[j]:
                        sgn = -sgn
            prod = Fraction(1)
            for r, c in enumerate(perm):
                prod *= m[r][c]
            total += sgn * prod
        return total

    vals = []
    for x0 in (0, 1, 2):
        x0 = Fraction(x0)
        m = [
            [-1, 0, x0, 0],
            [0, -1, 0, x0],
            [1, 0, x0, 0],
            [0, 1, 0, x0],
        ]
        vals.append(det4(m))
    # fit a*x^2 (+ b*x + c)
    c = vals[0]
    a = (vals[2] - 2 * vals[1] + vals[0]) / 2
    b = vals[1] - vals[0] - a
    return a, b, c


def test_resultant_examples():
    r = resultant_y(B("x - y^2"), B("x + y^2"))
    a, b, c = _sylvester_det_2x2_case()
    assert [x.re for x in (r.coeff(0), r.coeff(1), r.coeff(2))] == [c, b, a]
    assert order_at_zero(r) == 2
    assert r == Poly1([0, 0, 4], var="x")

    assert order_at_zero(resultant_y(B("x"), B("y"))) == 1

    r2 = resultant_y(B("x^3 - (y-x)^2"), B("x^3 - (y+x)^2"))
    assert order_at_zero(r2) == 4


def test_resultant_common_factor_detection():
    f = B("(x + y)*(x - y^2)")
    g = B("(x + y)*(y + x^2)")
    assert resultant_y(f, g).is_zero
    h = resultant_y(B("x - y^2"), B("y + x^2"))
    assert not h.is_zero


def test_resultant_degenerate():
    import pytest as _pytest

    from logmodel.errors import DegenerateElimination

    with _pytest.raises(DegenerateElimination):
        resultant_y(B("x"), B("x^2 + x"))
    # one argument constant in y uses the power convention
    assert resultant_y(B("x"), B("y^2 - x")) == Poly1([0, 0, 1], var="x")


# -- gaussian roots -----------------------------------------------------------


def test_gaussian_rational_roots():
    p = Poly1.from_roots([GRat(2), GRat(2), GRat(0, 1), GRat(Fraction(-1, 2))])
    roots, residual = gaussian_rational_roots(p)
    assert roots[GRat(2)] == 2
    assert roots[GRat(0, 1)] == 1
    assert roots[GRat(Fraction(-1, 2))] == 1
    assert residual.degree == 0

    q = P("t^2-2") * P("t-3")
    roots, residual = gaussian_rational_roots(q)
    assert roots == {GRat(3): 1}
    assert residual == P("t^2-2")


# -- bivariate gcd and implicitization ---------------------------------------


def test_poly2_gcd():
    f = B("(x + y)^2 * (x - y^2)")
    g = B("(x + y) * (y + x^3)")
    d = poly2_gcd(f, g)
    assert d.divides(f) and d.divides(g)
    assert d.total_degree == 1
    one = poly2_gcd(B("x - y^2"), B("x + y^2"))
    assert one.total_degree == 0


def test_poly2_divides():
    f = B("x*y + x")
    assert B("y + 1").divides(f)
    assert not B("y + 1").divides(B("x*y + 1"))


def test_implicitize_line_and_parabola():
    # (s, i*s) -> y - i*x up to scale
    line = implicitize(Poly1([0, 1]), Poly1([0, GRat(0, 1)]))
    assert line.divides(B("y - i*x")) or B("y - i*x").divides(line)
    # (s^2, s) -> x - y^2 up to scale
    par = implicitize(Poly1([0, 0, 1]), Poly1([0, 1]))
    assert par.divides(B("x - y^2")) or B("x - y^2").divides(par)


# -- grammar ------------------------------------------------------------------


def test_grammar_roundtrip():
    for text in ("x - y^2", "y + i*x", "x^3 - (y-4x)^2", "1/2*x*y - 3", "i"):
        p = parse_poly2(text)
        assert parse_poly2(str(p)) == p


def test_grammar_rejects():
    with pytest.raises(ParseError):
        parse_poly2("x + $")
    with pytest.raises(ParseError):
        parse_poly2("x ^ (1/2)")
    with pytest.raises(ParseError):
        parse_poly2("(x")


def test_canonical_order():
    p = parse_poly2("x^3 - (y-x)^2")
    assert str(p) == "-x^2 + 2*x*y - y^2 + x^3"
