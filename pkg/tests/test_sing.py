import random
from fractions import Fraction

import pytest

from cubicgit.poly import LinearChange, NotSingularPoint, P, Polynomial, substitute
from cubicgit.sing import (
    A, AINF, D, DINF, E, Etilde, AtLeast,
    classify_germ,
    classify_point,
    discriminant_binary,
    is_smooth_plane_cubic,
    j_invariant_quartic,
    plane_cubic_discriminant,
    squarefree_decomposition,
    transversal_type_on_curve,
)
from cubicgit import strata


def g(text):
    return P(text, 5)


Q4 = " + y1^2 + y2^2 + y3^2 + y4^2"
Q3 = " + y2^2 + y3^2 + y4^2"


def germ(text):
    return g(text.replace("y", "x"))


NORMAL_FORMS = [
    ("A(1)", "y0^2" + Q4),
    ("A(2)", "y0^3" + Q4),
    ("A(5)", "y0^6" + Q4),
    ("D(4)", "y0^2*y1 + y1^3" + Q3),
    ("D(5)", "y0^2*y1 + y1^4" + Q3),
    ("D(7)", "y0^2*y1 + y1^6" + Q3),
    ("E(6)", "y0^3 + y1^4" + Q3),
    ("E(7)", "y0^3 + y0*y1^3" + Q3),
    ("E(8)", "y0^3 + y1^5" + Q3),
    ("Etilde(6)", "y0^3 + y1^3 + y2^3 + y0*y1*y2 + y3^2 + y4^2"),
    ("Etilde(7)", "y0^4 + 3*y0^2*y1^2 + y1^4" + Q3),
    ("Etilde(8)", "y0^3 + y0^2*y1^2 + y1^6" + Q3),
]


def _random_change(rng, n=5):
    while True:
        try:
            return LinearChange([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
        except ValueError:
            pass


@pytest.mark.parametrize("tag,text", NORMAL_FORMS)
def test_normal_forms(tag, text):
    assert str(classify_germ(germ(text))) == tag


@pytest.mark.parametrize("tag,text", NORMAL_FORMS)
def test_normal_forms_after_coordinate_change(tag, text):
    rng = random.Random(tag)
    h = germ(text)
    T = _random_change(rng)
    # every form here is determined by its 7-jet
    assert str(classify_germ(substitute(h, T), jet_order=7)) == tag


@pytest.mark.parametrize("tag,text,noise", [
    ("A(2)", "y0^3" + Q4, "y0^4 + y0^2*y1^2"),
    ("D(4)", "y0^2*y1 + y1^3" + Q3, "y0^4 + y1^4"),
    ("E(6)", "y0^3 + y1^4" + Q3, "y1^5 + y0^2*y1^2"),
    ("Etilde(8)", "y0^3 + y0^2*y1^2 + y1^6" + Q3, "y1^7 + y0^2*y1^3"),
])
def test_higher_order_terms_do_not_matter(tag, text, noise):
    assert str(classify_germ(germ(text) + germ(noise))) == tag


def test_non_simple_germ_is_bounded_below():
    cls = classify_germ(germ("y0^4" + Q3))
    assert cls.kind == "AtLeast"


def test_point_tags():
    f = P("x0*x1^2 + x0*x2^2 + x0*x3^2 + x0*x4^2 + x0*x5^2 + x1^3")
    assert classify_point(f, (1, 0, 0, 0, 0, 0))["tag"] == "A(1)"
    assert classify_point(f, (0, 1, 0, 0, 0, 0))["tag"] == "NotSingular"
    assert classify_point(f, (0, 0, 0, 0, 0, 1))["tag"] == "Smooth"
    assert classify_point(P("x0^2*x1 + x2^3"), (1, 0, 0, 0, 0, 0))["tag"] == "Smooth"
    with pytest.raises(NotSingularPoint):
        classify_germ(germ("y0 + y1^2"))


def test_singular_points_of_catalog_members():
    rng = random.Random(4)
    b = strata.generate("beta", strata.random_params("beta", rng))
    assert classify_point(b, (1, 0, 0, 0, 0, 0))["tag"] == "Etilde(8)"
    assert classify_point(b, (0, 0, 0, 0, 0, 1))["tag"] == "Etilde(8)"
    d = strata.generate("delta2", {"f": "x1^3 + x2^3 + x3^3"})
    for i in (0, 4, 5):
        p = tuple(int(k == i) for k in range(6))
        assert classify_point(d, p)["tag"] == "Etilde(6)"


def test_binary_discriminant():
    s = Polynomial.var(2, 0)
    t = Polynomial.var(2, 1)
    info = discriminant_binary(s * s * t * (s + t))
    assert not info["vanishes"] and info["max_multiplicity"] == 2
    assert discriminant_binary(s * t * (s - t))["distinct_roots"]
    assert squarefree_decomposition([Fraction(1), Fraction(-2), Fraction(1)])  # (x-1)^2


def test_j_invariant_is_projective():
    s, t = Polynomial.var(2, 0), Polynomial.var(2, 1)
    q = s**4 + 3 * s * s * t * t + t**4
    T = LinearChange([[1, 1], [0, 1]])
    assert j_invariant_quartic(q) == j_invariant_quartic(substitute(q, T))


def test_plane_cubics():
    assert is_smooth_plane_cubic(P("x0^3 + x1^3 + x2^3", 3))
    assert not is_smooth_plane_cubic(P("x0*x1*x2", 3))
    assert plane_cubic_discriminant(P("x0^3 + x1^2*x2", 3)) == 0
    rng = random.Random(9)
    for _ in range(5):
        a, b, c = (rng.randint(-3, 3) for _ in range(3))
        # singular at (0:0:1): no x2^3, x0*x2^2, x1*x2^2
        x0, x1, x2 = (Polynomial.var(3, i) for i in range(3))
        F = x0**3 + a * x1**3 + b * x0 * x0 * x2 + c * x1 * x1 * x2 + x0 * x1 * x2
        assert plane_cubic_discriminant(F) == 0


def test_transversal_types():
    C = strata.rational_normal_quartic()
    chi = strata.generate("chi", {"a": 2, "b": 3})
    assert transversal_type_on_curve(chi, C, (1, 2)) == AtLeast(A(2))
    sig = strata.generate("sigma", {"a": 2, "b": 3, "c": 5})
    assert transversal_type_on_curve(sig, C, (1, 2)) == AINF
    a2 = strata.generate("alpha2", {"a": 2, "b": 3})
    L = strata.line_L()
    assert transversal_type_on_curve(a2, L, (1, 5)) == AINF
    assert transversal_type_on_curve(a2, L, (1, 0)) == DINF
    g2 = strata.generate("gamma2", {"l": [1, 2, -2]})
    assert transversal_type_on_curve(g2, strata.conic_gamma2(), (1, 1)) == DINF
    assert transversal_type_on_curve(g2, strata.conic_gamma2(), (1, 3)) == AINF


def test_constructors_print():
    assert str(A(1)) == "A(1)" and str(D(4)) == "D(4)" and str(E(6)) == "E(6)"
    assert str(AtLeast(Etilde(7))) == "AtLeast(Etilde(7))"
