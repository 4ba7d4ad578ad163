import pytest
from hypothesis import given, settings, strategies as st

from cubicgit.poly import P, Polynomial
from cubicgit.weights import (
    NO_LIMIT,
    M_0,
    M_le0,
    M_lt0,
    MonomialSet,
    OnePS,
    argmax,
    dual_set,
    is_invariant,
    limit,
    monomials,
    mu,
    reverse_monomial,
    sign_partition,
    weight,
)


@st.composite
def normalized_1ps(draw, n=6, span=12):
    head = draw(st.lists(st.integers(-span, span), min_size=n - 1, max_size=n - 1))
    w = head + [-sum(head)]
    w.sort(reverse=True)
    if not any(w):
        w = [1] + [0] * (n - 2) + [-1]
    return OnePS(w)


def test_onep_rejects_bad_sum():
    with pytest.raises(ValueError):
        OnePS((1, 0, 0))


def test_normalize_and_primitive():
    lam = OnePS((0, -2, 2))
    s, perm = lam.normalize()
    assert s.weights == (2, 0, -2) and s.normalized
    assert s.primitive().weights == (1, 0, -1)
    assert OnePS.parse("1,0,-1").weights == (1, 0, -1)


def test_monomial_count_and_order():
    mons = monomials(6, 3)
    assert len(mons) == 56
    assert mons[0] == (3, 0, 0, 0, 0, 0)
    assert mons[-1] == (0, 0, 0, 0, 0, 3)


def test_mu_fermat():
    f = P("x0^3 + x1^3 + x2^3 + x3^3 + x4^3 + x5^3")
    lam = OnePS((1, 0, 0, 0, 0, -1))
    assert mu(f, lam) == 3
    assert argmax(f, lam) == [(3, 0, 0, 0, 0, 0)]


def test_sign_partition_of_the_alpha_torus():
    part = sign_partition(OnePS((2, 2, -1, -1, -1, -1)), 3)
    assert (len(part.neg), len(part.zero), len(part.pos)) == (20, 20, 16)
    assert M_le0(OnePS((2, 2, -1, -1, -1, -1)), 3) == part.nonpos


def test_limit_conventions():
    f = P("x0*x5^2 + x1*x4*x5 + x2^3")
    lam = OnePS((1, 0, 0, 0, 0, -1))
    assert limit(f, lam) == P("x2^3")
    assert limit(f, OnePS((-1, 0, 0, 0, 0, 1))) is NO_LIMIT
    assert not NO_LIMIT


def test_invariance():
    z = P("x0*x4*x5 + x1*x2*x3")
    assert is_invariant(z, OnePS((2, 0, 0, 0, -1, -1)))
    assert is_invariant(z, OnePS((1, 0, 0, 0, 0, -1)))
    assert not is_invariant(z, OnePS((1, -1, 0, 0, 0, 0)))


def test_monomial_set_parse_and_ops():
    S = MonomialSet.parse("x0^3, x1*x2*x3", 6)
    T = MonomialSet.parse("x1*x2*x3", 6)
    assert T <= S and len(S - T) == 1 and (S & T) == T
    assert S.strings() == ["x0^3", "x1*x2*x3"]


@settings(max_examples=100, deadline=None)
@given(normalized_1ps())
def test_partition_is_a_partition(lam):
    p = sign_partition(lam, 3)
    assert len(p.neg) + len(p.zero) + len(p.pos) == 56
    assert not (p.neg & p.zero) and not (p.zero & p.pos)


@settings(max_examples=100, deadline=None)
@given(normalized_1ps())
def test_zero_set_duality(lam):
    assert dual_set(M_0(lam, 3)) == M_0(lam.dual(), 3)
    assert dual_set(M_lt0(lam, 3)) == sign_partition(lam.dual(), 3).pos


@settings(max_examples=100, deadline=None)
@given(normalized_1ps(), st.lists(st.integers(1, 9), min_size=56, max_size=56))
def test_limit_is_idempotent_and_invariant(lam, coeffs):
    S = M_le0(lam, 3)
    f = S.generic_polynomial(coeffs[: len(S)])
    g = limit(f, lam)
    if g.is_zero():
        return
    assert limit(g, lam) == g
    assert is_invariant(g, lam)
    assert mu(g, lam) == 0


@settings(max_examples=100, deadline=None)
@given(normalized_1ps())
def test_weight_of_reverse(lam):
    for m in monomials(6, 3)[::7]:
        assert weight(reverse_monomial(m), lam.dual()) == -weight(m, lam)
