from collections import Counter

import pytest
from hypothesis import given, strategies as st

from cubicgit.formulas import (
    brute_force_isq3,
    euler_char_isq3,
    freudenthal,
    plethysm_check,
    plethysm_weights,
    secant_minor_check,
    to_dynkin,
    weyl_dim_sl3,
)


@pytest.mark.parametrize("n,d,g,want", [(5, 6, 1, 2), (5, 5, 0, 4), (4, 3, 0, 8), (3, 3, 0, 0), (4, 4, 0, 1)])
def test_euler_values(n, d, g, want):
    assert euler_char_isq3(n, d, g) == want


@pytest.mark.parametrize("n,d", [(5, 5), (4, 3), (3, 3), (4, 4)])
def test_brute_force_matches_formula_for_rational_curves(n, d):
    assert brute_force_isq3(n, d) == euler_char_isq3(n, d, 0)


def test_euler_rejects_bad_input():
    for args in [(2, 3, 0), (5, 0, 0), (5, 5, -1)]:
        with pytest.raises(ValueError):
            euler_char_isq3(*args)


def test_secant_minors():
    m = secant_minor_check(5)
    assert m["minors"] == 4 and m["rank"] == 4
    assert m["all_singular_along_curve"] and m["kernel_dim"] == 4 == m["formula"]


@given(st.integers(0, 6), st.integers(0, 6))
def test_freudenthal_dimension_is_weyl(a, b):
    lam = (a + b, b, 0)
    assert to_dynkin(lam) == (a, b)
    assert sum(freudenthal(lam).values()) == weyl_dim_sl3(a, b)


def test_freudenthal_small_cases():
    assert freudenthal((1, 0, 0)) == Counter({(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1})
    adj = freudenthal((2, 1, 0))
    assert adj[(1, 1, 1)] == 2 and sum(adj.values()) == 8
    with pytest.raises(ValueError):
        freudenthal((0, 1, 0))


def test_plethysm_weights_count():
    w = plethysm_weights(3, 2, 3)
    assert sum(w.values()) == 56
    assert w[(6, 0, 0)] == 1 and w[(2, 2, 2)] == 5


def test_plethysm_decomposition():
    r = plethysm_check()
    assert r["balanced"] and r["total"] == 56
    assert list(r["dims"].values()) == [1, 27, 28] == list(r["weyl_dims"].values())
    assert r["highest_weights"] == [[0, 0], [2, 2], [6, 0]]
