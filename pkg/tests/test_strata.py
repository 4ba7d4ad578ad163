import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cubicgit import strata
from cubicgit.poly import P
from cubicgit.weights import MonomialSet, OnePS, M_le0, limit, mu

S = strata


def test_generate_examples():
    assert S.generate("zeta") == P("x0*x4*x5 + x1*x2*x3")
    assert S.generate("ω") == P("x0*x3^2 - x0*x4*x5 + x1^2*x4 - 2*x1*x2*x3 + x2^2*x5")
    assert S.generate("tau", {"a": 1}) == S.generate("omega")
    assert S.generate("chi", {"a": 2, "b": 0}) == S.generate("sigma", {"a": 2, "b": 0, "c": 0})


def test_generate_rejects_bad_params():
    with pytest.raises(ValueError):
        S.generate("tau", {})
    with pytest.raises(ValueError):
        S.generate("tau", {"a": 1, "z": 2})
    with pytest.raises(ValueError):
        S.generate("delta", {"q": "x0^2", "f": "x1^3"})
    with pytest.raises(ValueError):
        S.generate("delta", {"q": [1, 2], "f": "x1^3"})
    with pytest.raises(KeyError):
        S.canonical_id("psi")


@pytest.mark.parametrize("sid", sorted(S.FAMILIES))
def test_generated_forms_are_cubics(sid):
    rng = random.Random(sid)
    f = S.generate(sid, S.random_params(sid, rng))
    assert f.n == 6 and f.is_homogeneous() and f.degree() == 3


@pytest.mark.parametrize("sid", ["alpha", "beta", "gamma", "delta"])
def test_torus_families_have_their_support(sid):
    rng = random.Random(1)
    f = S.generate(sid, S.random_params(sid, rng))
    assert set(f.terms) <= S.family_support(sid).as_frozenset()
    assert len(S.family_support(sid)) == {"alpha": 20, "beta": 10, "gamma": 15, "delta": 13}[sid]


EXPECTED_STAB = {"zeta": 4, "omega": 8, "chi": 3, "tau": 2, "alpha": 1, "beta": 1, "gamma": 1, "delta": 2,
                 "sigma": 1, "epsilon": 0, "phi": 0}


@pytest.mark.parametrize("sid", sorted(EXPECTED_STAB))
def test_stabilizer_dimensions(sid):
    rng = random.Random(0)
    dims = [S.stabilizer_dim(S.generate(sid, S.random_params(sid, rng))) for _ in range(5)]
    assert min(dims) >= EXPECTED_STAB[sid]
    assert dims.count(EXPECTED_STAB[sid]) >= 4


def test_fermat_has_finite_stabilizer():
    assert S.stabilizer_dim(P("x0^3 + x1^3 + x2^3 + x3^3 + x4^3 + x5^3")) == 0


def test_expected_values_match_data():
    for sid, e in S.catalog().items():
        assert e.stabilizer_dim == EXPECTED_STAB[sid]


def test_singular_loci():
    assert S.verify_singular_on_param(S.generate("omega"), S.veronese())
    assert not S.verify_singular_on_param(P("x0^3 + x1^3 + x2^3 + x3^3 + x4^3 + x5^3"), S.line_L())
    rng = random.Random(2)
    for sid in ("epsilon", "sigma", "chi"):
        f = S.generate(sid, S.random_params(sid, rng))
        assert S.verify_singular_on_param(f, S.rational_normal_quartic())
    params, pts = S.phi_with_rank_one_points(rng)
    f = S.generate("phi", params)
    assert S.verify_singular_on_points(f, pts)
    assert all(S.matrix_at(params["L"], p).rank() == 1 for p in pts)


def test_alpha_base_locus_points():
    rng = random.Random(3)
    for _ in range(5):
        params, p = S.alpha2_base_point(rng)
        f = S.generate("alpha2", params)
        assert S.is_singular_point(f, p)
        assert S.verify_singular_on_param(f, S.line_L())


def test_torus_semistability():
    assert S.torus_semistable(S.generate("zeta"))["semistable"]
    rng = random.Random(4)
    assert S.torus_semistable(S.generate("tau", S.random_params("tau", rng)))["semistable"]
    cone = P("x0^3 + x1^3 + x2^3 + x3^3 + x4^3 + x1*x2*x3")
    r = S.torus_semistable(cone)
    assert not r["semistable"] and mu(cone, r["certificate"]) < 0


def test_degeneration_tau_zero_to_zeta():
    edge = next(e for e in S.catalog_data()["incidences"] if (e["source"], e["target"]) == ("tau", "zeta"))
    res = S.degeneration_limit("tau", {"a": 0}, OnePS(edge["lambda"]))
    assert res["matched"] == "zeta"
    assert S.search_degeneration(S.generate("tau", {"a": 0}), "zeta", 6)[0].weights == tuple(edge["lambda"])


def test_degeneration_of_s1_support_has_alpha_shape():
    lam = OnePS((2, 2, -1, -1, -1, -1))
    f = M_le0(lam, 3).generic_polynomial(list(range(1, 41)))
    g = limit(f, lam)
    assert S.identify(g)["id"] == "alpha"
    assert S.match_family(g, "alpha") is not None


def test_invariant_form_is_its_own_limit():
    rng = random.Random(5)
    p = S.random_params("delta", rng)
    f = S.generate("delta", p)
    res = S.degeneration_limit("delta", p, OnePS((2, 0, 0, 0, -1, -1)))
    assert res["limit"] == f and res["matched"] == "delta"


def test_no_limit():
    with pytest.raises(S.NoLimit):
        S.degeneration_limit("zeta", {}, OnePS((0, 1, 1, 1, -1, -2)))


def test_sigma_to_tau_recorded_degeneration():
    edge = next(e for e in S.catalog_data()["incidences"] if (e["source"], e["target"]) == ("sigma", "tau"))
    out = S.verify_edge(edge)
    assert out["verified"] and out["search"] == edge["lambda"]
    assert {Fraction(x) for x in out["match"]["a"]} == {Fraction(1, 2), Fraction(2)}


def test_tau_invariant_recovers_parameter():
    for a in (Fraction(2), Fraction(-3, 5), Fraction(7)):
        f = S.generate("tau", {"a": a})
        info = S.tau_parameter(f, tuple(range(6)))
        assert a in info["a"] and 1 / a in info["a"]


def test_incidence_graph():
    g = S.incidence_graph(verify=True, seed=3)
    assert len(g["nodes"]) == 11 and len(g["edges"]) == 11
    assert all(e["verified"] for e in g["edges"])
    dot = S.graph_to_dot(g)
    assert dot.startswith("digraph") and "tau -> omega" in dot


def test_node_dimensions():
    want = {"alpha": 1, "beta": 3, "gamma": 2, "delta": 1, "epsilon": 3, "phi": 2, "sigma": 2,
            "tau": 1, "chi": 1, "zeta": 0, "omega": 0}
    assert {sid: S.stratum_dimension(sid) for sid in want} == want


def test_verify_entry_reports():
    r = S.verify_entry("χ", seed=1, samples=5)
    assert r["ok"] and r["id"] == "chi"


# family analyses


def test_alpha_branches():
    ab = S.alpha_branch
    assert ab(P("x2^2"), P("x3^2 + x4^2 + x5^2"))["branch"] == "unstable"
    assert ab(P("x2*x3 + x4^2 + x5^2"), P("x4*x5"))["branch"] == "degenerates to zeta"
    assert ab(P("2*x3^2 + x4^2 + x5^2"), P("-x2^2 - 3*x3^2 - x4^2"))["branch"] == "closed orbit"
    unstable = S.generate("alpha", {"q1": "x2^2", "q2": "x3^2 + x4^2 + x5^2"})
    assert S.non_closed_evidence(unstable)["evidence"] == "unstable"
    double = S.generate("alpha", {"q1": "x2*x3 + x4^2 + x5^2", "q2": "x4*x5"})
    ev = S.non_closed_evidence(double)
    assert ev["evidence"] == "degenerates" and ev["limit_shape"] == "zeta"


BETA_DEGENERACIES = {
    "a = 0": {"a": 0},
    "b = 0": {"b": 0},
    "l1 = 0": {"l1": [0, 0]},
    "f = 0": {"f": [0, 0, 0, 0]},
    "l1 divides f": {"l1": [0, 1], "f": "x2^2*x3 + 2*x2*x3^2 + 3*x3^3"},
    "l2^2 divides f": {"l2": [0, 1], "f": "x2*x3^2 + 2*x3^3"},
}


@pytest.mark.parametrize("name", sorted(BETA_DEGENERACIES))
def test_beta_degeneracies(name):
    rng = random.Random(5)
    p = S.random_params("beta", rng)
    p.update(BETA_DEGENERACIES[name])
    assert S.non_closed_evidence(S.generate("beta", p))["evidence"] is not None


def test_generic_beta_shows_no_evidence():
    rng = random.Random(5)
    f = S.generate("beta", S.random_params("beta", rng))
    assert S.non_closed_evidence(f)["evidence"] is None


def test_gamma_transversality():
    q = P("x3^2 - x4*x5")
    good = S.generate("gamma2", {"l": [1, 2, 3]})
    assert S.conics_transversal(q, P("x4*x5") - P("x3 + 2*x4 + 3*x5") ** 2)
    assert S.non_closed_evidence(good)["evidence"] is None
    tangent = S.generate("gamma2", {"l": [0, 1, 0]})
    assert not S.conics_transversal(q, P("x4*x5 - x4^2"))
    assert S.non_closed_evidence(tangent)["evidence"] == "degenerates"


def test_delta_trichotomy():
    ev = S.non_closed_evidence
    assert ev(S.generate("delta", {"q": "x5^2", "f": "x1^3 + x2^3 + x3^3"}))["evidence"] == "unstable"
    cusp = S.generate("delta", {"q": "x4*x5", "f": "x1*x3^2 + x2^3"})
    w = S.torus_unstable_witness(cusp)
    assert w is not None and mu(cusp, w) < 0
    nodal = ev(S.generate("delta", {"q": "x4*x5", "f": "x1*x2*x3 + x2^3 + x3^3"}))
    assert nodal["evidence"] == "degenerates"
    assert S.search_degeneration(S.generate("delta", {"q": "x4*x5", "f": "x1*x2*x3 + x2^3 + x3^3"}),
                                 "zeta", 6) is not None
    assert ev(S.generate("delta", {"q": "x4*x5", "f": "x1^3 + x2^3 + x3^3"}))["evidence"] is None


@settings(max_examples=20, deadline=None)
@given(st.integers(-20, 20).filter(lambda v: v not in (0, 1)), st.integers(1, 5))
def test_tau_stabilizer_away_from_omega(num, den):
    a = Fraction(num, den)
    if a == 1:
        return
    assert S.stabilizer_dim(S.generate("tau", {"a": a})) == 2
