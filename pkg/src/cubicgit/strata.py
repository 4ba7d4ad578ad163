"""Catalog of boundary normal forms and the checks run against them.

Generators live here; expected values (dimensions, stabilizer dimensions,
incidences and recorded degeneration 1-PS) live in ``data/strata.json``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from itertools import permutations
from typing import Callable, Sequence

import numpy as np

from .feasibility import Infeasible, WeightPolytopeQuery, find_witness
from .linalg import RationalMatrix
from .poly import LinearChange, Polynomial, determinant, parse, partial, substitute
from .sing import Parametrization, discriminant_binary
from .weights import NO_LIMIT, MonomialSet, OnePS, limit, monomials, mu, sign_partition, weight

N = 6
X = tuple(Polynomial.var(N, i) for i in range(N))

GREEK = {
    "alpha": "α", "beta": "β", "gamma": "γ", "delta": "δ", "epsilon": "ε", "phi": "φ",
    "sigma": "σ", "tau": "τ", "chi": "χ", "zeta": "ζ", "omega": "ω",
}
FROM_GREEK = {v: k for k, v in GREEK.items()}
FROM_GREEK["ϵ"] = "epsilon"
FROM_GREEK["ϕ"] = "phi"


def canonical_id(name: str) -> str:
    name = name.strip()
    if name in FROM_GREEK:
        return FROM_GREEK[name]
    if name.lower() in GREEK or name.lower() in EXTRA_FORMS:
        return name.lower()
    raise KeyError(f"unknown stratum {name!r}")


# parameters


@dataclass(frozen=True)
class Param:
    name: str
    kind: str  # "rational", "form" or "matrix"
    variables: tuple = ()
    degree: int = 0

    def coerce(self, value):
        if self.kind == "rational":
            return Fraction(value)
        if self.kind == "form":
            return _coerce_form(value, self.variables, self.degree, self.name)
        if self.kind == "matrix":
            rows = [[_coerce_form(v, tuple(range(N)), 1, self.name) for v in row] for row in value]
            if len(rows) != 3 or any(len(r) != 3 for r in rows):
                raise ValueError(f"{self.name} must be a 3x3 matrix of linear forms")
            return rows
        raise ValueError(f"unknown parameter kind {self.kind}")

    def random(self, rng: random.Random, span: int = 5):
        if self.kind == "rational":
            # wide range so that special values such as a = 1 are rare
            v = 0
            while v == 0:
                v = rng.randint(-100 * span, 100 * span)
            return Fraction(v, rng.randint(1, 10 * span))
        if self.kind == "form":
            mons = monomials(len(self.variables), self.degree)
            return [rng.randint(-span, span) for _ in mons]
        return [[[rng.randint(-span, span) for _ in range(N)] for _ in range(3)] for _ in range(3)]

    def describe(self) -> str:
        if self.kind == "rational":
            return f"{self.name}: rational"
        if self.kind == "form":
            vs = ",".join(f"x{i}" for i in self.variables)
            kind = {1: "linear", 2: "quadratic", 3: "cubic"}.get(self.degree, f"degree {self.degree}")
            return f"{self.name}: {kind} form in {vs}"
        return f"{self.name}: 3x3 matrix of linear forms in x0..x5"


def _embed(e_small, variables):
    e = [0] * N
    for k, v in zip(e_small, variables):
        e[v] += k
    return tuple(e)


def _coerce_form(value, variables, degree, name) -> Polynomial:
    if isinstance(value, str):
        value = parse(value, N)
    if isinstance(value, Polynomial):
        if value.n != N:
            raise ValueError(f"{name} must be a form in {N} variables")
        bad = value.variables() - set(variables)
        if bad:
            raise ValueError(f"{name} may only involve {['x%d' % v for v in variables]}")
        if not value.is_zero() and (not value.is_homogeneous() or value.degree() != degree):
            raise ValueError(f"{name} must be homogeneous of degree {degree}")
        return value
    mons = monomials(len(variables), degree)
    coeffs = list(value)
    if len(coeffs) != len(mons):
        raise ValueError(f"{name} needs {len(mons)} coefficients, got {len(coeffs)}")
    return Polynomial(N, {_embed(m, variables): Fraction(c) for m, c in zip(mons, coeffs)})


# generators


def det3(m) -> Polynomial:
    return determinant(m)


def chordal_matrix(a) -> list[list[Polynomial]]:
    x0, x1, x2, x3, x4, x5 = X
    return [
        [x0, x1, x2 + 2 * a * x5],
        [x1, x2 - a * x5, x3],
        [x2 + 2 * a * x5, x3, x4],
    ]


def _alpha(p):
    return X[0] * p["q1"] + X[1] * p["q2"]


def _beta(p):
    x0, x1, x2, x3, x4, x5 = X
    return p["a"] * x0 * x4**2 + x0 * x5 * p["l1"] + p["b"] * x1**2 * x5 + x1 * x4 * p["l2"] + p["f"]


def _gamma(p):
    x0, x1, x2 = X[:3]
    return x0 * p["q"] + x1**2 * p["l1"] - 2 * x1 * x2 * p["l2"] + x2**2 * p["l3"]


def _delta(p):
    return X[0] * p["q"] + p["f"]


def _tau(p):
    x0, x1, x2, x3, x4, x5 = X
    a = p["a"]
    return x0 * (x3**2 - x4 * x5) + x1**2 * x4 - (a + 1) * x1 * x2 * x3 + a * x2**2 * x5


def _zeta(p):
    x0, x1, x2, x3, x4, x5 = X
    return x0 * x4 * x5 + x1 * x2 * x3


def _omega(p):
    return _tau({"a": Fraction(1)})


def _epsilon(p):
    x5 = X[5]
    return det3(chordal_matrix(p["a"])) + x5**2 * p["l"] + p["b"] * x5**3


def _sigma(p):
    x2, x5 = X[2], X[5]
    return det3(chordal_matrix(p["a"])) + p["c"] * x5**2 * x2 + p["b"] * x5**3


def _chi(p):
    return det3(chordal_matrix(p["a"])) + p["b"] * X[5] ** 3


def _phi(p):
    return det3(p["L"])


def _alpha2(p):
    x0, x1, x2, x3, x4, x5 = X
    return x0 * (p["a"] * x3**2 + x4**2 + x5**2) - x1 * (x2**2 + p["b"] * x3**2 + x4**2)


def _gamma2(p):
    x0, x1, x2, x3, x4, x5 = X
    return x0 * (x3**2 - x4 * x5) + x1**2 * x4 - 2 * x1 * x2 * p["l"] + x2**2 * x5


def _delta2(p):
    x0, x4, x5 = X[0], X[4], X[5]
    return x0 * x4 * x5 + p["f"]


R = "rational"
FAMILIES: dict[str, tuple[list[Param], Callable]] = {
    "alpha": ([Param("q1", "form", (2, 3, 4, 5), 2), Param("q2", "form", (2, 3, 4, 5), 2)], _alpha),
    "beta": (
        [Param("a", R), Param("b", R), Param("l1", "form", (2, 3), 1), Param("l2", "form", (2, 3), 1),
         Param("f", "form", (2, 3), 3)],
        _beta,
    ),
    "gamma": (
        [Param("q", "form", (3, 4, 5), 2), Param("l1", "form", (3, 4, 5), 1),
         Param("l2", "form", (3, 4, 5), 1), Param("l3", "form", (3, 4, 5), 1)],
        _gamma,
    ),
    "delta": ([Param("q", "form", (4, 5), 2), Param("f", "form", (1, 2, 3), 3)], _delta),
    "epsilon": ([Param("a", R), Param("b", R), Param("l", "form", (0, 1, 2, 3, 4), 1)], _epsilon),
    "phi": ([Param("L", "matrix")], _phi),
    "sigma": ([Param("a", R), Param("b", R), Param("c", R)], _sigma),
    "tau": ([Param("a", R)], _tau),
    "chi": ([Param("a", R), Param("b", R)], _chi),
    "zeta": ([], _zeta),
    "omega": ([], _omega),
}

# normal forms inside the strata, not separate nodes of the graph
EXTRA_FORMS: dict[str, tuple[list[Param], Callable]] = {
    "alpha2": ([Param("a", R), Param("b", R)], _alpha2),
    "gamma2": ([Param("l", "form", (3, 4, 5), 1)], _gamma2),
    "delta2": ([Param("f", "form", (1, 2, 3), 3)], _delta2),
}


def _family(sid: str):
    sid = canonical_id(sid)
    if sid in FAMILIES:
        return sid, FAMILIES[sid]
    return sid, EXTRA_FORMS[sid]


def signature(sid: str) -> list[Param]:
    return _family(sid)[1][0]


def generate(sid: str, params: dict | None = None) -> Polynomial:
    sid, (sig, fn) = _family(sid)
    params = dict(params or {})
    names = {p.name for p in sig}
    unknown = set(params) - names
    if unknown:
        raise ValueError(f"unknown parameter(s) for {sid}: {sorted(unknown)}")
    missing = names - set(params)
    if missing:
        raise ValueError(f"missing parameter(s) for {sid}: {sorted(missing)}")
    values = {p.name: p.coerce(params[p.name]) for p in sig}
    return fn(values)


def random_params(sid: str, rng: random.Random, span: int = 5) -> dict:
    return {p.name: p.random(rng, span) for p in signature(sid)}


# catalog data


@lru_cache(maxsize=None)
def catalog_data() -> dict:
    text = resources.files("cubicgit").joinpath("data/strata.json").read_text()
    return json.loads(text)


@dataclass
class StratumEntry:
    id: str
    symbol: str
    params: list[Param]
    generator: Callable
    dimension: int
    stabilizer_dim: int
    normal_form: str
    notes: list = field(default_factory=list)

    def generate(self, params=None) -> Polynomial:
        return generate(self.id, params)


def catalog(data: dict | None = None) -> dict[str, StratumEntry]:
    data = data or catalog_data()
    out = {}
    for sid, rec in data["strata"].items():
        sig, fn = FAMILIES[sid]
        out[sid] = StratumEntry(
            sid, GREEK[sid], sig, fn, rec["dimension"], rec["stabilizer_dim"], rec["normal_form"],
            rec.get("notes", []),
        )
    return out


# stabilizers


def stabilizer_system(f: Polynomial) -> RationalMatrix:
    """Columns indexed by X_ij (i,j < n); rows by the monomials of f's degree, plus a trace row."""
    n = f.n
    d = f.degree()
    mons = monomials(n, d)
    index = {m: k for k, m in enumerate(mons)}
    grads = [partial(f, i) for i in range(n)]
    cols = []
    for i in range(n):
        for j in range(n):
            col = [Fraction(0)] * (len(mons) + 1)
            # X_ij acts as x_j d/dx_i
            for e, c in grads[i].terms.items():
                e2 = list(e)
                e2[j] += 1
                col[index[tuple(e2)]] += c
            col[-1] = Fraction(int(i == j))
            cols.append(col)
    return RationalMatrix(cols, len(mons) + 1).transpose()


def stabilizer_dim(f: Polynomial) -> int:
    """Dimension of the traceless Lie-algebra stabilizer of f."""
    if f.is_zero():
        raise ValueError("stabilizer of the zero form")
    A = stabilizer_system(f)
    return f.n * f.n - A.rank()


def _flatten(sid: str, params: dict) -> list[Fraction]:
    flat = []
    for p in signature(sid):
        v = params[p.name]
        if p.kind == "rational":
            flat.append(Fraction(v))
        elif p.kind == "form":
            flat.extend(Fraction(c) for c in v)
        else:
            flat.extend(Fraction(c) for row in v for form in row for c in form)
    return flat


def _unflatten(sid: str, flat: Sequence) -> dict:
    out, k = {}, 0
    for p in signature(sid):
        if p.kind == "rational":
            out[p.name] = flat[k]
            k += 1
        elif p.kind == "form":
            m = len(monomials(len(p.variables), p.degree))
            out[p.name] = list(flat[k:k + m])
            k += m
        else:
            out[p.name] = [[list(flat[k + 18 * r + 6 * c:k + 18 * r + 6 * c + 6]) for c in range(3)] for r in range(3)]
            k += 54
    return out


def _coords(f: Polynomial, mons) -> list[Fraction]:
    return [f.terms.get(m, Fraction(0)) for m in mons]


def orbit_tangent(f: Polynomial) -> list[list[Fraction]]:
    mons = monomials(f.n, f.degree())
    grads = [partial(f, i) for i in range(f.n)]
    return [_coords(X[j] * grads[i], mons) for i in range(f.n) for j in range(f.n)]


def _swept_dimension(sid: str, params: dict) -> int:
    flat = _flatten(sid, params)
    f = generate(sid, params)
    mons = monomials(f.n, f.degree())
    orbit = orbit_tangent(f)
    derivs = []
    for k in range(len(flat)):
        vals = []
        for s in (-2, -1, 1, 2):
            q = list(flat)
            q[k] += s
            vals.append(_coords(generate(sid, _unflatten(sid, q)), mons))
        derivs.append([(a - 8 * b + 8 * c - d) / 12 for a, b, c, d in zip(*vals)])
    r0 = RationalMatrix(orbit, len(mons)).rank()
    r1 = RationalMatrix(orbit + derivs, len(mons)).rank() if derivs else r0
    return r1 - r0


def stratum_dimension(sid: str, rng: random.Random | None = None, draws: int = 3) -> int:
    """Dimension of the set of orbits swept by a family near a general member.

    rank(parameter derivatives + orbit tangent) - rank(orbit tangent), the
    maximum over a few random parameter values since special members (tau at
    a = 1, say) drop rank.  Parameters enter polynomially of degree at most 3,
    so the five-point stencil gives exact derivatives.
    """
    rng = rng or random.Random(0)
    return max(_swept_dimension(sid, random_params(sid, rng)) for _ in range(draws))


# singular loci


def verify_singular_on_param(f: Polynomial, P: Parametrization) -> bool:
    """All partials of f vanish identically on the parametrized locus."""
    from .poly import compose

    if len(P.components) != f.n:
        raise ValueError("parametrization has the wrong number of components")
    if all(c.is_zero() for c in P.components):
        return False
    if not compose(f, list(P.components)).is_zero():
        return False
    return all(compose(partial(f, i), list(P.components)).is_zero() for i in range(f.n))


def is_singular_point(f: Polynomial, p: Sequence) -> bool:
    return f.evaluate(p) == 0 and all(partial(f, i).evaluate(p) == 0 for i in range(f.n))


def verify_singular_on_points(f: Polynomial, points) -> bool:
    pts = list(points)
    return bool(pts) and all(any(p) and is_singular_point(f, p) for p in pts)


def _par(exprs: Sequence[str], k: int, name: str) -> Parametrization:
    return Parametrization(tuple(parse(e, k) for e in exprs), name)


def veronese() -> Parametrization:
    """Rank-one symmetric matrices v v^T, arranged to match the omega matrix."""
    return _par(["x0^2", "x0*x1", "x0*x2", "x1*x2", "x2^2", "x1^2"], 3, "Veronese surface")


def rational_normal_quartic() -> Parametrization:
    return _par(["x0^4", "x0^3*x1", "x0^2*x1^2", "x0*x1^3", "x1^4", "0"], 2, "rational normal quartic")


def line_L() -> Parametrization:
    return _par(["x0", "x1", "0", "0", "0", "0"], 2, "line x2=...=x5=0")


def conic_gamma2() -> Parametrization:
    return _par(["0", "0", "0", "x0*x1", "x0^2", "x1^2"], 2, "conic x3^2=x4x5 in x0=x1=x2=0")


def alpha2_base_point(rng: random.Random, span: int = 6):
    """A rational point of the base locus together with parameters (a, b) putting it there."""
    while True:
        x2, x3, x4, x5 = (Fraction(rng.randint(-span, span)) for _ in range(4))
        if x3 == 0:
            continue
        a = -(x4**2 + x5**2) / x3**2
        b = -(x2**2 + x4**2) / x3**2
        if a == 0 or b == 0 or a == b:
            continue
        return {"a": a, "b": b}, (0, 0, x2, x3, x4, x5)


def phi_with_rank_one_points(rng: random.Random, span: int = 4):
    """Determinantal cubic whose matrix is rank one at the six coordinate points.

    Returns (params, points); the points are singular by the cofactor identity.
    """
    while True:
        us = [[rng.randint(-span, span) for _ in range(3)] for _ in range(N)]
        vs = [[rng.randint(-span, span) for _ in range(3)] for _ in range(N)]
        if any(not any(u) or not any(v) for u, v in zip(us, vs)):
            continue
        L = [[[us[j][r] * vs[j][c] for j in range(N)] for c in range(3)] for r in range(3)]
        params = {"L": L}
        f = generate("phi", params)
        if f.is_zero():
            continue
        pts = [tuple(int(i == j) for i in range(N)) for j in range(N)]
        return params, pts


def matrix_at(L, p) -> RationalMatrix:
    forms = [[_coerce_form(v, tuple(range(N)), 1, "L") for v in row] for row in L]
    return RationalMatrix([[g.evaluate(p) for g in row] for row in forms], 3)


# torus checks


def torus_semistable(f: Polynomial) -> dict:
    """Semistability for the diagonal torus: no 1-PS with all weights negative on the support."""
    S = MonomialSet.of_support(f)
    w = find_witness(WeightPolytopeQuery(S, strict=True, normalized=False))
    if isinstance(w, Infeasible):
        return {"semistable": True, "certificate": None}
    return {"semistable": False, "certificate": w}


def torus_unstable_witness(f: Polynomial):
    r = torus_semistable(f)
    return r["certificate"]


# shape matching


FAMILY_TORI = {
    "alpha": (2, 2, -1, -1, -1, -1),
    "beta": (2, 1, 0, 0, -1, -2),
    "gamma": (4, 1, 1, -2, -2, -2),
    "delta": (2, 0, 0, 0, -1, -1),
}


def family_support(sid: str) -> MonomialSet:
    """Generic support of a torus-invariant family: all monomials of weight zero."""
    return sign_partition(OnePS(FAMILY_TORI[sid]), 3).zero


TAU_SUPPORT = ((1, 0, 0, 2, 0, 0), (1, 0, 0, 0, 1, 1), (0, 2, 0, 0, 1, 0), (0, 1, 1, 1, 0, 0), (0, 0, 2, 0, 0, 1))
TAU_INVARIANT = (1, -1, 1, -2, 1)  # c1 c3 c5 / (c2 c4^2) is torus invariant


def relabel(f: Polynomial, perm: Sequence[int]) -> Polynomial:
    """Rename x_i as x_{perm[i]}."""
    out = {}
    for e, c in f.terms.items():
        e2 = [0] * f.n
        for i, k in enumerate(e):
            e2[perm[i]] += k
        out[tuple(e2)] = c
    return Polynomial(f.n, out)


def _relabel_exp(e, perm):
    e2 = [0] * len(e)
    for i, k in enumerate(e):
        e2[perm[i]] += k
    return tuple(e2)


def find_relabeling(f: Polynomial, target_support, exact: bool = False):
    target = set(target_support)
    sup = list(f.terms)
    for perm in permutations(range(f.n)):
        img = {_relabel_exp(e, perm) for e in sup}
        if (img == target) if exact else (img <= target):
            return perm
    return None


def _is_zeta_shape(f: Polynomial) -> bool:
    if len(f) != 2:
        return False
    a, b = list(f.terms)
    if any(k > 1 for k in a + b):
        return False
    return all(x + y == 1 for x, y in zip(a, b))


def tau_parameter(f: Polynomial, perm) -> dict:
    """Torus invariant of a tau-shaped form and the parameter values it allows."""
    g = relabel(f, perm)
    c = [g.coeff(m) for m in TAU_SUPPORT]
    if any(v == 0 for v in c):
        return {"invariant": None, "a": [Fraction(0)] if c[4] == 0 and all(c[:4]) else []}
    inv = Fraction(1)
    for v, k in zip(c, TAU_INVARIANT):
        inv *= v**k
    # -a/(a+1)^2 = inv  <=>  inv a^2 + (2 inv + 1) a + inv = 0
    disc = 4 * inv + 1
    roots = []
    num, den = disc.numerator, disc.denominator
    rn, rd = _isqrt_exact(num), _isqrt_exact(den)
    if rn is not None and rd is not None:
        s = Fraction(rn, rd)
        roots = sorted({(-(2 * inv + 1) + s) / (2 * inv), (-(2 * inv + 1) - s) / (2 * inv)})
    return {"invariant": inv, "a": roots}


def _isqrt_exact(n: int):
    if n < 0:
        return None
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


def identify(f: Polynomial) -> dict | None:
    """Match a form against the torus-recognizable shapes: zeta, tau/omega, alpha..delta."""
    if f.is_zero():
        return None
    if _is_zeta_shape(f):
        return {"id": "zeta", "method": "support of two complementary squarefree monomials"}
    if len(f) in (4, 5):
        perm = find_relabeling(f, TAU_SUPPORT, exact=False)
        if perm is not None:
            info = tau_parameter(f, perm)
            if len(f) == 5 or info["a"]:
                sid = "omega" if Fraction(1) in info["a"] else "tau"
                return {"id": sid, "method": "tau support after relabeling", "relabeling": list(perm),
                        "tau_invariant": None if info["invariant"] is None else str(info["invariant"]),
                        "a": [str(a) for a in info["a"]]}
    for relabeled in (False, True):
        for sid in ("beta", "gamma", "delta", "alpha"):
            perm = tuple(range(f.n))
            if relabeled:
                perm = find_relabeling(f, family_support(sid).as_frozenset())
                if perm is None:
                    continue
            params = match_family(relabel(f, perm), sid)
            if params is not None:
                out = {"id": sid, "method": "family support and parameter solve"}
                if relabeled:
                    out["relabeling"] = list(perm)
                return out
    return None


def match_family(f: Polynomial, sid: str) -> dict | None:
    """Parameters putting f exactly into a torus-invariant family, or None.

    These families are linear in their parameters, so this is one exact
    linear solve against the images of the unit parameter vectors.
    """
    if not set(f.terms) <= family_support(sid).as_frozenset():
        return None
    size = len(_flatten(sid, random_params(sid, random.Random(0))))
    mons = sorted(family_support(sid).as_frozenset())
    cols = []
    for k in range(size):
        e = [Fraction(0)] * size
        e[k] = Fraction(1)
        cols.append(_coords(generate(sid, _unflatten(sid, e)), mons))
    A = RationalMatrix(cols, len(mons)).transpose()
    sol = A.solve(_coords(f, mons))
    if sol is None:
        return None
    return _unflatten(sid, list(sol))


class NoLimit(ValueError):
    """mu(f, lambda) > 0, so the limit does not exist."""


def degeneration_limit(sid: str, params: dict | None, lam: OnePS, pre_change: LinearChange | None = None) -> dict:
    f = generate(sid, params)
    if pre_change is not None:
        f = substitute(f, pre_change)
    m = mu(f, lam)
    if m > 0:
        raise NoLimit(f"mu = {m} > 0 for {lam}")
    g = limit(f, lam)
    hit = identify(g)
    return {"limit": g, "matched": hit["id"] if hit else None, "match": hit}


@lru_cache(maxsize=4)
def _torus_grid(bound: int, n: int = N) -> np.ndarray:
    rng = np.arange(-bound, bound + 1)
    grids = np.stack(np.meshgrid(*([rng] * (n - 1)), indexing="ij"), -1).reshape(-1, n - 1)
    last = -grids.sum(1)
    L = np.column_stack([grids, last])
    L = L[(np.abs(last) <= bound) & (L != 0).any(1)]
    # canonical order: smaller max |a_i| first, then lexicographic
    key = np.abs(L).max(1)
    order = np.lexsort(tuple(L[:, k] for k in range(n - 1, -1, -1)) + (key,))
    return L[order]


def search_degeneration(f: Polynomial, target: str, bound: int = 6):
    """First torus 1-PS (max|a_i| <= bound, canonical order) whose limit matches ``target``.

    Returns (lam, limit, match) or None.
    """
    sup = list(f.terms)
    E = np.array(sup, dtype=np.int64).T
    L = _torus_grid(bound, f.n)
    W = L @ E
    ok = (W <= 0).all(1) & (W < 0).any(1)
    tried = {}
    for idx in np.nonzero(ok)[0]:
        zero = tuple(bool(v) for v in (W[idx] == 0))
        hit = tried.get(zero)
        if hit is None:
            g = Polynomial(f.n, {m: f.terms[m] for m, z in zip(sup, zero) if z})
            m = identify(g) if not g.is_zero() else None
            hit = (g, m)
            tried[zero] = hit
        g, m = hit
        if m is not None and m["id"] == target:
            return OnePS(L[idx].tolist()), g, m
    return None


# linear changes recorded in the catalog


def linear_change_from_data(rows) -> LinearChange:
    return LinearChange([[Fraction(v) for v in row] for row in rows])


def elementary_change(i: int, j: int, c) -> LinearChange:
    """x_i -> x_i + c x_j."""
    M = [[Fraction(int(r == k)) for k in range(N)] for r in range(N)]
    M[i][j] = Fraction(c)
    return LinearChange(M)


def chi_to_omega_change(a) -> LinearChange:
    """Coordinates with y2 = x2 + 2a x5, y5 = x2 - a x5; omega(y) = -chi(a, 0)(x)."""
    a = Fraction(a)
    M = [[Fraction(int(r == k)) for k in range(N)] for r in range(N)]
    M[2] = [0, 0, 1, 0, 0, 2 * a]
    M[5] = [0, 0, 1, 0, 0, -a]
    return LinearChange(M)


def tau_as_determinant(a) -> list[list[Polynomial]]:
    """A matrix of linear forms with det = tau(a)."""
    x0, x1, x2, x3, x4, x5 = X
    return [[-x0, -x1, -a * x2], [x1, x5, x3], [x2, x3, x4]]


# incidence graph


def _edge_params(rec: dict) -> dict:
    return {k: v for k, v in rec.get("params", {}).items()}


def verify_edge(edge: dict, rng: random.Random | None = None) -> dict:
    """Run the recorded verification for one incidence arrow."""
    rng = rng or random.Random(0)
    src, dst, method = edge["source"], edge["target"], edge["method"]
    out = {"source": src, "target": dst, "method": method, "verified": False}
    if method == "support":
        g = generate(dst, random_params(dst, rng)) if signature(dst) else generate(dst, {})
        perm = edge.get("relabeling")
        if perm is not None:
            g = relabel(g, perm)
        if edge.get("invariant_under"):
            lam = OnePS(edge["invariant_under"])
            out["invariant"] = all(weight(m, lam) == 0 for m in generate(dst, random_params(dst, rng)).terms)
        out["verified"] = set(g.terms) <= family_support(src).as_frozenset() and out.get("invariant", True)
    elif method == "specialization":
        params = random_params(src, rng)
        params.update({k: v for k, v in edge["set"].items()})
        lhs = generate(src, params)
        dparams = {}
        for k, v in edge.get("target_params", {}).items():
            dparams[k] = params[v] if isinstance(v, str) and v in params else v
        # parameters passed through unchanged
        for p in signature(dst):
            if p.name not in dparams:
                dparams[p.name] = params[p.name]
        rhs = generate(dst, dparams)
        out["verified"] = lhs == rhs
    elif method == "parameter_form":
        # the source's linear-form parameter is set to a multiple of a variable
        params = random_params(src, rng)
        dparams = random_params(dst, rng)
        for k in edge.get("shared", []):
            params[k] = dparams[k]
        var, coef_name = edge["form_param"], edge["coefficient"]
        params[var] = dparams[coef_name] * X[edge["variable"]]
        out["verified"] = generate(src, params) == generate(dst, dparams)
    elif method == "linear_change":
        params = random_params(src, rng)
        params.update(edge["set"])
        f = generate(src, params)
        T = chi_to_omega_change(params["a"])
        out["verified"] = substitute(generate(dst, {}), T) == -f
    elif method == "determinantal":
        a = random_params(dst, rng)["a"]
        out["verified"] = det3(tau_as_determinant(a)) == generate(dst, {"a": a})
    elif method == "degeneration":
        params = {k: Fraction(v) for k, v in edge["params"].items()}
        pre = linear_change_from_data(edge["pre_change"]) if edge.get("pre_change") else None
        lam = OnePS(edge["lambda"])
        res = degeneration_limit(src, params, lam, pre)
        out["limit"] = str(res["limit"])
        out["match"] = res.get("match")
        out["lambda"] = list(lam.weights)
        matched = res["matched"] == dst or (dst == "tau" and res["matched"] == "omega")
        # the recorded 1-PS must also be what a fresh bounded search finds
        f = generate(src, params)
        if pre is not None:
            f = substitute(f, pre)
        hit = search_degeneration(f, dst, edge.get("search_bound", 6))
        out["search"] = None if hit is None else list(hit[0].weights)
        out["verified"] = matched and hit is not None
    else:
        raise ValueError(f"unknown verification method {method}")
    return out


def incidence_graph(verify: bool = True, seed: int = 0, data: dict | None = None) -> dict:
    data = data or catalog_data()
    rng = random.Random(seed)
    nodes = [{"id": sid, "symbol": GREEK[sid], "dimension": rec["dimension"]} for sid, rec in data["strata"].items()]
    edges = []
    for e in data["incidences"]:
        item = {"source": e["source"], "target": e["target"], "method": e["method"]}
        if verify:
            item.update(verify_edge(e, rng))
        edges.append(item)
    return {"nodes": nodes, "edges": edges}


def graph_to_dot(graph: dict) -> str:
    lines = ["digraph incidence {"]
    for n in graph["nodes"]:
        lines.append(f'  {n["id"]} [label="{n["symbol"]} ({n["dimension"]})"];')
    for e in graph["edges"]:
        status = e.get("verified")
        label = e["method"] + ("" if status is None else (" ok" if status else " FAILED"))
        lines.append(f'  {e["source"]} -> {e["target"]} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# family analyses


def pencil_discriminant(q1: Polynomial, q2: Polynomial, variables) -> Polynomial:
    """det(s*Q1 + t*Q2) as a binary form in s, t (two variables)."""
    k = len(variables)

    def sym(q):
        A = [[Fraction(0)] * k for _ in range(k)]
        pos = {v: i for i, v in enumerate(variables)}
        for e, c in q.terms.items():
            idx = [pos[i] for i, m in enumerate(e) for _ in range(m)]
            i, j = idx
            if i == j:
                A[i][i] += c
            else:
                A[i][j] += c / 2
                A[j][i] += c / 2
        return A

    A, B = sym(q1), sym(q2)
    s, t = Polynomial.var(2, 0), Polynomial.var(2, 1)
    M = [[s * A[i][j] + t * B[i][j] for j in range(k)] for i in range(k)]
    return determinant(M)


def alpha_branch(q1: Polynomial, q2: Polynomial) -> dict:
    """Root pattern of the pencil discriminant of an alpha form."""
    disc = pencil_discriminant(q1, q2, (2, 3, 4, 5))
    info = discriminant_binary(disc)
    if info["vanishes"] or info["max_multiplicity"] >= 3:
        branch = "unstable"
    elif info["max_multiplicity"] == 2:
        branch = "degenerates to zeta"
    else:
        branch = "closed orbit"
    return {"discriminant": str(disc), "branch": branch, **info}


def conics_transversal(q: Polynomial, q2: Polynomial, variables=(3, 4, 5)) -> bool:
    """Two plane conics meet in four distinct points iff their pencil discriminant is square-free."""
    disc = pencil_discriminant(q, q2, variables)
    info = discriminant_binary(disc)
    return not info["vanishes"] and info["distinct_roots"] and disc.degree() == 3


def gamma_conics(params: dict) -> tuple[Polynomial, Polynomial]:
    p = {k: Param(k, "form", (3, 4, 5), 1 if k != "q" else 2).coerce(v) for k, v in params.items()}
    return p["q"], p["l1"] * p["l3"] - p["l2"] * p["l2"]


def torus_limits(f: Polynomial, bound: int = 6):
    """Distinct nonzero proper torus limits of f, each with the first 1-PS producing it."""
    sup = list(f.terms)
    E = np.array(sup, dtype=np.int64).T
    L = _torus_grid(bound, f.n)
    W = L @ E
    ok = (W <= 0).all(1) & (W < 0).any(1)
    seen = set()
    for idx in np.nonzero(ok)[0]:
        zero = tuple(bool(v) for v in (W[idx] == 0))
        if zero in seen or not any(zero):
            continue
        seen.add(zero)
        g = Polynomial(f.n, {m: f.terms[m] for m, z in zip(sup, zero) if z})
        yield OnePS(L[idx].tolist()), g


def non_closed_evidence(f: Polynomial, bound: int = 6) -> dict:
    """Evidence that the orbit of f is not closed.

    Either an unstable torus witness, or a torus limit whose stabilizer is
    strictly larger: its orbit is then smaller, so it is a different orbit in
    the closure of the orbit of f.
    """
    w = torus_unstable_witness(f)
    if w is not None:
        return {"evidence": "unstable", "lambda": list(w.weights)}
    base = stabilizer_dim(f)
    for lam, g in torus_limits(f, bound):
        sg = stabilizer_dim(g)
        if sg > base:
            m = identify(g)
            return {"evidence": "degenerates", "lambda": list(lam.weights), "limit": str(g),
                    "stabilizer_dims": [base, sg], "limit_shape": m["id"] if m else None}
    return {"evidence": None, "stabilizer_dim": base}


# per-entry verification


def _unit(i: int) -> tuple:
    return tuple(int(k == i) for k in range(N))


def _stabilizer_check(sid: str, expected: int, rng: random.Random, samples: int) -> dict:
    dims = [stabilizer_dim(generate(sid, random_params(sid, rng))) for _ in range(samples)]
    equal = sum(d == expected for d in dims)
    ok = all(d >= expected for d in dims) and equal >= 0.95 * samples
    return {"ok": ok, "expected": expected, "equal": equal, "samples": samples, "min": min(dims)}


def _locus_checks(sid: str, rng: random.Random) -> dict:
    from .sing import classify_point, transversal_type_on_curve

    out = {}
    if sid == "omega":
        out["veronese"] = verify_singular_on_param(generate("omega"), veronese())
    elif sid in ("epsilon", "sigma", "chi"):
        f = generate(sid, random_params(sid, rng))
        out["quartic"] = verify_singular_on_param(f, rational_normal_quartic())
        t = (rng.randint(1, 5), rng.randint(1, 5))
        kind = str(transversal_type_on_curve(f, rational_normal_quartic(), t))
        want = "AtLeast(A(2))" if sid == "chi" else "Ainf"
        out["transversal"] = kind == want
    elif sid == "phi":
        params, pts = phi_with_rank_one_points(rng)
        out["rank_one_points"] = verify_singular_on_points(generate("phi", params), pts)
    elif sid == "alpha":
        params, p = alpha2_base_point(rng)
        f = generate("alpha2", params)
        out["line"] = verify_singular_on_param(f, line_L())
        out["base_locus_point"] = is_singular_point(f, p)
    elif sid == "beta":
        f = generate("beta", random_params("beta", rng))
        out["etilde8_points"] = all(classify_point(f, _unit(i))["tag"] == "Etilde(8)" for i in (0, 5))
    elif sid == "gamma":
        while True:
            l = [rng.randint(-3, 3) for _ in range(3)]
            lf = Param("l", "form", (3, 4, 5), 1).coerce(l)
            if conics_transversal(X[3] ** 2 - X[4] * X[5], X[4] * X[5] - lf * lf):
                break
        f = generate("gamma2", {"l": l})
        out["conic"] = verify_singular_on_param(f, conic_gamma2())
        out["etilde7_point"] = classify_point(f, _unit(0))["tag"] == "Etilde(7)"
    elif sid == "delta":
        f = generate("delta2", {"f": "x1^3+x2^3+x3^3"})
        out["etilde6_points"] = all(classify_point(f, _unit(i))["tag"] == "Etilde(6)" for i in (0, 4, 5))
    elif sid == "tau":
        f = generate("tau", random_params("tau", rng))
        out["rank_one_points"] = verify_singular_on_points(f, [_unit(0), _unit(4), _unit(5)])
    elif sid == "zeta":
        out["line"] = verify_singular_on_param(generate("zeta"), line_L())
    return out


def verify_entry(sid: str, seed: int = 0, samples: int = 20, data: dict | None = None) -> dict:
    sid = canonical_id(sid)
    data = data or catalog_data()
    rec = data["strata"][sid]
    rng = random.Random(f"{seed}:{sid}")
    checks = {
        "stabilizer_dim": _stabilizer_check(sid, rec["stabilizer_dim"], rng, samples if signature(sid) else 1),
    }
    dim = stratum_dimension(sid, rng)
    checks["dimension"] = {"ok": dim == rec["dimension"], "expected": rec["dimension"], "computed": dim}
    for name, ok in _locus_checks(sid, rng).items():
        checks[name] = {"ok": bool(ok)}
    edges = [verify_edge(e, rng) for e in data["incidences"] if sid in (e["source"], e["target"])]
    checks["incidences"] = {
        "ok": all(e["verified"] for e in edges),
        "edges": [f'{e["source"]}->{e["target"]}' for e in edges],
    }
    return {"id": sid, "symbol": GREEK[sid], "ok": all(c["ok"] for c in checks.values()), "checks": checks}
