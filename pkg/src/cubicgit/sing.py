"""Classification of hypersurface singularities at a rational point.

The germ is reduced to its corank-many essential variables by the splitting
lemma, computed as a truncated power series.  The residual is then sorted by
its leading quasihomogeneous part: A_k by vanishing order, D_k by the
x^2 y normal form with square completion, E_6/E_7/E_8 and the simply elliptic
Etilde_r by Newton weights and exact square-free or smoothness tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import RationalMatrix
from .poly import (
    LinearChange,
    NotOnHypersurface,
    NotSingularPoint,
    Polynomial,
    compose,
    localize,
    partial,
)

DEFAULT_JET = 12


# result type


@dataclass(frozen=True)
class SingularityClass:
    kind: str
    k: int | None = None
    bound: "SingularityClass | None" = None
    reason: str | None = None

    def __str__(self):
        if self.kind in ("A", "D", "E", "Etilde"):
            return f"{self.kind}({self.k})"
        if self.kind == "AtLeast":
            return f"AtLeast({self.bound})"
        if self.kind == "Unresolved":
            return f"Unresolved({self.reason})"
        return self.kind

    @property
    def tag(self) -> str:
        return str(self)

    @property
    def is_simple(self) -> bool:
        return self.kind in ("A", "D", "E")


def A(k: int) -> SingularityClass:
    return SingularityClass("A", k)


def D(k: int) -> SingularityClass:
    return SingularityClass("D", k)


def E(k: int) -> SingularityClass:
    if k not in (6, 7, 8):
        raise ValueError("E_r needs r in 6, 7, 8")
    return SingularityClass("E", k)


def Etilde(k: int) -> SingularityClass:
    if k not in (6, 7, 8):
        raise ValueError("Etilde_r needs r in 6, 7, 8")
    return SingularityClass("Etilde", k)


def AtLeast(c: SingularityClass) -> SingularityClass:
    return SingularityClass("AtLeast", bound=c)


def Unresolved(reason: str) -> SingularityClass:
    return SingularityClass("Unresolved", reason=reason)


AINF = SingularityClass("Ainf")
DINF = SingularityClass("Dinf")
SMOOTH = SingularityClass("Smooth")
NOT_SINGULAR = SingularityClass("NotSingular")


@dataclass(frozen=True)
class WeightSystem:
    """Quasihomogeneous weights of the local variables (weighted degree 1)."""

    weights: tuple[Fraction, ...]

    def __init__(self, weights):
        w = tuple(Fraction(x) for x in weights)
        if any(not 0 < x <= 1 for x in w):
            raise ValueError("weights must lie in (0, 1]")
        object.__setattr__(self, "weights", w)

    def degree(self, e: Sequence[int]) -> Fraction:
        return sum((k * w for k, w in zip(e, self.weights)), Fraction(0))

    def leading_part(self, f: Polynomial) -> Polynomial:
        """Terms of weighted degree exactly 1."""
        return Polynomial(f.n, {e: c for e, c in f.terms.items() if self.degree(e) == 1})

    def below(self, f: Polynomial) -> Polynomial:
        return Polynomial(f.n, {e: c for e, c in f.terms.items() if self.degree(e) < 1})


def etilde_weights(r: int, extra: int = 0) -> WeightSystem:
    """Etilde_6: (1/3,1/3,1/3), Etilde_7: (1/4,1/4), Etilde_8: (1/3,1/6); 1/2 on squared variables."""
    base = {6: (Fraction(1, 3),) * 3, 7: (Fraction(1, 4),) * 2, 8: (Fraction(1, 3), Fraction(1, 6))}[r]
    return WeightSystem(base + (Fraction(1, 2),) * extra)


# univariate helpers: coefficient lists, lowest degree first


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _deriv(p):
    return _trim([i * c for i, c in enumerate(p)][1:])


def _divmod(a, b):
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        c = r[-1] / b[-1]
        q[shift] = c
        for i, bc in enumerate(b):
            r[shift + i] -= c * bc
        r = _trim(r)
    return _trim(q), r


def _gcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _divmod(a, b)[1]
    if not a:
        return []
    return [c / a[-1] for c in a]


def squarefree_decomposition(p) -> list[list[Fraction]]:
    """Yun's algorithm; result[i] is the product of the factors of multiplicity i+1."""
    p = _trim(p)
    if len(p) <= 1:
        return []
    out = []
    a = _gcd(p, _deriv(p))
    b = _divmod(p, a)[0]
    c = _divmod(_deriv(p), a)[0]
    d = _trim([x - y for x, y in _zip_pad(c, _deriv(b))])
    while len(b) > 1:
        a = _gcd(b, d)
        out.append(a)
        b = _divmod(b, a)[0]
        c = _divmod(d, a)[0]
        d = _trim([x - y for x, y in _zip_pad(c, _deriv(b))])
    while out and len(out[-1]) <= 1:
        out.pop()
    return out


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return zip(list(a) + [0] * (n - len(a)), list(b) + [0] * (n - len(b)))


# binary forms


def _binary_coeffs(form: Polynomial, variables=None) -> tuple[list[Fraction], int]:
    """Coefficients c_i of x^(k-i) y^i for a binary form in the given two variables."""
    if variables is None:
        used = sorted(form.variables())
        if len(used) > 2:
            raise ValueError("not a binary form")
        if form.n == 2:
            variables = (0, 1)
        elif len(used) == 2:
            variables = tuple(used)
        elif used:
            variables = (used[0], used[0] + 1 if used[0] + 1 < form.n else used[0] - 1)
        else:
            variables = (0, 1)
    if not form.is_homogeneous():
        raise ValueError("binary form must be homogeneous")
    k = form.degree()
    i, j = variables
    coeffs = [Fraction(0)] * (k + 1)
    for e, c in form.terms.items():
        if any(v for idx, v in enumerate(e) if idx not in (i, j)):
            raise ValueError("form involves other variables")
        coeffs[e[j]] = c
    return coeffs, k


def binary_multiplicities(form: Polynomial, variables=None) -> list[int] | None:
    """Multiplicities of the distinct roots over C (sorted), None for the zero form."""
    if form.is_zero():
        return None
    coeffs, k = _binary_coeffs(form, variables)
    # F(x, 1) = sum c_i x^(k-i)
    uni = _trim(list(reversed(coeffs)))
    mults = []
    for i, part in enumerate(squarefree_decomposition(uni)):
        mults += [i + 1] * (len(part) - 1)
    inf = k - (len(uni) - 1)
    if inf:
        mults.append(inf)
    return sorted(mults, reverse=True)


def discriminant_binary(form: Polynomial, k: int | None = None, variables=None) -> dict:
    if form.is_zero():
        return {"vanishes": True, "distinct_roots": False, "max_multiplicity": None}
    if k is not None and form.degree() != k:
        raise ValueError(f"form has degree {form.degree()}, expected {k}")
    mults = binary_multiplicities(form, variables)
    return {
        "vanishes": False,
        "distinct_roots": all(m == 1 for m in mults),
        "max_multiplicity": max(mults) if mults else 0,
        "multiplicities": mults,
    }


def is_squarefree_binary(form: Polynomial, variables=None) -> bool:
    if form.is_zero():
        return False
    return all(m == 1 for m in binary_multiplicities(form, variables))


def quartic_invariants(form: Polynomial, variables=None) -> tuple[Fraction, Fraction]:
    """I and J of a x^4 + 4b x^3y + 6c x^2y^2 + 4d xy^3 + e y^4."""
    c, k = _binary_coeffs(form, variables)
    if k != 4:
        raise ValueError("not a binary quartic")
    a, b, cc, d, e = c[0], c[1] / 4, c[2] / 6, c[3] / 4, c[4]
    I = a * e - 4 * b * d + 3 * cc * cc
    J = a * cc * e + 2 * b * cc * d - a * d * d - b * b * e - cc**3
    return I, J


def j_invariant_quartic(form: Polynomial, variables=None) -> Fraction:
    I, J = quartic_invariants(form, variables)
    disc = I**3 - 27 * J**2
    if disc == 0:
        raise ValueError("singular binary quartic has no j-invariant")
    return 1728 * I**3 / disc


def j_invariant_cubic(form: Polynomial, variables=None) -> Fraction:
    """j of the curve branched over the roots of a cubic and infinity."""
    c, k = _binary_coeffs(form, variables)
    if k != 3:
        raise ValueError("not a binary cubic")
    quartic = Polynomial(2, {(4 - i, i): c[i - 1] for i in range(1, 5)})
    return j_invariant_quartic(quartic)


# plane cubics


def _quadric_row(q: Polynomial) -> list[Fraction]:
    mons = [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
    return [q.coeff(m) for m in mons]


def ternary_resultant_quadrics(q1: Polynomial, q2: Polynomial, q3: Polynomial) -> Fraction:
    """Resultant (up to a nonzero constant) of three ternary quadrics.

    Six rows: the quadrics and the partial derivatives of their Jacobian.
    """
    from .poly import determinant

    jac = determinant([[partial(q, i) for i in range(3)] for q in (q1, q2, q3)])
    rows = [_quadric_row(q) for q in (q1, q2, q3)] + [_quadric_row(partial(jac, i)) for i in range(3)]
    return RationalMatrix(rows, 6).det()


def plane_cubic_discriminant(F: Polynomial) -> Fraction:
    """Zero iff the ternary cubic F defines a singular (or empty-degenerate) curve."""
    if F.n != 3:
        raise ValueError("plane cubic needs three variables")
    if F.is_zero():
        return Fraction(0)
    if not F.is_homogeneous() or F.degree() != 3:
        raise ValueError("not a ternary cubic")
    return ternary_resultant_quadrics(partial(F, 0), partial(F, 1), partial(F, 2))


def is_smooth_plane_cubic(F: Polynomial) -> bool:
    return plane_cubic_discriminant(F) != 0


# local reduction


def _drop(g: Polynomial, chart: int) -> Polynomial:
    return Polynomial(g.n - 1, {e[:chart] + e[chart + 1 :]: c for e, c in g.terms.items()})


def _sym_matrix(q: Polynomial) -> list[list[Fraction]]:
    m = q.n
    A = [[Fraction(0)] * m for _ in range(m)]
    for e, c in q.terms.items():
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        i, j = idx
        if i == j:
            A[i][i] += c
        else:
            A[i][j] += c / 2
            A[j][i] += c / 2
    return A


def diagonalize(q: Polynomial) -> tuple[list[list[Fraction]], list[Fraction]]:
    """M with q(M u) = sum c_i u_i^2 over i < rank; returns (M, [c_i]).

    Symmetric Gaussian elimination by exact congruences.
    """
    m = q.n
    A = _sym_matrix(q)
    M = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]

    def col_op(dst, src, factor):
        # new basis vector dst := dst + factor * src
        for row in M:
            row[dst] += factor * row[src]
        for row in A:
            row[dst] += factor * row[src]
        for j in range(m):
            A[dst][j] += factor * A[src][j]

    def swap(i, j):
        if i == j:
            return
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in A:
            row[i], row[j] = row[j], row[i]
        A[i], A[j] = A[j], A[i]

    diag = []
    for k in range(m):
        piv = next((i for i in range(k, m) if A[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in range(k, m) for j in range(i + 1, m) if A[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            col_op(i, j, Fraction(1))
            piv = i
        swap(k, piv)
        p = A[k][k]
        for j in range(k + 1, m):
            if A[k][j] != 0:
                col_op(j, k, -A[k][j] / p)
        diag.append(p)
    return M, diag


def _linear_images(M: list[list[Fraction]]) -> list[Polynomial]:
    m = len(M)
    out = []
    for i in range(m):
        out.append(Polynomial(m, {tuple(int(j == k) for k in range(m)): M[i][j] for j in range(m)}))
    return out


@dataclass
class Reduction:
    """Germ after the splitting lemma."""

    m: int
    rank: int
    diag: list
    M: list  # local coordinates x = M u
    residual: Polynomial  # polynomial in the corank variables (n = corank)
    jet_order: int

    @property
    def corank(self) -> int:
        return self.m - self.rank


def split(h_local: Polynomial, jet_order: int = DEFAULT_JET) -> Reduction:
    """Reduce a germ with zero constant and linear part to its residual."""
    m = h_local.n
    M, diag = diagonalize(h_local.homogeneous_part(2))
    r = len(diag)
    h = compose(h_local, _linear_images(M), trunc=jet_order)
    zero = Polynomial.zero(m)
    phi = [zero] * r
    rest = []
    for i in range(r):
        e = [0] * m
        e[i] = 1
        rest.append(partial(h, i) - Polynomial.monomial(e, 2 * diag[i]))
    varz = [Polynomial.var(m, j) for j in range(m)]
    for _ in range(jet_order + 1):
        images = phi + varz[r:]
        new = [compose(rest[i], images, trunc=jet_order - 1) * (Fraction(-1) / (2 * diag[i])) for i in range(r)]
        if new == phi:
            break
        phi = new
    res = compose(h, phi + varz[r:], trunc=jet_order)
    res2 = Polynomial(m - r, {e[r:]: c for e, c in res.terms.items()})
    return Reduction(m, r, diag, M, res2, jet_order)


def local_germ(f: Polynomial, p: Sequence, chart: int | None = None) -> tuple[Polynomial, int]:
    g, chart = localize(f, p, chart)
    if g.homogeneous_part(0):
        raise NotOnHypersurface(f"point {tuple(p)} does not lie on the hypersurface")
    if g.homogeneous_part(1):
        raise NotSingularPoint(f"point {tuple(p)} is a smooth point of the hypersurface")
    return _drop(g, chart), chart


# binary residual analysis


def _change2(F: Polynomial, images: list[Polynomial], trunc: int) -> Polynomial:
    return compose(F, images, trunc=trunc)


def _lin2(a, b) -> Polynomial:
    return Polynomial(2, {(1, 0): a, (0, 1): b})


def _root_forms(cubic: Polynomial) -> dict[int, list[tuple[Fraction, Fraction]]]:
    """Rational linear factors (a, b) meaning a*x + b*y, grouped by multiplicity.

    Only factors whose multiplicity class has degree one are returned, which
    covers the double and triple root cases of a binary cubic.
    """
    coeffs, k = _binary_coeffs(cubic, (0, 1))
    uni = _trim(list(reversed(coeffs)))  # F(x, 1)
    out: dict[int, list] = {}
    for i, part in enumerate(squarefree_decomposition(uni)):
        if len(part) == 2:  # x + c  <->  x + c*y
            out.setdefault(i + 1, []).append((Fraction(1), part[0] / part[1]))
    inf = k - (len(uni) - 1)
    if inf:
        out.setdefault(inf, []).append((Fraction(0), Fraction(1)))
    return out


def _complement(a, b):
    """A linear form independent of a*x + b*y."""
    return (Fraction(0), Fraction(1)) if a != 0 else (Fraction(1), Fraction(0))


def _transform_to(F: Polynomial, L1, L2, trunc: int) -> Polynomial:
    """Rewrite F in coordinates X = L1(x,y), Y = L2(x,y)."""
    mat = RationalMatrix([[L1[0], L1[1]], [L2[0], L2[1]]], 2)
    inv = mat.inverse()
    images = [_lin2(inv[0, 0], inv[0, 1]), _lin2(inv[1, 0], inv[1, 1])]
    return _change2(F, images, trunc)


def _pure_y(F: Polynomial) -> Polynomial:
    return Polynomial(2, {e: c for e, c in F.terms.items() if e[0] == 0})


def _d_series(F: Polynomial, J: int) -> SingularityClass:
    """F = X^2 Y + higher; returns D_k or a lower bound."""
    F = F / F.coeff((2, 1))
    for _ in range(4 * J):
        a = _pure_y(F).order()
        a = J + 1 if a < 0 else a
        lin = sorted(
            (e[1], c) for e, c in F.terms.items() if e[0] == 1 and 2 * e[1] - 1 <= a
        )
        if not lin:
            if a > J:
                return AtLeast(D(J))
            return D(a + 1)
        b, c = lin[0]
        shift = Polynomial(2, {(1, 0): 1, (0, b - 1): -c / 2})
        F = _change2(F, [shift, Polynomial.var(2, 1)], J)
        F = F / F.coeff((2, 1))
    return AtLeast(D(J))


def _e_series(F: Polynomial, J: int) -> tuple[SingularityClass, dict]:
    """F = X^3 + higher (no other cubic terms)."""
    F = F / F.coeff((3, 0))
    if F.coeff((0, 4)) != 0:
        return E(6), {"weights": ["1/3", "1/4"]}
    if F.coeff((1, 3)) != 0:
        return E(7), {"weights": ["1/3", "2/9"]}
    if F.coeff((0, 5)) != 0:
        return E(8), {"weights": ["1/3", "1/5"]}
    lead = etilde_weights(8).leading_part(F)
    below = etilde_weights(8).below(F)
    # the (X, Y^2) cubic must be reduced
    cub = Polynomial(2, {(e[0], e[1] // 2): c for e, c in lead.terms.items()})
    info = {"weights": ["1/3", "1/6"], "leading_form": str(lead)}
    if below.is_zero() and is_squarefree_binary(cub):
        return Etilde(8), info
    return AtLeast(Etilde(8)), info


def classify_binary_residual(F: Polynomial, J: int = DEFAULT_JET) -> tuple[SingularityClass, dict]:
    """Corank-2 residual in two variables."""
    r3 = F.homogeneous_part(3)
    if r3.is_zero():
        r4 = F.homogeneous_part(4)
        info = {"weights": ["1/4", "1/4"], "leading_form": str(r4)}
        if is_squarefree_binary(r4, (0, 1)):
            info["j"] = str(j_invariant_quartic(r4, (0, 1)))
            return Etilde(7), info
        return AtLeast(Etilde(7)), info
    mults = binary_multiplicities(r3, (0, 1))
    if mults == [1, 1, 1]:
        return D(4), {"cubic_term": str(r3)}
    roots = _root_forms(r3)
    if mults == [2, 1]:
        L1 = roots[2][0]
        L2 = roots[1][0]
        G = _transform_to(F, L1, L2, J)
        return _d_series(G, J), {"cubic_term": str(r3)}
    L = roots[3][0]
    G = _transform_to(F, L, _complement(*L), J)
    cls, info = _e_series(G, J)
    info["cubic_term"] = str(r3)
    return cls, info


# public entry points


def classify_details(f: Polynomial, p: Sequence, chart: int | None = None, jet_order: int = DEFAULT_JET) -> dict:
    germ, chart = local_germ(f, p, chart)
    out = classify_germ_details(germ, jet_order)
    out["details"]["chart"] = chart
    return out


def classify_germ(h: Polynomial, jet_order: int = DEFAULT_JET) -> SingularityClass:
    """Classify a local germ given as a polynomial in local coordinates."""
    return classify_germ_details(h, jet_order)["class"]


def classify_germ_details(h: Polynomial, jet_order: int = DEFAULT_JET) -> dict:
    if h.homogeneous_part(0) or h.homogeneous_part(1):
        raise NotSingularPoint("germ has a constant or linear term")
    red = split(h.truncate(jet_order), jet_order)
    c = red.corank
    res = red.residual
    details: dict = {"rank": red.rank, "residual": str(res.truncate(6))}
    if c == 0:
        cls = A(1)
    elif c == 1:
        o = res.order()
        cls = AtLeast(A(jet_order)) if o < 0 else A(o - 1)
    elif c == 2:
        cls, info = classify_binary_residual(res, jet_order)
        details.update(info)
    elif c == 3:
        r3 = res.homogeneous_part(3)
        details["weights"] = ["1/3", "1/3", "1/3"]
        details["leading_form"] = str(r3)
        smooth = not r3.is_zero() and is_smooth_plane_cubic(r3)
        cls = Etilde(6) if smooth else AtLeast(Etilde(6))
    else:
        cls = Unresolved("corank>=4")
    return {"tag": str(cls), "class": cls, "corank": c, "details": details}


def classify_isolated(f: Polynomial, p: Sequence, chart: int | None = None, jet_order: int = DEFAULT_JET) -> SingularityClass:
    return classify_details(f, p, chart, jet_order)["class"]


def classify_point(f: Polynomial, p: Sequence, chart: int | None = None, jet_order: int = DEFAULT_JET) -> dict:
    """Like classify_details but reports smooth and off-hypersurface points as tags."""
    try:
        return classify_details(f, p, chart, jet_order)
    except NotOnHypersurface:
        return {"tag": str(NOT_SINGULAR), "class": NOT_SINGULAR, "corank": None, "details": {"on_hypersurface": False}}
    except NotSingularPoint:
        return {"tag": str(SMOOTH), "class": SMOOTH, "corank": None, "details": {"on_hypersurface": True}}


# singularities along curves


@dataclass(frozen=True)
class Parametrization:
    """Rational map into P^{n-1}: components are polynomials in the parameters."""

    components: tuple[Polynomial, ...]
    name: str = ""

    def __post_init__(self):
        if not self.components:
            raise ValueError("empty parametrization")
        k = self.components[0].n
        if any(c.n != k for c in self.components):
            raise ValueError("components use different parameter counts")
        if all(c.is_zero() for c in self.components):
            raise ValueError("parametrization is identically zero")

    @property
    def arity(self) -> int:
        return self.components[0].n

    def __call__(self, t: Sequence) -> tuple[Fraction, ...]:
        return tuple(c.evaluate(t) for c in self.components)

    def tangent_vectors(self, t: Sequence) -> list[tuple[Fraction, ...]]:
        return [tuple(partial(c, j).evaluate(t) for c in self.components) for j in range(self.arity)]


def _local_tangent(P: Parametrization, t, chart: int) -> list[Fraction]:
    p = P(t)
    pc = p[chart]
    for v in P.tangent_vectors(t):
        w = [v[i] / pc - p[i] * v[chart] / pc**2 for i in range(len(p)) if i != chart]
        if any(w):
            return w
    raise ValueError("parametrization is not immersive at this parameter value")


def transversal_type_on_curve(f: Polynomial, curve: Parametrization, t: Sequence, chart: int | None = None, jet_order: int = DEFAULT_JET) -> SingularityClass:
    p = curve(t)
    germ, chart = local_germ(f, p, chart)
    red = split(germ, jet_order)
    tau = _local_tangent(curve, t, chart)
    Minv = RationalMatrix(red.M, red.m).inverse()
    u = Minv @ tau
    r = red.rank
    if red.corank == 0:
        return Unresolved("isolated point")
    if any(u[:r]):
        return Unresolved("curve not tangent to the Hessian kernel")
    z = list(u[r:])
    if red.corank == 1:
        if red.residual.is_zero():
            return AINF
        return Unresolved("residual does not vanish along the curve")
    if red.corank != 2:
        return Unresolved(f"corank {red.corank} along the curve")
    # new coordinates: old = X * tau + Y * e, so tau is the X axis
    e = (Fraction(1), Fraction(0)) if z[1] != 0 else (Fraction(0), Fraction(1))
    images = [_lin2(z[0], e[0]), _lin2(z[1], e[1])]
    G = _change2(red.residual, images, jet_order)
    r3 = G.homogeneous_part(3)
    if r3.is_zero():
        return Unresolved("cubic term vanishes")
    if r3.coeff((3, 0)) != 0:
        return Unresolved("curve direction is not a root of the cubic term")
    if r3.coeff((2, 1)) != 0:
        return Unresolved("curve direction is a simple root of the cubic term")
    if r3.coeff((1, 2)) != 0:
        return DINF
    return AtLeast(A(2))
