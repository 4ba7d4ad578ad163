"""Closed formulas and the brute-force computations that check them.

* chi(I_C^2(3)) for a smooth curve of degree d and genus g in P^n,
* ranks of cubics singular along rational normal curves,
* the character of Sym^3(Sym^2 C^3) over SL3 via Freudenthal's formula.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, permutations
from math import comb

from .linalg import RationalMatrix
from .poly import Polynomial, compose, determinant, partial
from .weights import monomials


def euler_char_isq3(n: int, d: int, g: int) -> int:
    """chi(I_C^2(3)) = C(n+3,3) - (2n-1) d + (n+2)(g-1)."""
    if n < 3 or d < 1 or g < 0:
        raise ValueError("need n >= 3, d >= 1, g >= 0")
    return comb(n + 3, 3) - (2 * n - 1) * d + (n + 2) * (g - 1)


# cubics singular along a curve


def rational_normal_curve(n: int) -> list[Polynomial]:
    """s^n, s^(n-1) t, ..., t^n as binary forms."""
    return [Polynomial.monomial((n - i, i)) for i in range(n + 1)]


def rational_curve_in(n: int, d: int) -> list[Polynomial]:
    """Rational normal curve of degree d spanning a P^d inside P^n."""
    if not 1 <= d <= n:
        raise ValueError("need 1 <= d <= n")
    return rational_normal_curve(d) + [Polynomial.zero(2)] * (n - d)


def catalecticant(n: int, rows: int) -> list[list[Polynomial]]:
    """Hankel matrix [x_{i+j}] with the given number of rows, in n+1 variables."""
    cols = n + 2 - rows
    return [[Polynomial.var(n + 1, i + j) for j in range(cols)] for i in range(rows)]


def maximal_minors(M: list[list[Polynomial]]) -> list[Polynomial]:
    r = len(M)
    c = len(M[0])
    out = []
    for cols in combinations(range(c), r):
        out.append(determinant([[M[i][j] for j in cols] for i in range(r)]))
    return out


def coefficient_rank(forms: list[Polynomial]) -> int:
    n = forms[0].n
    d = forms[0].degree()
    mons = monomials(n, d)
    rows = [[f.terms.get(m, Fraction(0)) for m in mons] for f in forms]
    return RationalMatrix(rows, len(mons)).rank() if rows else 0


def singular_along(f: Polynomial, curve: list[Polynomial]) -> bool:
    return all(compose(partial(f, i), curve).is_zero() for i in range(f.n))


def cubics_singular_along(curve: list[Polynomial]) -> int:
    """Dimension of the space of cubics all of whose partials vanish on the curve."""
    n = len(curve)
    mons = monomials(n, 3)
    # column k: the partials of the k-th monomial restricted to the curve
    conditions: dict = {}
    for k, m in enumerate(mons):
        f = Polynomial.monomial(m)
        for i in range(n):
            r = compose(partial(f, i), curve)
            for e, c in r.terms.items():
                conditions.setdefault((i, e), {})[k] = c
    rows = [[row.get(k, Fraction(0)) for k in range(len(mons))] for row in conditions.values()]
    rank = RationalMatrix(rows, len(mons)).rank() if rows else 0
    return len(mons) - rank


def brute_force_isq3(n: int, d: int) -> int:
    """h^0(I_C^2(3)) for a rational normal curve of degree d in P^n, by linear algebra."""
    return cubics_singular_along(rational_curve_in(n, d))


def secant_minor_check(n: int = 5) -> dict:
    """3x3 minors of the 3x(n-1) catalecticant against cubics singular along the curve."""
    C = rational_normal_curve(n)
    minors = maximal_minors(catalecticant(n, 3))
    return {
        "minors": len(minors),
        "rank": coefficient_rank(minors),
        "all_singular_along_curve": all(singular_along(m, C) for m in minors),
        "kernel_dim": cubics_singular_along(C),
        "formula": euler_char_isq3(n, n, 0),
    }


# SL3 characters


def weyl_dim_sl3(a: int, b: int) -> int:
    return (a + 1) * (b + 1) * (a + b + 2) // 2


def to_dynkin(w) -> tuple[int, int]:
    """GL3 weight m1 e1 + m2 e2 + m3 e3 in fundamental-weight coordinates.

    Uses e1 = w1, e2 = w2 - w1, e3 = -w2.
    """
    m1, m2, m3 = w
    return (m1 - m2, m2 - m3)


def _dominated(mu, lam) -> bool:
    s1 = s2 = 0
    for a, b in zip(sorted(mu, reverse=True), lam):
        s1 += a
        s2 += b
        if s1 > s2:
            return False
    return True


def _ip(u, v):
    return sum(a * b for a, b in zip(u, v))


def freudenthal(lam) -> Counter:
    """Weight multiplicities of the irreducible GL_k module with highest weight ``lam``."""
    lam = tuple(lam)
    k = len(lam)
    if any(lam[i] < lam[i + 1] for i in range(k - 1)) or lam[-1] < 0:
        raise ValueError("highest weight must be a partition")
    total = sum(lam)
    rho = tuple(k - 1 - i for i in range(k))
    roots = [tuple((r == i) - (r == j) for r in range(k)) for i in range(k) for j in range(i + 1, k)]
    dominant = [mu for mu in _partitions(total, k, lam[0]) if _dominated(mu, lam)]
    # higher weights first so every term on the right is already known
    dominant.sort(key=lambda mu: tuple(sum(mu[:i + 1]) for i in range(k)), reverse=True)
    mult: dict = {}

    def m(w):
        if any(x < 0 for x in w):
            return 0
        return mult.get(tuple(sorted(w, reverse=True)), 0)

    lr = tuple(a + b for a, b in zip(lam, rho))
    for mu in dominant:
        if mu == lam:
            mult[mu] = 1
            continue
        mr = tuple(a + b for a, b in zip(mu, rho))
        den = _ip(lr, lr) - _ip(mr, mr)
        num = 0
        for a in roots:
            j = 1
            while True:
                w = tuple(x + j * y for x, y in zip(mu, a))
                if not _dominated(w, lam) or any(x < 0 for x in w):
                    break
                num += m(w) * _ip(w, a)
                j += 1
        mult[mu] = Fraction(2 * num, den)
    out = Counter()
    for mu, c in mult.items():
        if c:
            for w in set(permutations(mu)):
                out[w] = int(c)
    return out


def _partitions(total, k, largest):
    if k == 1:
        if total <= largest:
            yield (total,)
        return
    for first in range(min(total, largest), -1, -1):
        for rest in _partitions(total - first, k - 1, first):
            yield (first,) + rest


def plethysm_weights(outer: int = 3, inner: int = 2, k: int = 3) -> Counter:
    """Weights of Sym^outer(Sym^inner C^k) with multiplicity, by direct expansion."""
    inner_w = list(monomials(k, inner))
    out = Counter()
    for combo in combinations_with_replacement(range(len(inner_w)), outer):
        w = tuple(sum(inner_w[i][r] for i in combo) for r in range(k))
        out[w] += 1
    return out


def plethysm_check() -> dict:
    """Sym^3(Sym^2 V) = Gamma(0,0) + Gamma(2,2) + Gamma(6,0) for V = C^3."""
    lhs = plethysm_weights(3, 2, 3)
    pieces = {(0, 0): (2, 2, 2), (2, 2): (4, 2, 0), (6, 0): (6, 0, 0)}
    rhs = Counter()
    dims = {}
    for dyn, lam in pieces.items():
        ch = freudenthal(lam)
        dims[dyn] = sum(ch.values())
        rhs.update(ch)
    return {
        "total": sum(lhs.values()),
        "dims": {f"Gamma{d}": v for d, v in dims.items()},
        "weyl_dims": {f"Gamma{d}": weyl_dim_sl3(*d) for d in pieces},
        "balanced": lhs == rhs,
        "highest_weights": [list(to_dynkin(l)) for l in pieces.values()],
    }

