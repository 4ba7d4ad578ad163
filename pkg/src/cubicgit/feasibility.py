"""Exact feasibility of destabilizing 1-PS for a monomial set.

Constraints are integer rows ``c . x + c0 >= 0`` (or ``> 0``), eliminated by
Fourier-Motzkin.  The unknowns are the weights a_0..a_{n-2}; a_{n-1} is
substituted by minus their sum.  For a normalized 1-PS, an order-dominated
monomial has no larger weight than the monomial dominating it, so only the
maximal elements of the target set enter the system.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import ceil, floor, gcd
from typing import Sequence

from .weights import MonomialSet, OnePS, weight

Row = tuple  # (coeffs tuple[int], const int, strict bool)


def _primitive(coeffs: Sequence[int], const: int, strict: bool) -> Row:
    g = 0
    for c in coeffs:
        g = gcd(g, c)
    if g == 0:
        return (tuple(coeffs), (const > 0) - (const < 0), strict)
    g = gcd(g, const)
    return (tuple(c // g for c in coeffs), const // g, strict)


def _dedupe(rows) -> list[Row] | None:
    """Keep the tightest row per direction; None if a constant row fails."""
    best: dict = {}
    for coeffs, const, strict in rows:
        if not any(coeffs):
            if const < 0 or (const == 0 and strict):
                return None
            continue
        cur = best.get(coeffs)
        if cur is None or const < cur[0] or (const == cur[0] and strict and not cur[1]):
            best[coeffs] = (const, strict)
    return [(k, c, s) for k, (c, s) in best.items()]


def eliminate(rows: list[Row], var: int) -> list[Row] | None:
    """Project out variable ``var`` (its column becomes zero)."""
    pos, neg, rest = [], [], []
    for r in rows:
        c = r[0][var]
        (pos if c > 0 else neg if c < 0 else rest).append(r)
    out = list(rest)
    for cp, kp, sp in pos:
        a = cp[var]
        for cn, kn, sn in neg:
            b = -cn[var]
            coeffs = [b * x + a * y for x, y in zip(cp, cn)]
            out.append(_primitive(coeffs, b * kp + a * kn, sp or sn))
    return _dedupe(out)


def _bounds(rows: list[Row], var: int, values: dict[int, int]):
    """Interval for ``var`` given integer values of the other live variables.

    Returns (lo, lo_strict, hi, hi_strict) with None for unbounded sides,
    or False when some row not involving ``var`` already fails.
    """
    lo = hi = None
    lo_s = hi_s = False
    for coeffs, const, strict in rows:
        rhs = const + sum(coeffs[j] * v for j, v in values.items())
        c = coeffs[var]
        if c == 0:
            if rhs < 0 or (rhs == 0 and strict):
                return False
            continue
        b = Fraction(-rhs, c)
        if c > 0:
            if lo is None or b > lo or (b == lo and strict):
                lo, lo_s = b, strict
        else:
            if hi is None or b < hi or (b == hi and strict):
                hi, hi_s = b, strict
    return lo, lo_s, hi, hi_s


def _int_range(lo, lo_s, hi, hi_s):
    a = None if lo is None else (floor(lo) + 1 if lo_s else ceil(lo))
    b = None if hi is None else (ceil(hi) - 1 if hi_s else floor(hi))
    return a, b


class Infeasible:
    """No destabilizing 1-PS exists; carries a short reason."""

    __slots__ = ("reason",)

    def __init__(self, reason: str = "infeasible"):
        self.reason = reason

    def __bool__(self):
        return False

    def __repr__(self):
        return f"Infeasible({self.reason!r})"

    def __eq__(self, other):
        return isinstance(other, Infeasible)

    def __hash__(self):
        return hash(Infeasible)


def dominates(m1: Sequence[int], m2: Sequence[int]) -> bool:
    """Prefix-sum order generated by x0 >= x1 >= ... >= x_{n-1}."""
    if len(m1) != len(m2):
        raise ValueError("monomials of different length")
    if sum(m1) != sum(m2):
        raise ValueError("monomials of different degree")
    s1 = s2 = 0
    for a, b in zip(m1, m2):
        s1 += a
        s2 += b
        if s1 < s2:
            return False
    return True


def maximal_elements(S) -> list[tuple[int, ...]]:
    ms = list(dict.fromkeys(tuple(m) for m in S))
    return [m for m in ms if not any(o != m and dominates(o, m) for o in ms)]


@dataclass(frozen=True)
class WeightPolytopeQuery:
    """Weights <= 0 (or < 0 when strict) on every member of ``S``.

    With ``normalized`` the 1-PS is required to be non-increasing;
    otherwise any coordinate order of the diagonal torus is allowed.
    """

    S: MonomialSet
    strict: bool = False
    normalized: bool = True

    def __post_init__(self):
        if len(self.S) == 0:
            raise ValueError("empty target set")

    @property
    def n(self) -> int:
        return self.S.n

    @property
    def d(self) -> int:
        return self.S.d


def _weight_rows(n: int, gens, strict: bool) -> list[Row]:
    """Rows over (t, a_0..a_{n-2}); weight(m) <= 0 becomes -weight >= 0."""
    rows = []
    for m in gens:
        last = m[n - 1]
        coeffs = [0] + [-(m[i] - last) for i in range(n - 1)]
        rows.append(_primitive(coeffs, 0, strict))
    return rows


def _normalization_rows(n: int) -> list[Row]:
    rows = []
    k = n - 1
    for i in range(n - 2):
        c = [0] * (k + 1)
        c[1 + i] = 1
        c[2 + i] = -1
        rows.append((tuple(c), 0, False))
    # a_{n-2} >= a_{n-1} = -(a_0 + ... + a_{n-2})
    c = [0] + [1] * k
    c[k] = 2
    rows.append(_primitive(c, 0, False))
    # nontriviality a_0 >= 1
    c = [0] * (k + 1)
    c[1] = 1
    rows.append((tuple(c), -1, False))
    return rows


def _box_rows(n: int) -> list[Row]:
    # t >= a_0 and t >= -a_{n-1} = a_0 + ... + a_{n-2}
    k = n - 1
    c1 = [1, -1] + [0] * (k - 1)
    c2 = [1] + [-1] * k
    return [(tuple(c1), 0, False), (tuple(c2), 0, False)]


class _System:
    def __init__(self, n: int, gens, strict: bool, with_box: bool):
        self.n = n
        rows = _weight_rows(n, gens, strict) + _normalization_rows(n)
        if with_box:
            rows += _box_rows(n)
        self.levels: list[list[Row] | None] = []
        cur = _dedupe(rows)
        # levels[j] involves t, a_0..a_{j-1}; eliminate a_{n-2} down to a_0
        stack = [cur]
        for j in range(n - 1, 0, -1):
            if cur is None:
                break
            cur = eliminate(cur, j)
            stack.append(cur)
        self.levels = list(reversed(stack)) if cur is not None else []
        self.feasible = cur is not None

    def search(self, max_t: int = 10_000) -> tuple[int, ...] | None:
        base = self.levels[0]
        b = _bounds(base, 0, {})
        lo, hi = _int_range(*b)
        t = max(lo if lo is not None else 1, 1)
        top = max_t if hi is None else min(hi, max_t)
        while t <= top:
            sol = self._dfs(t)
            if sol is not None:
                return sol
            t += 1
        return None

    def _dfs(self, t: int):
        n = self.n
        values = {0: t}

        def rec(j):
            if j == n:
                return True
            rows = self.levels[j]
            b = _bounds(rows, j, values)
            if b is False:
                return False
            lo, hi = _int_range(*b)
            lo = -t if lo is None else max(lo, -t)
            hi = t if hi is None else min(hi, t)
            for v in range(lo, hi + 1):
                values[j] = v
                if rec(j + 1):
                    return True
            values.pop(j, None)
            return False

        if not rec(1):
            return None
        a = [values[j] for j in range(1, n)]
        return tuple(a + [-sum(a)])


_FEASIBLE_CACHE: dict = {}


def _normalized_feasible(n: int, gens: tuple, strict: bool) -> bool:
    key = (n, gens, strict)
    hit = _FEASIBLE_CACHE.get(key)
    if hit is None:
        hit = _System(n, gens, strict, with_box=False).feasible
        _FEASIBLE_CACHE[key] = hit
    return hit


def _canonical_key(gens) -> tuple:
    return tuple(sorted(maximal_elements(gens), reverse=True))


def normalized_feasible(S, strict: bool, n: int | None = None) -> bool:
    S = list(S)
    n = n if n is not None else len(S[0])
    return _normalized_feasible(n, _canonical_key(S), strict)


def _normalized_witness(S, strict: bool, n: int) -> OnePS | None:
    gens = _canonical_key(S)
    if not _normalized_feasible(n, gens, strict):
        return None
    system = _System(n, gens, strict, with_box=True)
    sol = system.search()
    if sol is None:
        raise RuntimeError(f"feasible system without an integer point below the search cap: {gens}")
    return OnePS(sol)


def _permute(m, perm):
    # coordinate k of the permuted monomial is m[perm[k]]
    return tuple(m[p] for p in perm)


def _unpermute(w, perm):
    out = [0] * len(w)
    for k, p in enumerate(perm):
        out[p] = w[k]
    return tuple(out)


def _torus_orders(S: MonomialSet):
    seen = set()
    for perm in permutations(range(S.n)):
        key = _canonical_key(_permute(m, perm) for m in S)
        if key in seen:
            continue
        seen.add(key)
        yield perm, key


def find_witness(q: WeightPolytopeQuery):
    """Canonical integer witness (minimal max|a_i|, then lexicographically smallest) or Infeasible."""
    n = q.n
    if q.normalized:
        w = _normalized_witness(q.S, q.strict, n)
        return w if w is not None else Infeasible("no normalized 1-PS")
    best = None
    for perm, key in _torus_orders(q.S):
        if not _normalized_feasible(n, key, q.strict):
            continue
        w = _normalized_witness(key, q.strict, n)
        cand = _unpermute(w.weights, perm)
        rank = (max(abs(x) for x in cand), cand)
        if best is None or rank < best:
            best = rank
    if best is None:
        return Infeasible("no 1-PS of the diagonal torus")
    return OnePS(best[1])


def is_feasible(q: WeightPolytopeQuery) -> bool:
    if q.normalized:
        return normalized_feasible(q.S, q.strict, q.n)
    return any(_normalized_feasible(q.n, key, q.strict) for _, key in _torus_orders(q.S))


def is_subset_of_some_Mle0(S: MonomialSet, strict: bool = False, normalized: bool = True) -> bool:
    if len(S) == 0:
        return True
    return is_feasible(WeightPolytopeQuery(S, strict, normalized))


def check_witness(S, lam: OnePS, strict: bool) -> bool:
    """Direct weight evaluation of the sign condition."""
    if lam.is_trivial():
        return False
    if strict:
        return all(weight(m, lam) < 0 for m in S)
    return all(weight(m, lam) <= 0 for m in S)
