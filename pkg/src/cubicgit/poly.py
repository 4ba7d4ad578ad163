"""Exact multivariate polynomials over Q.

Exponents are dense tuples of length ``n``; coefficients are ``Fraction``.
Text format::

    term     ::= [sign] [rational "*"] factor ("*" factor)*
    factor   ::= "x" index ["^" exponent]
    rational ::= integer ["/" positive-integer]

Printing lists terms in graded-lex descending order.
"""

from __future__ import annotations

import re
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .linalg import RationalMatrix

Exponent = tuple[int, ...]


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def glex_key(e: Exponent):
    return (sum(e), e)


class Polynomial:
    """Canonical sparse polynomial in ``n`` variables."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Exponent, object] | None = None):
        self.n = n
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != n:
                raise ValueError(f"exponent {e} has length {len(e)}, expected {n}")
            if any(k < 0 for k in e):
                raise ValueError(f"negative exponent in {e}")
            c = c if isinstance(c, Fraction) else Fraction(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, n: int, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p.n = n
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n: int, c) -> "Polynomial":
        return cls(n, {(0,) * n: c})

    @classmethod
    def var(cls, n: int, i: int) -> "Polynomial":
        if not 0 <= i < n:
            raise IndexError(f"variable index {i} out of range for n={n}")
        e = [0] * n
        e[i] = 1
        return cls._raw(n, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, e: Sequence[int], c=1) -> "Polynomial":
        return cls(len(e), {tuple(e): c})

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return MappingProxyType(self._terms)

    def items(self):
        """Terms in graded-lex descending order."""
        return sorted(self._terms.items(), key=lambda kv: glex_key(kv[0]), reverse=True)

    def support(self) -> list[Exponent]:
        return sorted(self._terms, key=glex_key, reverse=True)

    def coeff(self, e: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(e), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def order(self) -> int:
        """Lowest total degree of a term (-1 for zero)."""
        return min((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def variables(self) -> set[int]:
        return {i for e in self._terms for i, k in enumerate(e) if k}

    # arithmetic

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.n != self.n:
                raise ValueError(f"variable count mismatch: {self.n} vs {other.n}")
            return other
        return Polynomial.constant(self.n, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = other if isinstance(other, Fraction) else Fraction(other)
            if not c:
                return Polynomial.zero(self.n)
            return Polynomial._raw(self.n, {e: v * c for e, v in self._terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial._raw(self.n, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / Fraction(c))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.n, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({self.n}, {format_poly(self)!r})"

    # truncation and pieces

    def truncate(self, k: int) -> "Polynomial":
        """Drop all terms of total degree above ``k``."""
        return Polynomial._raw(self.n, {e: c for e, c in self._terms.items() if sum(e) <= k})

    def homogeneous_part(self, k: int) -> "Polynomial":
        return Polynomial._raw(self.n, {e: c for e, c in self._terms.items() if sum(e) == k})

    def mul_trunc(self, other: "Polynomial", k: int) -> "Polynomial":
        out: dict = {}
        for e1, c1 in self._terms.items():
            d1 = sum(e1)
            if d1 > k:
                continue
            for e2, c2 in other._terms.items():
                if d1 + sum(e2) > k:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial._raw(self.n, {e: c for e, c in out.items() if c})

    def map_coefficients(self, fn) -> "Polynomial":
        return Polynomial(self.n, {e: fn(c) for e, c in self._terms.items()})

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.n:
            raise ValueError("point has wrong length")
        pt = [x if isinstance(x, Fraction) else Fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self._terms.items():
            t = c
            for x, k in zip(pt, e):
                if k:
                    t *= x**k
            total += t
        return total

    def monic_scale(self) -> "Polynomial":
        """Scale so the leading (graded-lex) coefficient is 1."""
        if not self._terms:
            return self
        return self / self.items()[0][1]


def format_monomial(e: Exponent) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"x{i}")
        elif k > 1:
            parts.append(f"x{i}^{k}")
    return "*".join(parts)


def format_poly(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    out = []
    for idx, (e, c) in enumerate(p.items()):
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        mono = format_monomial(e)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if idx == 0:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>x)|(?P<op>[-+*/^]))")


def parse(text: str, n: int) -> Polynomial:
    """Parse the text format; raises ParseError with a character position."""
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    i = 0

    def peek():
        return tokens[i]

    def take(kind=None, value=None):
        nonlocal i
        tok = tokens[i]
        if kind and tok[0] != kind or value and tok[1] != value:
            want = value or kind
            raise ParseError(f"expected {want!r}, found {tok[1] or 'end of input'!r}", tok[2])
        i += 1
        return tok

    def factor(exps):
        take("var")
        tok = take("num")
        idx = int(tok[1])
        if idx >= n:
            raise ParseError(f"variable index {idx} out of range for n={n}", tok[2])
        k = 1
        if peek()[1] == "^":
            take("op", "^")
            k = int(take("num")[1])
        exps[idx] += k

    terms: dict = {}
    first = True
    while True:
        sign = 1
        tok = peek()
        if tok[1] in "+-" and tok[0] == "op":
            take()
            sign = -1 if tok[1] == "-" else 1
        elif not first:
            raise ParseError(f"expected '+' or '-', found {tok[1] or 'end of input'!r}", tok[2])
        first = False
        coef = Fraction(sign)
        exps = [0] * n
        tok = peek()
        if tok[0] == "num":
            num = int(take("num")[1])
            den = 1
            if peek()[1] == "/":
                take("op", "/")
                dtok = take("num")
                den = int(dtok[1])
                if den == 0:
                    raise ParseError("zero denominator", dtok[2])
            coef *= Fraction(num, den)
            if peek()[1] == "*":
                take("op", "*")
                factor(exps)
        elif tok[0] == "var":
            factor(exps)
        else:
            raise ParseError(f"expected a term, found {tok[1] or 'end of input'!r}", tok[2])
        while peek()[1] == "*":
            take("op", "*")
            factor(exps)
        e = tuple(exps)
        terms[e] = terms.get(e, 0) + coef
        if peek()[0] == "end":
            break
    return Polynomial(n, terms)


def P(text: str, n: int = 6) -> Polynomial:
    """Shorthand for ``parse`` with six variables."""
    return parse(text, n)


# linear changes and composition


class LinearChange:
    """Invertible n x n rational matrix acting by ``f -> f(T x)``."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        m = matrix if isinstance(matrix, RationalMatrix) else RationalMatrix(matrix)
        if m.rows != m.cols:
            raise ValueError("linear change must be square")
        if m.det() == 0:
            raise ValueError("linear change is not invertible")
        self.matrix = m

    @property
    def n(self) -> int:
        return self.matrix.rows

    @classmethod
    def identity(cls, n: int) -> "LinearChange":
        return cls(RationalMatrix.identity(n))

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> "LinearChange":
        """x_i -> x_{perm[i]}."""
        n = len(perm)
        return cls([[1 if j == perm[i] else 0 for j in range(n)] for i in range(n)])

    def __matmul__(self, other: "LinearChange") -> "LinearChange":
        return LinearChange(self.matrix @ other.matrix)

    def inverse(self) -> "LinearChange":
        return LinearChange(self.matrix.inverse())

    def apply(self, point: Sequence) -> tuple[Fraction, ...]:
        return self.matrix @ point

    def __eq__(self, other):
        return isinstance(other, LinearChange) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)


def linear_form(n: int, coeffs: Sequence) -> Polynomial:
    terms = {}
    for j, c in enumerate(coeffs):
        e = [0] * n
        e[j] = 1
        terms[tuple(e)] = c
    return Polynomial(n, terms)


def compose(f: Polynomial, images: Sequence[Polynomial], trunc: int | None = None) -> Polynomial:
    """f(images[0], ..., images[n-1]); optional truncation of the result."""
    if len(images) != f.n:
        raise ValueError(f"need {f.n} images, got {len(images)}")
    m = images[0].n
    if any(g.n != m for g in images):
        raise ValueError("images must share a variable count")
    one = Polynomial.constant(m, 1)
    powers: list[list[Polynomial]] = [[one] for _ in images]

    def power(i, k):
        cache = powers[i]
        while len(cache) <= k:
            nxt = cache[-1] * images[i] if trunc is None else cache[-1].mul_trunc(images[i], trunc)
            cache.append(nxt)
        return cache[k]

    acc: dict = {}
    for e, c in f._terms.items():
        t = Polynomial.constant(m, c)
        for i, k in enumerate(e):
            if k:
                t = t * power(i, k) if trunc is None else t.mul_trunc(power(i, k), trunc)
                if t.is_zero():
                    break
        for e2, c2 in t._terms.items():
            acc[e2] = acc.get(e2, 0) + c2
    return Polynomial._raw(m, {e: c for e, c in acc.items() if c})


def substitute(f: Polynomial, T: LinearChange) -> Polynomial:
    """g(x) = f(T x)."""
    if T.n != f.n:
        raise ValueError(f"linear change of size {T.n} for a polynomial in {f.n} variables")
    images = [linear_form(f.n, T.matrix.row(i)) for i in range(f.n)]
    return compose(f, images)


def partial(f: Polynomial, i: int) -> Polynomial:
    if not 0 <= i < f.n:
        raise IndexError(f"variable index {i} out of range for n={f.n}")
    out = {}
    for e, c in f._terms.items():
        k = e[i]
        if k:
            e2 = list(e)
            e2[i] = k - 1
            out[tuple(e2)] = c * k
    return Polynomial._raw(f.n, out)


def gradient(f: Polynomial) -> list[Polynomial]:
    return [partial(f, i) for i in range(f.n)]


def hessian_matrix(f: Polynomial) -> list[list[Polynomial]]:
    g = gradient(f)
    return [[partial(gi, j) for j in range(f.n)] for gi in g]


def determinant(rows: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Cofactor expansion; intended for the small symbolic matrices used here."""
    k = len(rows)
    if k == 1:
        return rows[0][0]
    if k == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = None
    for j in range(k):
        if rows[0][j].is_zero():
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = rows[0][j] * determinant(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else Polynomial.zero(rows[0][0].n)


# point-local analysis


def _as_point(p: Sequence) -> list[Fraction]:
    return [x if isinstance(x, Fraction) else Fraction(x) for x in p]


def default_chart(p: Sequence) -> int:
    """Index of the largest-magnitude coordinate (first on ties)."""
    pt = _as_point(p)
    best = max(abs(x) for x in pt)
    if best == 0:
        raise ValueError("the zero vector is not a projective point")
    return next(i for i, x in enumerate(pt) if abs(x) == best)


def localize(f: Polynomial, p: Sequence, chart: int | None = None) -> tuple[Polynomial, int]:
    """Affine expansion of f at p in the chart x_chart = 1.

    The result is a polynomial in the same n variables with x_chart absent;
    variable x_i stands for the local coordinate x_i/x_chart - p_i/p_chart.
    """
    pt = _as_point(p)
    if len(pt) != f.n:
        raise ValueError("point has wrong length")
    if chart is None:
        chart = default_chart(pt)
    if not 0 <= chart < f.n:
        raise ValueError(f"chart index {chart} out of range")
    if pt[chart] == 0:
        raise ValueError(f"chart coordinate x{chart} vanishes at the point")
    pt = [x / pt[chart] for x in pt]
    images = []
    for i in range(f.n):
        if i == chart:
            images.append(Polynomial.constant(f.n, 1))
        else:
            images.append(Polynomial.var(f.n, i) + pt[i])
    return compose(f, images), chart


def jet(f: Polynomial, p: Sequence, chart: int | None = None, k: int = 2) -> Polynomial:
    """Taylor truncation of f at p to total order <= k (local coordinates)."""
    g, _ = localize(f, p, chart)
    return g.truncate(k)


class NotOnHypersurface(ValueError):
    pass


class NotSingularPoint(ValueError):
    pass


def local_hessian(g: Polynomial, chart: int) -> RationalMatrix:
    idx = [i for i in range(g.n) if i != chart]
    q = g.homogeneous_part(2)
    rows = []
    for i in idx:
        row = []
        for j in idx:
            e = [0] * g.n
            e[i] += 1
            e[j] += 1
            c = q.coeff(e)
            row.append(2 * c if i == j else c)
        rows.append(row)
    return RationalMatrix(rows, len(idx))


def singular_local(f: Polynomial, p: Sequence, chart: int | None = None) -> tuple[Polynomial, int]:
    """Localize and check that p is a singular point of f."""
    g, chart = localize(f, p, chart)
    if g.homogeneous_part(0):
        raise NotOnHypersurface(f"point {tuple(p)} does not lie on the hypersurface")
    if g.homogeneous_part(1):
        raise NotSingularPoint(f"point {tuple(p)} is a smooth point of the hypersurface")
    return g, chart


def hessian_corank(f: Polynomial, p: Sequence, chart: int | None = None) -> dict:
    g, chart = singular_local(f, p, chart)
    rank = local_hessian(g, chart).rank()
    return {"corank": (f.n - 1) - rank, "rank": rank}


def euler_defect(f: Polynomial) -> Polynomial:
    """sum x_i df/dx_i - deg(f) f; zero for homogeneous f."""
    total = Polynomial.zero(f.n)
    for i in range(f.n):
        total = total + Polynomial.var(f.n, i) * partial(f, i)
    return total - f * max(f.degree(), 0)
