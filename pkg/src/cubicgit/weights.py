"""One-parameter subgroups, monomial weights and the Hilbert-Mumford function."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import gcd, lcm
from typing import Iterable, Sequence

from .poly import Exponent, Polynomial, format_monomial, glex_key


@dataclass(frozen=True)
class OnePS:
    """Integer weights diag(t^a0, ..., t^a_{n-1}) with sum zero."""

    weights: tuple[int, ...]

    def __init__(self, weights: Iterable):
        vals = [w if isinstance(w, Fraction) else Fraction(w) for w in weights]
        den = lcm(*(v.denominator for v in vals)) if vals else 1
        ints = tuple(int(v * den) for v in vals)
        if sum(ints) != 0:
            raise ValueError(f"1-PS weights must sum to zero, got {ints}")
        object.__setattr__(self, "weights", ints)

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def normalized(self) -> bool:
        w = self.weights
        return all(w[i] >= w[i + 1] for i in range(len(w) - 1))

    def is_trivial(self) -> bool:
        return not any(self.weights)

    def normalize(self) -> tuple["OnePS", tuple[int, ...]]:
        """Sorted copy plus the permutation: new[k] = old[perm[k]]."""
        perm = tuple(sorted(range(self.n), key=lambda i: -self.weights[i]))
        return OnePS(self.weights[i] for i in perm), perm

    def primitive(self) -> "OnePS":
        g = 0
        for w in self.weights:
            g = gcd(g, w)
        return self if g <= 1 else OnePS(w // g for w in self.weights)

    def scaled(self, k: int) -> "OnePS":
        return OnePS(k * w for w in self.weights)

    def dual(self) -> "OnePS":
        """Negated and reversed weights."""
        return OnePS(-w for w in reversed(self.weights))

    def __str__(self):
        return "(" + ",".join(str(w) for w in self.weights) + ")"

    @classmethod
    def parse(cls, text: str) -> "OnePS":
        return cls(Fraction(t.strip()) for t in text.strip().strip("()").split(","))


@lru_cache(maxsize=None)
def monomials(n: int, d: int) -> tuple[Exponent, ...]:
    """All degree-d exponents in n variables, graded-lex descending."""
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return tuple(sorted(out, reverse=True))


class MonomialSet:
    """Sorted, deduplicated set of degree-d exponents in n variables."""

    __slots__ = ("n", "d", "members", "_set")

    def __init__(self, n: int, d: int, members: Iterable[Sequence[int]] = ()):
        uniq = set()
        for m in members:
            m = tuple(int(k) for k in m)
            if len(m) != n:
                raise ValueError(f"monomial {m} has length {len(m)}, expected {n}")
            if sum(m) != d or any(k < 0 for k in m):
                raise ValueError(f"monomial {m} is not of degree {d}")
            uniq.add(m)
        self.n = n
        self.d = d
        self._set = frozenset(uniq)
        self.members = tuple(sorted(uniq, key=glex_key, reverse=True))

    @classmethod
    def of_support(cls, f: Polynomial) -> "MonomialSet":
        if f.is_zero():
            raise ValueError("zero polynomial has empty support")
        if not f.is_homogeneous():
            raise ValueError("support of a non-homogeneous polynomial")
        return cls(f.n, f.degree(), f.terms.keys())

    @classmethod
    def parse(cls, text: str, n: int) -> "MonomialSet":
        """Whitespace/comma separated monomials such as 'x0*x2^2, x1^3'."""
        from .poly import parse

        items = [t for t in text.replace(",", " ").replace("+", " ").split() if t]
        ms = [next(iter(parse(t, n).terms)) for t in items]
        if not ms:
            raise ValueError("empty monomial list")
        return cls(n, sum(ms[0]), ms)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, m):
        return tuple(m) in self._set

    def __eq__(self, other):
        return isinstance(other, MonomialSet) and (self.n, self.d, self._set) == (
            other.n,
            other.d,
            other._set,
        )

    def __hash__(self):
        return hash((self.n, self.d, self._set))

    def __le__(self, other: "MonomialSet"):
        return self._set <= other._set

    def __lt__(self, other: "MonomialSet"):
        return self._set < other._set

    def __or__(self, other: "MonomialSet"):
        return MonomialSet(self.n, self.d, self._set | other._set)

    def __and__(self, other: "MonomialSet"):
        return MonomialSet(self.n, self.d, self._set & other._set)

    def __sub__(self, other: "MonomialSet"):
        return MonomialSet(self.n, self.d, self._set - other._set)

    def as_frozenset(self) -> frozenset:
        return self._set

    def strings(self) -> list[str]:
        return [format_monomial(m) for m in self.members]

    def __repr__(self):
        return "MonomialSet{" + ", ".join(self.strings()) + "}"

    def generic_polynomial(self, coeffs: Sequence | None = None) -> Polynomial:
        coeffs = coeffs or [1] * len(self.members)
        return Polynomial(self.n, dict(zip(self.members, coeffs)))


def weight(m: Sequence[int], lam: OnePS) -> int:
    if len(m) != lam.n:
        raise ValueError(f"monomial of length {len(m)} against a 1-PS of length {lam.n}")
    return sum(k * a for k, a in zip(m, lam.weights))


def mu(f: Polynomial, lam: OnePS) -> int:
    """Largest lambda-weight of a monomial in the support of f."""
    if f.is_zero():
        raise ValueError("mu of the zero polynomial")
    return max(weight(m, lam) for m in f.terms)


def argmax(f: Polynomial, lam: OnePS) -> list[Exponent]:
    top = mu(f, lam)
    return sorted((m for m in f.terms if weight(m, lam) == top), key=glex_key, reverse=True)


@dataclass(frozen=True)
class SignPartition:
    neg: MonomialSet
    zero: MonomialSet
    pos: MonomialSet

    @property
    def nonpos(self) -> MonomialSet:
        return self.neg | self.zero


def sign_partition(lam: OnePS, d: int) -> SignPartition:
    if lam.is_trivial():
        raise ValueError("sign partition of the trivial 1-PS")
    buckets: dict[int, list] = {-1: [], 0: [], 1: []}
    for m in monomials(lam.n, d):
        w = weight(m, lam)
        buckets[(w > 0) - (w < 0)].append(m)
    return SignPartition(
        MonomialSet(lam.n, d, buckets[-1]),
        MonomialSet(lam.n, d, buckets[0]),
        MonomialSet(lam.n, d, buckets[1]),
    )


def M_le0(lam: OnePS, d: int) -> MonomialSet:
    return sign_partition(lam, d).nonpos


def M_lt0(lam: OnePS, d: int) -> MonomialSet:
    return sign_partition(lam, d).neg


def M_0(lam: OnePS, d: int) -> MonomialSet:
    return sign_partition(lam, d).zero


def reverse_monomial(m: Sequence[int]) -> Exponent:
    """Index reversal x_i -> x_{n-1-i}, the duality map on monomials."""
    return tuple(reversed(tuple(m)))


def dual_set(S: MonomialSet) -> MonomialSet:
    return MonomialSet(S.n, S.d, (reverse_monomial(m) for m in S))


class _NoLimit:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "NO_LIMIT"

    def __bool__(self):
        return False


NO_LIMIT = _NoLimit()


def limit(f: Polynomial, lam: OnePS):
    """The weight-zero part of f when mu(f, lam) <= 0, otherwise NO_LIMIT."""
    if f.is_zero():
        raise ValueError("limit of the zero polynomial")
    if mu(f, lam) > 0:
        return NO_LIMIT
    return Polynomial(f.n, {m: c for m, c in f.terms.items() if weight(m, lam) == 0})


def is_invariant(f: Polynomial, lam: OnePS) -> bool:
    return all(weight(m, lam) == 0 for m in f.terms)
