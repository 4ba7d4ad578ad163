"""Brute-force oracle: every normalized integer 1-PS with entries in [-B, B].

Independent of the elimination code; used to cross-check feasibility and the
list of maximal sets.  Sign patterns are packed into bytes, one bit per
monomial in the order of ``weights.monomials``.
"""

from __future__ import annotations

import time
from itertools import combinations_with_replacement

import numpy as np

from .weights import MonomialSet, monomials


def _chains(length: int, lo: int, hi: int) -> np.ndarray:
    """All non-increasing integer tuples of the given length with entries in [lo, hi]."""
    if length == 0:
        return np.zeros((1, 0), dtype=np.int64)
    vals = range(hi, lo - 1, -1)
    rows = list(combinations_with_replacement(vals, length))
    if not rows:
        return np.zeros((0, length), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def iter_normalized(n: int, bound: int, batch_hint: int = 0):
    """Yield arrays of normalized nonzero 1-PS (rows) with max |a_i| <= bound."""
    if n < 2:
        return
    h = max(1, n // 2)
    top_len = h - 1  # entries above the pivot pair
    bot_len = n - h - 1
    for p in range(-bound, bound + 1):  # a_{h-1}
        top = _chains(top_len, p, bound)
        ts = top.sum(1) + p
        for q in range(-bound, p + 1):  # a_h
            bot = _chains(bot_len, -bound, q)
            if len(bot) == 0 or len(top) == 0:
                continue
            bs = bot.sum(1) + q
            order = np.argsort(bs, kind="stable")
            bss = bs[order]
            lo = np.searchsorted(bss, -ts, "left")
            hi = np.searchsorted(bss, -ts, "right")
            cnt = hi - lo
            total = int(cnt.sum())
            if total == 0:
                continue
            ti = np.repeat(np.arange(len(ts)), cnt)
            # offsets within each matching block
            starts = np.repeat(lo - np.concatenate(([0], np.cumsum(cnt)[:-1])), cnt)
            bi = order[np.arange(total) + starts]
            L = np.column_stack(
                [top[ti], np.full(total, p), np.full(total, q), bot[bi]]
            ).astype(np.int64)
            L = L[(L != 0).any(1)]
            if len(L):
                yield L


def sign_patterns(n: int, d: int, bound: int) -> dict:
    """Distinct M<=0 and M<0 patterns over all sampled 1-PS.

    Returns {"nonstrict": {bytes: weights}, "strict": {...}, "count": int}.
    """
    mons = monomials(n, d)
    E = np.array(mons, dtype=np.int64).T
    out = {"nonstrict": {}, "strict": {}, "count": 0}
    for L in iter_normalized(n, bound):
        out["count"] += len(L)
        w = L @ E
        for key, ok in (("nonstrict", w <= 0), ("strict", w < 0)):
            packed = np.packbits(ok, axis=1)
            uniq, idx = np.unique(packed, axis=0, return_index=True)
            store = out[key]
            for row, i in zip(uniq, idx):
                b = row.tobytes()
                if b not in store:
                    store[b] = tuple(int(x) for x in L[i])
    return out


def unpack(pattern: bytes, n: int, d: int) -> MonomialSet:
    mons = monomials(n, d)
    bits = np.unpackbits(np.frombuffer(pattern, dtype=np.uint8))[: len(mons)]
    return MonomialSet(n, d, (m for m, b in zip(mons, bits) if b))


def inclusion_maximal(sets):
    """Inclusion-maximal members of a collection of MonomialSets (nonempty ones)."""
    ordered = sorted({s for s in sets if len(s)}, key=len, reverse=True)
    keep: list = []
    for s in ordered:
        if not any(s <= k for k in keep):
            keep.append(s)
    return keep


def oracle_maximal(n: int, d: int, bound: int = 61) -> dict:
    """Maximal sampled sets for both modes plus a representative 1-PS for each."""
    t0 = time.time()
    pats = sign_patterns(n, d, bound)
    result = {"count": pats["count"]}
    for key in ("nonstrict", "strict"):
        sets = {unpack(p, n, d): w for p, w in pats[key].items()}
        maxi = inclusion_maximal(sets)
        result[key] = [(s, sets[s]) for s in maxi]
        result[key + "_patterns"] = len(pats[key])
    result["seconds"] = time.time() - t0
    return result
