import numpy as np

from cubicgit.sampling import inclusion_maximal, iter_normalized, sign_patterns, unpack
from cubicgit.weights import MonomialSet, OnePS, sign_partition


def _naive(n, bound):
    import itertools

    out = set()
    for w in itertools.product(range(-bound, bound + 1), repeat=n):
        if sum(w) == 0 and any(w) and all(w[i] >= w[i + 1] for i in range(n - 1)):
            out.add(w)
    return out


def test_iter_normalized_is_exhaustive():
    for n, b in ((3, 5), (4, 4), (5, 3), (6, 2)):
        got = [tuple(int(x) for x in row) for L in iter_normalized(n, b) for row in L]
        assert len(got) == len(set(got))
        assert set(got) == _naive(n, b)


def test_patterns_roundtrip():
    pats = sign_patterns(4, 2, 3)
    for p, w in list(pats["nonstrict"].items())[:20]:
        assert unpack(p, 4, 2) == sign_partition(OnePS(w), 2).nonpos


def test_inclusion_maximal():
    a = MonomialSet(3, 1, [(1, 0, 0), (0, 1, 0)])
    b = MonomialSet(3, 1, [(1, 0, 0)])
    assert inclusion_maximal([a, b, MonomialSet(3, 1, [])]) == [a]
