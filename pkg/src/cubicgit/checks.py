"""The aggregate verification run behind ``verify-all``.

Each check returns (ok, detail).  Checks never print; the caller decides
the output format.  Nothing here depends on wall-clock time, so the verdicts
and details are reproducible for a given seed.
"""

from __future__ import annotations

import json
import os
import random
from fractions import Fraction
from importlib import resources

from .feasibility import check_witness, dominates
from .formulas import euler_char_isq3, plethysm_check, secant_minor_check
from .maximal import enumerate_maximal, golden_consistency, load_golden, match_labels, GoldenMismatch
from .poly import LinearChange, P, substitute
from .sampling import oracle_maximal
from .sing import classify_point
from . import strata
from .weights import OnePS, dual_set, limit, mu, sign_partition, weight

GOLDEN_FILES = {"table1": "table1.json", "table2": "table2.json", "strata": "strata.json"}


class MissingData(FileNotFoundError):
    pass


def data_path(name: str, data_dir: str | None = None) -> str:
    fname = GOLDEN_FILES[name]
    if data_dir is not None:
        path = os.path.join(data_dir, fname)
    else:
        path = str(resources.files("cubicgit").joinpath("data").joinpath(fname))
    if not os.path.exists(path):
        raise MissingData(f"missing data file {path}")
    return path


def tables_check(strict: bool, data_dir: str | None = None) -> tuple[bool, str]:
    golden = load_golden(data_path("table2" if strict else "table1", data_dir))
    problems = golden_consistency(golden)
    if problems:
        return False, problems[0]
    records = enumerate_maximal(6, 3, strict)
    try:
        match_labels(records, golden)
    except GoldenMismatch as exc:
        return False, str(exc)
    return True, f"{len(records)} records match"


def oracle_check(bound: int = 61, data_dir: str | None = None) -> tuple[bool, str]:
    res = oracle_maximal(6, 3, bound)
    out = []
    for strict, key in ((False, "nonstrict"), (True, "strict")):
        computed = {r.members for r in enumerate_maximal(6, 3, strict)}
        sampled = {s for s, _ in res[key]}
        if computed != sampled:
            return False, f"{key}: oracle found {len(sampled)} sets, enumeration {len(computed)}"
        out.append(f"{key} {len(sampled)}")
    return True, f"bound {bound}: " + ", ".join(out)


def witness_check() -> tuple[bool, str]:
    bad = 0
    total = 0
    for strict in (False, True):
        for r in enumerate_maximal(6, 3, strict):
            total += 1
            if not check_witness(r.members, r.witness, strict):
                bad += 1
    return bad == 0, f"{total} witnesses, {bad} failures"


def stabilizer_check(seed: int) -> tuple[bool, str]:
    rng = random.Random(seed)
    want = {"zeta": 4, "omega": 8, "chi": 3, "tau": 2}
    got = {sid: strata.stabilizer_dim(strata.generate(sid, strata.random_params(sid, rng))) for sid in want}
    return got == want, " ".join(f"{k}={v}" for k, v in got.items())


def random_normalized(rng: random.Random, n: int = 6, span: int = 20) -> OnePS:
    while True:
        w = sorted((rng.randint(-span, span) for _ in range(n - 1)), reverse=True)
        last = -sum(w)
        lam = w + [last]
        if last <= w[-1] and any(lam):
            return OnePS(sorted(lam, reverse=True))


def zeta_check(seed: int, trials: int = 10_000) -> tuple[bool, str]:
    z = strata.generate("zeta")
    if not strata.torus_semistable(z)["semistable"]:
        return False, "zeta reported unstable"
    rng = random.Random(seed)
    bad = 0
    for _ in range(trials):
        a = random_normalized(rng).weights
        char = a[0] + a[4] + a[5] >= 0 or a[1] + a[2] + a[3] >= 0
        if not char or (mu(z, OnePS(a)) >= 0) != char:
            bad += 1
    return bad == 0, f"{trials} normalized 1-PS, {bad} counterexamples"


def singular_locus_check(seed: int, draws: int = 50) -> tuple[bool, str]:
    rng = random.Random(seed)
    ok_w = strata.verify_singular_on_param(strata.generate("omega"), strata.veronese())
    C = strata.rational_normal_quartic()
    ok_e = sum(
        strata.verify_singular_on_param(strata.generate("epsilon", strata.random_params("epsilon", rng)), C)
        for _ in range(draws)
    )
    return ok_w and ok_e == draws, f"omega/Veronese {ok_w}, epsilon/quartic {ok_e}/{draws}"


def euler_check() -> tuple[bool, str]:
    a, b = euler_char_isq3(5, 6, 1), euler_char_isq3(5, 5, 0)
    m = secant_minor_check(5)
    ok = a == 2 and b == 4 and m["rank"] == 4 and m["all_singular_along_curve"] and m["kernel_dim"] == 4
    return ok, f"(5,6,1)={a} (5,5,0)={b} minor rank={m['rank']} kernel={m['kernel_dim']}"


def plethysm_ok() -> tuple[bool, str]:
    r = plethysm_check()
    dims = list(r["dims"].values())
    ok = r["balanced"] and r["total"] == 56 and dims == [1, 27, 28] and dims == list(r["weyl_dims"].values())
    return ok, f"56 = {' + '.join(map(str, dims))}, balanced={r['balanced']}"


CLASSIFIER_CASES = [
    ("D(4)", "x4^2*x0 - x3*x5*x0 + x1^3 + x2^3", (1, 0, 0, 0, 0, 0)),
    ("Etilde(6)", "x0^3 + x1^3 + x2^3 + x3*x4*x5", (0, 0, 0, 1, 0, 0)),
    ("A(1)", "x0*x1^2 + x0*x2^2 + x0*x3^2 + x0*x4^2 + x0*x5^2 + x1^3 + x2^3 + x3^3 + x4^3 + x5^3", (1, 0, 0, 0, 0, 0)),
]


def classifier_check() -> tuple[bool, str]:
    out = []
    ok = True
    for want, text, p in CLASSIFIER_CASES:
        tag = classify_point(P(text), p)["tag"]
        ok &= tag == want
        out.append(tag)
    g = strata.generate("gamma2", {"l": [1, 2, 3]})
    tag = classify_point(g, (1, 0, 0, 0, 0, 0))["tag"]
    ok &= tag == "Etilde(7)"
    out.append(tag)
    excluded = len(sign_partition(OnePS((2, 2, -1, -1, -1, -1)), 3).pos)
    ok &= excluded == 16
    out.append(f"S1 excludes {excluded}")
    return ok, ", ".join(out)


def property_check(seed: int, pairs: int = 10_000, lams: int = 100) -> tuple[bool, str]:
    """Dominance against weights, M0 duality, limit idempotence, Euler identity, substitution law."""
    from .poly import euler_defect
    from .weights import monomials

    rng = random.Random(seed)
    mons = monomials(6, 3)
    L = [random_normalized(rng) for _ in range(lams)]
    bad = 0
    for _ in range(pairs):
        m1, m2 = rng.choice(mons), rng.choice(mons)
        if dominates(m1, m2):
            bad += sum(weight(m1, lam) < weight(m2, lam) for lam in L)
    for lam in L[:20]:
        if dual_set(sign_partition(lam, 3).zero) != sign_partition(lam.dual(), 3).zero:
            bad += 1
    for _ in range(50):
        lam = rng.choice(L)
        S = sign_partition(lam, 3).nonpos
        if not len(S):
            continue
        f = S.generic_polynomial([rng.randint(1, 9) for _ in S])
        g = limit(f, lam)
        if g and limit(g, lam) != g:
            bad += 1
        if euler_defect(f):
            bad += 1
    for _ in range(10):
        f = P(" + ".join(f"{rng.randint(1, 5)}*x{rng.randint(0, 5)}*x{rng.randint(0, 5)}*x{rng.randint(0, 5)}"
                         for _ in range(4)))
        A = _random_change(rng)
        B = _random_change(rng)
        if substitute(substitute(f, A), B) != substitute(f, A @ B):
            bad += 1
    return bad == 0, f"{bad} failures"


def _random_change(rng: random.Random) -> LinearChange:
    while True:
        M = [[Fraction(rng.randint(-2, 2)) for _ in range(6)] for _ in range(6)]
        try:
            return LinearChange(M)
        except ValueError:
            continue


def graph_check(seed: int, data_dir: str | None = None) -> tuple[bool, str]:
    with open(data_path("strata", data_dir)) as fh:
        data = json.load(fh)
    g = strata.incidence_graph(verify=True, seed=seed, data=data)
    bad_nodes = [n["id"] for n in g["nodes"] if strata.stratum_dimension(n["id"], random.Random(seed)) != n["dimension"]]
    bad_edges = [f'{e["source"]}->{e["target"]}' for e in g["edges"] if not e["verified"]]
    dot = strata.graph_to_dot(g)
    ok = not bad_nodes and not bad_edges and len(g["edges"]) == 11 and dot.startswith("digraph")
    return ok, f"{len(g['nodes'])} nodes, {len(g['edges'])} edges, bad nodes {bad_nodes}, bad edges {bad_edges}"


def run_all(seed: int = 0, data_dir: str | None = None, oracle: bool = True, oracle_bound: int = 61) -> list[dict]:
    plan = [
        ("table1", lambda: tables_check(False, data_dir)),
        ("table2", lambda: tables_check(True, data_dir)),
        ("oracle", (lambda: oracle_check(oracle_bound, data_dir)) if oracle else None),
        ("witnesses", witness_check),
        ("stabilizers", lambda: stabilizer_check(seed)),
        ("zeta_semistable", lambda: zeta_check(seed)),
        ("singular_loci", lambda: singular_locus_check(seed)),
        ("euler", euler_check),
        ("plethysm", plethysm_ok),
        ("classifier", classifier_check),
        ("properties", lambda: property_check(seed)),
        ("incidence_graph", lambda: graph_check(seed, data_dir)),
    ]
    results = []
    for name, fn in plan:
        if fn is None:
            results.append({"check": name, "status": "skipped", "detail": ""})
            continue
        try:
            ok, detail = fn()
        except (MissingData, ValueError, KeyError) as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append({"check": name, "status": "pass" if ok else "fail", "detail": detail})
    return results
