"""Maximal destabilizing monomial sets.

A set M<=0(lambda) for normalized lambda is closed downward in the prefix-sum
order, so it is determined by its maximal monomials, an antichain.  We walk
all feasible antichains depth first in graded-lex order, take downward
closures, keep the inclusion-maximal ones and attach a canonical witness.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from .feasibility import (
    WeightPolytopeQuery,
    check_witness,
    dominates,
    find_witness,
    maximal_elements,
    normalized_feasible,
)
from .poly import format_monomial, parse
from .weights import MonomialSet, OnePS, monomials, sign_partition

__all__ = [
    "dominates",
    "MaximalSetRecord",
    "enumerate_maximal",
    "feasible_antichains",
    "down_closure",
    "match_labels",
    "load_golden",
    "GoldenMismatch",
    "EnumerationTooLarge",
    "golden_consistency",
    "verify_record",
    "is_inclusion_maximal",
    "golden_members",
]


class EnumerationTooLarge(RuntimeError):
    pass


class GoldenMismatch(ValueError):
    def __init__(self, message, missing=(), extra=()):
        super().__init__(message)
        self.missing = list(missing)
        self.extra = list(extra)


@dataclass
class MaximalSetRecord:
    witness: OnePS
    members: MonomialSet
    generators: MonomialSet
    strict: bool
    label: str | None = None
    tags: list = field(default_factory=list)

    def generator_key(self) -> tuple:
        return tuple(self.generators.members)

    def to_dict(self) -> dict:
        out = {
            "label": self.label,
            "strict": self.strict,
            "witness": list(self.witness.weights),
            "generators": self.generators.strings(),
            "size": len(self.members),
            "members": self.members.strings(),
        }
        if self.tags:
            out["tags"] = list(self.tags)
        return out


def down_closure(gens: Iterable, n: int, d: int) -> MonomialSet:
    gens = [tuple(g) for g in gens]
    return MonomialSet(n, d, (m for m in monomials(n, d) if any(dominates(g, m) for g in gens)))


def feasible_antichains(n: int, d: int, strict: bool, limit: int = 200_000) -> list[tuple]:
    """All nonempty antichains whose members admit a common witness."""
    mons = monomials(n, d)
    N = len(mons)
    comparable = [
        [dominates(mons[i], mons[j]) or dominates(mons[j], mons[i]) for j in range(N)]
        for i in range(N)
    ]
    found: list[tuple] = []

    def rec(start, cur):
        for i in range(start, N):
            if any(comparable[i][j] for j in cur):
                continue
            nxt = cur + [i]
            if not normalized_feasible([mons[k] for k in nxt], strict, n):
                continue
            found.append(tuple(mons[k] for k in nxt))
            if len(found) > limit:
                raise EnumerationTooLarge(f"more than {limit} feasible antichains")
            rec(i + 1, nxt)

    rec(0, [])
    return found


def enumerate_maximal(n: int, d: int, strict: bool, limit: int = 200_000) -> list[MaximalSetRecord]:
    """The inclusion-maximal sets M<=0 (or M<0 when strict), sorted by generators."""
    closures = {}
    for ant in feasible_antichains(n, d, strict, limit):
        closures.setdefault(down_closure(ant, n, d), ant)
    ordered = sorted(closures, key=len, reverse=True)
    maxi: list[MonomialSet] = []
    for s in ordered:
        if not any(s <= k for k in maxi):
            maxi.append(s)
    records = []
    for s in maxi:
        gens = MonomialSet(n, d, maximal_elements(s))
        lam = find_witness(WeightPolytopeQuery(gens, strict))
        part = sign_partition(lam, d)
        members = part.neg if strict else part.nonpos
        if members != s:
            raise RuntimeError(f"witness {lam} does not reproduce the set generated by {gens}")
        records.append(MaximalSetRecord(lam, members, gens, strict))
    records.sort(key=lambda r: r.generator_key(), reverse=True)
    return records


def is_inclusion_maximal(record: MaximalSetRecord) -> bool:
    """Adding any excluded monomial destroys feasibility."""
    n, d = record.members.n, record.members.d
    for m in monomials(n, d):
        if m in record.members:
            continue
        trial = list(record.generators.members) + [m]
        if normalized_feasible(trial, record.strict, n):
            return False
    return True


def verify_record(record: MaximalSetRecord) -> list[str]:
    problems = []
    if not check_witness(record.members, record.witness, record.strict):
        problems.append("witness fails the sign condition")
    if not record.witness.normalized:
        problems.append("witness not normalized")
    part = sign_partition(record.witness, record.members.d)
    if (part.neg if record.strict else part.nonpos) != record.members:
        problems.append("members differ from the witness sign set")
    g = list(record.generators)
    if any(a != b and dominates(a, b) for a in g for b in g):
        problems.append("generators are not an antichain")
    if down_closure(g, record.members.n, record.members.d) != record.members:
        problems.append("members are not the closure of the generators")
    return problems


# golden tables


def load_golden(path) -> dict:
    with open(path) as fh:
        data = json.load(fh)
    n, d = data["n"], data["d"]
    rows = []
    for row in data["rows"]:
        gens = MonomialSet(n, d, (next(iter(parse(g, n).terms)) for g in row["maximal_monomials"]))
        lam = OnePS(row["weights"])
        rows.append({**row, "weights": lam, "generators": gens})
    return {**data, "rows": rows}


def golden_members(row: dict, strict: bool, d: int) -> MonomialSet:
    part = sign_partition(row["weights"], d)
    return part.neg if strict else part.nonpos


def match_labels(records: list[MaximalSetRecord], golden: dict) -> list[MaximalSetRecord]:
    """Attach golden labels by equality of member sets; the matching must be a bijection."""
    strict = golden["strict"]
    d = golden["d"]
    by_members = {}
    for row in golden["rows"]:
        by_members[golden_members(row, strict, d)] = row
    used = set()
    extra = []
    for rec in records:
        row = by_members.get(rec.members)
        if row is None:
            extra.append(rec)
            continue
        rec.label = row["label"]
        if row.get("included_in"):
            rec.tags = [f"included in {row['included_in']}"]
        if row.get("type"):
            rec.tags = rec.tags + [f"type {row['type']}"]
        used.add(row["label"])
    missing = [row["label"] for row in golden["rows"] if row["label"] not in used]
    if extra or missing:
        parts = []
        if extra:
            parts.append("extra computed record(s): " + "; ".join(
                "{" + ", ".join(r.generators.strings()) + "}" for r in extra))
        if missing:
            parts.append("missing golden row(s): " + ", ".join(missing))
        raise GoldenMismatch(" / ".join(parts), missing, extra)
    return sorted(records, key=lambda r: _label_order(r.label))


def _label_order(label):
    return (label[0], int(label[1:])) if label and label[1:].isdigit() else (label or "", 0)


def golden_consistency(golden: dict) -> list[str]:
    """Each golden row's weights must reproduce its listed maximal monomials."""
    problems = []
    strict, d = golden["strict"], golden["d"]
    for row in golden["rows"]:
        mem = golden_members(row, strict, d)
        gens = MonomialSet(mem.n, d, maximal_elements(mem))
        if gens != row["generators"]:
            problems.append(
                f"{row['label']}: weights {row['weights']} give maximal monomials "
                f"{gens.strings()}, table lists {row['generators'].strings()}"
            )
    return problems
