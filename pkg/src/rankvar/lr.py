"""Littlewood-Richardson sequences, their companion tableaux, and a
brute-force classifier of the partitions that can start a sequence of a
given type.

A sequence ``[a^0, ..., a^r]`` grows each row of ``a^{h-1}`` by at most one
box, and the suffix sums of the increments at step h+1 never exceed those
at step h.  Its companion tableau lives on the conjugate shape: the node in
row c, column j holds the first h with ``a^h_j > c``.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from itertools import combinations

from .partitions import Partition, complement, conjugate, iter_partitions, rectangle, union_sort

LRSequence = list  # list[Partition]
SkewTableau = list  # ragged list of rows; 0 marks the inner shape


def _increments(prev: Partition, cur: Partition, width: int) -> list[int]:
    return [cur.part(i) - prev.part(i) for i in range(width)]


def is_lr_sequence(A: Sequence) -> bool:
    if not A:
        raise ValueError("an LR sequence has at least one stage")
    stages = [Partition(a) for a in A]
    width = max((len(a) for a in stages), default=0)
    incs = [_increments(stages[h - 1], stages[h], width) for h in range(1, len(stages))]
    if any(d not in (0, 1) for inc in incs for d in inc):
        return False
    for prev, nxt in zip(incs, incs[1:]):
        s_prev = s_next = 0
        for i in range(width - 1, -1, -1):
            s_prev += prev[i]
            s_next += nxt[i]
            if s_next > s_prev:
                return False
    return True


def lr_type(A: Sequence) -> tuple[Partition, Partition, Partition]:
    """(a^0, beta, a^r) where conjugate(beta)_h = |a^h| - |a^{h-1}|."""
    stages = [Partition(a) for a in A]
    diffs = [b.size - a.size for a, b in zip(stages, stages[1:])]
    while diffs and diffs[-1] == 0:
        diffs.pop()
    if any(x < y for x, y in zip(diffs, diffs[1:])) or any(x <= 0 for x in diffs):
        raise ValueError(f"stage size increments {diffs} do not form a partition")
    return stages[0], conjugate(diffs), stages[-1]


def companion_tableau(A: Sequence) -> SkewTableau:
    stages = [Partition(a) for a in A]
    shape = conjugate(stages[-1])
    rows = []
    for c, length in enumerate(shape):
        row = []
        for j in range(length):
            row.append(next(h for h, a in enumerate(stages) if a.part(j) > c))
        rows.append(row)
    return rows


def tableau_shape(T: SkewTableau, upto: int | None = None) -> Partition:
    """Shape of the sub-tableau of entries <= upto (the whole shape by default)."""
    if upto is None:
        return Partition(len(row) for row in T if row)
    return Partition.sorted(sum(1 for x in row if x <= upto) for row in T)


def _columns(T: SkewTableau) -> list[list[int]]:
    width = max((len(r) for r in T), default=0)
    return [[row[j] for row in T if j < len(row)] for j in range(width)]


def check_tableau_conditions(T: SkewTableau) -> bool:
    """Columns strictly increase through positive entries, and to the right
    of any column the count of h is at least the count of h + 1 (h >= 1)."""
    cols = _columns(T)
    for col in cols:
        pos = [x for x in col if x > 0]
        if any(a >= b for a, b in zip(pos, pos[1:])):
            return False
        if any(x == 0 for x in col[len(col) - len(pos):]):
            return False
    top = max((x for row in T for x in row), default=0)
    counts = [0] * (top + 2)
    for col in reversed(cols):
        for x in col:
            counts[x] += 1
        if any(counts[h] < counts[h + 1] for h in range(1, top)):
            return False
    return True


def lattice_word(T: SkewTableau) -> list[int]:
    return [x for row in T for x in reversed(row) if x > 0]


def is_lattice(word: Sequence[int]) -> bool:
    seen: dict[int, int] = {}
    for x in word:
        seen[x] = seen.get(x, 0) + 1
        if x > 1 and seen[x] > seen.get(x - 1, 0):
            return False
    return True


def iter_lr_sequences(lam, beta, mu) -> Iterator[list[Partition]]:
    """Depth-first enumeration of LR sequences of type [lam, beta; mu]."""
    lam, beta, mu = Partition(lam), Partition(beta), Partition(mu)
    if lam.size + beta.size != mu.size:
        raise ValueError("sizes must satisfy |lam| + |beta| = |mu|")
    if not mu.contains(lam):
        return
    steps = list(conjugate(beta))
    width = len(mu)

    def extend(stages: list[Partition], prev_inc: list[int] | None) -> Iterator[list[Partition]]:
        h = len(stages) - 1
        if h == len(steps):
            if stages[-1] == mu:
                yield list(stages)
            return
        cur = stages[-1]
        rows = [i for i in range(width) if cur.part(i) < mu.part(i)]
        for chosen in combinations(rows, steps[h]):
            parts = list(cur.padded(width))
            for i in chosen:
                parts[i] += 1
            if any(a < b for a, b in zip(parts, parts[1:])):
                continue
            inc = [0] * width
            for i in chosen:
                inc[i] = 1
            if prev_inc is not None:
                sp = sn = 0
                ok = True
                for i in range(width - 1, -1, -1):
                    sp += prev_inc[i]
                    sn += inc[i]
                    if sn > sp:
                        ok = False
                        break
                if not ok:
                    continue
            stages.append(Partition(parts))
            yield from extend(stages, inc)
            stages.pop()

    yield from extend([lam], None)


def enumerate_lr_sequences(lam, beta, mu) -> list[list[Partition]]:
    return list(iter_lr_sequences(lam, beta, mu))


def has_lr_sequence(lam, beta, mu) -> bool:
    return next(iter_lr_sequences(lam, beta, mu), None) is not None


def source_partitions(mu, beta) -> set[Partition]:
    """Every lam admitting an LR sequence of type [lam, beta; mu]."""
    mu, beta = Partition(mu), Partition(beta)
    n = mu.size - beta.size
    if n < 0:
        raise ValueError("|beta| must not exceed |mu|")
    return {lam for lam in iter_partitions(n, mu.part(0), len(mu))
            if mu.contains(lam) and has_lr_sequence(lam, beta, mu)}


@dataclass(frozen=True)
class LemmaCase:
    """Which family (mu, beta) belongs to, with the parameters read off it."""

    case: int
    p: int
    b: int
    m: int
    base: Partition  # beta' for the first family, beta for the second


NOT_COVERED = "not covered"


def classify_case(mu, beta, p: int) -> LemmaCase | None:
    mu, beta = Partition(mu), Partition(beta)
    if not mu or mu[-1] not in (1, p - 1) or any(x != p for x in mu[:-1]):
        return None
    b = len(mu) - 1
    if mu[-1] == 1 and beta and beta[0] <= p - 1:
        base = complement(p, beta)
        m = base.size
        if len(base) == len(beta) and 2 <= m <= p - 1 and base != Partition((m,)):
            return LemmaCase(1, p, b, m, base)
    if mu[-1] == p - 1:
        m = beta.size
        if 2 <= m <= p - 1 and beta != Partition((m,)):
            return LemmaCase(2, p, b, m, beta)
    return None


def predicted_source_set(mu, beta, p: int, reading: str = "statement") -> set[Partition] | str:
    """The classification's predicted set of source partitions.

    First family (mu = (p^b, 1), beta = p - beta'):
        {(p^h) + delta : delta |- m+1, delta != (m+1), h = b - len(delta)}
    Second family (mu = (p^b, p-1), beta |- m):
        {(p^h) + (p - delta) : delta |- m+1, delta != (m+1), h = b - len(delta) + 1}
    Entries with h < 0 are dropped.  ``reading="proof"`` uses
    h = b - len(beta') in the first family instead, which is the only choice
    giving partitions of the right size |mu| - |beta|.
    """
    if reading not in READINGS:
        raise ValueError(f"unknown reading {reading!r}")
    info = classify_case(mu, beta, p)
    if info is None:
        return NOT_COVERED
    out = set()
    for delta in iter_partitions(info.m + 1):
        if len(delta) == 1:
            continue
        if info.case == 1:
            h = info.b - (len(info.base) if reading == "proof" else len(delta))
            tail = delta
        else:
            h = info.b - len(delta) + 1
            tail = complement(p, delta)
        if h >= 0:
            out.add(union_sort(rectangle(p, h), tail))
    return out


READINGS = ("statement", "proof")


def covered_inputs(p: int, m: int, b: int, case: int) -> list[tuple[Partition, Partition]]:
    """All (mu, beta) in one family for fixed p, m, b."""
    out = []
    for part in iter_partitions(m):
        if len(part) == 1:
            continue
        if case == 1:
            out.append((union_sort(rectangle(p, b), (1,)), complement(p, part)))
        else:
            out.append((union_sort(rectangle(p, b), (p - 1,)), part))
    return out


def lemma_report(p: int, m: int, b: int, case: int) -> list[dict]:
    """Oracle vs predicted sets for every covered input of one family."""
    rows = []
    for mu, beta in covered_inputs(p, m, b, case):
        oracle = source_partitions(mu, beta)
        stated = predicted_source_set(mu, beta, p, "statement")
        alt = predicted_source_set(mu, beta, p, "proof")
        rows.append({
            "case": case,
            "p": p,
            "m": m,
            "b": b,
            "mu": mu.to_json(),
            "beta": beta.to_json(),
            "oracle_set": sorted(x.to_json() for x in oracle),
            "predicted_set": sorted(x.to_json() for x in stated),
            "predicted_set_proof_reading": sorted(x.to_json() for x in alt),
            "equal": oracle == stated,
            "equal_proof_reading": oracle == alt,
            "oracle_within_prediction": oracle <= stated,
            "oracle_within_proof_reading": oracle <= alt,
        })
    return rows
