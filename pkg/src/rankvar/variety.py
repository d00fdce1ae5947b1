"""Pointwise rank-variety computations for E_k-modules.

A point alpha in F^k gives X_alpha = sum alpha_i (g_i - 1), which is
p-nilpotent; the module is free over the cyclic subgroup generated by
1 + X_alpha exactly when every Jordan block of X_alpha has size p.  The rank
variety is the origin together with the points where that fails.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import random
from collections import Counter
from dataclasses import dataclass, field as dc_field

from .cp import JordanType, jt_stable
from .gf import FieldSpec, make_field, nilpotent_jordan_type
from .modules import ModuleRep, x_operator
from .partitions import Partition, dominates


@dataclass(frozen=True)
class PointAlpha:
    field: FieldSpec
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))
        if len(self.coords) < 2:
            raise ValueError("a point needs at least two coordinates")
        if any(not 0 <= c < self.field.q for c in self.coords):
            raise ValueError("coordinates must be encoded field elements")

    @property
    def k(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def zero_count(self) -> int:
        return sum(1 for c in self.coords if c == 0)

    def to_json(self) -> list[list[int]]:
        return [self.field.coeffs(c) for c in self.coords]

    def csv_cell(self) -> str:
        return ";".join(" ".join(str(x) for x in self.field.coeffs(c)) for c in self.coords)

    def __str__(self) -> str:
        return "(" + ", ".join(self.field.element_str(c) for c in self.coords) + ")"


def _check_point(M: ModuleRep, alpha: PointAlpha):
    if alpha.k != M.k:
        raise ValueError(f"point has {alpha.k} coordinates but the module has k={M.k}")
    if alpha.field != M.field:
        raise ValueError(f"point lives over {alpha.field}, module over {M.field}")


def x_alpha(M: ModuleRep, alpha: PointAlpha):
    _check_point(M, alpha)
    return x_operator(M, alpha.coords)


def jordan_at(M: ModuleRep, alpha: PointAlpha) -> JordanType:
    if alpha.is_zero():
        raise ValueError("zero point has no cyclic shifted subgroup")
    return JordanType(M.p, nilpotent_jordan_type(x_alpha(M, alpha), M.p))


def in_rank_variety(M: ModuleRep, alpha: PointAlpha) -> bool:
    """True at the origin, otherwise true iff X_alpha has a block smaller than p.

    Blocks have size at most p, so they are all of size p exactly when the
    number of blocks, dim - rank(X_alpha), equals dim / p.
    """
    if alpha.is_zero():
        return True
    N = x_alpha(M, alpha)
    if M.dim % M.p:
        return True
    return M.dim - N.rank() != M.dim // M.p


def eval_f(alpha: PointAlpha) -> int:
    F = alpha.field
    out = 1
    for c in alpha.coords:
        out = int(F.mul[out, c])
    return out


def eval_p(alpha: PointAlpha) -> int:
    """sum_i (prod_{j != i} alpha_j)^(p-1)."""
    F = alpha.field
    total = 0
    for i in range(alpha.k):
        prod = 1
        for j, c in enumerate(alpha.coords):
            if j != i:
                prod = int(F.mul[prod, c])
        total = int(F.add[total, F.power(prod, F.p - 1)])
    return total


def all_points(field: FieldSpec, k: int):
    for coords in itertools.product(field.elements(), repeat=k):
        yield PointAlpha(field, coords)


def random_point(field: FieldSpec, k: int, rng: random.Random, nonzero: bool = False) -> PointAlpha:
    lo = 1 if nonzero else 0
    return PointAlpha(field, [rng.randrange(lo, field.q) for _ in range(k)])


def sample_points(field: FieldSpec, k: int, count: int, rng: random.Random, avoid_origin: bool = True):
    out = []
    while len(out) < count:
        pt = random_point(field, k, rng)
        if avoid_origin and pt.is_zero():
            continue
        out.append(pt)
    return out


def sample_generic_points(field: FieldSpec, k: int, count: int, rng: random.Random,
                          max_tries: int = 10_000) -> list[PointAlpha]:
    """Random points off the hypersurfaces f_k = 0 and p_k = 0."""
    out = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > max_tries:
            raise ValueError(f"field too small, raise e: no point with f_k*p_k != 0 over {field}")
        pt = random_point(field, k, rng, nonzero=True)
        if eval_p(pt):
            out.append(pt)
    return out


def sample_vp_minus_vf(field: FieldSpec, k: int, count: int, rng: random.Random,
                       max_tries: int = 10_000) -> list[PointAlpha]:
    """Random points with p_k = 0 and every coordinate nonzero.

    With alpha_1..alpha_{k-1} fixed and nonzero, p_k = alpha_k^(p-1) C + B
    for B = (alpha_1 ... alpha_{k-1})^(p-1) and C the same sum over k-1
    coordinates, so alpha_k is found by trying every nonzero element.
    """
    F = field
    out = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > max_tries:
            raise ValueError(f"field too small, raise e: V(p_k) minus V(f_k) looks empty over {field}")
        head = [rng.randrange(1, F.q) for _ in range(k - 1)]
        sols = [a for a in F.nonzero() if eval_p(PointAlpha(F, head + [a])) == 0]
        if sols:
            out.append(PointAlpha(F, head + [rng.choice(sols)]))
    return out


def dominance_max(types) -> tuple[Partition | None, bool]:
    """The type dominating every other one, or (None, False) if there is none."""
    types = list(set(types))
    for t in types:
        if all(dominates(t.blocks, u.blocks) for u in types):
            return t, True
    return None, False


def generic_type(M: ModuleRep, trials: int = 5, seed: int = 0, max_e: int = 3):
    """Dominance-maximum Jordan type over random points with f_k p_k != 0.

    The module is re-embedded into larger extensions if its field has no
    admissible point.  Returns the type and a certificate with the witness,
    per-type counts and whether every trial agreed.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = random.Random(seed)
    N = M
    while True:
        try:
            pts = sample_generic_points(N.field, N.k, trials, rng, max_tries=200 * trials)
            break
        except ValueError:
            if N.field.e >= max_e:
                raise ValueError("field too small, raise e") from None
            N = M.with_field(make_field(M.p, N.field.e + 1))
    observed = [(pt, jordan_at(N, pt)) for pt in pts]
    counts = Counter(t for _, t in observed)
    best, ok = dominance_max(counts)
    if best is None:
        best = max(counts, key=lambda t: (t.blocks, counts[t]))
    witness = next(pt for pt, t in observed if t == best)
    cert = {
        "seed": seed,
        "trials": trials,
        "e": N.field.e,
        "witness": witness.to_json(),
        "witness_point": witness,
        "unanimous": len(counts) == 1,
        "has_dominance_max": ok,
        "counts": {str(t): c for t, c in sorted(counts.items(), key=lambda kv: kv[0].blocks)},
    }
    return best, cert


def maximal_set_test(M: ModuleRep, alpha: PointAlpha, gtype: JordanType) -> bool:
    return jordan_at(M, alpha) == gtype


def orbit_canonical(alpha: PointAlpha) -> tuple:
    """Lexicographic minimum of the orbit under coordinate scalings by
    nonzero prime-field elements and coordinate permutations.

    Scalings act on each coordinate independently and permutations only
    reorder, so the minimum sorts the per-coordinate minima.
    """
    F = alpha.field
    units = list(F.prime_subfield_units())
    return tuple(sorted(min(int(F.mul[g, c]) for g in units) for c in alpha.coords))


def orbit_reduce(points, p: int | None = None) -> list[PointAlpha]:
    seen = {}
    for pt in points:
        if p is not None and pt.field.p != p:
            raise ValueError("characteristic mismatch")
        key = orbit_canonical(pt)
        if key not in seen:
            seen[key] = PointAlpha(pt.field, key)
    return [seen[k] for k in sorted(seen)]


def stable_Q_set(r: int, p: int) -> set[Partition]:
    """Stable types allowed for D(r) on V(p_k) minus V(f_k)."""
    from .partitions import complement, iter_partitions
    out = set()
    for mu in iter_partitions(r + 1):
        if len(mu) == 1:
            continue
        out.add(mu if r % 2 == 0 else complement(p, mu))
    return out


PREDICATES = {
    "f_zero": lambda pt: eval_f(pt) == 0,
    "p_zero": lambda pt: eval_p(pt) == 0,
}


@dataclass
class PointRecord:
    alpha: PointAlpha
    jordan_type: JordanType
    in_variety: bool
    f_zero: bool
    p_zero: bool

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha.to_json(),
            "jordan_type": self.jordan_type.to_json(),
            "in_variety": self.in_variety,
            "f_k_zero": self.f_zero,
            "p_k_zero": self.p_zero,
        }


@dataclass
class VarietyReport:
    module_label: str
    p: int
    e: int
    k: int
    seed: int
    mode: str
    predicate: str | None
    records: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)
    intersection_law_applies: bool = False

    def mismatches(self) -> list[PointRecord]:
        if self.predicate is None:
            return []
        pred = {"f_zero": lambda r: r.f_zero, "p_zero": lambda r: r.p_zero}[self.predicate]
        return [r for r in self.records if r.in_variety != pred(r)]

    def intersection_violations(self) -> list[PointRecord]:
        """Points breaking: member with f_k = 0  <=>  two or more zero coordinates."""
        return [r for r in self.records
                if (r.in_variety and r.f_zero) != (r.alpha.zero_count() >= 2)]

    def consistency_violations(self) -> list[PointRecord]:
        return [r for r in self.records
                if not r.alpha.is_zero() and r.in_variety != (min(r.jordan_type.blocks, default=self.p) < self.p)]

    def summary(self) -> dict:
        types = Counter(str(r.jordan_type) for r in self.records)
        return {
            "points": len(self.records),
            "members": sum(r.in_variety for r in self.records),
            "f_k_zero": sum(r.f_zero for r in self.records),
            "p_k_zero": sum(r.p_zero for r in self.records),
            "jordan_types": dict(sorted(types.items())),
        }

    def verdicts(self) -> dict:
        out = {
            "membership_matches_predicate": None if self.predicate is None else not self.mismatches(),
            "intersection_law": (not self.intersection_violations()) if self.intersection_law_applies else None,
            "jordan_type_consistent": not self.consistency_violations(),
        }
        return out

    def to_json(self) -> dict:
        return {
            "module_label": self.module_label,
            "p": self.p,
            "e": self.e,
            "k": self.k,
            "seed": self.seed,
            "mode": self.mode,
            "predicate": self.predicate,
            "summary": self.summary(),
            "verdicts": self.verdicts(),
            "mismatches": [r.to_json() for r in self.mismatches()],
            "notes": list(self.notes),
            "records": [r.to_json() for r in self.records],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["alpha", "jordan_type", "in_variety", "f_zero", "p_zero"])
        for r in self.records:
            w.writerow([r.alpha.csv_cell(), " ".join(map(str, r.jordan_type.to_json())),
                        int(r.in_variety), int(r.f_zero), int(r.p_zero)])
        return buf.getvalue()


def evaluate_point(M: ModuleRep, alpha: PointAlpha) -> PointRecord:
    N = x_alpha(M, alpha)
    jt = JordanType(M.p, nilpotent_jordan_type(N, M.p))
    member = alpha.is_zero() or min(jt.blocks, default=M.p) < M.p
    return PointRecord(alpha, jt, member, eval_f(alpha) == 0, eval_p(alpha) == 0)


def scan(M: ModuleRep, e: int | None = None, budget: int = 100_000, sample_seed: int = 0,
         predicate: str | None = None, samples: int | None = None,
         exhaustive: bool | None = None, orbit: bool = False,
         intersection_law: bool = False) -> VarietyReport:
    """Evaluate Jordan types over every point of GF(p^e)^k, or a seeded sample.

    Exhaustive mode is used when q^k <= budget unless overridden.  With
    ``orbit=True`` each orbit of the scaling/permutation action is computed
    once and its type is copied to the other members.
    """
    if predicate is not None and predicate not in PREDICATES:
        raise ValueError(f"unknown predicate {predicate!r}")
    e = M.field.e if e is None else e
    if e != M.field.e:
        M = M.with_field(make_field(M.p, e))
    F = M.field
    total = F.q ** M.k
    if exhaustive is None:
        exhaustive = samples is None and total <= budget
    rng = random.Random(sample_seed)
    if exhaustive:
        pts = list(all_points(F, M.k))
        mode = "exhaustive"
    else:
        pts = sample_points(F, M.k, samples or min(budget, 2000), rng, avoid_origin=False)
        mode = "sampled"
    cache: dict[tuple, PointRecord] = {}
    records = []
    for pt in pts:
        if orbit:
            key = orbit_canonical(pt)
            if key not in cache:
                cache[key] = evaluate_point(M, PointAlpha(F, key))
            rep = cache[key]
            records.append(PointRecord(pt, rep.jordan_type, rep.in_variety,
                                       eval_f(pt) == 0, eval_p(pt) == 0))
        else:
            records.append(evaluate_point(M, pt))
    records.sort(key=lambda r: r.alpha.coords)
    report = VarietyReport(M.label, M.p, F.e, M.k, sample_seed, mode + ("+orbits" if orbit else ""),
                           predicate, records, intersection_law_applies=intersection_law)
    return report


def stable_types_on_vp(M: ModuleRep, count: int, seed: int) -> list[tuple[PointAlpha, JordanType]]:
    rng = random.Random(seed)
    pts = sample_vp_minus_vf(M.field, M.k, count, rng)
    return [(pt, jt_stable(jordan_at(M, pt))) for pt in pts]
