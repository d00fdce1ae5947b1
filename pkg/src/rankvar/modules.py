"""Matrix models of modules for the elementary abelian subgroup E_k of S_n.

E_k is generated by the disjoint p-cycles g_i = ((i-1)p+1, ..., ip).  The
natural Specht module for (n-1, 1) has basis e_2, ..., e_n with e_i = t_i - t_1
for the tabloid t_i carrying i in its second row, so a permutation acts by
sigma e_i = e_{sigma(i)} - e_{sigma(1)} (reading e_1 as 0).

Matrices follow the column convention: column j holds the coordinates of the
image of the j-th basis vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import comb

import numpy as np

from .gf import FieldSpec, GFMatrix, ext_power_matrix, make_field


@dataclass(frozen=True)
class ModuleRep:
    """A module for E_k given by the images of g_1, ..., g_k."""

    field: FieldSpec
    dim: int
    gens: tuple
    label: str = ""
    meta: dict = dc_field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(self.gens))
        for g in self.gens:
            if g.shape != (self.dim, self.dim):
                raise ValueError(f"generator of shape {g.shape} on a {self.dim}-dim module")
            if g.field != self.field:
                raise ValueError("generator lives over a different field")

    @property
    def k(self) -> int:
        return len(self.gens)

    @property
    def p(self) -> int:
        return self.field.p

    def xs(self) -> list[GFMatrix]:
        """The augmentation operators X_i = g_i - 1."""
        one = GFMatrix.identity(self.field, self.dim)
        return [g - one for g in self.gens]

    def with_field(self, field: FieldSpec) -> "ModuleRep":
        return ModuleRep(field, self.dim, [g.with_field(field) for g in self.gens], self.label, dict(self.meta))

    def check(self) -> dict:
        """Order-p and commutation checks for the generators."""
        one = GFMatrix.identity(self.field, self.dim)
        order_p = all((g ** self.p) == one for g in self.gens)
        commute = all(a @ b == b @ a for i, a in enumerate(self.gens) for b in self.gens[i + 1:])
        invertible = all(g.rank() == self.dim for g in self.gens)
        return {"order_p": order_p, "commute": commute, "invertible": invertible}

    def checksums(self) -> list[int]:
        """Cheap fingerprints of the generator matrices (weighted entry sums)."""
        out = []
        for g in self.gens:
            w = np.arange(1, g.a.size + 1, dtype=np.int64)
            out.append(int((g.a.ravel() * w).sum() % 1_000_000_007))
        return out

    def to_json(self) -> dict:
        d = {"label": self.label, "dim": self.dim, "k": self.k, "field": self.field.to_json()}
        d.update(self.check())
        d["checksums"] = self.checksums()
        return d


def cycle_perm(i: int, p: int) -> dict[int, int]:
    """The p-cycle g_i as a map on its support (1-based letters)."""
    lo = (i - 1) * p + 1
    return {lo + s: lo + (s + 1) % p for s in range(p)}


def perm_action(sigma, n: int, field: FieldSpec) -> GFMatrix:
    """Matrix of a permutation on the natural Specht basis e_2, ..., e_n.

    ``sigma`` maps letters 1..n; anything missing is fixed.
    """
    def s(x):
        return sigma.get(x, x) if isinstance(sigma, dict) else sigma[x - 1]

    a = np.zeros((n - 1, n - 1), dtype=np.int64)
    base = s(1)
    for i in range(2, n + 1):
        img = s(i)
        if img != 1:
            a[img - 2, i - 2] += 1
        if base != 1:
            a[base - 2, i - 2] -= 1
    return GFMatrix.from_ints(field, a)


def natural_specht(n: int, k: int, field: FieldSpec) -> ModuleRep:
    p = field.p
    if n not in (k * p, k * p + 1):
        raise ValueError(f"n must be kp or kp+1 (k={k}, p={p}), got {n}")
    gens = [perm_action(cycle_perm(i, p), n, field) for i in range(1, k + 1)]
    return ModuleRep(field, n - 1, gens, f"S({n - 1},1)", {"kind": "natural", "n": n})


def hook_specht(n: int, k: int, r: int, field: FieldSpec) -> ModuleRep:
    """The hook Specht module for (n-r, 1^r) as the r-th exterior power."""
    m = ext_power_module(natural_specht(n, k, field), r)
    label = f"S({n - r},1^{r})"
    return ModuleRep(m.field, m.dim, m.gens, label, {"kind": "hook", "n": n, "r": r})


def quotient_D1(k: int, p: int, field: FieldSpec | None = None) -> ModuleRep:
    """Natural Specht module for (kp-1, 1) modulo the trivial line.

    Basis is the image of e_3, ..., e_kp; the image of e_2 is minus their sum.
    """
    field = field or make_field(p)
    if k < 2:
        raise ValueError("k must be at least 2")
    S = natural_specht(k * p, k, field)
    d = k * p - 2
    gens = []
    for g in S.gens:
        full = g.a.astype(np.int64)
        # rows of full index e_2..e_kp; fold the e_2 row into every other row
        red = full[1:, 1:] - full[0:1, 1:]
        gens.append(GFMatrix.from_ints(field, red))
    return ModuleRep(field, d, gens, "D(1)", {"kind": "D", "r": 1})


def ext_power_module(M: ModuleRep, r: int) -> ModuleRep:
    """Apply the r-th exterior power to every group generator."""
    if not 1 <= r <= M.dim:
        raise ValueError(f"exterior power degree {r} out of range 1..{M.dim}")
    if r == 1:
        return M
    gens = [ext_power_matrix(g, r) for g in M.gens]
    return ModuleRep(M.field, comb(M.dim, r), gens, f"Lambda^{r} {M.label}", {**M.meta, "ext": r})


def simple_D(k: int, p: int, r: int, field: FieldSpec | None = None) -> ModuleRep:
    """D(r), the r-th exterior power of D(1)."""
    m = ext_power_module(quotient_D1(k, p, field), r)
    return ModuleRep(m.field, m.dim, m.gens, f"D({r})", {"kind": "D", "r": r})


def direct_sum(M: ModuleRep, N: ModuleRep) -> ModuleRep:
    if M.field != N.field or M.k != N.k:
        raise ValueError("direct sum needs the same field and rank")
    gens = [GFMatrix.block_diag(M.field, [a, b]) for a, b in zip(M.gens, N.gens)]
    return ModuleRep(M.field, M.dim + N.dim, gens, f"{M.label}+{N.label}")


# the bases B and B'

def _sign(n: int) -> int:
    return -1 if n & 1 else 1


def b_basis_rows(k: int, p: int, primed: bool = False) -> list[list[int]]:
    """Integer rows expressing the vectors of B (or B') in the e-basis.

    Order: b_1, X_1 b_1, ..., X_1^{p-2} b_1, then b_i, ..., X_i^{p-1} b_i for
    i = 2..k, and finally b'_{k+1} = e'_{kp+1} in the primed case.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    n = k * p + (1 if primed else 0)
    d = n - 1

    def vec():
        return [0] * d

    def at(letter):  # coordinate index of e_letter
        return letter - 2

    rows = []
    for r in range(p - 1):
        v = vec()
        if r == 0:
            v[at(2)] = 1
        else:
            for s in range(1, r + 2):
                v[at(s + 1)] += _sign(r - s + 1) * comb(r + 1, s)
        rows.append(v)
    for i in range(2, k + 1):
        lo = (i - 1) * p
        for m in range(p):
            v = vec()
            for s in range(m + 1):
                v[at(lo + s + 1)] += _sign(m - s) * comb(m, s)
            if m == 0:
                v[at(2)] -= 1
            rows.append(v)
    if primed:
        v = vec()
        v[at(n)] = 1
        rows.append(v)
    return rows


def b_basis_change(k: int, p: int, field: FieldSpec | None = None, primed: bool = False) -> GFMatrix:
    field = field or make_field(p)
    return GFMatrix.from_ints(field, b_basis_rows(k, p, primed))


def _block_offsets(k: int, p: int, primed: bool) -> list[int]:
    sizes = [p - 1] + [p] * (k - 1) + ([1] if primed else [])
    offs = [0]
    for s in sizes:
        offs.append(offs[-1] + s)
    return offs


def matrix_L_direct(alpha, k: int, p: int, field: FieldSpec, primed: bool = False) -> GFMatrix:
    """X_alpha on B (or B') assembled from its block description.

    Diagonal blocks carry alpha_i on the subdiagonal.  Every first column of a
    block i >= 2 has -alpha_1 in the rows of b_1 and X_1 b_1, since
    X_1 b_i = -b_1 - X_1 b_1.  The extra vector of B' satisfies
    X_1 b'_{k+1} = -b'_1, so only the b_1 row gets -alpha_1 there.
    """
    alpha = [int(a) for a in alpha]
    if len(alpha) != k:
        raise ValueError(f"alpha has {len(alpha)} coordinates, expected {k}")
    offs = _block_offsets(k, p, primed)
    d = offs[-1]
    a = np.zeros((d, d), dtype=np.int64)
    neg = field.neg
    for i in range(k):
        lo, hi = offs[i], offs[i + 1]
        for t in range(lo, hi - 1):
            a[t + 1, t] = alpha[i]
    m1 = int(neg[alpha[0]])
    for i in range(1, k):
        a[0, offs[i]] = m1
        a[1, offs[i]] = m1
    if primed:
        a[0, offs[k]] = m1
    return GFMatrix._wrap(field, a)


def matrix_L_derived(alpha, k: int, p: int, field: FieldSpec, primed: bool = False) -> GFMatrix:
    """X_alpha on B (or B') by conjugating the e-basis action.

    With A holding the B-vectors as rows in e-coordinates, the coordinate
    change is P = A^T and the matrix is P^{-1} X P.
    """
    n = k * p + (1 if primed else 0)
    S = natural_specht(n, k, make_field(p)).with_field(field)
    X = x_operator(S, alpha)
    P = b_basis_change(k, p, make_field(p), primed).transpose().with_field(field)
    return P.inverse() @ X @ P


def matrix_L(alpha, k: int, p: int, field: FieldSpec | None = None,
             derived: bool = False, primed: bool = False) -> GFMatrix:
    field = field or make_field(p)
    build = matrix_L_derived if derived else matrix_L_direct
    return build(alpha, k, p, field, primed)


def x_operator(M: ModuleRep, alpha) -> GFMatrix:
    """X_alpha = sum_i alpha_i (g_i - 1) on M."""
    alpha = [int(a) for a in alpha]
    if len(alpha) != M.k:
        raise ValueError(f"alpha has {len(alpha)} coordinates but the module has k={M.k}")
    F = M.field
    if any(not 0 <= a < F.q for a in alpha):
        raise ValueError("alpha coordinates must be encoded field elements")
    out = np.zeros((M.dim, M.dim), dtype=np.int64)
    diag = np.arange(M.dim)
    for a, g in zip(alpha, M.gens):
        if a == 0:
            continue
        x = g.a.copy()
        x[diag, diag] = F.sub[x[diag, diag], 1]
        out = F.add[out, F.mul[a, x]]
    return GFMatrix._wrap(F, out)
