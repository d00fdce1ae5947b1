"""Jordan types of F C_p-modules and their tensor, symmetric and exterior powers.

Two independent routes are provided for exterior powers of a single block:
explicit matrices (``jt_ext``) and the Gaussian-polynomial recurrence in the
quotient ring Z[q, 1/q] / ((q - 1) j(q)) (``gaussian_ext``), where j(q) is the
class of the projective block J_p.
"""

from __future__ import annotations

import functools
from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb

from .gf import GFMatrix, ext_power_matrix, is_prime, kron, make_field, nilpotent_jordan_type
from .partitions import Partition


@dataclass(frozen=True, init=False)
class JordanType:
    """Multiset of Jordan block sizes, each in 1..p."""

    p: int
    blocks: Partition

    def __init__(self, p: int, blocks: Iterable[int] = ()):
        if p < 3 or not is_prime(p):
            raise ValueError(f"p must be an odd prime, got {p}")
        blocks = Partition.sorted(blocks)
        if blocks and blocks[0] > p:
            raise ValueError(f"block sizes must be at most p={p}: {blocks}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def block(cls, p: int, n: int) -> "JordanType":
        """The indecomposable J_n."""
        return cls(p, (n,))

    @property
    def dim(self) -> int:
        return self.blocks.size

    def multiplicity(self, size: int) -> int:
        return self.blocks.multiplicities().get(size, 0)

    def __add__(self, other: "JordanType") -> "JordanType":
        _same_p(self, other)
        return JordanType(self.p, tuple(self.blocks) + tuple(other.blocks))

    def is_projective(self) -> bool:
        return all(b == self.p for b in self.blocks)

    def __str__(self) -> str:
        if not self.blocks:
            return "[]"
        mult = self.blocks.multiplicities()
        return "".join(f"[{s}]" + (f"^{m}" if m > 1 else "") for s, m in sorted(mult.items(), reverse=True))

    def to_json(self) -> list[int]:
        return list(self.blocks)


def _same_p(a: JordanType, b: JordanType):
    if a.p != b.p:
        raise ValueError(f"p mismatch: {a.p} vs {b.p}")


def unipotent(a: JordanType) -> GFMatrix:
    """Block-diagonal unipotent matrix realising a over GF(p)."""
    F = make_field(a.p)
    return GFMatrix.block_diag(F, [GFMatrix.jordan_block(F, n) for n in a.blocks])


def _type_of_unipotent(U: GFMatrix, p: int) -> JordanType:
    N = U - GFMatrix.identity(U.field, U.rows)
    return JordanType(p, nilpotent_jordan_type(N, p))


@functools.lru_cache(maxsize=None)
def _tensor_blocks(p: int, m: int, n: int) -> Partition:
    F = make_field(p)
    U = kron(GFMatrix.jordan_block(F, m), GFMatrix.jordan_block(F, n))
    return _type_of_unipotent(U, p).blocks


def jt_tensor(a: JordanType, b: JordanType) -> JordanType:
    """Tensor product, computed block pair by block pair from Kronecker products."""
    _same_p(a, b)
    parts: list[int] = []
    for m in a.blocks:
        for n in b.blocks:
            parts.extend(_tensor_blocks(a.p, m, n))
    return JordanType(a.p, parts)


def jt_ext(a: JordanType, r: int) -> JordanType:
    """r-th exterior power via the matrix of the unipotent realisation.

    Valid for every r >= 0; the zeroth power is the trivial module and powers
    beyond the dimension vanish.
    """
    if r < 0:
        raise ValueError("exterior power degree must be non-negative")
    if r == 0:
        return JordanType(a.p, (1,))
    if r > a.dim:
        return JordanType(a.p)
    return _type_of_unipotent(ext_power_matrix(unipotent(a), r), a.p)


def sym_power_matrix(G: GFMatrix, k: int) -> GFMatrix:
    """k-th symmetric power on the monomial basis (multisets, lexicographic)."""
    d = G.rows
    p = G.field.p
    if G.field.e != 1:
        raise ValueError("symmetric powers are implemented over the prime field")
    monomials = list(combinations_with_replacement(range(d), k))
    index = {m: i for i, m in enumerate(monomials)}
    cols = [[(i, int(G.a[i, j])) for i in range(d) if G.a[i, j]] for j in range(d)]
    out = [[0] * len(monomials) for _ in monomials]
    for c, mono in enumerate(monomials):
        terms: Counter = Counter({(): 1})
        for j in mono:
            nxt: Counter = Counter()
            for key, coef in terms.items():
                for i, v in cols[j]:
                    nxt[tuple(sorted(key + (i,)))] += coef * v
            terms = Counter({key: v % p for key, v in nxt.items() if v % p})
        for key, coef in terms.items():
            out[index[key]][c] = coef
    return GFMatrix.from_ints(G.field, out)


def jt_sym(a: JordanType, k: int) -> JordanType:
    if k < 0:
        raise ValueError("symmetric power degree must be non-negative")
    if k == 0:
        return JordanType(a.p, (1,))
    return _type_of_unipotent(sym_power_matrix(unipotent(a), k), a.p)


def jt_stable(a: JordanType) -> JordanType:
    return JordanType(a.p, [b for b in a.blocks if b != a.p])


def jt_complementary(a: JordanType) -> JordanType:
    """Stable type with every block size m replaced by p - m."""
    return JordanType(a.p, [a.p - b for b in a.blocks if b != a.p])


class LaurentClass:
    """Element of Z[q, 1/q] modulo (q - 1)(q^{p-1} + q^{p-3} + ... + q^{1-p}).

    The quotient is free on q^t for |t| <= p - 1; that window is the stored
    canonical representative.
    """

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, terms: dict[int, int] | None = None):
        self.p = p
        self.coeffs = _reduce(p, dict(terms or {}))

    @classmethod
    def monomial(cls, p: int, exponent: int, coef: int = 1) -> "LaurentClass":
        return cls(p, {exponent: coef})

    @classmethod
    def block(cls, p: int, n: int) -> "LaurentClass":
        """Class of J_n: q^{n-1} + q^{n-3} + ... + q^{1-n}."""
        return cls(p, {n - 1 - 2 * i: 1 for i in range(n)})

    def __add__(self, other: "LaurentClass") -> "LaurentClass":
        out = dict(self.coeffs)
        for t, c in other.coeffs.items():
            out[t] = out.get(t, 0) + c
        return LaurentClass(self.p, out)

    def __sub__(self, other: "LaurentClass") -> "LaurentClass":
        return self + other.scaled(-1)

    def scaled(self, c: int) -> "LaurentClass":
        return LaurentClass(self.p, {t: c * v for t, v in self.coeffs.items()})

    def shift(self, n: int) -> "LaurentClass":
        """Multiply by q^n."""
        return LaurentClass(self.p, {t + n: v for t, v in self.coeffs.items()})

    def __mul__(self, other: "LaurentClass") -> "LaurentClass":
        out: dict[int, int] = {}
        for s, a in self.coeffs.items():
            for t, b in other.coeffs.items():
                out[s + t] = out.get(s + t, 0) + a * b
        return LaurentClass(self.p, out)

    def __eq__(self, other):
        return isinstance(other, LaurentClass) and self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, tuple(sorted(self.coeffs.items()))))

    def is_symmetric(self) -> bool:
        return all(self.coeffs.get(-t, 0) == c for t, c in self.coeffs.items())

    def evaluate_at_one(self) -> int:
        return sum(self.coeffs.values())

    def decompose(self) -> dict[int, int]:
        """Coordinates over the classes of J_1, ..., J_p (triangular peel from the top)."""
        if not self.is_symmetric():
            raise ValueError("only q <-> 1/q symmetric classes are Jordan types")
        rest = dict(self.coeffs)
        mult: dict[int, int] = {}
        for n in range(self.p, 0, -1):
            c = rest.get(n - 1, 0)
            if c:
                mult[n] = c
                for i in range(n):
                    t = n - 1 - 2 * i
                    rest[t] = rest.get(t, 0) - c
        if any(rest.values()):
            raise ValueError("class is not an integer combination of Jordan blocks")
        return mult

    def __repr__(self):
        return f"LaurentClass(p={self.p}, {dict(sorted(self.coeffs.items()))})"


def _relation(p: int) -> dict[int, int]:
    # (q - 1) * sum_{i<p} q^{p-1-2i} = sum_{t=1-p}^{p} s_t q^t, s_t = (-1)^{p-t}
    return {t: (-1) ** (p - t) for t in range(1 - p, p + 1)}


def _reduce(p: int, terms: dict[int, int]) -> dict[int, int]:
    rel = _relation(p)
    top, bottom = p - 1, 1 - p
    while True:
        live = [t for t, c in terms.items() if c]
        if not live:
            return {}
        hi, lo = max(live), min(live)
        if hi > top:
            # q^p = -sum_{t<p} s_t q^t
            c = terms.pop(hi)
            shift = hi - p
            for t, s in rel.items():
                if t != p:
                    terms[t + shift] = terms.get(t + shift, 0) - c * s
        elif lo < bottom:
            # q^{1-p} = sum_{t>1-p} s_t q^t   (s_{1-p} = -1)
            c = terms.pop(lo)
            shift = lo - (1 - p)
            for t, s in rel.items():
                if t != 1 - p:
                    terms[t + shift] = terms.get(t + shift, 0) + c * s
        else:
            return {t: c for t, c in terms.items() if c}


def gaussian_class(n: int, r: int, p: int) -> LaurentClass:
    """g_{n,r}(q) by the recurrence g_{n,r} = q^{n-r} g_{n-1,r-1} + q^{-r} g_{n-1,r}."""

    @functools.lru_cache(maxsize=None)
    def g(n: int, r: int) -> LaurentClass:
        if r == 0:
            return LaurentClass.monomial(p, 0)
        if r > n:
            return LaurentClass(p)
        return g(n - 1, r - 1).shift(n - r) + g(n - 1, r).shift(-r)

    return g(n, r)


def gaussian_ext(n: int, r: int, p: int) -> JordanType:
    """Jordan type of the r-th exterior power of J_n, purely symbolically (r < p).

    The stable blocks come from decomposing the reduced class; the number of
    J_p summands is then fixed by the dimension C(n, r).
    """
    if not 1 <= n <= p:
        raise ValueError(f"block size {n} out of range 1..{p}")
    if not 1 <= r < p:
        raise ValueError(f"the Gaussian identity needs 1 <= r < p, got r={r}")
    mult = gaussian_class(n, r, p).decompose()
    stable = {m: c for m, c in mult.items() if m != p}
    if any(c < 0 for c in stable.values()):
        raise ValueError(f"negative stable multiplicity in g_({n},{r}): {stable}")
    stable_dim = sum(m * c for m, c in stable.items())
    free, rem = divmod(comb(n, r) - stable_dim, p)
    if rem or free < 0:
        raise ValueError(f"dimension C({n},{r}) inconsistent with stable part {stable}")
    parts = [p] * free + [m for m, c in stable.items() for _ in range(c)]
    return JordanType(p, parts)
