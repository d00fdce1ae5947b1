"""Exact arithmetic in GF(p^e) and dense matrices over it.

Field elements are encoded as integers ``c_0 + c_1 p + ... + c_{e-1} p^{e-1}``
where ``c_0 + c_1 x + ...`` is the residue modulo the defining polynomial.
Prime-field elements therefore encode as themselves, so integer matrices
reduced mod p embed into every extension without conversion.

Addition, negation, multiplication and inversion are precomputed as lookup
tables; matrices are numpy int64 arrays of encoded elements.
"""

from __future__ import annotations

import functools
import itertools
import json
from dataclasses import dataclass, field as dc_field

import numpy as np

from .partitions import Partition


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n ** 0.5) + 1))


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a by the monic polynomial m over GF(p), low-degree-first."""
    a = [x % p for x in a]
    dm = len(m) - 1
    for top in range(len(a) - 1, dm - 1, -1):
        c = a[top]
        if c:
            shift = top - dm
            for j, mj in enumerate(m):
                a[shift + j] = (a[shift + j] - c * mj) % p
    a = a[:dm] if dm else []
    while a and a[-1] == 0:
        a.pop()
    return a


def _monic_polys(p: int, degree: int):
    """Monic polynomials of a given degree, ordered by their integer encoding."""
    for code in range(p ** degree):
        low = [(code // p ** j) % p for j in range(degree)]
        yield low + [1]


def is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree up to deg/2."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(p, d):
            if not _poly_mod(poly, f, p):
                return False
    return True


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """GF(p^e) with an explicit defining polynomial.

    ``modulus`` lists coefficients low-degree-first and is monic of degree e.
    For e = 1 the modulus is ``x`` and the field is the prime field.
    """

    p: int
    e: int
    modulus: tuple[int, ...]
    add: np.ndarray = dc_field(repr=False)
    neg: np.ndarray = dc_field(repr=False)
    sub: np.ndarray = dc_field(repr=False)
    mul: np.ndarray = dc_field(repr=False)
    inv: np.ndarray = dc_field(repr=False)

    @property
    def q(self) -> int:
        return self.p ** self.e

    def __eq__(self, other):
        return (isinstance(other, FieldSpec) and self.p == other.p
                and self.e == other.e and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.e}, modulus={self.poly_str(self.modulus)})"

    # scalar helpers
    def coeffs(self, x: int) -> list[int]:
        return [(x // self.p ** j) % self.p for j in range(self.e)]

    def encode(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.e:
            coeffs = _poly_mod(coeffs, list(self.modulus), self.p)
        return sum((c % self.p) * self.p ** j for j, c in enumerate(coeffs))

    def from_int(self, n: int) -> int:
        """Image of an integer in the prime subfield."""
        return n % self.p

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def prime_subfield_units(self) -> range:
        return range(1, self.p)

    def power(self, x: int, n: int) -> int:
        result, base = 1, int(x)
        if n < 0:
            base, n = int(self.inv[base]), -n
        while n:
            if n & 1:
                result = int(self.mul[result, base])
            base = int(self.mul[base, base])
            n >>= 1
        return result

    def element_str(self, x: int) -> str:
        return self.poly_str(self.coeffs(x), zero="0")

    @staticmethod
    def poly_str(coeffs, zero: str = "0") -> str:
        terms = []
        for j, c in enumerate(coeffs):
            if not c:
                continue
            mono = "" if j == 0 else ("x" if j == 1 else f"x^{j}")
            if j == 0:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(terms) if terms else zero

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}


def _build_tables(p: int, e: int, modulus: tuple[int, ...]):
    q = p ** e
    digits = np.array([[(x // p ** j) % p for j in range(e)] for x in range(q)],
                      dtype=np.int64)
    weights = p ** np.arange(e, dtype=np.int64)
    add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
    neg = ((-digits) % p) @ weights
    sub = add[:, neg]
    if e == 1:
        idx = np.arange(p, dtype=np.int64)
        mul = np.outer(idx, idx) % p
    else:
        prod = np.zeros((q, q, 2 * e - 1), dtype=np.int64)
        for i in range(e):
            for j in range(e):
                prod[:, :, i + j] += np.outer(digits[:, i], digits[:, j])
        for top in range(2 * e - 2, e - 1, -1):
            c = prod[:, :, top]
            for j in range(e):
                prod[:, :, top - e + j] -= c * modulus[j]
        mul = (prod[:, :, :e] % p) @ weights
    inv = np.zeros(q, dtype=np.int64)
    rows, cols = np.nonzero(mul == 1)
    inv[rows] = cols
    return add, neg, sub, mul, inv


@functools.lru_cache(maxsize=None)
def make_field(p: int, e: int = 1) -> FieldSpec:
    """GF(p^e) over the first monic irreducible of degree e.

    Candidates are scanned in increasing order of their integer encoding
    (the highest non-leading coefficient is the most significant), so
    GF(9) uses x^2+1 and GF(25) uses x^2+2.
    """
    if not (isinstance(p, int) and p > 2 and is_prime(p)):
        raise ValueError(f"p must be an odd prime, got {p!r}")
    if e < 1:
        raise ValueError(f"extension degree must be at least 1, got {e}")
    if e == 1:
        modulus = (0, 1)
    else:
        modulus = next(tuple(f) for f in _monic_polys(p, e) if is_irreducible(f, p))
    tables = _build_tables(p, e, modulus)
    for t in tables:
        t.setflags(write=False)
    return FieldSpec(p, e, modulus, *tables)


class GFMatrix:
    """Dense matrix over a FieldSpec; immutable once built."""

    __slots__ = ("field", "a")

    def __init__(self, field: FieldSpec, entries):
        a = np.array(entries, dtype=np.int64, ndmin=2, copy=True)
        if a.size and (a.min() < 0 or a.max() >= field.q):
            raise ValueError("matrix entries must be encoded field elements in [0, q)")
        a.setflags(write=False)
        self.field = field
        self.a = a

    # construction
    @classmethod
    def _wrap(cls, field: FieldSpec, a: np.ndarray) -> "GFMatrix":
        m = object.__new__(cls)
        a.setflags(write=False)
        m.field = field
        m.a = a
        return m

    @classmethod
    def from_ints(cls, field: FieldSpec, rows) -> "GFMatrix":
        """Integer matrix reduced into the prime subfield."""
        return cls._wrap(field, np.array(rows, dtype=np.int64, ndmin=2) % field.p)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "GFMatrix":
        return cls._wrap(field, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int | None = None) -> "GFMatrix":
        return cls._wrap(field, np.zeros((rows, rows if cols is None else cols), dtype=np.int64))

    @classmethod
    def jordan_block(cls, field: FieldSpec, size: int, eigenvalue: int = 1) -> "GFMatrix":
        """Lower-triangular Jordan block: ones on the subdiagonal."""
        a = np.eye(size, dtype=np.int64) * eigenvalue
        a[np.arange(1, size), np.arange(size - 1)] = 1
        return cls._wrap(field, a)

    @classmethod
    def block_diag(cls, field: FieldSpec, blocks) -> "GFMatrix":
        blocks = list(blocks)
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        a = np.zeros((n, m), dtype=np.int64)
        i = j = 0
        for b in blocks:
            a[i:i + b.rows, j:j + b.cols] = b.a
            i += b.rows
            j += b.cols
        return cls._wrap(field, a)

    # shape and comparison
    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    def __eq__(self, other):
        if not isinstance(other, GFMatrix):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.a, other.a)

    __hash__ = None

    def __repr__(self):
        return f"GFMatrix({self.rows}x{self.cols} over {self.field!r})"

    def _check(self, other: "GFMatrix"):
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field!r} vs {other.field!r}")

    # arithmetic
    def __add__(self, other: "GFMatrix") -> "GFMatrix":
        self._check(other)
        return GFMatrix._wrap(self.field, self.field.add[self.a, other.a])

    def __sub__(self, other: "GFMatrix") -> "GFMatrix":
        self._check(other)
        return GFMatrix._wrap(self.field, self.field.sub[self.a, other.a])

    def __neg__(self) -> "GFMatrix":
        return GFMatrix._wrap(self.field, self.field.neg[self.a])

    def scale(self, c: int) -> "GFMatrix":
        return GFMatrix._wrap(self.field, self.field.mul[int(c), self.a])

    def __matmul__(self, other: "GFMatrix") -> "GFMatrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return GFMatrix._wrap(self.field, _matmul(self.field, self.a, other.a))

    def __pow__(self, n: int) -> "GFMatrix":
        if self.rows != self.cols:
            raise ValueError("matrix power needs a square matrix")
        result = GFMatrix.identity(self.field, self.rows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            n >>= 1
            if n:
                base = base @ base
        return result

    def transpose(self) -> "GFMatrix":
        return GFMatrix._wrap(self.field, self.a.T.copy())

    T = property(transpose)

    def is_zero(self) -> bool:
        return not self.a.any()

    def rank(self) -> int:
        return rank(self)

    def inverse(self) -> "GFMatrix":
        return inverse(self)

    def with_field(self, field: FieldSpec) -> "GFMatrix":
        """Re-embed a prime-field matrix into another field of the same characteristic."""
        if field.p != self.field.p:
            raise ValueError("characteristic mismatch")
        if field.e != self.field.e and self.a.size and self.a.max() >= self.field.p:
            raise ValueError("only prime-field matrices can change field")
        return GFMatrix._wrap(field, self.a.copy())

    def tolist(self) -> list[list[int]]:
        return self.a.tolist()

    def to_json(self) -> dict:
        d = self.field.to_json()
        d.update(rows=self.rows, cols=self.cols, entries=self.a.ravel().tolist())
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _planes(field: FieldSpec, a: np.ndarray) -> list[np.ndarray]:
    p = field.p
    return [((a // p ** j) % p).astype(np.float64) for j in range(field.e)]


def _matmul(field: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # float64 BLAS is exact here: every partial sum stays far below 2**53
    p, e = field.p, field.e
    if e == 1:
        return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64) % p
    pa, pb = _planes(field, a), _planes(field, b)
    acc = [None] * (2 * e - 1)
    for i in range(e):
        for j in range(e):
            prod = np.rint(pa[i] @ pb[j]).astype(np.int64) % p
            acc[i + j] = prod if acc[i + j] is None else acc[i + j] + prod
    m = field.modulus
    for top in range(2 * e - 2, e - 1, -1):
        c = acc[top] % p
        for j in range(e):
            if m[j]:
                acc[top - e + j] = acc[top - e + j] - c * m[j]
    out = np.zeros(a.shape[:1] + b.shape[1:], dtype=np.int64)
    for j in range(e):
        out += (acc[j] % p) * p ** j
    return out


def _eliminate(field: FieldSpec, m: np.ndarray, reduced: bool = False) -> tuple[np.ndarray, list[int]]:
    """In-place row reduction with first-nonzero pivoting; returns pivot columns."""
    p = field.p
    prime = field.e == 1
    n_rows, n_cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        lead = int(m[r, c])
        if prime:
            prow = (m[r, c:] * int(field.inv[lead])) % p
        else:
            prow = field.mul[field.inv[lead], m[r, c:]]
        m[r, c:] = prow
        if reduced:
            targets = np.flatnonzero(m[:, c])
            targets = targets[targets != r]
        else:
            targets = r + 1 + np.flatnonzero(m[r + 1:, c])
        if targets.size:
            f = m[targets, c]
            if prime:
                m[targets, c:] = (m[targets, c:] - f[:, None] * prow[None, :]) % p
            else:
                m[targets, c:] = field.sub[m[targets, c:], field.mul[f[:, None], prow[None, :]]]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(mat: GFMatrix) -> int:
    """Row rank by Gaussian elimination."""
    if mat.a.size == 0:
        return 0
    _, pivots = _eliminate(mat.field, mat.a.copy())
    return len(pivots)


def inverse(mat: GFMatrix) -> GFMatrix:
    n = mat.rows
    if mat.cols != n:
        raise ValueError("inverse needs a square matrix")
    aug = np.hstack([mat.a, np.eye(n, dtype=np.int64)])
    red, pivots = _eliminate(mat.field, aug, reduced=True)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return GFMatrix._wrap(mat.field, red[:, n:].copy())


def kron(A: GFMatrix, B: GFMatrix) -> GFMatrix:
    """Kronecker product; block (i, j) is A[i, j] * B."""
    A._check(B)
    out = A.field.mul[A.a[:, None, :, None], B.a[None, :, None, :]]
    return GFMatrix._wrap(A.field, out.reshape(A.rows * B.rows, A.cols * B.cols))


def nilpotent_jordan_type(N: GFMatrix, p: int | None = None) -> Partition:
    """Jordan block sizes of a p-nilpotent matrix, via ranks of its powers.

    With r_j = rank(N^j), the number of blocks of size i is
    r_{i-1} - 2 r_i + r_{i+1}.
    """
    if N.rows != N.cols:
        raise ValueError("Jordan type needs a square matrix")
    p = N.field.p if p is None else p
    n = N.rows
    ranks = [n]
    power = N
    for j in range(1, p + 1):
        rk = power.rank() if ranks[-1] else 0
        ranks.append(rk)
        if rk == 0:
            break
        if j < p:
            power = power @ N
    else:
        raise ValueError(f"not p-nilpotent: rank(N^{p}) = {ranks[-1]}")
    ranks += [0] * (p + 2 - len(ranks))
    counts = {i: ranks[i - 1] - 2 * ranks[i] + ranks[i + 1] for i in range(1, p + 1)}
    return Partition.sorted(itertools.chain.from_iterable([i] * c for i, c in counts.items()))


def ext_power_matrix(G: GFMatrix, r: int) -> GFMatrix:
    """Matrix of the r-th exterior power on lexicographically ordered r-subsets.

    Entry (J, I) is the J x I minor of G.  Each column is computed as the
    wedge of the chosen columns of G, expanded sparsely with like terms
    merged after every factor.
    """
    d = G.rows
    if G.cols != d:
        raise ValueError("exterior power needs a square matrix")
    if r == 0:
        return GFMatrix.identity(G.field, 1)
    if not 1 <= r <= d:
        raise ValueError(f"exterior power degree {r} out of range 1..{d}")
    F = G.field
    mul, add = F.mul.tolist(), F.add.tolist()
    neg = F.neg.tolist()
    columns = [[(int(i), int(G.a[i, j])) for i in np.flatnonzero(G.a[:, j])] for j in range(d)]
    subsets = list(itertools.combinations(range(d), r))
    index = {s: n for n, s in enumerate(subsets)}
    out = np.zeros((len(subsets), len(subsets)), dtype=np.int64)
    for col, subset in enumerate(subsets):
        terms: dict[tuple[int, ...], int] = {(): 1}
        for j in subset:
            nxt: dict[tuple[int, ...], int] = {}
            for key, coef in terms.items():
                for i, v in columns[j]:
                    if i in key:
                        continue
                    above = sum(1 for s in key if s > i)
                    c = mul[coef][v]
                    if above & 1:
                        c = neg[c]
                    pos = len(key) - above
                    new = key[:pos] + (i,) + key[pos:]
                    nxt[new] = add[nxt.get(new, 0)][c]
            terms = {k: c for k, c in nxt.items() if c}
            if not terms:
                break
        for key, coef in terms.items():
            out[index[key], col] = coef
    return GFMatrix._wrap(F, out)
