"""Exact linear algebra over Q (dense and sparse) plus a modular fast path.

Sparse vectors are ``dict[int, value]`` with no stored zeros.  Exact
elimination is fraction-free: rows are kept as primitive integer vectors and
combined with integer multipliers, so no Fraction arithmetic happens inside
the inner loop.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Optional, Sequence

from .rational import common_denominator

#: Prime used by the modular rank path (2**31 - 1).
DEFAULT_PRIME = 2147483647

SparseVec = dict


# ---------------------------------------------------------------------------
# dense routines (small matrices: nilpotent data, oracles, polynomial systems)


def rref(matrix: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q. Returns (rows, pivot columns)."""
    m = [[Fraction(x) for x in row] for row in matrix]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank_dense(matrix: Sequence[Sequence]) -> int:
    return len(rref(matrix)[1])


def kernel(matrix: Sequence[Sequence], ncols: Optional[int] = None) -> list[list[Fraction]]:
    """Basis of the right null space ``{v : M v = 0}`` in RREF-canonical form."""
    if not matrix:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    n = len(matrix[0])
    rows, pivots = rref(matrix)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for row, pc in zip(rows, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> Optional[list[Fraction]]:
    """One solution of ``M x = b`` (free variables set to zero), or None."""
    n = len(matrix[0]) if matrix else 0
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    rows, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, pc in zip(rows, pivots):
        x[pc] = row[n]
    return x


def in_span(vectors: Sequence[Sequence], v: Sequence) -> bool:
    if not vectors:
        return all(x == 0 for x in v)
    return rank_dense(list(vectors) + [list(v)]) == rank_dense(vectors)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matpow_is_zero(a: Sequence[Sequence], power: int) -> bool:
    """True iff ``a**power == 0`` (exact)."""
    n = len(a)
    if power <= 0:
        return n == 0
    result = [list(row) for row in a]
    for _ in range(power - 1):
        if all(x == 0 for row in result for x in row):
            return True
        result = matmul(result, a)
    return all(x == 0 for row in result for x in row)


def nilpotency_order(a: Sequence[Sequence]) -> Optional[int]:
    """Smallest m with a**m == 0, or None if a is not nilpotent."""
    n = len(a)
    if n == 0:
        return 0
    cur = [list(row) for row in a]
    for m in range(1, n + 1):
        if all(x == 0 for row in cur for x in row):
            return m
        cur = matmul(cur, a)
    return None


# ---------------------------------------------------------------------------
# sparse incremental echelon


def _primitive(vec: dict) -> dict:
    g = reduce(gcd, (abs(v) for v in vec.values()), 0)
    if g > 1:
        vec = {k: v // g for k, v in vec.items()}
    lead = min(vec)
    if vec[lead] < 0:
        vec = {k: -v for k, v in vec.items()}
    return vec


def to_integer_vector(vec: dict) -> dict:
    """Scale a sparse rational vector to a primitive integer vector."""
    vec = {k: v for k, v in vec.items() if v != 0}
    if not vec:
        return {}
    den = common_denominator(vec.values())
    ivec = {k: int(Fraction(v) * den) for k, v in vec.items()}
    return _primitive(ivec)


class Echelon:
    """Incrementally built row echelon basis of a space of sparse vectors.

    With ``modulus=None`` the arithmetic is exact (fraction-free over the
    integers).  With a prime modulus it computes ranks over GF(p), which are
    lower bounds for the rational ranks.
    """

    def __init__(self, modulus: Optional[int] = None):
        self.modulus = modulus
        self.pivots: dict[int, dict] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def _prepare(self, vec: dict) -> dict:
        p = self.modulus
        if p is None:
            return to_integer_vector(vec)
        out = {}
        for k, v in vec.items():
            if v == 0:
                continue
            if isinstance(v, Fraction):
                r = v.numerator * pow(v.denominator, -1, p) % p
            else:
                r = v % p
            if r:
                out[k] = r
        return out

    def insert(self, vec: dict) -> bool:
        """Add a vector; return True iff it was independent of the basis."""
        v = self._prepare(vec)
        p = self.modulus
        pivots = self.pivots
        while v:
            lead = min(v)
            row = pivots.get(lead)
            if row is None:
                if p is None:
                    pivots[lead] = _primitive(v)
                else:
                    inv = pow(v[lead], -1, p)
                    pivots[lead] = {k: x * inv % p for k, x in v.items()}
                return True
            if p is None:
                a, b = row[lead], v[lead]
                g = gcd(a, b)
                a, b = a // g, b // g
                new = {k: a * x for k, x in v.items()}
                for k, x in row.items():
                    y = new.get(k, 0) - b * x
                    if y:
                        new[k] = y
                    else:
                        new.pop(k, None)
                v = _primitive(new) if new else new
            else:
                b = v[lead]
                for k, x in row.items():
                    y = (v.get(k, 0) - b * x) % p
                    if y:
                        v[k] = y
                    else:
                        v.pop(k, None)
        return False


def rank(vectors: Iterable[dict], modulus: Optional[int] = None) -> int:
    ech = Echelon(modulus)
    for v in vectors:
        ech.insert(v)
    return len(ech)


def cumulative_ranks(vectors: Sequence[dict], cuts: Sequence[int],
                     modulus: Optional[int] = None) -> list[int]:
    """Ranks of the prefixes ``vectors[:c]`` for each cut ``c`` (non-decreasing)."""
    ech = Echelon(modulus)
    out = []
    done = 0
    for c in cuts:
        for v in vectors[done:c]:
            ech.insert(v)
        done = max(done, c)
        out.append(len(ech))
    return out


def sparse_compose(second: Sequence[dict], first: Sequence[dict]) -> list[dict]:
    """Column-wise composition: ``first[j]`` is the image of basis vector j;
    ``second[i]`` the image of intermediate basis vector i."""
    out = []
    for col in first:
        acc: dict = {}
        for i, c in col.items():
            for k, v in second[i].items():
                y = acc.get(k, 0) + c * v
                if y:
                    acc[k] = y
                else:
                    acc.pop(k, None)
        out.append(acc)
    return out
