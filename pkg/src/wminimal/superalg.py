"""Super-commutative Poisson algebras and their PBW quantisations.

Both algebras are described by the same data: an ordered list of generators
(each even or odd) and a table of brackets ``[y_a, y_b}`` that are linear
combinations of generators and the unit.  The classical algebra is the free
super-commutative algebra with the induced Poisson superbracket; the quantum
algebra is the enveloping algebra of the corresponding Lie superalgebra with
the unit identified with 1.  Elements of either are dicts mapping sorted
generator tuples (PBW monomials) to exact coefficients, so the associated
graded of a quantum element can be compared with a classical one literally.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Iterable, Optional, Sequence

Mono = tuple
Poly = dict


def num(x):
    """Exact number in its cheapest form (int when integral)."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def padd(acc: dict, other: dict, scale=1) -> dict:
    """In-place ``acc += scale * other``."""
    if not scale:
        return acc
    for m, c in other.items():
        v = acc.get(m, 0) + scale * c
        if v:
            acc[m] = num(v)
        else:
            acc.pop(m, None)
    return acc


def pscale(p: dict, scale) -> dict:
    if not scale:
        return {}
    return {m: num(c * scale) for m, c in p.items()}


def psub(a: dict, b: dict) -> dict:
    return padd(dict(a), b, -1)


@dataclass(frozen=True)
class Generator:
    name: str
    parity: int          # 0 even, 1 odd
    kdeg: Fraction       # Kazhdan degree
    fdeg: int = 1        # contribution to the truncation degree
    ghost: int = 0       # cohomological degree


class SuperAlgebra:
    """Generator data shared by the classical and quantum algebras."""

    def __init__(self, generators: Sequence[Generator], brackets: dict):
        self.gens = list(generators)
        self.parity = [g.parity for g in self.gens]
        self.kdeg = [Fraction(g.kdeg) for g in self.gens]
        for k in self.kdeg:
            if (2 * k).denominator != 1:
                raise ValueError("Kazhdan degrees must lie in (1/2)Z")
        self.k2 = [int(2 * k) for k in self.kdeg]   # doubled degrees, for speed
        self.fdeg = [g.fdeg for g in self.gens]
        self.ghost = [g.ghost for g in self.gens]
        n = len(self.gens)
        self.table: dict = {}
        for (a, b), val in brackets.items():
            val = {tuple(m): num(Fraction(c)) for m, c in val.items() if c}
            if not val:
                continue
            if any(len(m) > 1 for m in val):
                raise ValueError("brackets must be linear or constant")
            self.table[(a, b)] = val
            sign = -1 if not (self.parity[a] and self.parity[b]) else 1
            rev = {m: num(sign * c) for m, c in val.items()}
            if (b, a) in brackets and a != b:
                continue
            self.table[(b, a)] = rev
        for (a, b), val in list(self.table.items()):
            if a == b and not self.parity[a] and val:
                raise ValueError("even generator with nonzero self-bracket")
        self.n = n
        self._qright: dict = {}
        self._qmono: dict = {}
        self._qright_full: dict = {}
        self._qmono_full: dict = {}
        self._find_blocks()

    def _find_blocks(self) -> None:
        n = self.n
        lo, hi = list(range(n)), list(range(n))
        for (a, b), val in self.table.items():
            ks = [a, b] + [m[0] for m in val if m]
            lo_ab, hi_ab = min(ks), max(ks)
            for k in ks:
                lo[k] = min(lo[k], lo_ab)
                hi[k] = max(hi[k], hi_ab)
        # merge overlapping ranges into contiguous blocks
        spans = sorted(set((lo[k], hi[k]) for k in range(n)))
        merged: list = []
        for a, b in spans:
            if merged and a <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], b)
            else:
                merged.append([a, b])
        self.block_starts = [a for a, _ in merged]
        self.block_of = [0] * n
        for bi, (a, b) in enumerate(merged):
            for k in range(a, b + 1):
                self.block_of[k] = bi

    # -- degrees ---------------------------------------------------------

    def mono_parity(self, m: Mono) -> int:
        p = self.parity
        return sum(p[k] for k in m) & 1

    def mono_kdeg(self, m: Mono) -> Fraction:
        return Fraction(self.mono_k2(m), 2)

    def mono_k2(self, m: Mono) -> int:
        """Twice the Kazhdan degree (an integer)."""
        k2 = self.k2
        return sum(k2[k] for k in m)

    def mono_fdeg(self, m: Mono) -> int:
        fd = self.fdeg
        return sum(fd[k] for k in m)

    def mono_ghost(self, m: Mono) -> int:
        gh = self.ghost
        return sum(gh[k] for k in m)

    def bracket_gens(self, a: int, b: int) -> dict:
        return self.table.get((a, b), {})

    def name(self, m: Mono) -> str:
        if not m:
            return "1"
        return "*".join(self.gens[k].name for k in m)

    def format(self, p: dict) -> str:
        if not p:
            return "0"
        return " + ".join(f"({c})*{self.name(m)}" for m, c in sorted(p.items()))

    # -- classical (super-commutative) product ----------------------------

    def cmono_mul(self, m1: Mono, m2: Mono):
        """Product of two monomials: ``(sign, monomial)`` or ``(0, None)``."""
        if not m1:
            return 1, m2
        if not m2:
            return 1, m1
        par = self.parity
        o1 = [k for k in m1 if par[k]]
        sign = 1
        if o1:
            s1 = set(o1)
            inv = 0
            for k in m2:
                if par[k]:
                    if k in s1:
                        return 0, None
                    inv += sum(1 for j in o1 if j > k)
            if inv & 1:
                sign = -1
        return sign, tuple(sorted(m1 + m2))

    def cmul(self, p: dict, q: dict) -> dict:
        out: dict = {}
        for m1, c1 in p.items():
            for m2, c2 in q.items():
                s, m = self.cmono_mul(m1, m2)
                if s:
                    v = out.get(m, 0) + s * c1 * c2
                    if v:
                        out[m] = num(v)
                    else:
                        out.pop(m, None)
        return out

    def cmul_many(self, *factors: dict) -> dict:
        out = {(): 1}
        for f in factors:
            out = self.cmul(out, f)
            if not out:
                break
        return out

    def _cbracket_mono_gen(self, m: Mono, c: int) -> dict:
        """``{m, y_c}`` via ``{AB,C} = A{B,C} + (-1)^{|B||C|}{A,C}B``."""
        par = self.parity
        out: dict = {}
        n = len(m)
        suffix_par = 0
        for t in range(n - 1, -1, -1):
            a = m[t]
            br = self.table.get((a, c))
            if br:
                sign = -1 if (par[c] and suffix_par) else 1
                term = self.cmul_many({m[:t]: 1}, br, {m[t + 1:]: 1})
                padd(out, term, sign)
            suffix_par ^= par[a]
        return out

    def cbracket(self, p: dict, q: dict) -> dict:
        """Poisson superbracket ``{p, q}``."""
        par = self.parity
        out: dict = {}
        for m, cm in p.items():
            pm = self.mono_parity(m)
            for n_, cn in q.items():
                prefix_par = 0
                for s, c in enumerate(n_):
                    br = self._cbracket_mono_gen(m, c)
                    if br:
                        sign = -1 if (pm and prefix_par) else 1
                        term = self.cmul_many({n_[:s]: 1}, br, {n_[s + 1:]: 1})
                        padd(out, term, sign * cm * cn)
                    prefix_par ^= par[c]
        return out

    # -- quantum (PBW) product ---------------------------------------------

    # Generators split into contiguous blocks that (super)commute with each
    # other; PBW products factor over the blocks, which keeps the memo tables
    # small and the recursion shallow.

    def _split(self, m: Mono) -> list:
        starts = self.block_starts
        parts = []
        pos = 0
        for b in range(len(starts)):
            end = starts[b + 1] if b + 1 < len(starts) else self.n
            q = pos
            while q < len(m) and m[q] < end:
                q += 1
            parts.append(m[pos:q])
            pos = q
        return parts

    def qright(self, m: Mono, g: int) -> dict:
        """PBW normal form of ``m * y_g``."""
        key = (m, g)
        hit = self._qright_full.get(key)
        if hit is not None:
            return hit
        b = self.block_of[g]
        lo = self.block_starts[b]
        hi = self.block_starts[b + 1] if b + 1 < len(self.block_starts) else self.n
        i = 0
        while i < len(m) and m[i] < lo:
            i += 1
        j = i
        while j < len(m) and m[j] < hi:
            j += 1
        head, mid, tail = m[:i], m[i:j], m[j:]
        sign = -1 if (self.parity[g] and self.mono_parity(tail)) else 1
        res = {}
        for u, c in self._qright_raw(mid, g).items():
            res[head + u + tail] = sign * c
        self._qright_full[key] = res
        return res

    def qmul_mono(self, m1: Mono, m2: Mono) -> dict:
        if not m2:
            return {m1: 1}
        if not m1:
            return {m2: 1}
        if m1[-1] < m2[0] or (m1[-1] == m2[0] and not self.parity[m1[-1]]):
            return {m1 + m2: 1}
        key = (m1, m2)
        hit = self._qmono_full.get(key)
        if hit is not None:
            return hit
        p1, p2 = self._split(m1), self._split(m2)
        nb = len(p1)
        sign = 1
        par_after = 0
        for b in range(nb - 1, -1, -1):
            if self.mono_parity(p2[b]) and par_after:
                sign = -sign
            par_after ^= self.mono_parity(p1[b])
        cur = {(): sign}
        for b in range(nb):
            if not p2[b]:
                if p1[b]:
                    cur = {u + p1[b]: c for u, c in cur.items()}
                continue
            prod = self._qmul_raw(p1[b], p2[b])
            nxt: dict = {}
            for u, c in cur.items():
                for v, c2 in prod.items():
                    nxt[u + v] = c * c2
            cur = nxt
            if not cur:
                break
        self._qmono_full[key] = cur
        return cur

    def _qright_raw(self, m: Mono, g: int) -> dict:
        """``m * y_g`` for ``m`` and ``y_g`` inside one commuting block."""
        key = (m, g)
        hit = self._qright.get(key)
        if hit is not None:
            return hit
        if not m or m[-1] < g:
            res = {m + (g,): 1}
        else:
            last = m[-1]
            head = m[:-1]
            par = self.parity
            if last == g:
                if not par[g]:
                    res = {m + (g,): 1}
                else:
                    br = self.table.get((g, g), {})
                    res = {}
                    for u, c in br.items():
                        padd(res, self._qmul_raw(head, u), Fraction(c, 2))
            else:
                sign = -1 if (par[last] and par[g]) else 1
                res = {}
                for u, c in self._qright_raw(head, g).items():
                    padd(res, self._qright_raw(u, last), sign * c)
                br = self.table.get((last, g), {})
                for u, c in br.items():
                    padd(res, self._qmul_raw(head, u), c)
        self._qright[key] = res
        return res

    def _qmul_raw(self, m1: Mono, m2: Mono) -> dict:
        if not m2:
            return {m1: 1}
        if not m1:
            return {m2: 1}
        if m1[-1] < m2[0] or (m1[-1] == m2[0] and not self.parity[m1[-1]]):
            return {m1 + m2: 1}
        key = (m1, m2)
        hit = self._qmono.get(key)
        if hit is not None:
            return hit
        cur = {m1: 1}
        for g in m2:
            nxt: dict = {}
            for u, c in cur.items():
                padd(nxt, self._qright_raw(u, g), c)
            cur = nxt
        self._qmono[key] = cur
        return cur

    def qmul(self, p: dict, q: dict) -> dict:
        out: dict = {}
        for m1, c1 in p.items():
            for m2, c2 in q.items():
                padd(out, self.qmul_mono(m1, m2), c1 * c2)
        return out

    def qcommutator(self, p: dict, q: dict, parity_p: int, parity_q: int) -> dict:
        """Super-commutator ``pq - (-1)^{|p||q|} qp`` of homogeneous elements."""
        sign = -1 if (parity_p and parity_q) else 1
        return padd(self.qmul(p, q), self.qmul(q, p), -sign)


class OddDerivation:
    """``ad d`` for an odd element ``d``, classical or quantum.

    ``[d, y_k}`` is precomputed per generator; images of monomials follow
    from the super-Leibniz rule and are memoised on prefixes.
    """

    def __init__(self, alg: SuperAlgebra, d: dict, quantum: bool):
        self.alg = alg
        self.d = d
        self.quantum = quantum
        if quantum:
            self.on_gen = [alg.qcommutator(d, {(k,): 1}, 1, alg.parity[k]) for k in range(alg.n)]
        else:
            self.on_gen = [alg.cbracket(d, {(k,): 1}) for k in range(alg.n)]
        self._memo: dict = {(): {}}

    def __call__(self, m: Mono) -> dict:
        memo = self._memo
        hit = memo.get(m)
        if hit is not None:
            return hit
        alg = self.alg
        head, k = m[:-1], m[-1]
        dk = self.on_gen[k]
        sign = -1 if alg.mono_parity(head) else 1
        res: dict = {}
        if self.quantum:
            for u, c in self(head).items():
                padd(res, alg.qright(u, k), c)
            for u, c in dk.items():
                padd(res, alg.qmul_mono(head, u), sign * c)
        else:
            for u, c in self(head).items():
                s, w = alg.cmono_mul(u, (k,))
                if s:
                    padd(res, {w: 1}, s * c)
            for u, c in dk.items():
                s, w = alg.cmono_mul(head, u)
                if s:
                    padd(res, {w: 1}, sign * s * c)
        memo[m] = res
        return res

    def apply(self, p: dict) -> dict:
        out: dict = {}
        for m, c in p.items():
            padd(out, self(m), c)
        return out


def odd_square(alg: SuperAlgebra, d: dict, quantum: bool) -> dict:
    """``d*d`` (quantum) or ``{d, d}/2`` (classical); zero iff ``(ad d)^2 = 0``."""
    if quantum:
        return alg.qmul(d, d)
    return pscale(alg.cbracket(d, d), Fraction(1, 2))


def enumerate_monomials(alg: SuperAlgebra, fmax: int, kmax: Fraction,
                        ghosts: Optional[Iterable[int]] = None,
                        kmin: Optional[Fraction] = None) -> list:
    """All monomials with truncation degree <= fmax and Kazhdan degree <= kmax
    (and >= kmin when given).

    Even generators must have positive truncation degree, which makes the
    enumeration finite.
    """
    n = alg.n
    par, k2, fd = alg.parity, alg.k2, alg.fdeg
    for k in range(n):
        if fd[k] == 0 and not par[k]:
            raise ValueError("even generators must have positive truncation degree")
    kmax2 = int(floor(2 * Fraction(kmax)))
    kmin2 = None if kmin is None else int(ceil(2 * Fraction(kmin)))
    # lower bounds on the Kazhdan degree still reachable from generator k on
    neg_odd_free = [0] * (n + 1)     # odd generators that cost no truncation degree
    min_ratio_tail: list = [None] * (n + 1)
    for k in range(n - 1, -1, -1):
        neg_odd_free[k] = neg_odd_free[k + 1] + (k2[k] if (par[k] and not fd[k] and k2[k] < 0) else 0)
        cur = min_ratio_tail[k + 1]
        if fd[k]:
            ratio = Fraction(k2[k], fd[k])
            if cur is None or ratio < cur:
                cur = ratio
        min_ratio_tail[k] = cur
    ghost_set = set(ghosts) if ghosts is not None else None
    out = []

    def lower_bound(k, fleft):
        lb = neg_odd_free[k]
        r = min_ratio_tail[k]
        if r is not None and r < 0:
            lb += r * fleft
        return lb

    def rec(k, cur, kcur, fleft):
        if k == n:
            if kcur > kmax2 or (kmin2 is not None and kcur < kmin2):
                return
            if ghost_set is None or alg.mono_ghost(tuple(cur)) in ghost_set:
                out.append(tuple(cur))
            return
        if kcur + lower_bound(k, fleft) > kmax2:
            return
        rec(k + 1, cur, kcur, fleft)
        mult = 1
        while True:
            if par[k] and mult > 1:
                break
            if fd[k] * mult > fleft:
                break
            cur.append(k)
            rec(k + 1, cur, kcur + k2[k] * mult, fleft - fd[k] * mult)
            mult += 1
        del cur[len(cur) - (mult - 1):]

    rec(0, [], 0, fmax)
    return out
