"""Finite root systems, Chevalley bases and Weyl-group helpers.

Conventions
-----------
* Simple roots are numbered as in Bourbaki.
* ``cartan_matrix[i][j] = <alpha_i^vee, alpha_j>``.
* Roots are integer tuples in simple-root coordinates; weights are exact
  rational tuples in fundamental-weight coordinates, i.e. the entries of a
  weight ``v`` are the pairings ``<v, alpha_i^vee>``.
* The invariant form is normalised so that long roots have square length 2.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import permutations
from typing import Optional, Sequence

from . import linalg

Root = tuple
Weight = tuple


class InvalidCartanType(ValueError):
    pass


_LABEL = re.compile(r"^\s*([A-Ga-g])\s*(\d+)\s*$")


def parse_cartan_type(text: str) -> tuple[str, int]:
    """``"A2"`` -> ``("A", 2)``."""
    m = _LABEL.match(text)
    if not m:
        raise InvalidCartanType(f"malformed Cartan type {text!r}; expected e.g. 'A2', 'G2'")
    letter, rank = m.group(1).upper(), int(m.group(2))
    _check_type(letter, rank)
    return letter, rank


def _check_type(letter: str, rank: int) -> None:
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 4,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }.get(letter, False)
    if not ok:
        raise InvalidCartanType(f"no simple Lie algebra of type {letter}{rank}")


def cartan_matrix_of(letter: str, rank: int) -> list[list[int]]:
    _check_type(letter, rank)
    n = rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if letter in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if letter == "B":
            a[n - 1][n - 2] = -2
        elif letter == "C":
            a[n - 2][n - 1] = -2
    elif letter == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif letter == "E":
        link(0, 2)
        link(2, 3)
        link(1, 3)
        for i in range(3, n - 1):
            link(i, i + 1)
    elif letter == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif letter == "G":
        link(0, 1, -3, -1)
    return a


def _root_lengths(a: list[list[int]]) -> list[Fraction]:
    n = len(a)
    lens: list[Optional[Fraction]] = [None] * n
    lens[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and a[i][j] != 0 and lens[j] is None:
                lens[j] = lens[i] * a[i][j] / a[j][i]
                stack.append(j)
    if any(x is None for x in lens):
        raise InvalidCartanType("Cartan matrix is not connected")
    top = max(lens)
    return [x * 2 / top for x in lens]


def _positive_roots(a: list[list[int]]) -> list[Root]:
    n = len(a)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                pair = sum(beta[j] * a[i][j] for j in range(n))
                p = 0
                cur = list(beta)
                while True:
                    cur[i] -= 1
                    if tuple(cur) in roots:
                        p += 1
                    else:
                        break
                if p - pair > 0:
                    new = list(beta)
                    new[i] += 1
                    new = tuple(new)
                    if new not in roots:
                        roots.add(new)
                        nxt.append(new)
        layer = nxt
    return sorted(roots, key=lambda r: (sum(r), r))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _neg(a):
    return tuple(-x for x in a)


@dataclass(frozen=True)
class RootSystem:
    """Finite root data of a simple Lie algebra, all exact."""

    label: str
    cartan_matrix: tuple

    # -- derived data ------------------------------------------------------

    @property
    def letter(self) -> str:
        return self.label[0]

    @property
    def rank(self) -> int:
        return len(self.cartan_matrix)

    @cached_property
    def root_lengths(self) -> tuple:
        """Square lengths ``(alpha_i|alpha_i)`` of the simple roots."""
        return tuple(_root_lengths([list(r) for r in self.cartan_matrix]))

    @cached_property
    def form(self) -> tuple:
        """Gram matrix ``(alpha_i|alpha_j)`` of the simple roots."""
        n, a, L = self.rank, self.cartan_matrix, self.root_lengths
        return tuple(tuple(Fraction(a[i][j]) * L[i] / 2 for j in range(n)) for i in range(n))

    @cached_property
    def positive_roots(self) -> tuple:
        return tuple(_positive_roots([list(r) for r in self.cartan_matrix]))

    @cached_property
    def roots(self) -> tuple:
        return self.positive_roots + tuple(_neg(r) for r in self.positive_roots)

    @cached_property
    def _root_set(self) -> frozenset:
        return frozenset(self.roots)

    def is_root(self, v) -> bool:
        return tuple(v) in self._root_set

    def simple_root(self, i: int) -> Root:
        return tuple(int(i == j) for j in range(self.rank))

    def height(self, root: Root) -> int:
        return sum(root)

    def inner(self, a: Sequence, b: Sequence) -> Fraction:
        """Form on the root lattice (both arguments in simple-root coordinates)."""
        g = self.form
        return sum((Fraction(a[i]) * g[i][j] * b[j]
                    for i in range(self.rank) for j in range(self.rank)
                    if a[i] and b[j]), Fraction(0))

    def root_norm(self, root: Root) -> Fraction:
        return self.inner(root, root)

    def is_long(self, root: Root) -> bool:
        return self.root_norm(root) == 2

    def coroot_coordinates(self, root: Root) -> tuple:
        """Coordinates of ``alpha^vee`` in the simple-coroot basis."""
        n2 = self.root_norm(root)
        L = self.root_lengths
        return tuple(Fraction(c) * L[j] / n2 for j, c in enumerate(root))

    def pair(self, weight: Sequence, root: Root) -> Fraction:
        """``<weight, root^vee>`` for a weight in fundamental coordinates."""
        return sum((Fraction(w) * c for w, c in zip(weight, self.coroot_coordinates(root))),
                   Fraction(0))

    def root_to_weight(self, root: Sequence) -> Weight:
        a = self.cartan_matrix
        return tuple(sum((Fraction(a[i][j]) * root[j] for j in range(self.rank)), Fraction(0))
                     for i in range(self.rank))

    @cached_property
    def _cartan_inverse(self):
        n = self.rank
        aug = [[Fraction(self.cartan_matrix[i][j]) for j in range(n)]
               + [Fraction(int(i == k)) for k in range(n)] for i in range(n)]
        rows, _ = linalg.rref(aug)
        return [row[n:] for row in rows]

    def weight_to_root_coords(self, weight: Sequence) -> tuple:
        """Express a weight in simple-root coordinates (rational)."""
        inv = self._cartan_inverse
        n = self.rank
        return tuple(sum((inv[i][j] * Fraction(weight[j]) for j in range(n)), Fraction(0))
                     for i in range(n))

    def weight_inner(self, u: Sequence, v: Sequence) -> Fraction:
        return self.inner(self.weight_to_root_coords(u), self.weight_to_root_coords(v))

    @cached_property
    def rho(self) -> Weight:
        return tuple(Fraction(1) for _ in range(self.rank))

    @cached_property
    def rho_check(self) -> Weight:
        """Half sum of positive coroots, transported to h* by the form."""
        return tuple(2 / L for L in self.root_lengths)

    @cached_property
    def theta(self) -> Root:
        return max(self.positive_roots, key=lambda r: (sum(r), r))

    @cached_property
    def theta_s(self) -> Root:
        """Highest short root (equals theta when simply laced)."""
        short = min(self.root_norm(r) for r in self.positive_roots)
        return max((r for r in self.positive_roots if self.root_norm(r) == short),
                   key=lambda r: (sum(r), r))

    @cached_property
    def coxeter_h(self) -> int:
        return self.height(self.theta) + 1

    @cached_property
    def dual_coxeter_hv(self) -> int:
        v = self.pair(self.rho, self.theta) + 1
        assert v.denominator == 1
        return int(v)

    @cached_property
    def lacing_rv(self) -> int:
        r = max(self.root_lengths) / min(self.root_lengths)
        assert r.denominator == 1
        return int(r)

    @cached_property
    def weyl_order_check(self) -> int:
        return len(self.positive_roots)

    def simple_reflection(self, weight: Sequence, i: int) -> Weight:
        a = self.cartan_matrix
        wi = Fraction(weight[i])
        # alpha_i has fundamental coordinates <alpha_i, alpha_j^vee> = a_ji
        return tuple(Fraction(weight[j]) - wi * a[j][i] for j in range(self.rank))

    def reflect_root(self, root: Root, i: int) -> Root:
        pairing = sum(self.cartan_matrix[i][j] * root[j] for j in range(self.rank))
        r = list(root)
        r[i] -= pairing
        return tuple(r)

    def __repr__(self) -> str:
        return f"RootSystem({self.label})"


def build_root_system(label, rank: Optional[int] = None) -> RootSystem:
    """Build a root system from ``("A", 2)`` or the string ``"A2"``."""
    if rank is None:
        letter, rank = parse_cartan_type(label)
    else:
        letter = str(label).upper()
        if not isinstance(rank, int) or rank < 1:
            raise InvalidCartanType(f"rank must be a positive integer, got {rank!r}")
        _check_type(letter, rank)
    a = cartan_matrix_of(letter, rank)
    return RootSystem(f"{letter}{rank}", tuple(tuple(r) for r in a))


def _same_up_to_permutation(a, b) -> bool:
    n = len(a)
    if n != len(b):
        return False
    for perm in permutations(range(n)):
        if all(a[perm[i]][perm[j]] == b[i][j] for i in range(n) for j in range(n)):
            return True
    return False


def identify_cartan_matrix(matrix) -> str:
    """Type label of an (indecomposable, finite) Cartan matrix. Brute force."""
    n = len(matrix)
    candidates = []
    for letter in "ABCDEFG":
        try:
            _check_type(letter, n)
        except InvalidCartanType:
            continue
        candidates.append(letter)
    for letter in candidates:
        if _same_up_to_permutation(cartan_matrix_of(letter, n), matrix):
            # B2 and C2 coincide up to relabelling; prefer B2 for that case.
            return f"{letter}{n}"
    raise InvalidCartanType("matrix does not match any finite type")


def langlands_dual(rs: RootSystem) -> RootSystem:
    """The root system with transposed Cartan matrix."""
    n = rs.rank
    t = tuple(tuple(rs.cartan_matrix[j][i] for j in range(n)) for i in range(n))
    letter = rs.letter
    if letter == "B":
        label = f"C{n}"
    elif letter == "C":
        label = f"B{n}"
    else:
        label = rs.label
    if not _same_up_to_permutation(cartan_matrix_of(label[0], n), t):
        label = identify_cartan_matrix(t)
    return RootSystem(label, t)


def weyl_dominant_representative(rs: RootSystem, v: Sequence) -> Weight:
    """Dominant element of the W-orbit of ``v`` (fundamental coordinates)."""
    w = tuple(Fraction(x) for x in v)
    while True:
        i = next((i for i, x in enumerate(w) if x < 0), None)
        if i is None:
            return w
        w = rs.simple_reflection(w, i)


def weyl_orbit(rs: RootSystem, v: Sequence) -> set:
    """Brute-force orbit enumeration (used as an oracle)."""
    start = tuple(Fraction(x) for x in v)
    seen = {start}
    todo = [start]
    while todo:
        w = todo.pop()
        for i in range(rs.rank):
            u = rs.simple_reflection(w, i)
            if u not in seen:
                seen.add(u)
                todo.append(u)
    return seen


# ---------------------------------------------------------------------------
# Chevalley basis


@dataclass(frozen=True)
class ChevalleyBasis:
    """Chevalley basis ``{x_alpha, h_i}`` with an exact bracket table.

    Basis order: negative roots (descending height), then ``h_1..h_l``, then
    positive roots (ascending height).  ``structure_constants[(i, j)]`` is a
    dict ``k -> c`` with ``[b_i, b_j] = sum_k c b_k``; absent pairs commute.
    """

    rs: RootSystem
    labels: tuple
    structure_constants: dict = field(repr=False)
    n_values: dict = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @cached_property
    def index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels)}

    def root_index(self, root: Root) -> int:
        return self.index[("x", tuple(root))]

    def cartan_index(self, i: int) -> int:
        return self.index[("h", i)]

    def e(self, i: int) -> int:
        return self.root_index(self.rs.simple_root(i))

    def f(self, i: int) -> int:
        return self.root_index(_neg(self.rs.simple_root(i)))

    def weight_of(self, k: int) -> Optional[Root]:
        lab = self.labels[k]
        return lab[1] if lab[0] == "x" else None

    def basis_vector(self, k: int) -> list:
        v = [Fraction(0)] * self.dim
        v[k] = Fraction(1)
        return v

    def bracket_basis(self, i: int, j: int) -> dict:
        return self.structure_constants.get((i, j), {})

    def bracket(self, x: Sequence, y: Sequence) -> list:
        out = [Fraction(0)] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                for k, c in self.structure_constants.get((i, j), {}).items():
                    out[k] += a * b * c
        return out

    def ad_matrix(self, x: Sequence) -> list:
        """Matrix of ``ad x`` (columns are images of basis vectors)."""
        cols = [self.bracket(x, self.basis_vector(j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    @cached_property
    def killing_normalised_form(self) -> tuple:
        """Gram matrix of the normalised invariant form on the basis."""
        rs, n = self.rs, self.dim
        g = [[Fraction(0)] * n for _ in range(n)]
        L = rs.root_lengths
        for r in rs.roots:
            i, j = self.root_index(r), self.root_index(_neg(r))
            g[i][j] = 2 / rs.root_norm(r)
        for a in range(rs.rank):
            for b in range(rs.rank):
                g[self.cartan_index(a)][self.cartan_index(b)] = 4 * rs.form[a][b] / (L[a] * L[b])
        return tuple(tuple(r) for r in g)

    def form(self, x: Sequence, y: Sequence) -> Fraction:
        g = self.killing_normalised_form
        return sum((x[i] * g[i][j] * y[j] for i in range(self.dim) if x[i]
                    for j in range(self.dim) if y[j] and g[i][j]), Fraction(0))

    def dual_basis(self) -> list:
        """Dual basis vectors with respect to the normalised form."""
        g = [list(r) for r in self.killing_normalised_form]
        n = self.dim
        aug = [g[i] + [Fraction(int(i == k)) for k in range(n)] for i in range(n)]
        rows, _ = linalg.rref(aug)
        inv = [row[n:] for row in rows]
        # dual of b_j is sum_i inv[i][j] b_i
        return [[inv[i][j] for i in range(n)] for j in range(n)]

    def jacobi_residual(self) -> int:
        """Number of basis triples violating the Jacobi identity (0 expected)."""
        bad = 0
        n = self.dim
        e = [self.basis_vector(i) for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                bij = self.bracket(e[i], e[j])
                for k in range(j + 1, n):
                    t1 = self.bracket(bij, e[k])
                    t2 = self.bracket(self.bracket(e[j], e[k]), e[i])
                    t3 = self.bracket(self.bracket(e[k], e[i]), e[j])
                    if any(a + b + c for a, b, c in zip(t1, t2, t3)):
                        bad += 1
        return bad


def _structure_n(rs: RootSystem) -> dict:
    """Structure constants N_{a,b} for positive pairs, extraspecial signs +."""
    pos = rs.positive_roots
    order = {r: i for i, r in enumerate(pos)}
    table: dict = {}

    def string_p(a, b):
        p = 0
        cur = b
        while True:
            cur = tuple(x - y for x, y in zip(cur, a))
            if rs.is_root(cur):
                p += 1
            else:
                return p

    def n_any(a, b) -> Fraction:
        s = _add(a, b)
        if not any(s) or not rs.is_root(s):
            return Fraction(0)
        apos, bpos = order.get(a) is not None, order.get(b) is not None
        if apos and bpos:
            if order[a] < order[b]:
                return table[(a, b)]
            return -table[(b, a)]
        if not apos and not bpos:
            return -n_any(_neg(a), _neg(b))
        if not apos:
            return -n_any(b, a)
        c = _neg(s)
        if order.get(c) is None:  # c negative: (b, c) both negative
            return rs.root_norm(c) / rs.root_norm(a) * n_any(b, c)
        return rs.root_norm(c) / rs.root_norm(b) * n_any(c, a)

    for xi in pos:
        if sum(xi) == 1:
            continue
        pairs = []
        for a in pos:
            if order[a] >= order[xi]:
                break
            b = tuple(x - y for x, y in zip(xi, a))
            if b in order and order[a] < order[b]:
                pairs.append((a, b))
        g, d = pairs[0]
        table[(g, d)] = Fraction(string_p(g, d) + 1)
        nxi = rs.root_norm(xi)
        for a, b in pairs[1:]:
            t = Fraction(0)
            bg = tuple(x - y for x, y in zip(b, g))
            if any(bg) and rs.is_root(bg):
                t += n_any(b, _neg(g)) * n_any(a, _neg(d)) / rs.root_norm(bg)
            ag = tuple(x - y for x, y in zip(a, g))
            if any(ag) and rs.is_root(ag):
                t += n_any(_neg(g), a) * n_any(b, _neg(d)) / rs.root_norm(ag)
            table[(a, b)] = nxi / table[(g, d)] * t
    result = {}
    for a in rs.roots:
        for b in rs.roots:
            v = n_any(a, b)
            if v:
                result[(a, b)] = v
    return result


def build_chevalley(rs: RootSystem) -> ChevalleyBasis:
    pos = rs.positive_roots
    labels = ([("x", _neg(r)) for r in reversed(pos)]
              + [("h", i) for i in range(rs.rank)]
              + [("x", r) for r in pos])
    index = {lab: i for i, lab in enumerate(labels)}
    nvals = _structure_n(rs)
    sc: dict = {}

    def put(i, j, k, c):
        if c:
            sc.setdefault((i, j), {})[k] = Fraction(c)

    a = rs.cartan_matrix
    for i in range(rs.rank):
        hi = index[("h", i)]
        for r in rs.roots:
            xr = index[("x", r)]
            val = sum(a[i][j] * r[j] for j in range(rs.rank))
            put(hi, xr, xr, val)
            put(xr, hi, xr, -val)
    for r in rs.roots:
        xr, xm = index[("x", r)], index[("x", _neg(r))]
        for j, c in enumerate(rs.coroot_coordinates(r)):
            put(xr, xm, index[("h", j)], c)
    for (r, s), v in nvals.items():
        put(index[("x", r)], index[("x", s)], index[("x", _add(r, s))], v)
    return ChevalleyBasis(rs, tuple(labels), sc, nvals)
