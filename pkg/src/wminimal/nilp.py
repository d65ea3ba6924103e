"""sl2-triples, Dynkin gradings and the data of the Slodowy slice.

Elements of g are exact coordinate vectors in the Chevalley basis.  Every
neutral element built here lies in the Cartan subalgebra, so the grading
pieces are spanned by Chevalley basis vectors and no diagonalisation is
needed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from . import linalg
from .rootsys import ChevalleyBasis, RootSystem
from .superalg import Generator, SuperAlgebra


class InconsistentTriple(ValueError):
    pass


class UnsupportedType(ValueError):
    pass


def _vec(cb: ChevalleyBasis, entries: dict) -> list:
    v = [Fraction(0)] * cb.dim
    for k, c in entries.items():
        v[k] += Fraction(c)
    return v


@dataclass(frozen=True)
class NilpotentDatum:
    """An sl2-triple ``{e, h, f}`` together with ``chi = (f | .)``."""

    cb: ChevalleyBasis = field(repr=False)
    label: str
    e: tuple
    h: tuple
    f: tuple

    @cached_property
    def chi(self) -> tuple:
        """Coefficients of the functional ``x -> (f|x)`` on the basis."""
        g = self.cb.killing_normalised_form
        n = self.cb.dim
        return tuple(sum((self.f[i] * g[i][k] for i in range(n) if self.f[i]), Fraction(0))
                     for k in range(n))

    def chi_of(self, x: Sequence) -> Fraction:
        return sum((c * v for c, v in zip(self.chi, x) if v), Fraction(0))

    def check(self) -> None:
        cb = self.cb
        he = cb.bracket(self.h, self.e)
        ef = cb.bracket(self.e, self.f)
        hf = cb.bracket(self.h, self.f)
        if he != [2 * x for x in self.e] or ef != list(self.h) or hf != [-2 * x for x in self.f]:
            raise InconsistentTriple(f"{self.label}: sl2 relations fail")
        if linalg.nilpotency_order(cb.ad_matrix(self.f)) is None:
            raise InconsistentTriple(f"{self.label}: f is not nilpotent")


def _cartan_element(cb: ChevalleyBasis, coeffs: Sequence) -> list:
    return _vec(cb, {cb.cartan_index(i): c for i, c in enumerate(coeffs)})


def _solve_f(cb: ChevalleyBasis, e: Sequence, h: Sequence) -> list:
    """Unique f in the (-2)-eigenspace of ad h with [e, f] = h."""
    hv = [cb.bracket(h, cb.basis_vector(k)) for k in range(cb.dim)]
    cols = [k for k in range(cb.dim) if hv[k][k] == -2]
    images = [cb.bracket(e, cb.basis_vector(k)) for k in cols]
    matrix = [[images[c][r] for c in range(len(cols))] for r in range(cb.dim)]
    sol = linalg.solve(matrix, list(h))
    if sol is None:
        raise InconsistentTriple("no f with [e, f] = h in the -2 eigenspace")
    return _vec(cb, {k: c for k, c in zip(cols, sol) if c})


def complete_triple(cb: ChevalleyBasis, e: Sequence, h: Sequence, label: str) -> NilpotentDatum:
    nd = NilpotentDatum(cb, label, tuple(Fraction(x) for x in e), tuple(Fraction(x) for x in h),
                        tuple(_solve_f(cb, e, h)))
    nd.check()
    return nd


def principal_triple(cb: ChevalleyBasis) -> NilpotentDatum:
    """``e = sum e_i`` with ``h`` the Cartan element having ``alpha_i(h) = 2``."""
    rs = cb.rs
    n = rs.rank
    at = [[Fraction(rs.cartan_matrix[j][i]) for j in range(n)] for i in range(n)]
    c = linalg.solve(at, [Fraction(2)] * n)
    e = _vec(cb, {cb.e(i): 1 for i in range(n)})
    return complete_triple(cb, e, _cartan_element(cb, c), "principal")


def principal_coefficients(cb: ChevalleyBasis) -> list:
    nd = principal_triple(cb)
    return [nd.h[cb.cartan_index(i)] for i in range(cb.rs.rank)]


def minimal_triple(cb: ChevalleyBasis) -> NilpotentDatum:
    """``e = x_theta``, ``h = h_theta``, ``f = x_{-theta}``."""
    rs = cb.rs
    theta = rs.theta
    e = cb.basis_vector(cb.root_index(theta))
    h = _cartan_element(cb, rs.coroot_coordinates(theta))
    return complete_triple(cb, e, h, "minimal")


_PARTITION = re.compile(r"^\s*(?:p\s*=\s*)?(\d+(?:\s*,\s*\d+)*)\s*$")


def parse_partition(text: str) -> list:
    m = _PARTITION.match(text)
    if not m:
        raise ValueError(f"malformed partition {text!r}; expected e.g. 'p=2,1'")
    return [int(x) for x in m.group(1).split(",")]


def sl2_triple_typeA(n: int, partition: Sequence[int], cb: Optional[ChevalleyBasis] = None
                     ) -> NilpotentDatum:
    """Jordan-block nilpotent of sl_n with the given block sizes."""
    from .rootsys import build_chevalley, build_root_system

    parts = [int(x) for x in partition]
    if n < 2 or n > 6:
        raise ValueError("type-A partitions are supported for 2 <= n <= 6")
    if any(p <= 0 for p in parts) or sum(parts) != n:
        raise ValueError(f"{list(partition)} is not a partition of {n}")
    parts = sorted(parts, reverse=True)
    if cb is None:
        cb = build_chevalley(build_root_system("A", n - 1))
    elif cb.rs.label != f"A{n - 1}":
        raise ValueError("Chevalley basis does not match sl_n")
    diag = []
    e_idx = []
    pos = 0
    for size in parts:
        diag.extend(size - 1 - 2 * t for t in range(size))
        e_idx.extend(range(pos, pos + size - 1))
        pos += size
    coeffs = [sum(diag[: i + 1]) for i in range(n - 1)]
    e = _vec(cb, {cb.e(i): 1 for i in e_idx})
    h = _cartan_element(cb, coeffs)
    label = "p=" + ",".join(str(p) for p in parts)
    if parts == [n]:
        label = "principal"
    return complete_triple(cb, e, h, label)


def nilpotent_from_label(cb: ChevalleyBasis, label: str) -> NilpotentDatum:
    text = label.strip()
    if text == "principal":
        return principal_triple(cb)
    if text == "minimal":
        return minimal_triple(cb)
    if cb.rs.letter != "A":
        raise ValueError("partition labels are only available in type A")
    return sl2_triple_typeA(cb.rs.rank + 1, parse_partition(text), cb)


# ---------------------------------------------------------------------------
# grading


@dataclass(frozen=True)
class DynkinGrading:
    """Eigenspace decomposition of ``ad h / 2``.

    ``pieces[j]`` lists the Chevalley indices spanning ``g_j``.  The basis
    ``positive_basis`` of ``g_{>0}`` puts ``g_{1/2}`` first and then the
    higher pieces, each in Chevalley order.
    """

    cb: ChevalleyBasis = field(repr=False)
    degree: tuple                  # grading degree of every basis vector
    pieces: dict
    centralizer_e: tuple           # (vector, degree) pairs spanning g^e
    kazhdan_degrees: tuple

    @property
    def g_half(self) -> list:
        return list(self.pieces.get(Fraction(1, 2), []))

    @property
    def g_geq1(self) -> list:
        return [k for j in sorted(self.pieces) if j >= 1 for k in self.pieces[j]]

    @property
    def g_pos(self) -> list:
        return self.g_half + self.g_geq1

    @property
    def is_even(self) -> bool:
        return all(j.denominator == 1 for j in self.pieces)

    def dim(self, j) -> int:
        return len(self.pieces.get(Fraction(j), []))


def dynkin_grading(cb: ChevalleyBasis, nd: NilpotentDatum) -> DynkinGrading:
    degree = []
    for k in range(cb.dim):
        img = cb.bracket(nd.h, cb.basis_vector(k))
        lam = img[k]
        if any(img[i] for i in range(cb.dim) if i != k):
            raise InconsistentTriple("neutral element is not diagonal on the Chevalley basis")
        degree.append(Fraction(lam) / 2)
    pieces: dict = {}
    for k, j in enumerate(degree):
        pieces.setdefault(j, []).append(k)
    cent = []
    for j in sorted(pieces):
        idx = pieces[j]
        images = [cb.bracket(nd.e, cb.basis_vector(k)) for k in idx]
        matrix = [[images[c][r] for c in range(len(idx))] for r in range(cb.dim)]
        for v in linalg.kernel(matrix, len(idx)):
            cent.append((tuple(_vec(cb, {k: c for k, c in zip(idx, v) if c})), j))
    kaz = tuple(sorted(j + 1 for _, j in cent))
    dg = DynkinGrading(cb, tuple(degree), {j: tuple(v) for j, v in sorted(pieces.items())},
                       tuple(cent), kaz)
    if len(dg.g_half) % 2:
        raise InconsistentTriple("g_{1/2} has odd dimension")
    return dg


def grading_defects(cb: ChevalleyBasis, dg: DynkinGrading) -> int:
    """Basis pairs with ``[g_i, g_j]`` not inside ``g_{i+j}``."""
    bad = 0
    for a in range(cb.dim):
        for b in range(cb.dim):
            for k in cb.bracket_basis(a, b):
                if dg.degree[k] != dg.degree[a] + dg.degree[b]:
                    bad += 1
    return bad


def _in_half(dg: DynkinGrading, x: Sequence) -> bool:
    allowed = set(dg.g_half)
    return all(not c or k in allowed for k, c in enumerate(x))


def half_form(dg: DynkinGrading, nd: NilpotentDatum, x: Sequence, y: Sequence) -> Fraction:
    """``chi([x, y])`` for ``x, y`` in ``g_{1/2}``."""
    if not (_in_half(dg, x) and _in_half(dg, y)):
        raise ValueError("half_form arguments must lie in g_{1/2}")
    return nd.chi_of(dg.cb.bracket(x, y))


def half_form_matrix(dg: DynkinGrading, nd: NilpotentDatum) -> list:
    cb = dg.cb
    basis = [cb.basis_vector(k) for k in dg.g_half]
    return [[half_form(dg, nd, a, b) for b in basis] for a in basis]


def lagrangian(dg: DynkinGrading, nd: NilpotentDatum, reverse: bool = False) -> list:
    """Isotropic subspace of ``g_{1/2}`` of half dimension, greedily.

    Vectors are added one at a time: the next vector is the first element of
    the canonical basis of ``l^perp`` that is not yet in ``l``.  With
    ``reverse=True`` the coordinates of ``g_{1/2}`` are taken in reverse
    order, which in general gives a different Lagrangian.
    """
    cb = dg.cb
    idx = list(dg.g_half)
    if reverse:
        idx.reverse()
    n = len(idx)
    omega = [[nd.chi_of(cb.bracket(cb.basis_vector(a), cb.basis_vector(b))) for b in idx]
             for a in idx]
    chosen: list = []
    while len(chosen) < n // 2:
        if chosen:
            cons = [[sum((v[a] * omega[a][b] for a in range(n)), Fraction(0)) for b in range(n)]
                    for v in chosen]
            perp = linalg.kernel(cons, n)
        else:
            perp = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        nxt = next(v for v in perp if not linalg.in_span(chosen, v))
        chosen.append(nxt)
    return [_vec(cb, {idx[a]: c for a, c in enumerate(v) if c}) for v in chosen]


def whittaker_subalgebra(dg: DynkinGrading, nd: NilpotentDatum, lag: Sequence) -> list:
    """Basis of ``m = l + g_{>=1}``; raises if ``chi`` is not a character on it."""
    cb = dg.cb
    basis = [list(v) for v in lag] + [cb.basis_vector(k) for k in dg.g_geq1]
    for a in basis:
        for b in basis:
            if nd.chi_of(cb.bracket(a, b)):
                raise ValueError("chi is not a character of m")
    return basis


# ---------------------------------------------------------------------------
# Lie-Poisson bracket and variety tests


def kk_algebra(cb: ChevalleyBasis) -> SuperAlgebra:
    """Polynomial functions on g* with the Lie-Poisson bracket."""
    gens = [Generator(_basis_name(cb, k), 0, Fraction(1)) for k in range(cb.dim)]
    brackets = {}
    for (i, j), val in cb.structure_constants.items():
        if i < j:
            brackets[(i, j)] = {(k,): c for k, c in val.items()}
    return SuperAlgebra(gens, brackets)


def _basis_name(cb: ChevalleyBasis, k: int) -> str:
    lab = cb.labels[k]
    if lab[0] == "h":
        return f"h{lab[1] + 1}"
    root = lab[1]
    sign = "e" if sum(root) > 0 else "f"
    return sign + "".join(str(abs(c)) for c in root)


def basis_names(cb: ChevalleyBasis) -> list:
    return [_basis_name(cb, k) for k in range(cb.dim)]


def kk_bracket(cb: ChevalleyBasis, p: dict, q: dict, alg: Optional[SuperAlgebra] = None) -> dict:
    """Poisson bracket of polynomials (dicts: sorted index tuple -> coefficient)."""
    alg = alg or kk_algebra(cb)
    return alg.cbracket(p, q)


def variety_membership(rs: RootSystem, cb: ChevalleyBasis, x: Sequence, q: int,
                       short_rep=None) -> bool:
    """The nilpotency test attached to an admissible denominator ``q``.

    If ``q`` is prime to the lacing number the test is ``(ad x)^{2q} = 0``;
    otherwise it is ``pi(x)^{2q/r}`` = 0 for the irreducible module ``pi``
    with highest weight the highest short root.
    """
    if q < 1:
        raise ValueError("q must be a positive integer")
    r = rs.lacing_rv
    if q % r != 0 or r == 1:
        return linalg.matpow_is_zero(cb.ad_matrix(x), 2 * q)
    from .reps import short_root_representation

    rep = short_rep or short_root_representation(cb)
    return linalg.matpow_is_zero(rep.of(x), 2 * q // r)


def parse_element(cb: ChevalleyBasis, spec: str) -> list:
    """Parse an element such as ``"e1+e2"``, ``"2*h1 - f12"``, ``"0"``,
    ``"principal"`` or ``"minimal"``.  Names are those of :func:`basis_names`
    with simple generators also available as ``e1``, ``f1`` for ``e10`` etc.
    """
    text = spec.replace(" ", "")
    if text in ("principal", "minimal"):
        nd = principal_triple(cb) if text == "principal" else minimal_triple(cb)
        return list(nd.e)
    names = {n: k for k, n in enumerate(basis_names(cb))}
    for i in range(cb.rs.rank):
        names.setdefault(f"e{i + 1}", cb.e(i))
        names.setdefault(f"f{i + 1}", cb.f(i))
    v = [Fraction(0)] * cb.dim
    if text in ("0", ""):
        return v
    for sign, coef, name in re.findall(r"([+-]?)(?:(\d+(?:/\d+)?)\*)?([a-z]\d+)", text):
        if name not in names:
            raise ValueError(f"unknown basis element {name!r}")
        c = Fraction(coef) if coef else Fraction(1)
        v[names[name]] += -c if sign == "-" else c
    rebuilt = re.sub(r"([+-]?)(?:(\d+(?:/\d+)?)\*)?([a-z]\d+)", "", text)
    if rebuilt:
        raise ValueError(f"malformed element {spec!r}")
    return v
