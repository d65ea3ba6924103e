"""The centre of U(g): Casimir elements, the Harish-Chandra map and the
Jacobian of a generating set.

Elements of U(g) are PBW dicts over the Chevalley basis in the order
negative roots < Cartan < positive roots.  For a central element only the
pure Cartan monomials survive on a highest-weight vector, so reading them
off gives the action on M(lambda) as a polynomial in the coordinates
``<lambda, alpha_i^vee>``; shifting by rho yields the Harish-Chandra image.

Polynomials on h* are dicts from exponent tuples to fractions, in the
variables ``v_i = <nu, alpha_i^vee>``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .reps import Representation, first_fundamental_representation
from .rootsys import ChevalleyBasis
from .superalg import Generator, SuperAlgebra, padd


class NotCentral(ValueError):
    pass


def enveloping_algebra(cb: ChevalleyBasis) -> SuperAlgebra:
    """U(g) on the Chevalley basis (every generator even, weight one)."""
    cached = getattr(cb, "_enveloping", None)
    if cached is not None:
        return cached
    gens = [Generator(str(lab), 0, 0) for lab in cb.labels]
    brackets = {}
    for (i, j), val in cb.structure_constants.items():
        if i < j:
            brackets[(i, j)] = {(k,): c for k, c in val.items()}
    alg = SuperAlgebra(gens, brackets)
    object.__setattr__(cb, "_enveloping", alg)
    return alg


# -- polynomials on h* ---------------------------------------------------------

def poly_add(a: dict, b: dict, scale=1) -> dict:
    return padd(dict(a), b, scale)


def poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb_ in b.items():
            padd(out, {tuple(x + y for x, y in zip(ea, eb)): ca * cb_})
    return out


def poly_linear(coeffs: Sequence, const=0) -> dict:
    n = len(coeffs)
    out: dict = {}
    for i, c in enumerate(coeffs):
        if c:
            out[tuple(int(i == j) for j in range(n))] = Fraction(c)
    if const:
        out[(0,) * n] = Fraction(const)
    return out


def poly_substitute(p: dict, images: Sequence[dict]) -> dict:
    """Replace variable ``v_i`` by the polynomial ``images[i]``."""
    n = len(images)
    out: dict = {}
    powers = [[{(0,) * n: Fraction(1)}] for _ in range(n)]
    for e, c in p.items():
        term = {(0,) * n: Fraction(c)}
        for i, k in enumerate(e):
            while len(powers[i]) <= k:
                powers[i].append(poly_mul(powers[i][-1], images[i]))
            term = poly_mul(term, powers[i][k])
        padd(out, term)
    return out


def poly_derivative(p: dict, i: int) -> dict:
    out: dict = {}
    for e, c in p.items():
        if e[i]:
            f = list(e)
            f[i] -= 1
            padd(out, {tuple(f): c * e[i]})
    return out


def poly_degree(p: dict) -> int:
    return max((sum(e) for e in p), default=-1)


def proportionality(p: dict, q: dict):
    """The scalar ``c`` with ``p = c q`` (None when there is none)."""
    if not q:
        return None
    lead = max(q)
    if lead not in p:
        return None
    c = Fraction(p[lead]) / q[lead]
    return c if not poly_add(p, q, -c) else None


def determinant(m: list) -> dict:
    """Determinant of a square matrix of polynomials (Laplace expansion)."""
    n = len(m)
    if n == 1:
        return dict(m[0][0])
    out: dict = {}
    for j in range(n):
        if not m[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        padd(out, poly_mul(m[0][j], determinant(minor)), (-1) ** j)
    return out


# -- central elements ------------------------------------------------------------

def is_central(cb: ChevalleyBasis, z: dict) -> bool:
    alg = enveloping_algebra(cb)
    for i in range(cb.rs.rank):
        for g in (cb.e(i), cb.f(i)):
            if alg.qcommutator(z, {(g,): 1}, 0, 0):
                return False
    return True


def trace_casimir(cb: ChevalleyBasis, degree: int, rep: Representation = None) -> dict:
    """``sum tr(pi(b_1)...pi(b_d)) b^1...b^d`` over a basis and its dual.

    The coefficient tensor is invariant, so the element is central.
    """
    if degree < 0:
        raise ValueError("degree must be non-negative")
    alg = enveloping_algebra(cb)
    rep = rep or first_fundamental_representation(cb)
    dual = cb.dual_basis()
    n = cb.dim
    dual_poly = [{(k,): c for k, c in enumerate(vec) if c} for vec in dual]
    out: dict = {}
    if degree == 0:
        return {(): Fraction(rep.dim)}
    mats = rep.matrices

    def walk(prefix: tuple, mat):
        if len(prefix) == degree:
            tr = sum((mat[i][i] for i in range(rep.dim)), Fraction(0))
            if tr:
                term = {(): 1}
                for k in prefix:
                    term = alg.qmul(term, dual_poly[k])
                padd(out, term, tr)
            return
        for k in range(n):
            nxt = linalg.matmul(mat, [list(r) for r in mats[k]]) if mat is not None \
                else [list(r) for r in mats[k]]
            if any(any(r) for r in nxt):
                walk(prefix + (k,), nxt)

    walk((), None)
    return out


def casimir_generators(cb: ChevalleyBasis) -> list:
    """Algebraically independent central generators for the supported types.

    Type A uses trace Casimirs of the natural representation in degrees
    ``2, ..., rank + 1``.
    """
    rs = cb.rs
    if rs.letter != "A":
        raise NotImplementedError("generators are built for type A only")
    rep = first_fundamental_representation(cb)
    return [trace_casimir(cb, d, rep) for d in range(2, rs.rank + 2)]


# -- Harish-Chandra --------------------------------------------------------------

def harish_chandra_image(cb: ChevalleyBasis, z: dict, check: bool = True) -> dict:
    """Polynomial ``mu(z)`` with ``z v_lambda = mu(z)(lambda + rho) v_lambda``."""
    if check and not is_central(cb, z):
        raise NotCentral("element does not commute with the Chevalley generators")
    rs = cb.rs
    n = rs.rank
    cart = {cb.cartan_index(i): i for i in range(n)}
    action: dict = {}
    for m, c in z.items():
        if all(k in cart for k in m):
            e = [0] * n
            for k in m:
                e[cart[k]] += 1
            padd(action, {tuple(e): c})
    # lambda = nu - rho, i.e. v_i -> v_i - 1
    shift = [poly_linear([int(i == j) for j in range(n)], -1) for i in range(n)]
    mu = poly_substitute(action, shift)
    if check and not is_weyl_invariant(cb, mu):
        raise NotCentral("Harish-Chandra image is not Weyl invariant")
    return mu


def is_weyl_invariant(cb: ChevalleyBasis, p: dict) -> bool:
    rs = cb.rs
    n = rs.rank
    a = rs.cartan_matrix
    for i in range(n):
        # s_i(nu)_j = nu_j - nu_i a_ji
        images = [poly_linear([int(j == k) - (a[j][i] if k == i else 0) for k in range(n)])
                  for j in range(n)]
        if poly_add(poly_substitute(p, images), p, -1):
            return False
    return True


def evaluate(p: dict, point: Sequence) -> Fraction:
    total = Fraction(0)
    for e, c in p.items():
        term = Fraction(c)
        for x, k in zip(point, e):
            term *= Fraction(x) ** k
        total += term
    return total


@dataclass(frozen=True)
class JacobianVerdict:
    determinant: dict
    coroot_product: dict
    scalar: Fraction
    proportional: bool


def coroot_product(cb: ChevalleyBasis) -> dict:
    """``prod_{alpha > 0} alpha^vee`` as a polynomial in the ``v_i``."""
    out = {(0,) * cb.rs.rank: Fraction(1)}
    for root in cb.rs.positive_roots:
        out = poly_mul(out, poly_linear(cb.rs.coroot_coordinates(root)))
    return out


def jacobian_check(cb: ChevalleyBasis, generators: Sequence[dict]) -> JacobianVerdict:
    """Jacobian of the Harish-Chandra images against the coroot product."""
    n = cb.rs.rank
    if len(generators) != n:
        raise ValueError(f"need {n} generators, got {len(generators)}")
    images = [harish_chandra_image(cb, z) for z in generators]
    jac = [[poly_derivative(images[i], j) for j in range(n)] for i in range(n)]
    det = determinant(jac)
    target = coroot_product(cb)
    c = proportionality(det, target) if det else None
    ok = c is not None and c != 0
    return JacobianVerdict(det, target, c if c is not None else Fraction(0), ok)


# -- comparison with the slice ------------------------------------------------

def center_filtration_dims(cb: ChevalleyBasis, max_degree: int) -> list:
    """``dim gr_d Z(g)`` for ``d = 0..max_degree`` under the PBW filtration.

    Central elements have weight zero, on which the Kazhdan and PBW
    filtrations agree.  Computed as the kernel of ``ad e_i``, ``ad f_i`` on
    weight-zero elements of PBW degree at most ``d``.
    """
    alg = enveloping_algebra(cb)
    rs = cb.rs
    weight = []
    for lab in cb.labels:
        weight.append(lab[1] if lab[0] == "x" else (0,) * rs.rank)
    zero = (0,) * rs.rank

    def monos(d):
        out = []
        for size in range(d + 1):
            for m in _multisets(cb.dim, size):
                w = tuple(sum(weight[k][i] for k in m) for i in range(rs.rank))
                if w == zero:
                    out.append(m)
        return out

    gens = [g for i in range(rs.rank) for g in (cb.e(i), cb.f(i))]
    dims = []
    for d in range(max_degree + 1):
        basis = monos(d)
        cols = []
        for m in basis:
            col: dict = {}
            for gi, g in enumerate(gens):
                for u, c in alg.qcommutator({m: 1}, {(g,): 1}, 0, 0).items():
                    col[(gi, u)] = c
            cols.append(col)
        keys = {k: i for i, k in enumerate(sorted({k for col in cols for k in col}))}
        vecs = [{keys[k]: c for k, c in col.items()} for col in cols]
        dims.append(len(basis) - linalg.rank(vecs))
    return [dims[0]] + [dims[d] - dims[d - 1] for d in range(1, len(dims))]


def _multisets(n: int, size: int):
    if size == 0:
        yield ()
        return

    def rec(start, left, cur):
        if left == 0:
            yield tuple(cur)
            return
        for k in range(start, n):
            cur.append(k)
            yield from rec(k, left - 1, cur)
            cur.pop()

    yield from rec(0, size, [])
