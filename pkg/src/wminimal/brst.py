"""Finite BRST complexes with Kazhdan bigrading and their cohomology.

Three complexes are built on one code path:

* classical: C[g*] (x) C[chi + nu(g_{-1/2})] (x) Lambda(g_{>0}* + g_{>0}) with
  ``ad dbar`` given by the Poisson superbracket;
* quantum: U(g) (x) D (x) Cl with ``ad d`` the super-commutator;
* whittaker: U(g) (x) Cl_m with ``ad d'`` for ``m = l + g_{>=1}``.

Generator order (and therefore PBW normal order) is: elements of g in
Chevalley order, then the Weyl generators ``phi`` for g_{1/2}, then the
ghosts ``psi*`` and finally the antighosts ``psi``.

Kazhdan degrees: ``x`` in g_j has degree ``1 - j``, ``phi`` has degree 1/2,
``psi*_i`` has degree ``j_i`` and ``psi_i`` has degree ``1 - j_i``; the
differential has degree 1 and the bracket degree -1, so ``ad d`` preserves
(classical) or does not increase (quantum) the Kazhdan degree.

Truncation.  A Kazhdan piece of these complexes is infinite-dimensional (for
instance ``x_theta`` has non-positive degree), so we also bound the number
``F`` of factors from g, the Weyl generators and the antighosts.  The
differential never raises ``F``, hence ``F <= D`` is a subcomplex.  On the
associated graded for ``F`` only the ``F``-preserving part of the
differential survives; its Koszul part is the Koszul complex of a regular
sequence, whose homology lives on polynomials in ``g_{<=0}`` and the Weyl
generators.  All of those have Kazhdan degree at least ``kmin`` (1, or 1/2
when g_{1/2} is nonzero), so the graded pieces with ``D > kappa / kmin`` are
acyclic and the cap ``D = floor(N / kmin)`` computes the untruncated
cohomology in every Kazhdan degree up to ``N``.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Optional, Sequence

from . import linalg
from .nilp import DynkinGrading, NilpotentDatum, basis_names, kk_algebra
from .rational import format_rational
from .rootsys import ChevalleyBasis
from .superalg import (Generator, OddDerivation, SuperAlgebra, enumerate_monomials,
                       odd_square, padd)

KINDS = ("classical", "quantum", "whittaker")


class TruncationOverflow(RuntimeError):
    """The requested truncation would produce an unreasonably large basis."""


class NotACharacter(ValueError):
    pass


# ---------------------------------------------------------------------------
# generators and differentials


@dataclass
class BRSTData:
    alg: SuperAlgebra
    d: dict
    kind: str
    kmin: Fraction


def _g_generators(cb: ChevalleyBasis, dg: DynkinGrading) -> tuple[list, dict]:
    names = basis_names(cb)
    gens = [Generator(names[k], 0, 1 - dg.degree[k], 1, 0) for k in range(cb.dim)]
    brackets = {}
    for (i, j), val in cb.structure_constants.items():
        if i < j:
            brackets[(i, j)] = {(k,): c for k, c in val.items()}
    return gens, brackets


def brst_data(cb: ChevalleyBasis, dg: DynkinGrading, nd: NilpotentDatum) -> BRSTData:
    """Generators and differential of the (classical or quantum) BRST complex."""
    gens, brackets = _g_generators(cb, dg)
    half = dg.g_half
    pos = dg.g_pos
    names = basis_names(cb)
    phi0 = len(gens)
    for k in half:
        gens.append(Generator("phi_" + names[k], 0, Fraction(1, 2), 1, 0))
    star0 = len(gens)
    for k in pos:
        gens.append(Generator("psis_" + names[k], 1, dg.degree[k], 0, 1))
    anti0 = len(gens)
    for k in pos:
        gens.append(Generator("psi_" + names[k], 1, 1 - dg.degree[k], 1, -1))
    for a, ka in enumerate(half):
        for b, kb in enumerate(half):
            if a < b:
                val = nd.chi_of(cb.bracket(cb.basis_vector(ka), cb.basis_vector(kb)))
                if val:
                    brackets[(phi0 + a, phi0 + b)] = {(): val}
    for i in range(len(pos)):
        brackets[(star0 + i, anti0 + i)] = {(): 1}
    alg = SuperAlgebra(gens, brackets)

    d: dict = {}
    where = {k: i for i, k in enumerate(pos)}
    half_set = {k: a for a, k in enumerate(half)}
    for i, k in enumerate(pos):
        padd(d, {tuple(sorted((k, star0 + i))): 1})
        if k in half_set:
            padd(d, {(phi0 + half_set[k], star0 + i): 1})
        else:
            c = nd.chi[k]
            if c:
                padd(d, {(star0 + i,): c})
    for i, ki in enumerate(pos):
        for j, kj in enumerate(pos):
            if i < j:
                for k, c in cb.bracket_basis(ki, kj).items():
                    padd(d, {(star0 + i, star0 + j, anti0 + where[k]): 1}, -c)
    kmin = Fraction(1, 2) if half else Fraction(1)
    return BRSTData(alg, d, "brst", kmin)


def whittaker_data(cb: ChevalleyBasis, dg: DynkinGrading, nd: NilpotentDatum,
                   m_basis: Sequence[Sequence]) -> BRSTData:
    """Generators and differential of the Chevalley complex of ``m`` twisted by chi."""
    for a in m_basis:
        for b in m_basis:
            if nd.chi_of(cb.bracket(a, b)):
                raise NotACharacter("chi([m, m]) != 0: m is not chi-isotropic")
    degrees = []
    for v in m_basis:
        ds = {dg.degree[k] for k, c in enumerate(v) if c}
        if len(ds) != 1 or next(iter(ds)) <= 0:
            raise ValueError("m must be spanned by homogeneous elements of g_{>0}")
        degrees.append(next(iter(ds)))
    gens, brackets = _g_generators(cb, dg)
    names = basis_names(cb)

    def label(v):
        ks = [k for k, c in enumerate(v) if c]
        return names[ks[0]] if len(ks) == 1 else "m" + "_".join(names[k] for k in ks)

    star0 = len(gens)
    for v, j in zip(m_basis, degrees):
        gens.append(Generator("psis_" + label(v), 1, j, 0, 1))
    anti0 = len(gens)
    for v, j in zip(m_basis, degrees):
        gens.append(Generator("psi_" + label(v), 1, 1 - j, 1, -1))
    mdim = len(m_basis)
    for i in range(mdim):
        brackets[(star0 + i, anti0 + i)] = {(): 1}
    alg = SuperAlgebra(gens, brackets)
    # structure constants of m in the given basis
    cols = [[m_basis[c][r] for c in range(mdim)] for r in range(cb.dim)]
    d: dict = {}
    for i, v in enumerate(m_basis):
        for k, c in enumerate(v):
            if c:
                padd(d, {(k, star0 + i): c})
        chi = nd.chi_of(v)
        if chi:
            padd(d, {(star0 + i,): chi})
    for i in range(mdim):
        for j in range(i + 1, mdim):
            br = cb.bracket(m_basis[i], m_basis[j])
            if not any(br):
                continue
            coeffs = linalg.solve(cols, br)
            if coeffs is None:
                raise ValueError("m is not closed under the bracket")
            for k, c in enumerate(coeffs):
                if c:
                    padd(d, {(star0 + i, star0 + j, anti0 + k): 1}, -c)
    half_left = len(dg.g_half) - sum(1 for j in degrees if j == Fraction(1, 2))
    kmin = Fraction(1, 2) if half_left else Fraction(1)
    return BRSTData(alg, d, "whittaker", kmin)


# ---------------------------------------------------------------------------
# the graded complex


@dataclass
class GradedComplex:
    """Truncated complex with bases per cohomological degree.

    ``basis[p]`` is sorted by Kazhdan degree; ``kdeg[p]`` holds the degrees
    and ``blocks[p]`` the images (sparse dicts into ``basis[p+1]``) of the
    basis of degree ``p``.  For the classical complex every block preserves
    the Kazhdan degree; for the quantum and Whittaker complexes the blocks
    only do not increase it, and cohomology is taken of the filtration
    pieces ``K_kappa``.
    """

    kind: str
    truncation: Fraction
    fcap: int
    data: BRSTData = field(repr=False)
    basis: dict = field(repr=False)
    kdeg: dict = field(repr=False)
    blocks: dict = field(repr=False)
    label: str = ""
    cartan_type: str = ""

    @property
    def graded(self) -> bool:
        return self.kind == "classical"

    @property
    def degrees(self) -> list:
        return sorted(self.basis)

    def kappas(self) -> list:
        step = Fraction(1, 2)
        out, k = [], Fraction(0)
        while k <= self.truncation:
            out.append(k)
            k += step
        return out

    def basis_at(self, p: int, kappa) -> list:
        kappa = Fraction(kappa)
        return [m for m, k in zip(self.basis.get(p, []), self.kdeg.get(p, [])) if k == kappa]

    def block(self, p: int, kappa) -> list:
        """Columns of the block ``(p, kappa) -> (p+1, kappa)`` as sparse dicts
        indexed by the position in ``basis_at(p+1, kappa)``."""
        kappa = Fraction(kappa)
        src = [i for i, k in enumerate(self.kdeg.get(p, [])) if k == kappa]
        tgt = [i for i, k in enumerate(self.kdeg.get(p + 1, [])) if k == kappa]
        pos = {t: n for n, t in enumerate(tgt)}
        out = []
        for i in src:
            col = self.blocks[p][i]
            out.append({pos[t]: c for t, c in col.items() if t in pos})
        return out

    def size(self) -> int:
        return sum(len(v) for v in self.basis.values())

    def square_defects(self) -> int:
        """Number of basis vectors with nonzero ``d(d(v))`` (exact)."""
        bad = 0
        for p in self.degrees:
            if p + 1 not in self.blocks or p not in self.blocks:
                continue
            comp = linalg.sparse_compose(self.blocks[p + 1], self.blocks[p])
            bad += sum(1 for c in comp if c)
        return bad


def fcap_for(data: BRSTData, truncation) -> int:
    return int(floor(Fraction(truncation) / data.kmin))


def _build(data: BRSTData, kind: str, truncation, fcap: Optional[int], label: str,
           max_size: int, cartan_type: str = "") -> GradedComplex:
    N = Fraction(truncation)
    if N < 0:
        raise ValueError("truncation must be non-negative")
    D = fcap_for(data, N) if fcap is None else int(fcap)
    alg = data.alg
    monos = enumerate_monomials(alg, D, N)
    if len(monos) > max_size:
        raise TruncationOverflow(f"basis has {len(monos)} monomials (limit {max_size})")
    basis: dict = {}
    for m in monos:
        basis.setdefault(alg.mono_ghost(m), []).append(m)
    kdeg = {}
    for p in basis:
        basis[p].sort(key=lambda m: (alg.mono_k2(m), m))
        kdeg[p] = [Fraction(alg.mono_k2(m), 2) for m in basis[p]]
    quantum = kind != "classical"
    der = OddDerivation(alg, data.d, quantum)
    index = {p: {m: i for i, m in enumerate(ms)} for p, ms in basis.items()}
    blocks: dict = {}
    for p, ms in basis.items():
        tgt = index.get(p + 1, {})
        cols = []
        for m in ms:
            img = der(m)
            col = {}
            for u, c in img.items():
                t = tgt.get(u)
                if t is None:
                    raise AssertionError(f"image {alg.name(u)} escapes the truncation")
                col[t] = c
            cols.append(col)
        blocks[p] = cols
    return GradedComplex(kind, N, D, data, basis, kdeg, blocks, label, cartan_type)


def classical_complex(cb, dg, nd, N, fcap: Optional[int] = None,
                      max_size: int = 400000) -> GradedComplex:
    data = brst_data(cb, dg, nd)
    return _build(data, "classical", N, fcap, nd.label, max_size, cb.rs.label)


def quantum_complex(cb, dg, nd, N, fcap: Optional[int] = None,
                    max_size: int = 400000) -> GradedComplex:
    data = brst_data(cb, dg, nd)
    return _build(data, "quantum", N, fcap, nd.label, max_size, cb.rs.label)


def whittaker_complex(cb, dg, nd, m_basis, N, fcap: Optional[int] = None,
                      max_size: int = 400000) -> GradedComplex:
    data = whittaker_data(cb, dg, nd, m_basis)
    return _build(data, "whittaker", N, fcap, nd.label, max_size, cb.rs.label)


def differential_squares_to_zero(c: GradedComplex) -> bool:
    """Both ``d*d = 0`` in the algebra and ``d o d = 0`` on every block."""
    sq = odd_square(c.data.alg, c.data.d, c.kind != "classical")
    return not sq and c.square_defects() == 0


# ---------------------------------------------------------------------------
# cohomology


@dataclass
class CohomologyReport:
    complex: str
    truncation: Fraction
    fcap: int
    dims: dict                 # (p, kappa) -> dim of H^p in Kazhdan degree kappa
    filtered_dims: dict        # (p, kappa) -> dim H^p(K_kappa C) (filtered kinds)
    hilbert_series_H0: list
    step: Fraction
    vanishing_window: tuple
    higher_vanish: bool
    method: str
    label: str = ""
    cartan_type: str = ""

    def h0(self, kappa) -> int:
        return self.dims.get((0, Fraction(kappa)), 0)

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "complex": self.complex,
            "type": self.cartan_type,
            "nilpotent": self.label,
            "truncation": format_rational(self.truncation),
            "fcap": self.fcap,
            "h0_step": format_rational(self.step),
            "dims": [[p, format_rational(k), d] for (p, k), d in sorted(self.dims.items())],
            "h0_series": list(self.hilbert_series_H0),
            "vanishing_window": [format_rational(self.vanishing_window[0]),
                                 format_rational(self.vanishing_window[1])],
            "higher_vanish": self.higher_vanish,
            "rank_method": self.method,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def _worker_count(jobs: Optional[int]) -> int:
    if jobs is None:
        return os.cpu_count() or 1
    return max(1, int(jobs))


def _ranks(c: GradedComplex, modulus: Optional[int], jobs: Optional[int]) -> dict:
    """``(p, kappa) -> rank`` of ``d^p`` restricted to degree (graded) or
    filtration piece (filtered) ``kappa``."""
    kappas = c.kappas()

    def task(p):
        cols = c.blocks[p]
        kd = c.kdeg[p]
        out = {}
        if c.graded:
            for k in kappas:
                out[k] = linalg.rank([cols[i] for i, x in enumerate(kd) if x == k], modulus)
        else:
            # Pivot on the highest Kazhdan component of each image: that part
            # is the associated graded (classical) differential, so the
            # elimination follows the graded one and fill-in stays small.
            top = len(c.basis.get(p + 1, ())) - 1
            flipped = [{top - t: x for t, x in col.items()} for col in cols]
            cuts = [sum(1 for x in kd if x <= k) for k in kappas]
            for k, r in zip(kappas, linalg.cumulative_ranks(flipped, cuts, modulus)):
                out[k] = r
        return p, out

    ps = [p for p in c.degrees if c.blocks.get(p)]
    workers = min(_worker_count(jobs), max(1, len(ps)))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(task, ps))
    else:
        results = [task(p) for p in ps]
    ranks = {}
    for p, out in results:
        for k, r in out.items():
            ranks[(p, k)] = r
    return ranks


def _cohomology_dims(c: GradedComplex, ranks: dict) -> dict:
    out = {}
    for p in c.degrees:
        kd = c.kdeg[p]
        for k in c.kappas():
            if c.graded:
                dim = sum(1 for x in kd if x == k)
            else:
                dim = sum(1 for x in kd if x <= k)
            out[(p, k)] = dim - ranks.get((p, k), 0) - ranks.get((p - 1, k), 0)
    return out


def cohomology(c: GradedComplex, exact: bool = False, jobs: Optional[int] = None
               ) -> CohomologyReport:
    """Cohomology per Kazhdan degree.

    By default ranks are computed modulo a large prime.  Modular ranks never
    exceed rational ranks, so the modular cohomology dimensions are upper
    bounds; when they vanish outside degree 0 the Euler characteristic pins
    the degree-0 dimension exactly and the answer is certified.  Otherwise
    (or with ``exact=True``) ranks are recomputed over Q.
    """
    method = "exact"
    if exact:
        dims = _cohomology_dims(c, _ranks(c, None, jobs))
    else:
        dims = _cohomology_dims(c, _ranks(c, linalg.DEFAULT_PRIME, jobs))
        method = "modular+euler"
        if any(v for (p, _), v in dims.items() if p != 0):
            dims = _cohomology_dims(c, _ranks(c, None, jobs))
            method = "exact"
    step = Fraction(1, 2)
    kappas = c.kappas()
    if c.graded:
        graded = {key: v for key, v in dims.items()}
        filtered = {}
    else:
        filtered = dict(dims)
        graded = {}
        for p in c.degrees:
            prev = 0
            for k in kappas:
                graded[(p, k)] = filtered[(p, k)] - prev
                prev = filtered[(p, k)]
    graded = {key: v for key, v in graded.items() if v or key[0] == 0}
    even = all(c.data.alg.kdeg[i].denominator == 1 for i in range(c.data.alg.n)
               if c.data.alg.ghost[i] == 0)
    if even:
        step = Fraction(1)
    series = []
    k = Fraction(0)
    while k <= c.truncation:
        series.append(graded.get((0, k), 0))
        k += step
    higher = not any(v for (p, _), v in graded.items() if p != 0)
    if not c.graded:
        higher = higher and not any(v for (p, _), v in filtered.items() if p != 0)
    return CohomologyReport(c.kind, c.truncation, c.fcap, graded, filtered, series, step,
                            (Fraction(0), c.truncation), higher, method, c.label,
                            c.cartan_type)


def classical_cohomology(c: GradedComplex, exact: bool = False,
                         jobs: Optional[int] = None) -> CohomologyReport:
    if c.kind != "classical":
        raise ValueError("classical_cohomology expects a classical complex")
    return cohomology(c, exact, jobs)


def whittaker_reduction(cb, dg, nd, m_basis, N, exact: bool = False,
                        jobs: Optional[int] = None, max_size: int = 400000
                        ) -> CohomologyReport:
    c = whittaker_complex(cb, dg, nd, m_basis, N, max_size=max_size)
    return cohomology(c, exact, jobs)


# ---------------------------------------------------------------------------
# bigrading


@dataclass
class BigradeSplit:
    d_minus: dict
    d_plus: dict
    other_entries: int

    def identities(self) -> dict:
        out = {}
        for name, a, b in (("d_minus^2", self.d_minus, self.d_minus),
                           ("d_plus^2", self.d_plus, self.d_plus)):
            out[name] = _compose_defect(a, b)
        out["anticommutator"] = _anticommutator_defect(self.d_minus, self.d_plus)
        return out


def _compose_defect(first: dict, second: dict) -> int:
    bad = 0
    for p in first:
        if p + 1 in second:
            bad += sum(1 for col in linalg.sparse_compose(second[p + 1], first[p]) if col)
    return bad


def _anticommutator_defect(a: dict, b: dict) -> int:
    bad = 0
    for p in a:
        if p + 1 not in a or p + 1 not in b or p not in b:
            continue
        x = linalg.sparse_compose(b[p + 1], a[p])
        y = linalg.sparse_compose(a[p + 1], b[p])
        for cx, cy in zip(x, y):
            s = dict(cx)
            padd(s, cy)
            if s:
                bad += 1
    return bad


def bigrade_split(c: GradedComplex) -> BigradeSplit:
    """Split ``ad dbar`` by the change of (#psi*, #psi)."""
    if c.kind != "classical":
        raise ValueError("bigrade_split applies to the classical complex")
    alg = c.data.alg

    def counts(m):
        s = sum(1 for k in m if alg.ghost[k] == 1)
        a = sum(1 for k in m if alg.ghost[k] == -1)
        return s, a

    minus, plus, other = {}, {}, 0
    for p, cols in c.blocks.items():
        tgt = c.basis.get(p + 1, [])
        mcols, pcols = [], []
        for m, col in zip(c.basis[p], cols):
            s, a = counts(m)
            mc, pc = {}, {}
            for t, v in col.items():
                s2, a2 = counts(tgt[t])
                if (s2, a2) == (s, a - 1):
                    mc[t] = v
                elif (s2, a2) == (s + 1, a):
                    pc[t] = v
                else:
                    other += 1
            mcols.append(mc)
            pcols.append(pc)
        minus[p], plus[p] = mcols, pcols
    return BigradeSplit(minus, plus, other)


# ---------------------------------------------------------------------------
# oracles


def invariants_oracle(cb: ChevalleyBasis, dg: DynkinGrading, nd: NilpotentDatum, N) -> dict:
    """``kappa -> dim ((C[g*]/I_chi)^{ad g_{>0}})_kappa`` computed directly.

    The quotient by the ideal generated by ``x + chi(x)`` (x in g_{>=1}) is
    identified with polynomials on ``g_{<=1/2}``; each ``y`` in ``g_{>0}``
    acts by the Lie-Poisson bracket followed by the substitution
    ``x -> -chi(x)``.
    """
    N = Fraction(N)
    alg = kk_algebra(cb)
    low = [k for k in range(cb.dim) if dg.degree[k] <= Fraction(1, 2)]
    high = set(dg.g_geq1)
    sub = SuperAlgebra([Generator(alg.gens[k].name, 0, 1 - dg.degree[k]) for k in low], {})
    to_low = {k: i for i, k in enumerate(low)}

    def reduce(poly):
        out: dict = {}
        for m, c in poly.items():
            coef = c
            mono = []
            for k in m:
                if k in high:
                    coef = coef * -nd.chi[k]
                    if not coef:
                        break
                else:
                    mono.append(to_low[k])
            if coef:
                padd(out, {tuple(sorted(mono)): coef})
        return out

    result = {}
    kappa = Fraction(0)
    while kappa <= N:
        monos = enumerate_monomials(sub, int(floor(2 * kappa)), kappa, kmin=kappa)
        ech = linalg.Echelon()
        keys: dict = {}
        for m in monos:
            full = tuple(sorted(low[i] for i in m))
            col = {}
            for yi, y in enumerate(dg.g_pos):
                img = reduce(alg.cbracket({(y,): 1}, {full: 1}))
                for u, c in img.items():
                    key = keys.setdefault((yi, u), len(keys))
                    col[key] = c
            ech.insert(col)
        result[kappa] = len(monos) - len(ech)
        kappa += Fraction(1, 2)
    return result


def hilbert_oracle(degrees: Sequence, N) -> dict:
    """Coefficients of ``prod 1/(1 - t^d)`` at ``kappa = 0, 1/2, ..., N``."""
    N = Fraction(N)
    size = int(2 * N) + 1
    coeffs = [0] * size
    coeffs[0] = 1
    for d in degrees:
        step = int(2 * Fraction(d))
        for i in range(step, size):
            coeffs[i] += coeffs[i - step]
    return {Fraction(i, 2): c for i, c in enumerate(coeffs)}
