"""Finite-dimensional irreducible representations by explicit construction.

The module L(lambda) is built weight space by weight space, going down from
the highest weight.  A vector of weight nu is determined by its images under
the raising operators ``e_i`` (a non-highest vector killed by every ``e_i``
is zero in the irreducible quotient), so each vector is stored through those
images and new weight spaces are carved out of the spans of ``f_j``-images.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .rootsys import ChevalleyBasis, RootSystem


class RepresentationError(ValueError):
    pass


@dataclass(frozen=True)
class Representation:
    """Matrices of a Lie algebra representation on the Chevalley basis."""

    cb: ChevalleyBasis
    highest_weight: tuple
    weights: tuple          # weight of each basis vector
    matrices: tuple         # matrices[k] = matrix of basis element k

    @property
    def dim(self) -> int:
        return len(self.weights)

    def of(self, x: Sequence) -> list:
        """Matrix of an arbitrary element given in Chevalley coordinates."""
        n = self.dim
        out = [[Fraction(0)] * n for _ in range(n)]
        for k, c in enumerate(x):
            if c:
                mk = self.matrices[k]
                for i in range(n):
                    row, src = out[i], mk[i]
                    for j in range(n):
                        if src[j]:
                            row[j] += c * src[j]
        return out

    def homomorphism_defect(self) -> int:
        """Number of basis pairs where the bracket is not respected."""
        bad = 0
        cb = self.cb
        for i in range(cb.dim):
            for j in range(i + 1, cb.dim):
                lhs = self.of(cb.bracket(cb.basis_vector(i), cb.basis_vector(j)))
                a, b = self.matrices[i], self.matrices[j]
                ab, ba = linalg.matmul(a, b), linalg.matmul(b, a)
                if any(lhs[r][c] != ab[r][c] - ba[r][c]
                       for r in range(self.dim) for c in range(self.dim)):
                    bad += 1
        return bad


def _simple_root_weight(rs: RootSystem, j: int) -> tuple:
    return tuple(rs.cartan_matrix[i][j] for i in range(rs.rank))


def highest_weight_module(cb: ChevalleyBasis, weight: Sequence[int],
                          max_dim: int = 2000) -> Representation:
    """The irreducible module with dominant integral highest weight."""
    rs = cb.rs
    n = rs.rank
    lam = tuple(int(x) for x in weight)
    if len(lam) != n or any(x < 0 for x in lam):
        raise RepresentationError(f"highest weight must be dominant integral, got {weight!r}")
    alphas = [_simple_root_weight(rs, j) for j in range(n)]

    def sub(mu, a):
        return tuple(x - y for x, y in zip(mu, a))

    def add(mu, a):
        return tuple(x + y for x, y in zip(mu, a))

    dims = {lam: 1}
    # E[(i, mu)]: columns = e_i-images (in V_{mu+alpha_i}) of basis of V_mu
    E: dict = {}
    # F[(j, mu)]: columns = f_j-images (in V_{mu-alpha_j}) of basis of V_mu
    F: dict = {}
    layer = [lam]
    total = 1
    while layer:
        targets: dict = {}
        for mu in layer:
            for j in range(n):
                targets.setdefault(sub(mu, alphas[j]), []).append((j, mu))
        new_layer = []
        for nu in sorted(targets, reverse=True):
            above = [i for i in range(n) if add(nu, alphas[i]) in dims]
            offsets, off = {}, 0
            for i in above:
                offsets[i] = off
                off += dims[add(nu, alphas[i])]
            candidates = []   # (j, mu, basis index, image vector)
            for j, mu in targets[nu]:
                for b in range(dims[mu]):
                    img = [Fraction(0)] * off
                    for i in above:
                        top = add(nu, alphas[i])
                        part = [Fraction(0)] * dims[top]
                        if i == j:
                            part[b] += mu[i]
                        ei = E.get((i, mu))
                        if ei is not None:
                            w = ei[b]  # e_i w in V_{mu+alpha_i}
                            fj = F.get((j, add(mu, alphas[i])))
                            if fj is not None:
                                for s, cs in enumerate(w):
                                    if cs:
                                        for t, ct in enumerate(fj[s]):
                                            if ct:
                                                part[t] += cs * ct
                        for t, ct in enumerate(part):
                            img[offsets[i] + t] = ct
                    candidates.append((j, mu, b, img))
            chosen = []
            for cand in candidates:
                if any(cand[3]) and not linalg.in_span([c[3] for c in chosen], cand[3]):
                    chosen.append(cand)
            if not chosen:
                continue
            d = len(chosen)
            dims[nu] = d
            total += d
            if total > max_dim:
                raise RepresentationError(f"module dimension exceeds {max_dim}")
            for i in above:
                top = add(nu, alphas[i])
                E[(i, nu)] = [c[3][offsets[i]:offsets[i] + dims[top]] for c in chosen]
            cols = [[c[3][r] for c in chosen] for r in range(off)]
            for j, mu in targets[nu]:
                images = []
                for b in range(dims[mu]):
                    img = next(c[3] for c in candidates if c[0] == j and c[1] == mu and c[2] == b)
                    if any(img):
                        coeffs = linalg.solve(cols, img)
                        assert coeffs is not None
                    else:
                        coeffs = [Fraction(0)] * d
                    images.append(coeffs)
                F[(j, mu)] = images
            new_layer.append(nu)
        layer = new_layer

    order = sorted(dims, key=lambda mu: (-sum(_depth(rs, lam, mu)), tuple(-x for x in mu)))
    offset, pos = {}, 0
    for mu in order:
        offset[mu] = pos
        pos += dims[mu]
    N = pos
    weights = []
    for mu in order:
        weights.extend([mu] * dims[mu])

    def blank():
        return [[Fraction(0)] * N for _ in range(N)]

    e_mats, f_mats = [], []
    for i in range(n):
        em, fm = blank(), blank()
        for mu in order:
            # e_i : V_mu -> V_{mu+alpha_i}
            src = E.get((i, mu))
            if src is not None:
                top = add(mu, alphas[i])
                for b, col in enumerate(src):
                    for t, c in enumerate(col):
                        if c:
                            em[offset[top] + t][offset[mu] + b] = c
            fsrc = F.get((i, mu))
            if fsrc is not None and sub(mu, alphas[i]) in dims:
                low = sub(mu, alphas[i])
                for b, col in enumerate(fsrc):
                    for t, c in enumerate(col):
                        if c:
                            fm[offset[low] + t][offset[mu] + b] = c
        e_mats.append(em)
        f_mats.append(fm)

    mats: list = [None] * cb.dim
    for i in range(n):
        hm = blank()
        for k, mu in enumerate(weights):
            hm[k][k] = Fraction(mu[i])
        mats[cb.cartan_index(i)] = hm
        mats[cb.e(i)] = e_mats[i]
        mats[cb.f(i)] = f_mats[i]

    def comm(a, b):
        ab, ba = linalg.matmul(a, b), linalg.matmul(b, a)
        return [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(ab, ba)]

    for root in rs.positive_roots:
        if sum(root) == 1:
            continue
        for sign in (1, -1):
            target = tuple(sign * c for c in root)
            for i in range(n):
                simple = tuple(sign * int(i == j) for j in range(n))
                rest = tuple(t - s for t, s in zip(target, simple))
                if rs.is_root(rest):
                    nval = cb.n_values[(simple, rest)]
                    m = comm(mats[cb.root_index(simple)], mats[cb.root_index(rest)])
                    mats[cb.root_index(target)] = [[x / nval for x in row] for row in m]
                    break
    return Representation(cb, lam, tuple(weights), tuple(tuple(tuple(r) for r in m) for m in mats))


def _depth(rs: RootSystem, top, mu) -> tuple:
    """Depth of ``mu`` below ``top`` in simple-root coordinates."""
    diff = tuple(Fraction(a - b) for a, b in zip(top, mu))
    return rs.weight_to_root_coords(diff)


def short_root_representation(cb: ChevalleyBasis) -> Representation:
    """The irreducible module whose highest weight is the highest short root."""
    rs = cb.rs
    w = rs.root_to_weight(rs.theta_s)
    return highest_weight_module(cb, [int(x) for x in w])


def first_fundamental_representation(cb: ChevalleyBasis) -> Representation:
    w = [0] * cb.rs.rank
    w[0] = 1
    return highest_weight_module(cb, w)
