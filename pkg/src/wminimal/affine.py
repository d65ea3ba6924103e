"""Admissible weights of an untwisted affine Lie algebra.

A weight of level k is stored through its finite part in fundamental
coordinates.  The pairing of lambda + rho-hat with the coroot of a real root
``alpha + n delta`` is affine-linear in n,

    <lambda + rho-hat, (alpha + n delta)^vee> = <lambda + rho, alpha^vee> + n s_alpha,
    s_alpha = (k + h^vee) * 2 / (alpha|alpha),

so every question about infinitely many real roots reduces to a finite scan:
positivity of ``s_alpha`` bounds the roots that can violate dominance, and the
denominator of ``s_alpha`` is the period of the integrality pattern in n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import floor, gcd
from typing import NamedTuple, Optional, Sequence

from . import linalg
from .rational import as_fraction
from .rootsys import RootSystem

MAX_DENOMINATOR = 64


class UnsupportedRegime(ValueError):
    """The level is critical or below it (k + h^vee <= 0)."""


class NotAdmissible(ValueError):
    pass


class ResourceRefused(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class AffineWeight:
    finite_part: tuple
    level: Fraction

    def __post_init__(self):
        object.__setattr__(self, "finite_part", tuple(as_fraction(x) for x in self.finite_part))
        object.__setattr__(self, "level", as_fraction(self.level))

    @classmethod
    def vacuum(cls, rs: RootSystem, k) -> "AffineWeight":
        return cls((0,) * rs.rank, k)


@dataclass(frozen=True, order=True)
class AffineRealRoot:
    finite_root: tuple
    delta_multiple: int

    def __post_init__(self):
        if not any(self.finite_root):
            raise ValueError("the finite part of a real root must be nonzero")

    @property
    def is_positive(self) -> bool:
        n = self.delta_multiple
        return n > 0 or (n == 0 and min(self.finite_root) >= 0)


def shifted_level(rs: RootSystem, k) -> Fraction:
    return as_fraction(k) + rs.dual_coxeter_hv


def _slope(rs: RootSystem, k, root) -> Fraction:
    return shifted_level(rs, k) * 2 / rs.root_norm(root)


def affine_pairing(rs: RootSystem, lam: AffineWeight, alpha: AffineRealRoot) -> Fraction:
    """``<lambda + rho-hat, alpha^vee>``."""
    if not rs.is_root(alpha.finite_root):
        raise ValueError(f"{alpha.finite_root} is not a root")
    shifted = tuple(x + 1 for x in lam.finite_part)
    return rs.pair(shifted, alpha.finite_root) + alpha.delta_multiple * _slope(rs, lam.level, alpha.finite_root)


def _require_positive_shift(rs: RootSystem, k) -> Fraction:
    s = shifted_level(rs, k)
    if s == 0:
        raise UnsupportedRegime("critical level: k + h^vee = 0")
    if s < 0:
        raise UnsupportedRegime("k + h^vee < 0 is not supported")
    return s


def is_regular_dominant(rs: RootSystem, lam: AffineWeight, window: Optional[int] = None) -> bool:
    """No positive real root pairs with lambda + rho-hat to a non-positive integer.

    The scan is exact: for a fixed finite part the pairing grows with n, so
    only ``n <= -a / s`` can produce a non-positive value.  ``window`` caps the
    scan when given.
    """
    _require_positive_shift(rs, lam.level)
    shifted = tuple(x + 1 for x in lam.finite_part)
    for root in rs.roots:
        a = rs.pair(shifted, root)
        s = _slope(rs, lam.level, root)
        start = 0 if min(root) >= 0 else 1
        stop = floor(-a / s)
        if window is not None:
            stop = min(stop, window)
        for n in range(start, stop + 1):
            v = a + n * s
            if v.denominator == 1 and v <= 0:
                return False
    return True


def pattern_period(rs: RootSystem, k) -> int:
    """A common period in n of every integrality pattern (``r^vee q``)."""
    q = shifted_level(rs, k).denominator
    return rs.lacing_rv * q


@dataclass(frozen=True)
class IntegralRootDatum:
    window: int
    integral_roots: tuple
    simple_system: tuple
    cartan_matrix_of_integral_system: tuple = field(default=())

    @property
    def rank(self) -> int:
        return len(self.simple_system)


def _integral_roots(rs: RootSystem, lam: AffineWeight, lo: int, hi: int) -> list:
    shifted = tuple(x + 1 for x in lam.finite_part)
    out = []
    for root in rs.roots:
        a = rs.pair(shifted, root)
        s = _slope(rs, lam.level, root)
        for n in range(lo, hi + 1):
            if (a + n * s).denominator == 1:
                out.append(AffineRealRoot(root, n))
    return out


def _simple_system(rs: RootSystem, positive: list) -> list:
    """Semigroup-indecomposable elements of a finite set of positive roots.

    Every summand of a decomposition of a positive root is a positive root
    of smaller affine height with no larger delta multiple, so a closed
    window suffices.
    """
    h = rs.coxeter_h

    def vec(r):
        return tuple(r.finite_root) + (r.delta_multiple,)

    def height(v):
        return sum(v[:-1]) + v[-1] * h

    gens = sorted({vec(r) for r in positive}, key=lambda v: (height(v), v))
    if not gens:
        return []
    top = max(height(v) for v in gens)
    sums: set = set(gens)          # sums of at least one generator
    multi: set = set()             # sums of at least two generators
    frontier = sorted(sums, key=height)
    while frontier:
        new = []
        for x in frontier:
            hx = height(x)
            for g in gens:
                if hx + height(g) > top:
                    break
                y = tuple(a + b for a, b in zip(x, g))
                multi.add(y)
                if y not in sums:
                    sums.add(y)
                    new.append(y)
        frontier = new
    simple = [v for v in gens if v not in multi]
    return [AffineRealRoot(v[:-1], v[-1]) for v in simple]


def _cartan_of(rs: RootSystem, simple: Sequence[AffineRealRoot]) -> tuple:
    out = []
    for bi in simple:
        ni = rs.root_norm(bi.finite_root)
        row = []
        for bj in simple:
            v = 2 * rs.inner(bi.finite_root, bj.finite_root) / ni
            assert v.denominator == 1
            row.append(int(v))
        out.append(tuple(row))
    return tuple(out)


def integral_root_datum(rs: RootSystem, lam: AffineWeight) -> IntegralRootDatum:
    """Integral real roots with ``|n| <= window`` and their simple system."""
    W = pattern_period(rs, lam.level)
    roots = _integral_roots(rs, lam, -W, W)
    positive = [r for r in roots if r.is_positive]
    simple = _simple_system(rs, positive)
    simple.sort(key=lambda r: (r.delta_multiple, r.finite_root))
    return IntegralRootDatum(W, tuple(roots), tuple(simple), _cartan_of(rs, simple))


def spans_all_real_roots(rs: RootSystem, lam: AffineWeight) -> bool:
    """Rational span of the integral roots equals that of all real roots.

    Integrality is periodic in n with period dividing the window, so the
    window ``0 <= n <= 2 r^vee q`` already contains every pattern twice.
    """
    W = pattern_period(rs, lam.level)
    vecs = [{i: c for i, c in enumerate(tuple(r.finite_root) + (r.delta_multiple,)) if c}
            for r in _integral_roots(rs, lam, 0, 2 * W)]
    return linalg.rank(vecs) == rs.rank + 1


def is_admissible_weight(rs: RootSystem, lam: AffineWeight) -> bool:
    return is_regular_dominant(rs, lam) and spans_all_real_roots(rs, lam)


class AdmissibleNumber(NamedTuple):
    admissible: bool
    p: Optional[int]
    q: Optional[int]
    reason: str = ""


def is_admissible_number(rs: RootSystem, k) -> AdmissibleNumber:
    s = shifted_level(rs, k)
    if s == 0:
        return AdmissibleNumber(False, None, None, "critical level: k + h^vee = 0")
    if s < 0:
        return AdmissibleNumber(False, None, None, "k + h^vee < 0")
    p, q = s.numerator, s.denominator
    rv = rs.lacing_rv
    g = gcd(rv, q)
    if g == 1:
        if p >= rs.dual_coxeter_hv:
            return AdmissibleNumber(True, p, q)
        return AdmissibleNumber(False, p, q, f"p = {p} < h^vee = {rs.dual_coxeter_hv}")
    if g == rv:
        if p >= rs.coxeter_h:
            return AdmissibleNumber(True, p, q)
        return AdmissibleNumber(False, p, q, f"p = {p} < h = {rs.coxeter_h}")
    return AdmissibleNumber(False, p, q, f"gcd(q, r^vee) = {g} is neither 1 nor r^vee")


def isomorphic_cartan(a: Sequence, b: Sequence) -> bool:
    """Equality up to simultaneous permutation (brute force, small rank)."""
    n = len(a)
    if n != len(b):
        return False
    if sorted(sorted(r) for r in a) != sorted(sorted(r) for r in b):
        return False
    for perm in permutations(range(n)):
        if all(a[perm[i]][perm[j]] == b[i][j] for i in range(n) for j in range(n)):
            return True
    return False


def _checked_level(rs: RootSystem, k) -> AdmissibleNumber:
    info = is_admissible_number(rs, k)
    if not info.admissible:
        raise NotAdmissible(f"k = {as_fraction(k)} is not admissible: {info.reason}")
    if info.q > MAX_DENOMINATOR:
        raise ResourceRefused(f"denominator q = {info.q} exceeds {MAX_DENOMINATOR}")
    return info


def candidate_grid(rs: RootSystem, k) -> list:
    """Finite parts in the search box for Pr^k.

    Coordinates of lambda + rho lie in (1/q)Z with absolute value below
    ``r^vee p``, and the theta coordinate below ``p`` in absolute value.
    """
    info = _checked_level(rs, k)
    p, q, rv = info.p, info.q, rs.lacing_rv
    bound = rv * p * q                     # numerators of coordinates, exclusive
    theta_c = rs.coroot_coordinates(rs.theta)
    out = []

    def rec(prefix):
        if len(prefix) == rs.rank:
            t = sum(Fraction(c) * x for c, x in zip(theta_c, prefix))
            if abs(t) < p:
                out.append(tuple(x - 1 for x in prefix))
            return
        for num in range(-bound + 1, bound):
            rec(prefix + (Fraction(num, q),))

    rec(())
    return out


def enumerate_Pr_k(rs: RootSystem, k) -> list:
    """Admissible weights of level k whose integral roots match those of k Lambda_0."""
    k = as_fraction(k)
    grid = candidate_grid(rs, k)
    ref = integral_root_datum(rs, AffineWeight.vacuum(rs, k)).cartan_matrix_of_integral_system
    out = []
    for fin in grid:
        lam = AffineWeight(fin, k)
        if not is_regular_dominant(rs, lam) or not spans_all_real_roots(rs, lam):
            continue
        datum = integral_root_datum(rs, lam)
        if isomorphic_cartan(datum.cartan_matrix_of_integral_system, ref):
            out.append(lam)
    out.sort()
    return out


def is_nondegenerate_weight(rs: RootSystem, lam: AffineWeight) -> bool:
    return all(rs.pair(lam.finite_part, r).denominator != 1 for r in rs.positive_roots)


def enumerate_Pr_k_nondeg(rs: RootSystem, k) -> list:
    return [lam for lam in enumerate_Pr_k(rs, k) if is_nondegenerate_weight(rs, lam)]
