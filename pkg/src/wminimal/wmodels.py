"""Minimal-series principal W-algebras: levels, central charges and the
labels of their simple modules.

A simple module of the minimal series is labelled by the central character
of a non-degenerate admissible weight.  Central characters are compared
through a fingerprint, the dominant representative of ``lambda + rho`` in
its Weyl group orbit.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import affine
from .rational import as_fraction, format_rational, format_vector
from .rootsys import RootSystem, langlands_dual, weyl_dominant_representative

SCHEMA_VERSION = 1


class InconsistentCentralCharge(AssertionError):
    pass


class DegenerateLevel(ValueError):
    pass


def _check_pq(p: int, q: int) -> None:
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive")
    if gcd(p, q) != 1:
        raise ValueError(f"p = {p} and q = {q} are not coprime")


def central_charge_norm_form(rs: RootSystem, p: int, q: int) -> Fraction:
    """``l - 12 |q rho - p rho^vee|^2 / (p q)``."""
    v = tuple(q * a - p * b for a, b in zip(rs.rho, rs.rho_check))
    return rs.rank - 12 * rs.weight_inner(v, v) / (p * q)


def central_charge_factored_form(rs: RootSystem, p: int, q: int) -> Fraction:
    h, hv, rv = rs.coxeter_h, rs.dual_coxeter_hv, rs.lacing_rv
    hv_dual = langlands_dual(rs).dual_coxeter_hv
    return Fraction(-rs.rank * ((h + 1) * p - hv * q) * (rv * hv_dual * p - (h + 1) * q), p * q)


def central_charge(rs: RootSystem, p: int, q: int) -> Fraction:
    _check_pq(p, q)
    a = central_charge_norm_form(rs, p, q)
    b = central_charge_factored_form(rs, p, q)
    if a != b:
        raise InconsistentCentralCharge(f"closed forms disagree: {a} != {b}")
    return a


def level_of(rs: RootSystem, p: int, q: int) -> Fraction:
    return Fraction(p, q) - rs.dual_coxeter_hv


def nondegeneracy_failure(rs: RootSystem, k) -> str:
    """Empty string when k is a non-degenerate admissible number, else the reason."""
    info = affine.is_admissible_number(rs, k)
    if not info.admissible:
        return f"level is not admissible ({info.reason})"
    q, rv = info.q, rs.lacing_rv
    if gcd(q, rv) == 1:
        if q < rs.coxeter_h:
            return f"degenerate level: q = {q} < h = {rs.coxeter_h}"
    else:
        need = rv * langlands_dual(rs).dual_coxeter_hv
        if q < need:
            return f"degenerate level: q = {q} < r^vee h^vee(Lg) = {need}"
    return ""


def is_nondegenerate(rs: RootSystem, k) -> bool:
    return not nondegeneracy_failure(rs, k)


def central_character(rs: RootSystem, weight) -> tuple:
    """Fingerprint of the central character of M(weight)."""
    return weyl_dominant_representative(rs, [as_fraction(x) + 1 for x in weight])


def vacuum_weight(rs: RootSystem, k) -> tuple:
    """``-(k + h^vee) rho^vee``, the label of the W-algebra itself."""
    s = affine.shifted_level(rs, k)
    return tuple(-s * c for c in rs.rho_check)


@dataclass(frozen=True)
class MinimalModelRecord:
    cartan_type: str
    p: int
    q: int
    level: Fraction
    central_charge: Fraction
    characters: tuple       # sorted fingerprints
    nondegenerate_weights: int
    vacuum: tuple

    @property
    def count(self) -> int:
        return len(self.characters)

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "type": self.cartan_type,
            "p": self.p,
            "q": self.q,
            "level": format_rational(self.level),
            "c": format_rational(self.central_charge),
            "count": self.count,
            "nondegenerate_weights": self.nondegenerate_weights,
            "vacuum": format_vector(self.vacuum),
            "characters": [format_vector(ch) for ch in self.characters],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        rank = len(self.vacuum)
        w.writerow(["type", "p", "q", "level", "c", "index", "is_vacuum"]
                   + [f"m{i + 1}" for i in range(rank)])
        for n, ch in enumerate(self.characters):
            w.writerow([self.cartan_type, self.p, self.q, format_rational(self.level),
                        format_rational(self.central_charge), n, int(ch == self.vacuum)]
                       + format_vector(ch))
        return buf.getvalue()


def enumerate_minimal_series(rs: RootSystem, k) -> MinimalModelRecord:
    k = as_fraction(k)
    reason = nondegeneracy_failure(rs, k)
    if reason:
        raise DegenerateLevel(reason)
    s = affine.shifted_level(rs, k)
    p, q = s.numerator, s.denominator
    weights = affine.enumerate_Pr_k_nondeg(rs, k)
    chars = sorted({central_character(rs, lam.finite_part) for lam in weights})
    vac = central_character(rs, vacuum_weight(rs, k))
    if vac not in chars:
        raise AssertionError("vacuum character missing from the minimal series")
    return MinimalModelRecord(rs.label, p, q, k, central_charge(rs, p, q), tuple(chars),
                              len(weights), vac)


def minimal_series(rs: RootSystem, p: int, q: int) -> MinimalModelRecord:
    _check_pq(p, q)
    return enumerate_minimal_series(rs, level_of(rs, p, q))
