"""Cached objects shared by several test modules."""

from functools import lru_cache

from wminimal import brst, nilp
from wminimal.rootsys import build_chevalley, build_root_system

# criterion number -> printed verdict line, filled by the acceptance tests
ACCEPTANCE_LINES: dict = {}


@lru_cache(maxsize=None)
def rs(label):
    return build_root_system(label)


@lru_cache(maxsize=None)
def cb(label):
    return build_chevalley(rs(label))


@lru_cache(maxsize=None)
def datum(label, nilpotent):
    c = cb(label)
    nd = nilp.nilpotent_from_label(c, nilpotent)
    return c, nd, nilp.dynkin_grading(c, nd)


@lru_cache(maxsize=None)
def m_basis(label, nilpotent, reverse=False):
    c, nd, dg = datum(label, nilpotent)
    return tuple(tuple(v) for v in nilp.whittaker_subalgebra(dg, nd, nilp.lagrangian(dg, nd, reverse)))


@lru_cache(maxsize=None)
def complex_of(label, nilpotent, kind, N, reverse=False):
    c, nd, dg = datum(label, nilpotent)
    if kind == "classical":
        return brst.classical_complex(c, dg, nd, N)
    if kind == "quantum":
        return brst.quantum_complex(c, dg, nd, N)
    return brst.whittaker_complex(c, dg, nd, [list(v) for v in m_basis(label, nilpotent, reverse)], N)


@lru_cache(maxsize=None)
def report_of(label, nilpotent, kind, N, reverse=False):
    return brst.cohomology(complex_of(label, nilpotent, kind, N, reverse))
