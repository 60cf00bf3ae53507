"""
Exhaustive enumeration of crossed systems over a prime field.

A candidate is one assignment of all ``n*m*n + m*n*n + m*m*n + n**3``
coefficients of ``(left, right, f, g_bracket)``.  Candidate ``i`` is the
``i``-th row of the lexicographic table of ``GF(p)^P``, so index ranges
split cleanly across worker processes and the result order never depends
on the number of workers.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

import numpy as np

from ..algebra import LeibnizAlgebra, StructureTensor
from ..crossed import CrossedSystem, PreCrossedDatum, valid_mask
from ..equivalence import quotient
from ..errors import DimensionError, UnsupportedError
from ..field import Field, all_vectors, check_budget, default_cap, flat_key
from ..formats import _sparse_entries
from .coflag import coflag_GHL2
from .report import ClassificationReport, Component, Representative

CHUNK = 1 << 16


def parameter_count(m, n):
    return n * m * n + m * n * n + m * m * n + n**3


def candidate_count(L, g_dim, cap=None):
    """Number of candidates, checked against the enumeration cap."""
    fld = L.field
    if not fld.is_prime:
        raise UnsupportedError("exhaustive enumeration needs a prime field")
    P = parameter_count(L.dim, g_dim)
    what = f"crossed-system candidates for dim L = {L.dim}, g_dim = {g_dim} ({P} parameters over {fld})"
    return check_budget(what, fld.modulus**P, cap)


def decode(digits, m, n):
    """Split rows of candidate digits into batched ``(left, right, f, g_bracket)``."""
    b = digits.shape[0]
    sizes = [n * m * n, m * n * n, m * m * n, n**3]
    shapes = [(n, m, n), (m, n, n), (m, m, n), (n, n, n)]
    out, pos = [], 0
    for size, shape in zip(sizes, shapes):
        out.append(digits[:, pos : pos + size].reshape((b,) + shape))
        pos += size
    return tuple(out)


def candidate_block(L, g_dim, start, stop):
    """Candidates ``start:stop`` as batched ``(left, right, f, g_bracket)`` arrays."""
    fld = L.field
    P = parameter_count(L.dim, g_dim)
    digits = all_vectors(P, fld, fld.modulus**P, start, stop)
    return decode(digits, L.dim, g_dim)


def _valid_in_range(args):
    Lc, modulus, g_dim, start, stop = args
    fld = Field(modulus)
    m = Lc.shape[0]
    P = parameter_count(m, g_dim)
    digits = all_vectors(P, fld, modulus**P, start, stop)
    left, right, f, gb = decode(digits, m, g_dim)
    ok = valid_mask(Lc, gb, left, right, f, fld)
    return np.flatnonzero(ok) + start


def valid_candidate_indices(L, g_dim, cap=None, jobs=1, chunk=CHUNK):
    """Indices (in lexicographic order) of the candidates passing CS0..CS7."""
    total = candidate_count(L, g_dim, cap)
    tasks = [(L.c, L.field.modulus, g_dim, s, min(s + chunk, total)) for s in range(0, total, chunk)]
    if jobs and jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_valid_in_range, tasks))
    else:
        parts = [_valid_in_range(t) for t in tasks]
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def enumerate_crossed_systems(L, g_dim, field=None, cap=None, jobs=1) -> list[CrossedSystem]:
    """Every crossed system of ``L`` by a ``g_dim``-dimensional ``g``, in lexicographic order."""
    _check_field(L, field)
    idx = valid_candidate_indices(L, g_dim, cap, jobs)
    fld = L.field
    P = parameter_count(L.dim, g_dim)
    systems = []
    for i in idx:
        digits = all_vectors(P, fld, fld.modulus**P, int(i), int(i) + 1)
        left, right, f, gb = (a[0] for a in decode(digits, L.dim, g_dim))
        # already validated in bulk
        systems.append(CrossedSystem(PreCrossedDatum(L, g_dim, left, right, f, StructureTensor(gb, fld))))
    return systems


def _check_field(L, field):
    if field is not None and Field(field.modulus) != L.field:
        raise DimensionError(f"L is defined over {L.field}, not {field}")


def _by_actions(d, breakdown):
    # twisting moves the actions by [-, r(x)] and [r(x), -]; they are invariants only for abelian g
    return breakdown == "actions" and d.g_bracket.is_zero()


def _component_key(d, breakdown):
    fld = d.field
    key = {"g_bracket": _sparse_entries(fld, d.g_bracket.c, "g")}
    if _by_actions(d, breakdown):
        key["left"] = _sparse_entries(fld, d.left, "g")
        key["right"] = _sparse_entries(fld, d.right, "g")
    return key


def _group_key(d, breakdown):
    if _by_actions(d, breakdown):
        return flat_key(d.g_bracket.c, d.left, d.right)
    return flat_key(d.g_bracket.c)


def classify_systems(systems, breakdown="g_bracket", cap=None):
    """Components and orbit representatives of an explicit list of systems."""
    if breakdown not in ("g_bracket", "actions"):
        raise ValueError(f"unknown breakdown {breakdown!r}")
    groups = {}
    for s in systems:
        d = s.datum if isinstance(s, CrossedSystem) else s
        groups.setdefault(_group_key(d, breakdown), []).append(d)
    comps = []
    for gkey in sorted(groups):
        members = groups[gkey]
        q = quotient(members, cap)
        reps = [Representative.of(members[i]) for i in q.representatives]
        comps.append(Component(_component_key(members[0], breakdown), len(q.orbits), len(members), reps))
    return comps


def compute_GHL2(L: LeibnizAlgebra, g_dim, field=None, method="auto", cap=None, jobs=1, breakdown="g_bracket"):
    """Classes of crossed systems of ``L`` by ``g_dim``-dimensional ``g``.

    ``method="auto"`` uses the co-flag solver for ``g_dim == 1`` and
    enumeration otherwise; ``"enumerate"`` forces enumeration (the
    cross-check path).
    """
    _check_field(L, field)
    if method not in ("auto", "enumerate", "coflag"):
        raise ValueError(f"unknown method {method!r}")
    if method == "coflag" or (method == "auto" and g_dim == 1):
        if g_dim != 1:
            raise DimensionError("the co-flag solver needs g_dim = 1")
        return coflag_GHL2(L, cap)
    cap = default_cap() if cap is None else cap
    total = candidate_count(L, g_dim, cap)
    systems = enumerate_crossed_systems(L, g_dim, cap=cap, jobs=jobs)
    comps = classify_systems(systems, breakdown, cap)
    return ClassificationReport(L, g_dim, "enumerate", total, len(systems), comps, breakdown=breakdown)
