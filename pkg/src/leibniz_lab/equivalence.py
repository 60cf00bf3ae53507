"""
The cohomologous relation between crossed systems.

``s ~ s'`` via ``r: L -> g`` (an ``n x m`` matrix) when the g-brackets agree and::

    g <| x  = g <|' x + [g, r(x)]
    x |> g  = x |>' g + [r(x), g]
    f(x, y) = f'(x, y) + [r(x), r(y)] - r([x, y]) + x |>' r(y) + r(x) <|' y

:func:`twist` computes the left-hand sides from ``s'`` and ``r``, so a
witness check is a comparison.  With an abelian g-bracket the quadratic
term vanishes and the search is a linear solve; otherwise (prime fields
only) every ``r`` is tried, vectorised over the whole ``p**(n*m)`` table.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .crossed import CrossedSystem, PreCrossedDatum
from .errors import DimensionError, UnsupportedError
from .field import all_vectors, check_budget, flat_key, solve_linear


@dataclass(frozen=True, eq=False)
class Witness:
    r: np.ndarray

    def __neg__(self):
        return Witness(-self.r)


@dataclass(frozen=True, eq=False)
class EquivalenceResult:
    related: bool
    witness: Witness | None = None
    method: str = "linear-solve"

    def __bool__(self):
        return self.related


def _datum(s):
    return s.datum if isinstance(s, CrossedSystem) else s


def _same_context(s, t):
    if s.context_key() != t.context_key():
        raise DimensionError("crossed systems live over different L, g dimension or field")


def twist_arrays(Lc, gb, left, right, f, r, field):
    """(left, right, f) cohomologous to the given ones via ``r``; ``r`` may be batched."""
    ein = np.einsum
    new_left = field.reduce(left + ein("...cx,acd->...axd", r, gb))
    new_right = field.reduce(right + ein("...cx,cad->...xad", r, gb))
    new_f = field.reduce(
        f
        + ein("...cx,...ey,ced->...xyd", r, r, gb)
        - ein("xyw,...dw->...xyd", Lc, r)
        + ein("...ay,xad->...xyd", r, right)
        + ein("...ax,ayd->...xyd", r, left)
    )
    return new_left, new_right, new_f


def twist(s, r) -> PreCrossedDatum:
    """The datum related to ``s`` by the witness ``r`` (the ``s`` of ``s ~ s'`` for ``s' = s``)."""
    d = _datum(s)
    fld = d.field
    r = fld.array(r.r if isinstance(r, Witness) else r)
    if r.shape != (d.n, d.m):
        raise DimensionError(f"witness must be {d.n} x {d.m}, got {r.shape}")
    left, right, f = twist_arrays(d.L.c, d.g_bracket.c, d.left, d.right, d.f, r, fld)
    return d.replace(left=left, right=right, f=f)


def verify_witness(s, s_prime, r) -> bool:
    s, s_prime = _datum(s), _datum(s_prime)
    _same_context(s, s_prime)
    if s.g_bracket != s_prime.g_bracket:
        return False
    return twist(s_prime, r) == s


def psi_of_witness(r, field):
    """Matrix of ``(g, x) -> (g + r(x), x)`` on ``g x L``."""
    r = field.array(r.r if isinstance(r, Witness) else r)
    n, m = r.shape
    top = np.concatenate([field.eye(n), r], axis=1)
    bottom = np.concatenate([field.zeros((m, n)), field.eye(m)], axis=1)
    return np.concatenate([top, bottom], axis=0)


def coboundary_operator(d: PreCrossedDatum):
    """Matrix of ``r -> -r([x,y]) + x |> r(y) + r(x) <| y`` (rows ``(x,y,d)``, columns ``(a,w)``)."""
    fld = d.field
    m, n = d.m, d.n
    K = (
        -np.einsum("xyw,ad->xydaw", d.L.c, fld.eye(n))
        + np.einsum("xad,wy->xydaw", d.right, fld.eye(m))
        + np.einsum("ayd,wx->xydaw", d.left, fld.eye(m))
    )
    return fld.reduce(K.reshape(m * m * n, n * m))


def find_witness(s, s_prime, cap=None) -> EquivalenceResult:
    """Decide ``s ~ s'`` and return a witness ``r`` when related."""
    s, s_prime = _datum(s), _datum(s_prime)
    _same_context(s, s_prime)
    fld = s.field
    if s.g_bracket != s_prime.g_bracket:
        return EquivalenceResult(False, None, "gate")
    if s_prime.g_bracket.is_zero():
        if not (np.all(s.left == s_prime.left) and np.all(s.right == s_prime.right)):
            return EquivalenceResult(False, None, "linear-solve")
        sol = solve_linear(coboundary_operator(s_prime), fld.reduce(s.f - s_prime.f).ravel(), fld)
        if sol is None:
            return EquivalenceResult(False, None, "linear-solve")
        w = Witness(sol.particular.reshape(s.n, s.m))
        result = EquivalenceResult(True, w, "linear-solve")
    else:
        if not fld.is_prime:
            raise UnsupportedError("no decision procedure for a non-abelian g-bracket over Q")
        count = check_budget("witness search", fld.modulus ** (s.n * s.m), cap)
        R = all_vectors(s.n * s.m, fld, cap).reshape(count, s.n, s.m)
        left, right, f = twist_arrays(
            s.L.c, s.g_bracket.c, s_prime.left, s_prime.right, s_prime.f, R, fld
        )
        hit = (
            np.all((left == s.left).reshape(count, -1), axis=1)
            & np.all((right == s.right).reshape(count, -1), axis=1)
            & np.all((f == s.f).reshape(count, -1), axis=1)
        )
        idx = np.flatnonzero(hit)
        if not len(idx):
            return EquivalenceResult(False, None, "brute-force")
        result = EquivalenceResult(True, Witness(R[idx[0]]), "brute-force")
    assert verify_witness(s, s_prime, result.witness)
    return result


# -- quotient ------------------------------------------------------------------


class UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x != y:
            # smaller index wins so roots are input-order stable
            x, y = min(x, y), max(x, y)
            self.parent[y] = x
        return x


class Quotient(NamedTuple):
    orbits: list
    representatives: list


def _bucket_key(d):
    # related systems share the g-bracket; with an abelian one also the actions
    gb = d.g_bracket
    if gb.is_zero():
        return (flat_key(gb.c), flat_key(d.left, d.right))
    return (flat_key(gb.c),)


def quotient(systems, cap=None) -> Quotient:
    """Partition ``systems`` into cohomology classes.

    Orbits are returned as sorted index lists, ordered by their
    representative, which is the member with the lexicographically
    smallest flattened coefficient tuple.
    """
    data = [_datum(s) for s in systems]
    if data:
        ctx = data[0].context_key()
        if any(d.context_key() != ctx for d in data):
            raise DimensionError("all systems must share L, g dimension and field")
    uf = UnionFind(len(data))
    buckets = {}
    for i, d in enumerate(data):
        buckets.setdefault(_bucket_key(d), []).append(i)
    negative = set()
    for members in buckets.values():
        heads = []
        for i in members:
            for h in heads:
                if (h, i) in negative:
                    continue
                if find_witness(data[h], data[i], cap).related:
                    uf.union(h, i)
                    break
                negative.add((h, i))
            else:
                heads.append(i)
    groups = {}
    for i in range(len(data)):
        groups.setdefault(uf.find(i), []).append(i)
    keyed = []
    for members in groups.values():
        rep = min(members, key=lambda i: data[i].key())
        keyed.append((data[rep].key(), rep, sorted(members)))
    keyed.sort()
    return Quotient([m for _, _, m in keyed], [rep for _, rep, _ in keyed])
