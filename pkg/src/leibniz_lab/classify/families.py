"""
Named families of small extensions and matchers that recognise them.

Each constructor builds the bracket table exactly as the family is
usually presented.  A matcher reads the candidate parameters off a
representative's crossed product, rebuilds the family algebra and
compares every structure constant; anything that is not an exact match
raises :class:`FamilyMismatch`.

Basis conventions: ``k2_ac`` and ``k2_b`` use ``(f_1, f_2) = (g, e_1)``,
which is the crossed-product order.  All other families list the ``L``
basis first and the kernel last.
"""

from __future__ import annotations

from typing import NamedTuple

from ..algebra import abelian, direct_product, from_table, permute_basis, sl2
from ..crossed import PreCrossedDatum, crossed_product
from ..errors import LeibnizLabError


class FamilyMismatch(LeibnizLabError):
    """A representative does not match any of the expected named families."""


class FamilyMatch(NamedTuple):
    family: str
    params: dict
    group: str  # which piece of the expected decomposition it belongs to


def _table(field, dim, entries):
    # entries: list of (i, j, k, coeff); zero coefficients are dropped
    table = {}
    for i, j, k, coeff in entries:
        table.setdefault((i, j), {})
        table[(i, j)][k] = table[(i, j)].get(k, 0) + coeff
    return from_table(dim, table, field)


# -- two-dimensional -----------------------------------------------------------------


def k2_ac(a, c, field):
    """``{f1, f2} = a f1``, ``{f2, f2} = c f1``."""
    return _table(field, 2, [(1, 2, 1, a), (2, 2, 1, c)])


def k2_b(b, field):
    """``{f2, f1} = -{f1, f2} = b f1`` (a Lie algebra)."""
    return _table(field, 2, [(2, 1, 1, b), (1, 2, 1, -b)])


def match_coflagdim2(datum: PreCrossedDatum) -> FamilyMatch:
    fld = datum.field
    E = crossed_product(datum)
    a, c, b = E.c[0, 1, 0], E.c[1, 1, 0], E.c[1, 0, 0]
    if E == k2_ac(a, c, fld):
        if c == 0:
            return FamilyMatch("k2_{a,c}", {"a": fld.format(a), "c": 0}, "k2_{a,0}")
        if a == 0:
            return FamilyMatch("k2_{a,c}", {"a": 0, "c": fld.format(c)}, "k2_{0,c}")
        raise FamilyMismatch(f"k2_(a,c) with a = {a}, c = {c} is not a listed representative")
    if b != 0 and E == k2_b(b, fld):
        return FamilyMatch("k2_b", {"b": fld.format(b)}, "k2_b")
    raise FamilyMismatch(f"no two-dimensional family matches the bracket {E.table()}")


# -- the three-dimensional L with [e1,e3] = e2, [e3,e3] = e1 ---------------------------


def calexpext_L(field):
    return from_table(3, {(1, 3): {2: 1}, (3, 3): {1: 1}}, field)


def L_abcd(a, b, c, d, field):
    """``{f1,f3} = f2 + b f4``, ``{f2,f3} = c f4``, ``{f3,f3} = f1 + d f4``, ``{f4,f3} = a f4``."""
    return _table(
        field,
        4,
        [(1, 3, 2, 1), (1, 3, 4, b), (2, 3, 4, c), (3, 3, 1, 1), (3, 3, 4, d), (4, 3, 4, a)],
    )


def L_u(u, beta, gamma, field):
    """``L^u_(beta, gamma)``."""
    w = u * beta - u * u * gamma
    return _table(
        field,
        4,
        [
            (1, 3, 2, 1), (1, 3, 4, beta),
            (2, 3, 4, w), (3, 2, 4, -w),
            (3, 1, 4, -u * gamma),
            (3, 3, 1, 1), (3, 3, 4, gamma),
            (3, 4, 4, u), (4, 3, 4, -u),
        ],
    )


def _l_first(datum):
    """Crossed product rewritten on ``(e_1, .., e_m, g_1, .., g_n)``."""
    n, m = datum.g_dim, datum.m
    return permute_basis(crossed_product(datum), list(range(n, n + m)) + list(range(n)))


def match_calexpext(datum: PreCrossedDatum) -> FamilyMatch:
    fld = datum.field
    E = _l_first(datum)
    c = E.c
    a, b, cc, d = c[3, 2, 3], c[0, 2, 3], c[1, 2, 3], c[2, 2, 3]
    if E == L_abcd(a, b, cc, d, fld):
        params = {k: fld.format(v) for k, v in zip("abcd", (a, b, cc, d))}
        if a != 0 and b == cc == d == 0:
            return FamilyMatch("L_(a,b,c,d)", params, "L_(a,0,0,0)")
        if a == b == d == 0:
            return FamilyMatch("L_(a,b,c,d)", params, "L_(0,0,c,0)")
        raise FamilyMismatch(f"L_(a,b,c,d) with parameters {params} is not a listed representative")
    u, beta, gamma = c[2, 3, 3], c[0, 2, 3], c[2, 2, 3]
    if u != 0 and E == L_u(u, beta, gamma, fld):
        params = {"u": fld.format(u), "beta": fld.format(beta), "gamma": fld.format(gamma)}
        if beta == gamma == 0:
            return FamilyMatch("L^u_(beta,gamma)", params, "L^u_(0,0)")
        raise FamilyMismatch(f"L^u_(beta,gamma) with parameters {params} is not a listed representative")
    raise FamilyMismatch(f"no family over the three-dimensional L matches the bracket {E.table()}")


# -- three-dimensional, over k^2_0 ----------------------------------------------------


def k3_1(L1, L2, field, a=0):
    return _table(
        field,
        3,
        [(1, 2, 3, a), (2, 1, 3, -a), (1, 3, 3, L1), (3, 1, 3, -L1), (2, 3, 3, L2), (3, 2, 3, -L2)],
    )


def k3_2(L2, field):
    return _table(field, 3, [(2, 3, 3, L2), (3, 2, 3, -L2)])


def k3_3(a, b, c, d, field):
    return _table(field, 3, [(1, 1, 3, a), (1, 2, 3, b), (2, 1, 3, c), (2, 2, 3, d)])


def k3_4(l2, field):
    return _table(field, 3, [(3, 2, 3, l2)])


def k3_5(l1, field):
    return _table(field, 3, [(3, 1, 3, l1)])


def k3_6(l1, l2, field):
    return _table(field, 3, [(3, 1, 3, l1), (3, 2, 3, l2)])


COFLAG3_1_GROUPS = ("HL2_1", "HL2_2", "HL2_3", "HL2_4", "HL2_5", "HL2_6")


def match_coflag3_1(datum: PreCrossedDatum) -> FamilyMatch:
    fld = datum.field
    E = _l_first(datum)
    c = E.c
    fmt = fld.format
    L1, L2 = c[0, 2, 2], c[1, 2, 2]
    l1, l2 = c[2, 0, 2], c[2, 1, 2]
    f = c[:2, :2, 2]
    candidates = []
    if L1 != 0:
        candidates.append(("k3,1", {"Lambda1": fmt(L1), "Lambda2": fmt(L2)}, "HL2_1", k3_1(L1, L2, fld)))
    if L1 == 0 and L2 != 0:
        candidates.append(("k3,2", {"Lambda2": fmt(L2)}, "HL2_2", k3_2(L2, fld)))
    candidates.append(
        ("k3,3", {k: fmt(v) for k, v in zip("abcd", f.ravel())}, "HL2_3", k3_3(*f.ravel(), fld))
    )
    if l1 == 0 and l2 != 0:
        candidates.append(("k3,4", {"lambda2": fmt(l2)}, "HL2_4", k3_4(l2, fld)))
    if l1 != 0 and l2 == 0:
        candidates.append(("k3,5", {"lambda1": fmt(l1)}, "HL2_5", k3_5(l1, fld)))
    if l1 != 0 and l2 != 0:
        candidates.append(("k3,6", {"lambda1": fmt(l1), "lambda2": fmt(l2)}, "HL2_6", k3_6(l1, l2, fld)))
    for name, params, group, algebra in candidates:
        if E == algebra:
            return FamilyMatch(name, params, group)
    raise FamilyMismatch(f"no family over k^2_0 matches the bracket {E.table()}")


# -- sl(2) ------------------------------------------------------------------------------


def match_sl2_single(datum: PreCrossedDatum) -> FamilyMatch:
    fld = datum.field
    E = crossed_product(datum)
    if E == direct_product(abelian(1, fld), sl2(fld)):
        return FamilyMatch("k x sl(2)", {}, "direct product")
    raise FamilyMismatch(f"representative is not the direct product: {E.table()}")


MATCHERS = {
    "coflagdim2": match_coflagdim2,
    "calexpext": match_calexpext,
    "coflag3_1": match_coflag3_1,
    "sl2-single": match_sl2_single,
}
