"""
Co-flag data: crossed systems with a one-dimensional kernel.

For ``g = k`` a crossed system of ``L`` is a triple ``(lambda, Lambda, f)``
with ``g <| x = lambda(x) g``, ``x |> g = Lambda(x) g`` and ``f`` a
bilinear form.  The axioms reduce to

* ``lambda`` and ``Lambda`` vanish on ``[L, L]``;
* ``Lambda(x) (Lambda(y) + lambda(y)) = 0``, so either ``Lambda = 0`` or
  ``lambda = -Lambda``;
* ``f([x,y],z) - f([x,z],y) - f(x,[y,z]) = Lambda(x) f(y,z) - lambda(z) f(x,y) + lambda(y) f(x,z)``.

For fixed ``(lambda, Lambda)`` the third condition is linear in ``f`` and
the cohomologous relation is translation by the image of

    r -> -r([x,y]) + Lambda(x) r(y) + r(x) lambda(y),

so each component of the quotient is a plain quotient vector space.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from ..algebra import LeibnizAlgebra, derived_subalgebra, permute_basis
from ..crossed import CrossedSystem, PreCrossedDatum, crossed_product
from ..errors import DimensionError, UnsupportedError
from ..field import all_vectors, is_zero, check_budget, flat_key, kernel_basis, reduce_mod, row_space
from .report import ClassificationReport, Component, Representative


@dataclass(frozen=True, eq=False)
class CoflagDatum:
    L: LeibnizAlgebra
    lam: np.ndarray
    Lam: np.ndarray
    f: np.ndarray

    def __post_init__(self):
        fld, m = self.L.field, self.L.dim
        for name, shape in (("lam", (m,)), ("Lam", (m,)), ("f", (m, m))):
            arr = fld.array(getattr(self, name))
            if arr.shape != shape:
                raise DimensionError(f"{name} has shape {arr.shape}, expected {shape}")
            object.__setattr__(self, name, arr)

    @property
    def field(self):
        return self.L.field

    def key(self):
        return flat_key(self.lam, self.Lam, self.f)

    def __eq__(self, other):
        if not isinstance(other, CoflagDatum):
            return NotImplemented
        return self.L == other.L and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"CoflagDatum(lambda={self.lam.tolist()}, Lambda={self.Lam.tolist()}, f={self.f.tolist()})"


def coflag_defects(d: CoflagDatum):
    """Residuals of the three defining conditions (all zero iff ``d`` is a co-flag datum)."""
    fld, Lc = d.field, d.L.c
    lam, Lam, f = d.lam, d.Lam, d.f
    lam_derived = fld.einsum("xyw,w->xy", Lc, lam)
    Lam_derived = fld.einsum("xyw,w->xy", Lc, Lam)
    quad = fld.reduce(np.outer(Lam, Lam + lam))
    lhs = (
        np.einsum("xyw,wz->xyz", Lc, f)
        - np.einsum("xzw,wy->xyz", Lc, f)
        - np.einsum("yzw,xw->xyz", Lc, f)
    )
    rhs = (
        np.einsum("x,yz->xyz", Lam, f)
        - np.einsum("z,xy->xyz", lam, f)
        + np.einsum("y,xz->xyz", lam, f)
    )
    return lam_derived, Lam_derived, quad, fld.reduce(lhs - rhs)


def is_coflag_datum(d: CoflagDatum):
    return all(is_zero(r) for r in coflag_defects(d))


def coflag_to_datum(d: CoflagDatum) -> PreCrossedDatum:
    m = d.L.dim
    return PreCrossedDatum.build(
        d.L,
        1,
        left=d.lam.reshape(1, m, 1),
        right=d.Lam.reshape(m, 1, 1),
        f=d.f.reshape(m, m, 1),
    )


def datum_to_coflag(datum: PreCrossedDatum) -> CoflagDatum:
    if datum.g_dim != 1:
        raise DimensionError("co-flag data have a one-dimensional kernel")
    m = datum.m
    return CoflagDatum(datum.L, datum.left.reshape(m), datum.right.reshape(m), datum.f.reshape(m, m))


def coflag_to_system(d: CoflagDatum) -> CrossedSystem:
    return CrossedSystem.from_datum(coflag_to_datum(d))


def coflag_algebra(d: CoflagDatum) -> LeibnizAlgebra:
    """``k x L`` with basis ``(e_1, .., e_m, g)``:
    ``{(a, x), (b, y)} = (a lambda(y) + b Lambda(x) + f(x, y), [x, y])``."""
    prod = crossed_product(coflag_to_system(d))
    m = d.L.dim
    return permute_basis(prod, list(range(1, m + 1)) + [0])


# -- linear algebra per (lambda, Lambda) ----------------------------------------


def form_constraints(L):
    """Basis of the covectors vanishing on ``[L, L]``."""
    D = derived_subalgebra(L)
    if D.dim == 0:
        return [v for v in L.field.eye(L.dim)]
    return kernel_basis(D.basis, L.field)


def cocycle_operator(L, lam, Lam):
    """Matrix of the co-flag cocycle condition; rows ``(x, y, z)``, columns ``(u, v)`` for ``f(e_u, e_v)``."""
    fld, m = L.field, L.dim
    I = fld.eye(m)
    Lc = L.c
    K = (
        np.einsum("xyu,zv->xyzuv", Lc, I)
        - np.einsum("xzu,yv->xyzuv", Lc, I)
        - np.einsum("xu,yzv->xyzuv", I, Lc)
        - np.einsum("x,yu,zv->xyzuv", Lam, I, I)
        + np.einsum("z,xu,yv->xyzuv", lam, I, I)
        - np.einsum("y,xu,zv->xyzuv", lam, I, I)
    )
    return fld.reduce(K.reshape(m**3, m * m))


def coboundary_matrix(L, lam, Lam):
    """Columns span the coboundaries ``-r([x,y]) + Lambda(x) r(y) + r(x) lambda(y)`` (rows ``(x, y)``)."""
    fld, m = L.field, L.dim
    I = fld.eye(m)
    K = -L.c + np.einsum("x,yw->xyw", Lam, I) + np.einsum("xw,y->xyw", I, lam)
    return fld.reduce(K.reshape(m * m, m))


@dataclass(eq=False)
class CoflagFamily:
    """All co-flag data with a fixed ``(lambda, Lambda)``: ``f`` ranges over a subspace."""

    L: LeibnizAlgebra
    lam: np.ndarray
    Lam: np.ndarray
    cocycles: np.ndarray  # RREF basis of Z, shape (dim Z, m*m)
    coboundaries: np.ndarray  # RREF basis of B inside Z
    complement: np.ndarray  # RREF basis of Z mod B in reduced coordinates

    @property
    def field(self):
        return self.L.field

    @property
    def dim(self):
        return self.cocycles.shape[0]

    @property
    def quotient_dim(self):
        return self.complement.shape[0]

    def size(self):
        p = self.field.order
        return p**self.dim if p is not None else (1 if self.dim == 0 else None)

    def class_count(self):
        p = self.field.order
        return p**self.quotient_dim if p is not None else (1 if self.quotient_dim == 0 else None)

    def datum(self, f) -> CoflagDatum:
        m = self.L.dim
        return CoflagDatum(self.L, self.lam, self.Lam, self.field.array(f).reshape(m, m))

    def _span(self, basis, cap):
        fld = self.field
        k = basis.shape[0]
        if k == 0:
            yield fld.zeros(basis.shape[1])
            return
        coeffs = all_vectors(k, fld, cap)
        for row in fld.reduce(coeffs @ basis):
            yield row

    def members(self, cap=None) -> Iterator[CoflagDatum]:
        for f in self._span(self.cocycles, cap):
            yield self.datum(f)

    def canonical(self, f):
        """Class representative of ``f``: its reduction modulo the coboundaries."""
        return reduce_mod(np.asarray(f).ravel(), self.coboundaries, self.field)

    def representatives(self, cap=None) -> list[CoflagDatum]:
        """One datum per class, lexicographically ordered; the zero class first."""
        reps = [self.datum(f) for f in self._span(self.complement, cap)]
        return sorted(reps, key=lambda d: flat_key(d.f))


def coflag_family(L, lam, Lam) -> CoflagFamily:
    fld, m = L.field, L.dim
    lam, Lam = fld.array(lam), fld.array(Lam)
    Z = row_space(kernel_basis(cocycle_operator(L, lam, Lam), fld), fld, m * m)
    B = row_space(list(coboundary_matrix(L, lam, Lam).T), fld, m * m)
    # coboundaries are cocycles; keep the check cheap but explicit
    assert row_space(list(Z) + list(B), fld, m * m).shape[0] == Z.shape[0], "coboundary outside cocycles"
    W = row_space([reduce_mod(z, B, fld) for z in Z], fld, m * m)
    return CoflagFamily(L, lam, Lam, Z, B, W)


def lambda_pairs(L, cap=None):
    """Every admissible ``(lambda, Lambda)`` in lexicographic order (prime fields).

    Over Q only the perfect case, where both forms vanish, is handled.
    """
    fld, m = L.field, L.dim
    basis = form_constraints(L)
    if not basis:
        return [(fld.zeros(m), fld.zeros(m))]
    if not fld.is_prime:
        raise UnsupportedError("enumerating (lambda, Lambda) needs a prime field when [L, L] is proper")
    Bm = np.stack(basis)
    forms = sorted({flat_key(v): v for v in fld.reduce(all_vectors(len(basis), fld, cap) @ Bm)}.items())
    forms = [v for _, v in forms]
    zero = fld.zeros(m)
    pairs = [(lam, zero) for lam in forms]
    pairs += [(fld.reduce(-Lam), Lam) for Lam in forms if not is_zero(Lam)]
    return sorted(pairs, key=lambda p: flat_key(p[0], p[1]))


def coflag_data(L, cap=None) -> list[CoflagFamily]:
    """The co-flag data of ``L``, one linear family per ``(lambda, Lambda)``."""
    return [coflag_family(L, lam, Lam) for lam, Lam in lambda_pairs(L, cap)]


def family_key(fam: CoflagFamily):
    fld = fam.field
    return {"lambda": [fld.format(v) for v in fam.lam], "Lambda": [fld.format(v) for v in fam.Lam]}


def coflag_GHL2(L, cap=None) -> ClassificationReport:
    """Classes of crossed systems of ``L`` by ``k`` via per-(lambda, Lambda) linear algebra."""
    fld, m = L.field, L.dim
    comps = []
    for fam in coflag_data(L, cap):
        count = fam.class_count()
        reps = []
        if count is not None:
            check_budget("co-flag class representatives", count, cap)
            reps = [Representative.of(coflag_to_datum(d)) for d in fam.representatives(cap)]
        comps.append(
            Component(family_key(fam), count, fam.size(), reps, quotient_dim=fam.quotient_dim)
        )
    sizes = [c.valid_count for c in comps]
    p = fld.order
    return ClassificationReport(
        L,
        1,
        "coflag",
        p ** (2 * m + m * m + 1) if p is not None else None,
        None if any(s is None for s in sizes) else sum(sizes),
        comps,
        breakdown="lambda-Lambda",
    )
