"""
Co-flag data over the abelian algebra ``k^n_0``, split into two families.

* ``CF1``: ``Lambda != 0`` and ``Lambda(x) f(y,z) - Lambda(y) f(x,z) + Lambda(z) f(x,y) = 0``;
  the datum is ``(-Lambda, Lambda, f)`` and ``f ~ f + Lambda(x) r(y) - r(x) Lambda(y)``.
* ``CF2``: ``lambda(y) f(x,z) = lambda(z) f(x,y)``; the datum is
  ``(lambda, 0, f)`` and ``f ~ f + r(x) lambda(y)``.

Algebras are written on ``f_1..f_n`` (the ``L`` basis) and ``f_{n+1}``
spanning the kernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ..algebra import LeibnizAlgebra, abelian, tensor_from_table
from ..errors import DimensionError, UnsupportedError
from ..field import all_vectors, flat_key, is_zero, kernel_basis, reduce_mod, row_space
from .coflag import CoflagDatum

KINDS = ("CF1", "CF2")


def cf1_operator(n, Lam, field):
    """Rows ``(x, y, z)``, columns ``(u, v)``: the CF1 condition as a linear map on ``f``."""
    I = field.eye(n)
    K = (
        np.einsum("x,yu,zv->xyzuv", Lam, I, I)
        - np.einsum("y,xu,zv->xyzuv", Lam, I, I)
        + np.einsum("z,xu,yv->xyzuv", Lam, I, I)
    )
    return field.reduce(K.reshape(n**3, n * n))


def cf2_operator(n, lam, field):
    I = field.eye(n)
    K = np.einsum("y,xu,zv->xyzuv", lam, I, I) - np.einsum("z,xu,yv->xyzuv", lam, I, I)
    return field.reduce(K.reshape(n**3, n * n))


def cf1_coboundaries(n, Lam, field):
    """Columns: ``Lambda(x) r(y) - r(x) Lambda(y)`` for ``r = e_w^*``."""
    I = field.eye(n)
    K = np.einsum("x,yw->xyw", Lam, I) - np.einsum("xw,y->xyw", I, Lam)
    return field.reduce(K.reshape(n * n, n))


def cf2_coboundaries(n, lam, field):
    """Columns: ``r(x) lambda(y)`` for ``r = e_w^*``."""
    K = np.einsum("xw,y->xyw", field.eye(n), lam)
    return field.reduce(K.reshape(n * n, n))


def in_cf1(Lam, f, field):
    Lam, f = field.array(Lam), field.array(f)
    n = Lam.shape[0]
    return not is_zero(Lam) and is_zero(field.reduce(cf1_operator(n, Lam, field) @ f.ravel()))


def in_cf2(lam, f, field):
    lam, f = field.array(lam), field.array(f)
    n = lam.shape[0]
    return is_zero(field.reduce(cf2_operator(n, lam, field) @ f.ravel()))


@dataclass(eq=False)
class MetacofComponent:
    """Members of one family with a fixed form (``Lambda`` for CF1, ``lambda`` for CF2)."""

    kind: str
    form: np.ndarray
    cocycles: np.ndarray
    coboundaries: np.ndarray
    complement: np.ndarray
    field: object

    @property
    def n(self):
        return self.form.shape[0]

    def _span(self, basis, cap=None):
        fld = self.field
        if basis.shape[0] == 0:
            return [fld.zeros((self.n, self.n))]
        rows = fld.reduce(all_vectors(basis.shape[0], fld, cap) @ basis)
        return [r.reshape(self.n, self.n) for r in rows]

    def members(self, cap=None):
        return [(self.form, f) for f in self._span(self.cocycles, cap)]

    def size(self):
        return self.field.order ** self.cocycles.shape[0]

    def class_count(self):
        return self.field.order ** self.complement.shape[0]

    def canonical(self, f):
        return reduce_mod(self.field.array(f).ravel(), self.coboundaries, self.field).reshape(self.n, self.n)

    def representatives(self, cap=None):
        return sorted(self._span(self.complement, cap), key=flat_key)

    def related(self, f, g):
        return bool(np.all(self.canonical(f) == self.canonical(g)))

    def coflag(self, f, L=None) -> CoflagDatum:
        fld = self.field
        L = abelian(self.n, fld) if L is None else L
        if self.kind == "CF1":
            return CoflagDatum(L, fld.reduce(-self.form), self.form, f)
        return CoflagDatum(L, self.form, fld.zeros(self.n), f)

    def algebra(self, f) -> LeibnizAlgebra:
        return metacof_algebra(self.kind, self.form, f, self.field)


def _component(kind, form, field):
    n = form.shape[0]
    op = cf1_operator(n, form, field) if kind == "CF1" else cf2_operator(n, form, field)
    cob = cf1_coboundaries(n, form, field) if kind == "CF1" else cf2_coboundaries(n, form, field)
    Z = row_space(kernel_basis(op, field), field, n * n)
    B = row_space(list(cob.T), field, n * n)
    W = row_space([reduce_mod(z, B, field) for z in Z], field, n * n)
    return MetacofComponent(kind, form, Z, B, W, field)


class MetacofFamilies(NamedTuple):
    CF1: list
    CF2: list


def metacof_families(n, field, cap=None) -> MetacofFamilies:
    """Both families, one component per form, forms in lexicographic order."""
    if not field.is_prime:
        raise UnsupportedError("the family lists are enumerated over prime fields only")
    forms = list(all_vectors(n, field, cap))
    return MetacofFamilies(
        [_component("CF1", v, field) for v in forms if not is_zero(v)],
        [_component("CF2", v, field) for v in forms],
    )


def metacof_algebra(kind, form, f, field) -> LeibnizAlgebra:
    """``k^{n+1}_(Lambda, f)`` (CF1) or ``k^{n+1}_(lambda, f)`` (CF2) on ``f_1..f_{n+1}``.

    CF1: ``{f_i, f_j} = f(e_i, e_j) f_{n+1}``, ``{f_i, f_{n+1}} = -{f_{n+1}, f_i} = Lambda(e_i) f_{n+1}``.
    CF2: ``{f_i, f_j} = f(e_i, e_j) f_{n+1}``, ``{f_{n+1}, f_i} = lambda(e_i) f_{n+1}``.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    form, f = field.array(form), field.array(f)
    n = form.shape[0]
    if f.shape != (n, n):
        raise DimensionError(f"f must be {n} x {n}")
    table = {}
    for i in range(n):
        for j in range(n):
            table[(i + 1, j + 1)] = {n + 1: f[i, j]}
        if kind == "CF1":
            table[(i + 1, n + 1)] = {n + 1: form[i]}
            table[(n + 1, i + 1)] = {n + 1: field.reduce(-form[i])}
        else:
            table[(n + 1, i + 1)] = {n + 1: form[i]}
    return LeibnizAlgebra(tensor_from_table(n + 1, table, field), field)
