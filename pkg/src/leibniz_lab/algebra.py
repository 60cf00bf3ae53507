"""
Leibniz algebras given by structure constants.

A bracket on ``k^n`` is stored as an ``n x n x n`` array ``c`` with
``[e_i, e_j] = sum_k c[i, j, k] e_k`` (indices 0-based).  A
:class:`StructureTensor` is any such array; a :class:`LeibnizAlgebra` is
one that has passed the Leibniz-law check, which its constructor runs.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DimensionError, FieldError, NotLeibnizError
from .field import Field, QQ, flat_key, inverse, is_zero, kernel_basis, row_space


class StructureTensor:
    """Candidate bracket; no algebraic law assumed."""

    __slots__ = ("c", "field")

    def __init__(self, c, field: Field):
        c = field.array(c)
        if c.ndim != 3 or len(set(c.shape)) != 1:
            raise DimensionError(f"structure tensor must be n x n x n, got shape {c.shape}")
        self.c = c
        self.field = field

    @property
    def dim(self):
        return self.c.shape[0]

    def key(self):
        return (str(self.field), self.dim, flat_key(self.c))

    def __eq__(self, other):
        if not isinstance(other, StructureTensor):
            return NotImplemented
        return self.field == other.field and self.c.shape == other.c.shape and bool(np.all(self.c == other.c))

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim}, field={self.field}, brackets={self.table()})"

    def bracket(self, x, y):
        return evaluate_bracket(self, x, y)

    def table(self):
        """Nonzero brackets as ``{(i, j): {k: coeff}}`` with 1-based labels."""
        out = {}
        for i, j in zip(*np.nonzero(np.any(self.c != 0, axis=2))):
            out[(int(i) + 1, int(j) + 1)] = {
                int(k) + 1: self.c[i, j, k] for k in np.flatnonzero(self.c[i, j] != 0)
            }
        return out

    def is_zero(self):
        return is_zero(self.c)


class LeibnizAlgebra(StructureTensor):
    """Structure tensor satisfying the Leibniz law; validated on construction."""

    __slots__ = ()

    def __init__(self, c, field: Field | None = None):
        if isinstance(c, StructureTensor):
            field = c.field if field is None else field
            c = c.c
        if field is None:
            raise FieldError("a field is required")
        super().__init__(c, field)
        defects = leibniz_defect(self)
        if defects:
            raise NotLeibnizError(defects)

    @classmethod
    def _trusted(cls, c, field):
        # caller has already checked the Leibniz law (batch filters)
        obj = object.__new__(cls)
        StructureTensor.__init__(obj, c, field)
        return obj

    @property
    def tensor(self):
        return StructureTensor(self.c, self.field)


class Subspace:
    """Subspace of ``k^n`` stored by its canonical reduced echelon basis."""

    __slots__ = ("ambient_dim", "basis", "field")

    def __init__(self, vectors, ambient_dim, field):
        self.ambient_dim = ambient_dim
        self.field = field
        self.basis = row_space(list(vectors), field, ambient_dim)

    @property
    def dim(self):
        return self.basis.shape[0]

    def contains(self, v):
        return row_space(list(self.basis) + [self.field.array(v)], self.field, self.ambient_dim).shape[0] == self.dim

    def is_full(self):
        return self.dim == self.ambient_dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim, self.field) == (other.ambient_dim, other.field) and bool(
            np.all(self.basis == other.basis)
        )

    def __hash__(self):
        return hash((self.ambient_dim, str(self.field), flat_key(self.basis)))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, basis={self.basis.tolist()})"


class Predicates(NamedTuple):
    is_lie: bool
    is_abelian: bool
    is_perfect: bool


# -- constructors ------------------------------------------------------------


def abelian(n, field=QQ):
    return LeibnizAlgebra._trusted(field.zeros((n, n, n)), field)


def tensor_from_table(dim, table, field):
    """Build ``c`` from ``{(i, j): {k: coeff}}`` or ``{(i, j): [coeffs]}``; labels are 1-based."""
    c = field.zeros((dim, dim, dim))
    for (i, j), value in table.items():
        if not (1 <= i <= dim and 1 <= j <= dim):
            raise DimensionError(f"bracket index ({i}, {j}) outside 1..{dim}")
        if isinstance(value, dict):
            for k, coeff in value.items():
                if not 1 <= k <= dim:
                    raise DimensionError(f"basis label e{k} outside 1..{dim}")
                c[i - 1, j - 1, k - 1] = field.reduce(c[i - 1, j - 1, k - 1] + field(coeff))
        else:
            if len(value) != dim:
                raise DimensionError(f"coefficient vector for ({i}, {j}) has length {len(value)}, expected {dim}")
            c[i - 1, j - 1] = field.reduce(c[i - 1, j - 1] + field.array(value))
    return c


def from_table(dim, table, field=QQ):
    return LeibnizAlgebra(tensor_from_table(dim, table, field), field)


def sl2(field=QQ):
    """sl(2, k) on e1, e2, e3: [e1,e2] = e3, [e1,e3] = -2 e1, [e2,e3] = 2 e2 (antisymmetric)."""
    if field.characteristic == 2:
        raise FieldError("sl(2, k) is only defined here for characteristic != 2")
    return from_table(
        3,
        {
            (1, 2): {3: 1}, (2, 1): {3: -1},
            (1, 3): {1: -2}, (3, 1): {1: 2},
            (2, 3): {2: 2}, (3, 2): {2: -2},
        },
        field,
    )


# -- operations --------------------------------------------------------------


def evaluate_bracket(t: StructureTensor, x, y):
    x, y = t.field.array(x), t.field.array(y)
    if x.shape != (t.dim,) or y.shape != (t.dim,):
        raise DimensionError(f"vectors of shape {x.shape}, {y.shape} do not match dimension {t.dim}")
    return t.field.einsum("i,j,ijk->k", x, y, t.c)


def leibniz_defect_array(c, field):
    """Defect ``[e_i,[e_j,e_k]] - [[e_i,e_j],e_k] + [[e_i,e_k],e_j]`` for every triple.

    ``c`` may carry leading batch axes (``... x n x n x n``); the result has
    shape ``... x n x n x n x n``.
    """
    inner = np.einsum("...jkw,...iwl->...ijkl", c, c)
    left = np.einsum("...ijw,...wkl->...ijkl", c, c)
    return field.reduce(inner - left + np.swapaxes(left, -2, -3))


def leibniz_defect(t: StructureTensor):
    """Nonzero defects as ``(i, j, k, vector)`` (0-based); empty iff the Leibniz law holds."""
    d = leibniz_defect_array(t.c, t.field)
    bad = np.argwhere(np.any(d != 0, axis=-1))
    return [(int(i), int(j), int(k), d[i, j, k]) for i, j, k in bad]


def is_leibniz(t: StructureTensor):
    return is_zero(leibniz_defect_array(t.c, t.field))


def derived_subalgebra(a: StructureTensor) -> Subspace:
    n = a.dim
    return Subspace(a.c.reshape(n * n, n), n, a.field)


def right_center(a: StructureTensor) -> Subspace:
    """``{g : [g, z] = 0 for all z}`` as the kernel of ``g -> ([g, e_j])_j``."""
    n = a.dim
    # rows indexed by (j, k), columns by i
    M = np.transpose(a.c, (1, 2, 0)).reshape(n * n, n)
    return Subspace(kernel_basis(M, a.field), n, a.field)


def structural_predicates(a: StructureTensor) -> Predicates:
    c = a.c
    diag = c[np.arange(a.dim), np.arange(a.dim)]
    sym = a.field.reduce(c + np.swapaxes(c, 0, 1))
    return Predicates(
        is_lie=is_zero(diag) and is_zero(sym),
        is_abelian=a.is_zero(),
        is_perfect=derived_subalgebra(a).is_full(),
    )


def _square(a, M):
    M = a.field.array(M)
    if M.shape != (a.dim, a.dim):
        raise DimensionError(f"expected a {a.dim} x {a.dim} matrix, got {M.shape}")
    return M


def check_derivation(a: StructureTensor, M):
    """``M([x,y]) = [Mx, y] + [x, My]`` on all basis pairs."""
    M = _square(a, M)
    lhs = np.einsum("ijk,lk->ijl", a.c, M)
    rhs = np.einsum("li,ljk->ijk", M, a.c) + np.einsum("lj,ilk->ijk", M, a.c)
    return is_zero(a.field.reduce(lhs - rhs))


def check_antiderivation(a: StructureTensor, M):
    """``M([x,y]) = [Mx, y] - [My, x]`` on all basis pairs."""
    M = _square(a, M)
    lhs = np.einsum("ijk,lk->ijl", a.c, M)
    rhs = np.einsum("li,ljk->ijk", M, a.c) - np.einsum("lj,lik->ijk", M, a.c)
    return is_zero(a.field.reduce(lhs - rhs))


def direct_product(a: LeibnizAlgebra, b: LeibnizAlgebra) -> LeibnizAlgebra:
    """Block-diagonal bracket on ``a x b`` (basis of ``a`` first)."""
    if a.field != b.field:
        raise FieldError(f"cannot multiply algebras over {a.field} and {b.field}")
    na, nb = a.dim, b.dim
    c = a.field.zeros((na + nb,) * 3)
    c[:na, :na, :na] = a.c
    c[na:, na:, na:] = b.c
    return LeibnizAlgebra(c, a.field)


def morphism_defect(M, source: StructureTensor, target: StructureTensor):
    """``M[e_i, e_j] - [M e_i, M e_j]`` for a linear map ``M: source -> target``."""
    field = source.field
    M = field.array(M)
    if M.shape != (target.dim, source.dim):
        raise DimensionError(f"map of shape {M.shape} does not go from dim {source.dim} to dim {target.dim}")
    lhs = np.einsum("ijk,lk->ijl", source.c, M)
    rhs = np.einsum("ai,bj,abl->ijl", M, M, target.c)
    return field.reduce(lhs - rhs)


def is_morphism(M, source, target):
    return is_zero(morphism_defect(M, source, target))


def transport(t: StructureTensor, P):
    """Bracket on the target of the invertible map ``P`` that makes ``P`` an isomorphism."""
    field = t.field
    P = field.array(P)
    Q = inverse(P, field)
    c = field.einsum("ai,bj,abk,lk->ijl", Q, Q, t.c, P)
    return StructureTensor(c, field)


def permute_basis(a: LeibnizAlgebra, order):
    """Same algebra written in the basis ``e_{order[0]}, e_{order[1]}, ...`` (0-based)."""
    order = list(order)
    c = a.c[np.ix_(order, order, order)]
    return LeibnizAlgebra._trusted(c, a.field)
