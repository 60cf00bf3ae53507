"""
Metabelian extensions of ``k`` by ``k^n``: the triples ``(A, B, gamma)``.

A crossed system of the abelian line ``k_0`` by the abelian ``k^n_0`` is
``g <| x = x A g``, ``x |> g = x B g``, ``f(x, y) = x y gamma``; it is
valid iff ``AB = BA = -B^2`` and ``B gamma = 0``.  Two triples are
cohomologous iff ``A``, ``B`` agree and ``gamma - gamma'`` lies in the
image of ``A + B``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..algebra import LeibnizAlgebra, abelian, is_morphism, tensor_from_table
from ..crossed import PreCrossedDatum, crossed_product
from ..errors import DimensionError, NotMorphismError, NotSurjectiveError
from ..field import all_vectors, check_budget, flat_key, is_zero, kernel_basis, rank, reduce_mod, row_space
from ..formats import matrix_to_json, vector_to_json
from .report import ClassificationReport, Component, Representative


@dataclass(frozen=True, eq=False)
class TnTriple:
    A: np.ndarray
    B: np.ndarray
    gamma: np.ndarray
    field: object

    def __post_init__(self):
        fld = self.field
        A, B, gamma = fld.array(self.A), fld.array(self.B), fld.array(self.gamma)
        n = gamma.shape[0] if gamma.ndim == 1 else -1
        if A.shape != (n, n) or B.shape != (n, n):
            raise DimensionError(f"expected n x n matrices and an n-vector, got {A.shape}, {B.shape}, {gamma.shape}")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "gamma", gamma)

    @property
    def n(self):
        return self.gamma.shape[0]

    def key(self):
        return flat_key(self.A, self.B, self.gamma)

    def __eq__(self, other):
        if not isinstance(other, TnTriple):
            return NotImplemented
        return self.field == other.field and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"TnTriple(A={self.A.tolist()}, B={self.B.tolist()}, gamma={self.gamma.tolist()})"


def tn_defects(A, B, gamma, field):
    """``(AB + B^2, BA + B^2, B gamma)``; batch axes allowed."""
    B2 = B @ B
    return (
        field.reduce(A @ B + B2),
        field.reduce(B @ A + B2),
        field.reduce(np.einsum("...ij,...j->...i", B, gamma)),
    )


def is_tn_member(t: TnTriple):
    return all(is_zero(d) for d in tn_defects(t.A, t.B, t.gamma, t.field))


def tn_enumerate(n, field, cap=None) -> list[TnTriple]:
    """All members of the triple set for ``n`` in lexicographic order of ``(A, B, gamma)``."""
    total = check_budget(f"triples (A, B, gamma) for n = {n} over {field}", (field.order or 0) ** (2 * n * n + n), cap)
    out = []
    chunk = 1 << 16
    for start in range(0, total, chunk):
        digits = all_vectors(2 * n * n + n, field, total, start, start + chunk)
        A = digits[:, : n * n].reshape(-1, n, n)
        B = digits[:, n * n : 2 * n * n].reshape(-1, n, n)
        gamma = digits[:, 2 * n * n :]
        ok = np.ones(len(digits), dtype=bool)
        for d in tn_defects(A, B, gamma, field):
            ok &= ~np.any(d.reshape(len(digits), -1) != 0, axis=1)
        out.extend(TnTriple(A[i], B[i], gamma[i], field) for i in np.flatnonzero(ok))
    return out


def tn_datum(t: TnTriple) -> PreCrossedDatum:
    """The (unvalidated) system of ``k_0`` by ``k^n_0`` built from ``t``."""
    fld, n = t.field, t.n
    L = abelian(1, fld)
    return PreCrossedDatum.build(
        L,
        n,
        left=t.A.T.reshape(n, 1, n),
        right=t.B.T.reshape(1, n, n),
        f=t.gamma.reshape(1, 1, n),
    )


def tn_algebra(t: TnTriple) -> LeibnizAlgebra:
    """``k^{n+1}`` on ``E_1..E_{n+1}``: ``{E_i, E_{n+1}} = sum_j a_ji E_j``,
    ``{E_{n+1}, E_i} = sum_j b_ji E_j``, ``{E_{n+1}, E_{n+1}} = sum_j gamma_j E_j``."""
    n = t.n
    table = {}
    for i in range(n):
        table[(i + 1, n + 1)] = {j + 1: t.A[j, i] for j in range(n)}
        table[(n + 1, i + 1)] = {j + 1: t.B[j, i] for j in range(n)}
    table[(n + 1, n + 1)] = {j + 1: t.gamma[j] for j in range(n)}
    return LeibnizAlgebra(tensor_from_table(n + 1, table, t.field), t.field)


def tn_canonical(t: TnTriple):
    """Reduction of ``gamma`` modulo the column space of ``A + B``."""
    fld = t.field
    image = row_space(list(fld.reduce(t.A + t.B).T), fld, t.n)
    return reduce_mod(t.gamma, image, fld)


def tn_related(s: TnTriple, t: TnTriple):
    if not (np.all(s.A == t.A) and np.all(s.B == t.B)):
        return False
    return bool(np.all(tn_canonical(s) == tn_canonical(t)))


def tn_quotient(triples, cap=None) -> ClassificationReport:
    """Orbits of a list of triples; one component per ``(A, B)``."""
    triples = list(triples)
    if not triples:
        raise ValueError("tn_quotient needs at least one triple")
    fld, n = triples[0].field, triples[0].n
    groups = {}
    for t in triples:
        groups.setdefault(flat_key(t.A, t.B), {}).setdefault(flat_key(tn_canonical(t)), []).append(t)
    comps = []
    for ab in sorted(groups):
        classes = groups[ab]
        reps = []
        for ck in sorted(classes):
            rep = min(classes[ck], key=lambda t: tn_datum(t).key())
            d = tn_datum(rep)
            reps.append(
                Representative.of(
                    d,
                    label="k^{n+1}_(A,B,gamma)",
                    params={"A": matrix_to_json(rep.A, fld)["entries"], "B": matrix_to_json(rep.B, fld)["entries"],
                            "gamma": vector_to_json(rep.gamma, fld)},
                    product=crossed_product(d),
                )
            )
        first = next(iter(classes.values()))[0]
        key = {"A": matrix_to_json(first.A, fld)["entries"], "B": matrix_to_json(first.B, fld)["entries"]}
        comps.append(Component(key, len(classes), sum(len(v) for v in classes.values()), reps))
    p = fld.order
    return ClassificationReport(
        abelian(1, fld), n, "tn", p ** (2 * n * n + n) if p else None, len(triples), comps, breakdown="actions"
    )


# -- metabelian presentations ----------------------------------------------------


def verify_metabelian_presentation(E: LeibnizAlgebra, pi) -> bool:
    """True iff ``pi`` maps ``E`` onto an abelian algebra with abelian kernel.

    ``pi`` must be a surjective bracket morphism onto the abelian algebra of
    dimension ``rows(pi)``; otherwise :class:`NotMorphismError` or
    :class:`NotSurjectiveError` is raised.
    """
    fld = E.field
    pi = fld.array(pi)
    if pi.ndim != 2 or pi.shape[1] != E.dim:
        raise DimensionError(f"projection of shape {pi.shape} does not start at dim {E.dim}")
    target = abelian(pi.shape[0], fld)
    if rank(pi, fld) != pi.shape[0]:
        raise NotSurjectiveError("projection is not onto")
    if not is_morphism(pi, E, target):
        raise NotMorphismError("projection does not kill the derived subalgebra")
    K = kernel_basis(pi, fld)
    if not K:
        return True
    K = np.stack(K, axis=1)
    return is_zero(fld.einsum("ia,jb,ijk->abk", K, K, E.c))

