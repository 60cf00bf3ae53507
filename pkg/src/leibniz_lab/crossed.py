"""
Pre-crossed data, the CS0-CS7 validator and crossed products.

Array layout for a datum of ``L`` (dim ``m``) by ``g`` (dim ``n``)::

    left[a, x, :]    = g_a <| e_x          shape (n, m, n)
    right[x, a, :]   = e_x |> g_a          shape (m, n, n)
    f[x, y, :]       = f(e_x, e_y)         shape (m, m, n)
    g_bracket[a, b]  = [g_a, g_b]_g        shape (n, n, n)

The crossed product lives on ``g x L`` with the ``g`` basis first.

The axiom checks are written with a leading ``...`` batch axis so the
enumerators can validate millions of candidates with a handful of
``einsum`` calls; :func:`validate` is the single-datum view of the same code.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import NamedTuple

import numpy as np

from .algebra import (
    LeibnizAlgebra,
    StructureTensor,
    leibniz_defect_array,
    is_morphism,
)
from .errors import (
    DimensionError,
    InvalidSystemError,
    NotMorphismError,
    NotSectionError,
    NotSurjectiveError,
)
from .field import flat_key, inverse, is_zero, kernel_basis, rank, row_space, rref

AXIOMS = ("CS0", "CS1", "CS2", "CS3", "CS4", "CS5", "CS6", "CS7")

# role of each index in the defect arrays below
AXIOM_INDEX_ROLES = {
    "CS0": ("g", "h", "k"),
    "CS1": ("g", "h", "x"),
    "CS2": ("g", "x", "y"),
    "CS3": ("x", "y", "z"),
    "CS4": ("x", "g", "h"),
    "CS5": ("x", "y", "g"),
    "CS6": ("g", "h", "x"),
    "CS7": ("x", "y", "g"),
}

MAX_RECORDED_VIOLATIONS = 100


@dataclass(frozen=True, eq=False)
class PreCrossedDatum:
    L: LeibnizAlgebra
    g_dim: int
    left: np.ndarray
    right: np.ndarray
    f: np.ndarray
    g_bracket: StructureTensor

    def __post_init__(self):
        fld = self.L.field
        m, n = self.L.dim, self.g_dim
        gb = self.g_bracket
        if not isinstance(gb, StructureTensor):
            gb = StructureTensor(gb, fld)
        arrays = {
            "left": (self.left, (n, m, n)),
            "right": (self.right, (m, n, n)),
            "f": (self.f, (m, m, n)),
        }
        for name, (arr, shape) in arrays.items():
            arr = fld.array(arr)
            if arr.shape != shape:
                raise DimensionError(f"{name} has shape {arr.shape}, expected {shape}")
            object.__setattr__(self, name, arr)
        if gb.dim != n or gb.field != fld:
            raise DimensionError(f"g bracket must be a {n}-dimensional tensor over {fld}")
        object.__setattr__(self, "g_bracket", gb)

    @classmethod
    def build(cls, L, g_dim, left=None, right=None, f=None, g_bracket=None):
        """Datum with omitted maps set to zero."""
        fld = L.field
        m, n = L.dim, g_dim
        return cls(
            L,
            n,
            fld.zeros((n, m, n)) if left is None else left,
            fld.zeros((m, n, n)) if right is None else right,
            fld.zeros((m, m, n)) if f is None else f,
            StructureTensor(fld.zeros((n, n, n)), fld) if g_bracket is None else g_bracket,
        )

    @property
    def field(self):
        return self.L.field

    @property
    def m(self):
        return self.L.dim

    @property
    def n(self):
        return self.g_dim

    def key(self):
        """Flattened coefficients ``(left, right, f, g_bracket)``; orders data lexicographically."""
        return flat_key(self.left, self.right, self.f, self.g_bracket.c)

    def context_key(self):
        return (str(self.field), self.L.key(), self.g_dim)

    def __eq__(self, other):
        if not isinstance(other, PreCrossedDatum):
            return NotImplemented
        return self.context_key() == other.context_key() and self.key() == other.key()

    def __hash__(self):
        return hash((self.context_key(), self.key()))

    def __repr__(self):
        return f"PreCrossedDatum(m={self.m}, n={self.n}, field={self.field}, key={self.key()})"

    def replace(self, **changes):
        values = dict(
            L=self.L, g_dim=self.g_dim, left=self.left, right=self.right, f=self.f, g_bracket=self.g_bracket
        )
        values.update(changes)
        return PreCrossedDatum(**values)


@dataclass(frozen=True, eq=False)
class CrossedSystem:
    """A pre-crossed datum known to satisfy CS0-CS7."""

    datum: PreCrossedDatum

    @classmethod
    def from_datum(cls, datum):
        report = validate(datum)
        if not report.valid:
            raise InvalidSystemError(report)
        return cls(datum)

    def __eq__(self, other):
        if not isinstance(other, CrossedSystem):
            return NotImplemented
        return self.datum == other.datum

    def __hash__(self):
        return hash(self.datum)

    def key(self):
        return self.datum.key()


@dataclass
class AxiomViolation:
    axiom: str
    at: tuple
    defect: np.ndarray

    def labelled(self):
        """Index roles with 1-based basis labels, e.g. ``{"x": 1, "y": 1, "z": 3}``."""
        roles = AXIOM_INDEX_ROLES[self.axiom]
        return {r: i + 1 for r, i in zip(roles, self.at)}


@dataclass
class AxiomStatus:
    axiom: str
    count: int = 0
    violations: list = dc_field(default_factory=list)

    @property
    def ok(self):
        return self.count == 0

    @property
    def first(self):
        return self.violations[0] if self.violations else None


@dataclass
class AxiomReport:
    statuses: dict

    @property
    def valid(self):
        return all(s.ok for s in self.statuses.values())

    def failed_axioms(self):
        return [a for a in AXIOMS if not self.statuses[a].ok]

    def __getitem__(self, axiom):
        return self.statuses[axiom]

    def to_dict(self, field):
        out = {"valid": self.valid, "axioms": {}}
        for a in AXIOMS:
            s = self.statuses[a]
            entry = {"ok": s.ok, "violations": s.count}
            if s.violations:
                entry["first"] = {
                    "at": s.first.labelled(),
                    "defect": [field.format(v) for v in s.first.defect],
                }
                entry["recorded"] = [
                    {"at": v.labelled(), "defect": [field.format(c) for c in v.defect]} for v in s.violations
                ]
            out["axioms"][a] = entry
        return out


# -- batched axiom checks ------------------------------------------------------


def axiom_defects(Lc, gb, left, right, f, field):
    """LHS - RHS of CS0..CS7 on every basis tuple; arrays may carry leading batch axes.

    ``Lc`` is the bracket of ``L`` (never batched).  Every returned array
    ends with the ``g``-coordinate axis.
    """
    ein = np.einsum
    red = field.reduce
    out = {"CS0": leibniz_defect_array(gb, field)}
    # CS1: [g,h] <| x = [g, h <| x] + [g <| x, h]
    out["CS1"] = red(
        ein("...abc,...cxd->...abxd", gb, left)
        - ein("...bxc,...acd->...abxd", left, gb)
        - ein("...axc,...cbd->...abxd", left, gb)
    )
    # CS2: g <| [x,y] = (g <| x) <| y - (g <| y) <| x - [g, f(x,y)]
    gx = ein("...axc,...cyd->...axyd", left, left)
    out["CS2"] = red(
        ein("xyz,...azd->...axyd", Lc, left)
        - gx
        + np.swapaxes(gx, -2, -3)
        + ein("...xyc,...acd->...axyd", f, gb)
    )
    # CS3: x |> f(y,z) = f(x,y) <| z - f(x,z) <| y + f([x,y],z) - f([x,z],y) - f(x,[y,z])
    fl = ein("...xyc,...czd->...xyzd", f, left)
    fL = ein("xyw,...wzd->...xyzd", Lc, f)
    out["CS3"] = red(
        ein("...yzc,...xcd->...xyzd", f, right)
        - fl
        + np.swapaxes(fl, -2, -3)
        - fL
        + np.swapaxes(fL, -2, -3)
        + ein("yzw,...xwd->...xyzd", Lc, f)
    )
    # CS4: x |> [g,h] = [x |> g, h] - [x |> h, g]
    rg = ein("...xac,...cbd->...xabd", right, gb)
    out["CS4"] = red(ein("...abc,...xcd->...xabd", gb, right) - rg + np.swapaxes(rg, -2, -3))
    # CS5: [x,y] |> g = x |> (y |> g) + (x |> g) <| y - [f(x,y), g]
    rr = ein("...yac,...xcd->...xyad", right, right)
    out["CS5"] = red(
        ein("xyw,...wad->...xyad", Lc, right)
        - rr
        - ein("...xac,...cyd->...xyad", right, left)
        + ein("...xyc,...cad->...xyad", f, gb)
    )
    # CS6: [g, h <| x] + [g, x |> h] = 0
    out["CS6"] = red(
        ein("...bxc,...acd->...abxd", left, gb) + ein("...xbc,...acd->...abxd", right, gb)
    )
    # CS7: x |> (y |> g) + x |> (g <| y) = 0
    out["CS7"] = red(rr + ein("...ayc,...xcd->...xyad", left, right))
    return out


def valid_mask(Lc, gb, left, right, f, field):
    """Boolean array over the batch axes: which candidates satisfy CS0..CS7."""
    ok = np.ones(np.shape(f)[:-3], dtype=bool)
    for d in axiom_defects(Lc, gb, left, right, f, field).values():
        # every defect array ends with three index axes and the g-coordinate
        ok = ok & ~np.any(d != 0, axis=(-4, -3, -2, -1))
    return ok


def validate(d: PreCrossedDatum) -> AxiomReport:
    """Check CS0..CS7 on all basis tuples."""
    defects = axiom_defects(d.L.c, d.g_bracket.c, d.left, d.right, d.f, d.field)
    statuses = {}
    for name in AXIOMS:
        arr = defects[name]
        bad = np.argwhere(np.any(arr != 0, axis=-1))
        status = AxiomStatus(name, count=len(bad))
        for idx in bad[:MAX_RECORDED_VIOLATIONS]:
            idx = tuple(int(i) for i in idx)
            status.violations.append(AxiomViolation(name, idx, arr[idx]))
        statuses[name] = status
    return AxiomReport(statuses)


# -- crossed products ------------------------------------------------------------


def product_tensor_array(Lc, gb, left, right, f, field):
    """Bracket on ``g x L`` from a datum, built unconditionally (batch axes allowed)."""
    n = gb.shape[-1]
    m = Lc.shape[0]
    batch = np.shape(f)[:-3]
    c = field.zeros(batch + (n + m,) * 3)
    c[..., :n, :n, :n] = gb
    c[..., :n, n:, :n] = left
    c[..., n:, :n, :n] = right
    c[..., n:, n:, :n] = f
    c[..., n:, n:, n:] = Lc
    return c


def product_tensor(d: PreCrossedDatum) -> StructureTensor:
    return StructureTensor(product_tensor_array(d.L.c, d.g_bracket.c, d.left, d.right, d.f, d.field), d.field)


def crossed_product(s: CrossedSystem | PreCrossedDatum) -> LeibnizAlgebra:
    """The crossed product ``g # L``; basis ``(g_1..g_n, e_1..e_m)``."""
    d = s.datum if isinstance(s, CrossedSystem) else CrossedSystem.from_datum(s).datum
    return LeibnizAlgebra(product_tensor(d))


def canonical_projection(d: PreCrossedDatum):
    """Matrix of ``(g, x) -> x``."""
    fld = d.field
    return np.concatenate([fld.zeros((d.m, d.n)), fld.eye(d.m)], axis=1)


def trivial_datum(L, g_dim, g_bracket=None):
    return PreCrossedDatum.build(L, g_dim, g_bracket=g_bracket)


def coboundary_datum(L, g_bracket, r):
    """Datum implemented by ``r: L -> g``: <| = [-, r(-)], |> = [r(-), -], f = [r(x), r(y)] - r([x,y])."""
    fld = L.field
    gb = g_bracket if isinstance(g_bracket, StructureTensor) else StructureTensor(g_bracket, fld)
    r = fld.array(r)
    left = fld.einsum("cx,acd->axd", r, gb.c)
    right = fld.einsum("cx,cad->xad", r, gb.c)
    f = fld.reduce(
        np.einsum("cx,ey,ced->xyd", r, r, gb.c) - np.einsum("xyw,dw->xyd", L.c, r)
    )
    return PreCrossedDatum(L, gb.dim, left, right, f, gb)


# -- Remark-style operator views -----------------------------------------------


def delta_matrix(d: PreCrossedDatum, x):
    """Matrix of ``g -> g <| e_x``."""
    return d.left[:, x, :].T.copy()


def d_matrix(d: PreCrossedDatum, x):
    """Matrix of ``g -> e_x |> g``."""
    return d.right[x].T.copy()


def left_mult_matrix(t: StructureTensor, v):
    """Matrix of ``z -> [v, z]``."""
    return t.field.einsum("a,abk->kb", t.field.array(v), t.c)


def right_mult_matrix(t: StructureTensor, v):
    """Matrix of ``z -> [z, v]``."""
    return t.field.einsum("b,abk->ka", t.field.array(v), t.c)


# -- bimodules and cocycles -------------------------------------------------------


def _zero_bracket(field, n):
    return field.zeros((n, n, n))


def check_bimodule(L, g_dim, left, right):
    """Leibniz bimodule axioms (the abelian-g cases of CS2, CS5 and CS7)."""
    fld = L.field
    d = PreCrossedDatum.build(L, g_dim, left=left, right=right)
    defects = axiom_defects(L.c, _zero_bracket(fld, g_dim), d.left, d.right, d.f, fld)
    return all(is_zero(defects[a]) for a in ("CS2", "CS5", "CS7"))


def check_cocycle(L, g_dim, left, right, f):
    """CS3 alone: ``f`` is a 2-cocycle for the given actions."""
    fld = L.field
    d = PreCrossedDatum.build(L, g_dim, left=left, right=right, f=f)
    return is_zero(axiom_defects(L.c, _zero_bracket(fld, g_dim), d.left, d.right, d.f, fld)["CS3"])


def discrete_rep_defects(left, right, field):
    """Defects of (g<|x)<|y = (g<|y)<|x and x|>(g<|y) = (x|>g)<|y = -x|>(y|>g)."""
    ein = np.einsum
    ll = ein("axc,cyd->axyd", left, left)
    rl = ein("ayc,xcd->axyd", left, right)  # x |> (g <| y)
    lr = ein("xac,cyd->axyd", right, left)  # (x |> g) <| y
    rr = ein("yac,xcd->axyd", right, right)  # x |> (y |> g)
    return {
        "commuting-right": field.reduce(ll - np.swapaxes(ll, 1, 2)),
        "mixed": field.reduce(rl - lr),
        "anti": field.reduce(lr + rr),
    }


def check_discrete_rep(L_dim, g_dim, left, right, field):
    left, right = field.array(left), field.array(right)
    if left.shape != (g_dim, L_dim, g_dim) or right.shape != (L_dim, g_dim, g_dim):
        raise DimensionError("action arrays do not match the given dimensions")
    return all(is_zero(v) for v in discrete_rep_defects(left, right, field).values())


def check_discrete_cocycle(L_dim, g_dim, left, right, f, field):
    """x |> f(y,z) = f(x,y) <| z - f(x,z) <| y."""
    left, right, f = field.array(left), field.array(right), field.array(f)
    if f.shape != (L_dim, L_dim, g_dim):
        raise DimensionError(f"f has shape {f.shape}, expected {(L_dim, L_dim, g_dim)}")
    fl = np.einsum("xyc,czd->xyzd", f, left)
    lhs = np.einsum("yzc,xcd->xyzd", f, right)
    return is_zero(field.reduce(lhs - fl + np.swapaxes(fl, 1, 2)))


# -- systems induced by a section -------------------------------------------------


class Induced(NamedTuple):
    datum: PreCrossedDatum
    phi: np.ndarray
    kernel: np.ndarray
    section: np.ndarray


def default_section(pi, field):
    """Section supported on the pivot columns of the row-reduced projection."""
    pi = field.array(pi)
    m, N = pi.shape
    _, pivots = rref(pi, field)
    s = field.zeros((N, m))
    s[pivots, :] = inverse(pi[:, pivots], field)
    return s


def induce_from_section(E: LeibnizAlgebra, pi, L: LeibnizAlgebra, section=None) -> Induced:
    """Crossed system of ``L`` by ``ker(pi)`` read off a Leibniz algebra ``E``.

    ``g <| x = [g, s(x)]``, ``x |> g = [s(x), g]``, ``f(x,y) = [s(x), s(y)] - s([x,y])``
    and ``[g,h]_g = [g,h]``, all written in kernel coordinates.  ``phi``
    is the matrix of ``(g, x) -> g + s(x)``.
    """
    fld = E.field
    pi = fld.array(pi)
    N, m = E.dim, L.dim
    if pi.shape != (m, N):
        raise DimensionError(f"projection has shape {pi.shape}, expected {(m, N)}")
    if rank(pi, fld) != m:
        raise NotSurjectiveError("projection is not onto the target algebra")
    if not is_morphism(pi, E, L):
        raise NotMorphismError("projection does not preserve brackets")
    if section is None:
        s = default_section(pi, fld)
    else:
        s = fld.array(section)
        if s.shape != (N, m):
            raise DimensionError(f"section has shape {s.shape}, expected {(N, m)}")
        if not np.all(fld.matmul(pi, s) == fld.eye(m)):
            raise NotSectionError("pi o s is not the identity")

    K = row_space(kernel_basis(pi, fld), fld, N).T  # N x n, echelonized kernel basis
    n = K.shape[1]
    phi = np.concatenate([K, s], axis=1)
    coords = inverse(phi, fld)[:n]  # kernel coordinates of vectors in ker(pi)

    def br(X, Y):
        # brackets of the columns of X with the columns of Y, as N-vectors
        return np.einsum("ia,jb,ijk->abk", X, Y, E.c)

    def kc(v):
        return fld.einsum("...k,ck->...c", v, coords)

    sL = np.einsum("xyw,iw->xyi", L.c, s)
    datum = PreCrossedDatum(
        L,
        n,
        kc(br(K, s)),
        kc(br(s, K)),
        kc(fld.reduce(br(s, s) - sL)),
        StructureTensor(kc(br(K, K)), fld),
    )
    return Induced(datum, phi, K, s)


def image_algebra(E: LeibnizAlgebra, pi) -> LeibnizAlgebra:
    """Bracket on the target of ``pi`` for which ``pi`` is a morphism (``pi`` must kill an ideal)."""
    fld = E.field
    pi = fld.array(pi)
    m = pi.shape[0]
    if pi.ndim != 2 or pi.shape[1] != E.dim:
        raise DimensionError(f"projection of shape {pi.shape} does not start at dim {E.dim}")
    if rank(pi, fld) != m:
        raise NotSurjectiveError("projection is not onto")
    s = default_section(pi, fld)
    c = fld.einsum("ia,jb,ijk,lk->abl", s, s, E.c, pi)
    T = StructureTensor(c, fld)
    if not is_morphism(pi, E, T):
        raise NotMorphismError("the kernel of the projection is not an ideal")
    return LeibnizAlgebra(T)
