"""
Exact scalar arithmetic and dense linear algebra over GF(p) and Q.

Vectors and matrices are plain numpy arrays.  Over GF(p) they use
``int64`` entries kept in ``0..p-1``; over Q they are ``object`` arrays of
:class:`fractions.Fraction`.  Matrices act on column vectors, so column
``j`` of a matrix is the image of the ``j``-th basis vector.

The two fields share one code path: every routine goes through
:meth:`Field.array` / :meth:`Field.reduce`, and ``numpy.einsum`` works on
object arrays, so exactness over Q comes for free.
"""

from __future__ import annotations

import itertools
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple

import numpy as np

from .errors import BudgetError, DimensionError, FieldError, UnsupportedError

MAX_PRIME = 251
DEFAULT_CAP_BITS = 24
CAP_ENV = "LEIBNIZ_LAB_CAP"

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def _is_prime(p):
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


@dataclass(frozen=True)
class Field:
    """A prime field GF(p) (``modulus=p``) or the rationals (``modulus=None``)."""

    modulus: int | None = None

    def __post_init__(self):
        p = self.modulus
        if p is None:
            return
        if isinstance(p, bool) or not isinstance(p, (int, np.integer)):
            raise FieldError(f"modulus must be an integer, got {p!r}")
        if not 2 <= p <= MAX_PRIME:
            raise FieldError(f"modulus {p} outside the supported range 2..{MAX_PRIME}")
        if not _is_prime(int(p)):
            raise FieldError(f"modulus {p} is not prime")
        object.__setattr__(self, "modulus", int(p))

    @property
    def kind(self):
        return "rationals" if self.modulus is None else "prime-field"

    @property
    def is_prime(self):
        return self.modulus is not None

    @property
    def characteristic(self):
        return 0 if self.modulus is None else self.modulus

    @property
    def order(self):
        """Number of elements, or ``None`` for Q."""
        return self.modulus

    @property
    def dtype(self):
        return np.int64 if self.is_prime else object

    def __str__(self):
        return "Q" if self.modulus is None else f"GF({self.modulus})"

    # -- scalars -----------------------------------------------------------

    def __call__(self, value):
        """Canonical scalar for ``value`` (int, Fraction or ``"num/den"`` string)."""
        if isinstance(value, str):
            value = self.parse(value)
        if isinstance(value, (np.integer,)):
            value = int(value)
        if self.is_prime:
            if isinstance(value, Fraction):
                if value.denominator % self.modulus == 0:
                    raise FieldError(f"{value} has no image in {self}")
                return value.numerator * pow(value.denominator, -1, self.modulus) % self.modulus
            if isinstance(value, bool) or not isinstance(value, int):
                raise FieldError(f"cannot interpret {value!r} in {self}")
            return value % self.modulus
        if isinstance(value, float):
            raise FieldError("floats are not accepted as exact scalars")
        return Fraction(value)

    def parse(self, text):
        m = _RATIONAL.match(str(text))
        if not m:
            raise FieldError(f"cannot parse scalar {text!r}")
        num, den = int(m.group(1)), int(m.group(2) or 1)
        if den == 0:
            raise FieldError(f"zero denominator in {text!r}")
        return self(Fraction(num, den))

    def format(self, value):
        """JSON-friendly form: ints for GF(p) and integral rationals, else ``"num/den"``."""
        if self.is_prime:
            return int(value)
        value = Fraction(value)
        if value.denominator == 1:
            return value.numerator
        return f"{value.numerator}/{value.denominator}"

    def inv(self, value):
        if value == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        if self.is_prime:
            return pow(int(value), -1, self.modulus)
        return 1 / Fraction(value)

    def elements(self):
        if not self.is_prime:
            raise UnsupportedError("Q has no finite element list")
        return range(self.modulus)

    # -- arrays ------------------------------------------------------------

    def array(self, data):
        """Canonical array copy of ``data`` in this field."""
        if self.is_prime:
            arr = np.asarray(data)
            if arr.dtype == object:
                arr = np.vectorize(self, otypes=[np.int64])(arr) if arr.size else arr.astype(np.int64)
            elif not np.issubdtype(arr.dtype, np.integer):
                raise FieldError(f"non-integer entries cannot be read in {self}")
            return np.mod(arr.astype(np.int64), self.modulus)
        arr = np.asarray(data, dtype=object)
        out = np.empty(arr.shape, dtype=object)
        for idx, v in np.ndenumerate(arr):
            out[idx] = self(v)
        return out

    def reduce(self, arr):
        """Canonicalize the result of integer arithmetic (no-op over Q)."""
        if self.is_prime:
            return np.mod(arr, self.modulus)
        return arr

    def zeros(self, shape):
        if self.is_prime:
            return np.zeros(shape, dtype=np.int64)
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out

    def eye(self, n):
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self(1)
        return out

    def einsum(self, subscripts, *operands):
        return self.reduce(np.einsum(subscripts, *operands))

    def matmul(self, a, b):
        return self.reduce(a @ b)

    def random(self, rng, shape):
        """Uniform entries over GF(p); small random rationals over Q."""
        if self.is_prime:
            return rng.integers(0, self.modulus, size=shape, dtype=np.int64)
        nums = rng.integers(-3, 4, size=shape)
        dens = rng.integers(1, 4, size=shape)
        return self.array(np.vectorize(Fraction, otypes=[object])(nums, dens))


GF = Field
QQ = Field(None)


def field_from_descriptor(desc):
    """``3`` or ``"3"`` -> GF(3); ``"Q"`` -> Q."""
    if isinstance(desc, Field):
        return desc
    if isinstance(desc, str):
        if desc.strip().upper() in ("Q", "QQ"):
            return QQ
        if not desc.strip().isdigit():
            raise FieldError(f"unknown field descriptor {desc!r}")
        desc = int(desc)
    return Field(desc)


def is_zero(arr):
    return bool(np.all(np.asarray(arr) == 0))


def scalar_key(value):
    """Hashable, order-compatible form of a scalar (ints stay ints)."""
    if isinstance(value, (int, np.integer)):
        return int(value)
    value = Fraction(value)
    return value.numerator if value.denominator == 1 else value


def flat_key(*arrays):
    return tuple(scalar_key(v) for a in arrays for v in np.asarray(a).ravel())


# -- enumeration budget ----------------------------------------------------


def default_cap():
    """Enumeration cap in candidates; ``$LEIBNIZ_LAB_CAP`` holds a bit count."""
    bits = os.environ.get(CAP_ENV)
    if bits is None or not bits.strip():
        return 2**DEFAULT_CAP_BITS
    try:
        return 2 ** int(bits)
    except ValueError as exc:
        raise FieldError(f"{CAP_ENV} must be an integer bit count, got {bits!r}") from exc


def check_budget(what, count, cap=None):
    cap = default_cap() if cap is None else cap
    if count > cap:
        raise BudgetError(what, count, cap)
    return count


def _require_prime(field, what):
    if not field.is_prime:
        raise UnsupportedError(f"{what} needs a prime field, got {field}")


def enumerate_vectors(dim, field, cap=None) -> Iterator[tuple]:
    """All ``p**dim`` vectors of GF(p)^dim in lexicographic order."""
    _require_prime(field, "vector enumeration")
    check_budget(f"vectors of GF({field.modulus})^{dim}", field.modulus**dim, cap)
    return itertools.product(range(field.modulus), repeat=dim)


def all_vectors(dim, field, cap=None, start=0, stop=None):
    """Rows ``start:stop`` of the lexicographic table of GF(p)^dim, as an array."""
    _require_prime(field, "vector enumeration")
    p = field.modulus
    total = check_budget(f"vectors of GF({p})^{dim}", p**dim, cap)
    stop = total if stop is None else min(stop, total)
    idx = np.arange(start, stop, dtype=np.int64)
    powers = p ** np.arange(dim - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // powers[None, :]) % p


# -- row reduction ---------------------------------------------------------


def rref(M, field):
    """Reduced row echelon form and pivot columns (first-nonzero pivoting)."""
    R = field.array(M).copy()
    if R.ndim != 2:
        raise DimensionError(f"expected a matrix, got shape {R.shape}")
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = [i for i in range(r, rows) if R[i, c] != 0]
        if not nz:
            continue
        i = nz[0]
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = field.reduce(R[r] * field.inv(R[r, c]))
        col = R[:, c].copy()
        col[r] = 0
        if np.any(col != 0):
            R = field.reduce(R - np.outer(col, R[r]))
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M, field):
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(M, field)[1])


class Solution(NamedTuple):
    particular: np.ndarray
    kernel: list


def solve_linear(M, b, field):
    """Solve ``M x = b`` exactly.

    Returns a :class:`Solution` holding one particular solution (free
    variables set to 0) and a basis of the homogeneous kernel, or ``None``
    when the system is inconsistent.
    """
    M = field.array(M)
    b = field.array(b)
    if M.ndim != 2 or b.ndim != 1 or M.shape[0] != b.shape[0]:
        raise DimensionError(f"matrix of shape {M.shape} does not fit right-hand side of shape {b.shape}")
    rows, cols = M.shape
    aug = np.concatenate([M, b[:, None]], axis=1) if rows else field.zeros((0, cols + 1))
    R, pivots = rref(aug, field) if rows else (aug, [])
    if cols in pivots:
        return None
    x = field.zeros(cols)
    for i, c in enumerate(pivots):
        x[c] = R[i, cols]
    free = [c for c in range(cols) if c not in pivots]
    kernel = []
    for j in free:
        v = field.zeros(cols)
        v[j] = field(1)
        for i, c in enumerate(pivots):
            v[c] = field.reduce(-R[i, j])
        kernel.append(v)
    return Solution(x, kernel)


def kernel_basis(M, field):
    M = field.array(M)
    return solve_linear(M, field.zeros(M.shape[0]), field).kernel


def row_space(vectors, field, dim=None):
    """Nonzero rows of the RREF of the stacked vectors (canonical basis of their span)."""
    vectors = [np.asarray(v) for v in vectors]
    if not vectors:
        return field.zeros((0, dim or 0))
    R, pivots = rref(np.stack(vectors), field)
    return R[: len(pivots)]


def reduce_mod(v, basis_rref, field):
    """Canonical representative of ``v`` modulo the span of an RREF basis.

    Zeroes the pivot coordinates; this is also the lexicographically
    smallest element of the coset ``v + span``.
    """
    v = field.array(v).copy()
    for row in basis_rref:
        c = int(np.flatnonzero(row != 0)[0])
        if v[c] != 0:
            v = field.reduce(v - v[c] * row)
    return v


def inverse(M, field):
    M = field.array(M)
    n = M.shape[0]
    if M.shape != (n, n):
        raise DimensionError(f"cannot invert a non-square matrix of shape {M.shape}")
    R, pivots = rref(np.concatenate([M, field.eye(n)], axis=1), field)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return R[:, n:]
