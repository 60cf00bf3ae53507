"""
JSON files for algebras, crossed systems and matrices.

All indices in files are 1-based.  Tensors are written sparsely: an
algebra lists ``[i, j, {"e3": 1}]`` for ``[e_i, e_j] = e_3``; a system
lists ``[a, x, {"g1": 2}]`` style entries for each of its maps.  A
coefficient may also be given as a dense list.  Rationals are written
as ``"num/den"`` strings so nothing passes through floats.

An algebra file::

    {"field": 3, "dim": 3, "brackets": [[1, 3, {"e2": 1}], [3, 3, {"e1": 1}]]}

A system file embeds or references ``L`` and either lists raw maps
(``left``, ``right``, ``f``, ``g_bracket``) or names one family::

    {"field": 3, "L": "L.json", "g_dim": 1,
     "family": {"coflag": {"lambda": [0, 0, 1], "Lambda": [0, 0, 0], "f": [[0, 0, 0], ...]}}}
"""

from __future__ import annotations

import json
import os
import re

import numpy as np

from .algebra import LeibnizAlgebra, StructureTensor, abelian
from .crossed import PreCrossedDatum, trivial_datum
from .errors import FieldError, FormatError
from .field import Field, field_from_descriptor

RAW_KEYS = ("left", "right", "f", "g_bracket")
FAMILIES = ("coflag", "tn", "trivial")

_LABEL = re.compile(r"^\s*([a-zA-Z]*)(\d+)\s*$")


# -- reading -----------------------------------------------------------------


def _field(obj, where, default=None):
    if "field" not in obj:
        if default is None:
            raise FormatError("missing 'field'", where)
        return default
    try:
        fld = field_from_descriptor(obj["field"])
    except FieldError as exc:
        raise FormatError(str(exc), f"{where}.field") from None
    if default is not None and fld != default:
        raise FormatError(f"field {fld} conflicts with enclosing field {default}", f"{where}.field")
    return fld


def _int(value, where, lo, hi):
    if isinstance(value, bool) or not isinstance(value, int):
        raise FormatError(f"expected an integer index, got {value!r}", where)
    if not lo <= value <= hi:
        raise FormatError(f"index {value} outside {lo}..{hi}", where)
    return value


def _scalar(fld, value, where):
    if isinstance(value, float) or isinstance(value, bool):
        raise FormatError(f"coefficient {value!r} must be an integer or 'num/den' string", where)
    try:
        return fld(value)
    except (FieldError, TypeError, ValueError) as exc:
        raise FormatError(str(exc), where) from None


def _coefficients(fld, value, dim, prefix, where):
    """``{"e2": 1}`` / ``{"2": 1}`` / dense list -> vector of length ``dim``."""
    out = fld.zeros(dim)
    if isinstance(value, dict):
        for label, coeff in value.items():
            m = _LABEL.match(str(label))
            if not m or m.group(1) not in ("", prefix):
                raise FormatError(f"bad basis label {label!r} (expected {prefix}1..{prefix}{dim})", where)
            k = int(m.group(2))
            if not 1 <= k <= dim:
                raise FormatError(f"basis label {label!r} outside {prefix}1..{prefix}{dim}", where)
            out[k - 1] = fld.reduce(out[k - 1] + _scalar(fld, coeff, f"{where}[{label!r}]"))
    elif isinstance(value, list):
        if len(value) != dim:
            raise FormatError(f"coefficient list has length {len(value)}, expected {dim}", where)
        for k, coeff in enumerate(value):
            out[k] = _scalar(fld, coeff, f"{where}[{k}]")
    else:
        raise FormatError(f"expected a coefficient dict or list, got {type(value).__name__}", where)
    return out


def _sparse(fld, entries, dims, prefix, where):
    """Array of shape ``dims`` from ``[[i, j, coeffs], ...]`` entries."""
    out = fld.zeros(dims)
    if not isinstance(entries, list):
        raise FormatError("expected a list of [i, j, coefficients] entries", where)
    for t, entry in enumerate(entries):
        here = f"{where}[{t}]"
        if not isinstance(entry, list) or len(entry) != 3:
            raise FormatError("entry must be [i, j, coefficients]", here)
        i = _int(entry[0], f"{here}[0]", 1, dims[0])
        j = _int(entry[1], f"{here}[1]", 1, dims[1])
        vec = _coefficients(fld, entry[2], dims[2], prefix, f"{here}[2]")
        out[i - 1, j - 1] = fld.reduce(out[i - 1, j - 1] + vec)
    return out


def _load_json(path, where=None):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}", where) from None
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON in {path}: {exc.msg} (line {exc.lineno}, column {exc.colno})") from None


def algebra_from_json(obj, field=None, where="algebra"):
    if not isinstance(obj, dict):
        raise FormatError("algebra must be a JSON object", where)
    fld = _field(obj, where, field)
    if "dim" not in obj:
        raise FormatError("missing 'dim'", where)
    dim = _int(obj["dim"], f"{where}.dim", 0, 10**6)
    c = _sparse(fld, obj.get("brackets", []), (dim, dim, dim), "e", f"{where}.brackets")
    return LeibnizAlgebra(c, fld)


def _matrix(fld, value, shape, where):
    if not isinstance(value, list) or len(value) != shape[0]:
        raise FormatError(f"expected {shape[0]} rows", where)
    out = fld.zeros(shape)
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != shape[1]:
            raise FormatError(f"expected a row of length {shape[1]}", f"{where}[{i}]")
        for j, v in enumerate(row):
            out[i, j] = _scalar(fld, v, f"{where}[{i}][{j}]")
    return out


def _vector(fld, value, dim, where):
    if not isinstance(value, list) or len(value) != dim:
        raise FormatError(f"expected a list of length {dim}", where)
    return np.array([_scalar(fld, v, f"{where}[{k}]") for k, v in enumerate(value)], dtype=fld.dtype).reshape(dim)


def _family_datum(L, g_dim, family, where):
    from .classify.coflag import CoflagDatum, coflag_to_datum
    from .classify.metabelian import TnTriple, tn_datum

    fld = L.field
    if family == "trivial" or family == {"trivial": {}}:
        if g_dim is None:
            raise FormatError("the trivial family needs 'g_dim'", where)
        return trivial_datum(L, g_dim)
    if not isinstance(family, dict) or len(family) != 1:
        raise FormatError(f"family must be one of {FAMILIES}", where)
    (name, params), = family.items()
    here = f"{where}.{name}"
    if name == "coflag":
        m = L.dim
        if g_dim not in (None, 1):
            raise FormatError("co-flag data have g_dim 1", here)
        lam = _vector(fld, params.get("lambda", [0] * m), m, f"{here}.lambda")
        Lam = _vector(fld, params.get("Lambda", [0] * m), m, f"{here}.Lambda")
        f = _matrix(fld, params.get("f", [[0] * m for _ in range(m)]), (m, m), f"{here}.f")
        return coflag_to_datum(CoflagDatum(L, lam, Lam, f))
    if name == "tn":
        if L.dim != 1 or not L.is_zero():
            raise FormatError("the tn family lives over the 1-dimensional abelian algebra", here)
        if "A" not in params:
            raise FormatError("missing 'A'", here)
        n = len(params["A"])
        if g_dim not in (None, n):
            raise FormatError(f"g_dim {g_dim} does not match the {n} x {n} matrices", here)
        A = _matrix(fld, params["A"], (n, n), f"{here}.A")
        B = _matrix(fld, params.get("B", [[0] * n for _ in range(n)]), (n, n), f"{here}.B")
        gamma = _vector(fld, params.get("gamma", [0] * n), n, f"{here}.gamma")
        return tn_datum(TnTriple(A, B, gamma, fld))
    raise FormatError(f"unknown family {name!r} (expected one of {FAMILIES})", where)


def system_from_json(obj, base_dir=".", where="system"):
    """Pre-crossed datum described by a system file (not validated)."""
    if not isinstance(obj, dict):
        raise FormatError("system must be a JSON object", where)
    fld = _field(obj, where) if "field" in obj else None
    L_obj = obj.get("L")
    if L_obj is None:
        if "family" in obj and isinstance(obj["family"], dict) and "tn" in obj["family"]:
            if fld is None:
                raise FormatError("missing 'field'", where)
            L = abelian(1, fld)
        else:
            raise FormatError("missing 'L'", where)
    else:
        if isinstance(L_obj, str):
            path = os.path.join(base_dir, L_obj)
            L_obj = _load_json(path, f"{where}.L")
        L = algebra_from_json(L_obj, fld, f"{where}.L")
    fld = L.field
    g_dim = obj.get("g_dim")
    if g_dim is not None:
        g_dim = _int(g_dim, f"{where}.g_dim", 0, 10**6)
    raw = [k for k in RAW_KEYS if k in obj]
    if "family" in obj:
        if raw:
            raise FormatError(f"give either raw maps or a family, not both (found {raw})", where)
        return _family_datum(L, g_dim, obj["family"], f"{where}.family")
    if not raw:
        raise FormatError("no maps given: list some of left/right/f/g_bracket or name a family", where)
    if g_dim is None:
        raise FormatError("missing 'g_dim'", where)
    m, n = L.dim, g_dim
    left = _sparse(fld, obj.get("left", []), (n, m, n), "g", f"{where}.left")
    right = _sparse(fld, obj.get("right", []), (m, n, n), "g", f"{where}.right")
    f = _sparse(fld, obj.get("f", []), (m, m, n), "g", f"{where}.f")
    gb = _sparse(fld, obj.get("g_bracket", []), (n, n, n), "g", f"{where}.g_bracket")
    return PreCrossedDatum(L, n, left, right, f, StructureTensor(gb, fld))


def matrix_from_json(obj, field=None, where="matrix"):
    if isinstance(obj, list):
        obj = {"entries": obj}
    if not isinstance(obj, dict) or "entries" not in obj:
        raise FormatError("matrix must be an object with 'entries' (or a bare list of rows)", where)
    fld = _field(obj, where, field)
    entries = obj["entries"]
    rows = obj.get("rows", len(entries) if isinstance(entries, list) else 0)
    cols = obj.get("cols", len(entries[0]) if isinstance(entries, list) and entries else 0)
    return _matrix(fld, entries, (rows, cols), f"{where}.entries")


def read_algebra(path, field=None):
    return algebra_from_json(_load_json(path), field, os.path.basename(path))


def read_system(path):
    return system_from_json(_load_json(path), os.path.dirname(os.path.abspath(path)), os.path.basename(path))


def read_matrix(path, field=None):
    return matrix_from_json(_load_json(path), field, os.path.basename(path))


# -- writing ---------------------------------------------------------------------


def field_descriptor(fld: Field):
    return "Q" if fld.modulus is None else fld.modulus


def _sparse_entries(fld, arr, prefix):
    out = []
    for i in range(arr.shape[0]):
        for j in range(arr.shape[1]):
            nz = np.flatnonzero(arr[i, j] != 0)
            if len(nz):
                out.append([i + 1, j + 1, {f"{prefix}{k + 1}": fld.format(arr[i, j, k]) for k in nz}])
    return out


def matrix_to_json(M, fld):
    M = np.asarray(M)
    return {
        "field": field_descriptor(fld),
        "rows": int(M.shape[0]),
        "cols": int(M.shape[1]) if M.ndim == 2 else 0,
        "entries": [[fld.format(v) for v in row] for row in M],
    }


def vector_to_json(v, fld):
    return [fld.format(x) for x in np.asarray(v)]


def algebra_to_json(a: StructureTensor):
    return {
        "field": field_descriptor(a.field),
        "dim": a.dim,
        "brackets": _sparse_entries(a.field, a.c, "e"),
    }


def system_to_json(d: PreCrossedDatum):
    fld = d.field
    return {
        "field": field_descriptor(fld),
        "L": algebra_to_json(d.L),
        "g_dim": d.g_dim,
        "left": _sparse_entries(fld, d.left, "g"),
        "right": _sparse_entries(fld, d.right, "g"),
        "f": _sparse_entries(fld, d.f, "g"),
        "g_bracket": _sparse_entries(fld, d.g_bracket.c, "g"),
    }


def dumps(obj):
    """Deterministic JSON text (stable key order, trailing newline)."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_json(obj, path):
    with open(path, "w") as fh:
        fh.write(dumps(obj))

