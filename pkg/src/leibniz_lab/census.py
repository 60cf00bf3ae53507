"""
Named classification runs with pinned expected counts.

Each preset computes a report, sorts its representatives into the
named pieces of the expected decomposition and compares the counts with
the versioned table in ``data/census_expected.json``.  A table entry
carries a provenance tag saying where the number comes from.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field as dc_field
from importlib import resources

from .algebra import abelian, sl2
from .classify.coflag import coflag_GHL2
from .classify.families import FamilyMismatch, calexpext_L, COFLAG3_1_GROUPS, MATCHERS
from .classify.metabelian import tn_enumerate, tn_quotient, verify_metabelian_presentation
from .crossed import canonical_projection
from .errors import LeibnizLabError
from .field import Field
from .formats import field_descriptor

TABLE_RESOURCE = "census_expected.json"


class UnknownPreset(LeibnizLabError, ValueError):
    pass


@dataclass
class CensusResult:
    preset: str
    field: Field
    reports: dict  # name -> ClassificationReport
    groups: dict
    extras: dict
    expected: dict | None
    mismatches: list = dc_field(default_factory=list)

    @property
    def orbit_count(self):
        return sum(r.orbit_count for r in self.reports.values())

    @property
    def status(self):
        if self.mismatches:
            return "mismatch"
        return "match" if self.expected is not None else "unpinned"

    @property
    def ok(self):
        return not self.mismatches

    def to_dict(self, full=True):
        out = {
            "preset": self.preset,
            "field": field_descriptor(self.field),
            "orbit_count": self.orbit_count,
            "groups": self.groups,
            "extras": self.extras,
            "expected": self.expected,
            "status": self.status,
            "mismatches": self.mismatches,
        }
        if full:
            out["reports"] = {name: r.to_dict() for name, r in self.reports.items()}
        return out


def load_table(path=None):
    if path is None:
        text = resources.files("leibniz_lab").joinpath("data").joinpath(TABLE_RESOURCE).read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    return json.loads(text)


def expected_entry(table, preset, field):
    for entry in table.get("entries", []):
        if entry["preset"] == preset and entry["field"] == field_descriptor(field):
            return entry
    return None


def _grouped(report, matcher, order, mismatches):
    counts = Counter()
    for rep in report.representatives:
        try:
            m = matcher(rep.datum)
        except FamilyMismatch as exc:
            mismatches.append(f"unmatched representative: {exc}")
            continue
        rep.label, rep.params = m.family, m.params
        counts[m.group] += 1
    return {g: counts.get(g, 0) for g in order} | {g: n for g, n in counts.items() if g not in order}


def _coflag_preset(name, L_of, order, extras_of=None):
    def run(field, cap, jobs, mismatches):
        report = coflag_GHL2(L_of(field), cap)
        groups = _grouped(report, MATCHERS[name], order, mismatches)
        extras = extras_of(report) if extras_of else {}
        return {name: report}, groups, extras

    return run


def _calexpext_extras(report):
    # the Lambda = 0 and Lambda != 0 pieces of the co-flag data, before the quotient
    cf1 = sum(c.valid_count for c in report.components if not any(v != 0 for v in c.key["Lambda"]))
    cf2 = sum(c.valid_count for c in report.components if any(v != 0 for v in c.key["Lambda"]))
    return {"CF1_size": cf1, "CF2_size": cf2}


def _tn_run(field, cap, jobs, mismatches, n=2):
    triples = tn_enumerate(n, field, cap)
    report = tn_quotient(triples)
    return {"tn": report}, {}, {"members": len(triples)}


def _metabelian_failures(report, mismatches):
    for rep in report.representatives:
        if not verify_metabelian_presentation(rep.product, canonical_projection(rep.datum)):
            mismatches.append(f"representative is not metabelian: {rep.product.table()}")


def _meta_dim3_run(field, cap, jobs, mismatches):
    tn = tn_quotient(tn_enumerate(2, field, cap))
    cf = coflag_GHL2(abelian(2, field), cap)
    for r in (tn, cf):
        _metabelian_failures(r, mismatches)
    groups = {"tn(2)": tn.orbit_count, "coflag(k2_0)": cf.orbit_count}
    return {"tn(2)": tn, "coflag(k2_0)": cf}, groups, {}


PRESETS = {
    "coflagdim2": _coflag_preset("coflagdim2", lambda f: abelian(1, f), ["k2_{a,0}", "k2_{0,c}", "k2_b"]),
    "coflag3_1": _coflag_preset("coflag3_1", lambda f: abelian(2, f), list(COFLAG3_1_GROUPS)),
    "calexpext": _coflag_preset(
        "calexpext", calexpext_L, ["L_(a,0,0,0)", "L_(0,0,c,0)", "L^u_(0,0)"], _calexpext_extras
    ),
    "sl2-single": _coflag_preset("sl2-single", sl2, ["direct product"]),
    "tn": _tn_run,
    "meta-dim3": _meta_dim3_run,
}


def _compare(result: CensusResult):
    exp = result.expected
    if exp is None:
        return
    if "orbit_count" in exp and exp["orbit_count"] != result.orbit_count:
        result.mismatches.append(f"orbit_count: expected {exp['orbit_count']}, computed {result.orbit_count}")
    for key in ("groups", "extras"):
        for name, want in exp.get(key, {}).items():
            got = getattr(result, key).get(name)
            if got != want:
                result.mismatches.append(f"{key}[{name}]: expected {want}, computed {got}")


def run_census(preset, field: Field, cap=None, jobs=1, table=None) -> CensusResult:
    if preset not in PRESETS:
        raise UnknownPreset(f"unknown preset {preset!r}; choose from {', '.join(PRESETS)}")
    table = load_table() if table is None else table
    mismatches = []
    reports, groups, extras = PRESETS[preset](field, cap, jobs, mismatches)
    result = CensusResult(preset, field, reports, groups, extras, expected_entry(table, preset, field), mismatches)
    _compare(result)
    return result


def bar_data(result: CensusResult):
    """(labels, counts) for plotting: named groups when present, else component sizes."""
    if result.groups:
        return list(result.groups), list(result.groups.values())
    (report,) = result.reports.values()
    return [f"C{i + 1}" for i in range(len(report.components))], report.component_sizes()
