"""Exit criteria.  Each test carries an ``acceptance`` marker; conftest prints one PASS/FAIL line per criterion."""

import itertools
import json
import random
import time

import numpy as np
import pytest

from helpers import leibniz_tensors, nonabelian_samples, random_system
from oracles import cohomologous_via, product_is_leibniz
from leibniz_lab import GF, abelian, crossed_product, find_witness, induce_from_section, quotient, sl2, validate
from leibniz_lab.algebra import is_leibniz, leibniz_defect, leibniz_defect_array, right_center, transport
from leibniz_lab.census import load_table
from leibniz_lab.classify import coflag_GHL2, compute_GHL2
from leibniz_lab.classify.enumerate import candidate_block, candidate_count, enumerate_crossed_systems
from leibniz_lab.classify.metabelian import TnTriple, tn_datum, tn_enumerate, tn_quotient
from leibniz_lab.cli import main
from leibniz_lab.crossed import (
    PreCrossedDatum,
    canonical_projection,
    d_matrix,
    default_section,
    delta_matrix,
    left_mult_matrix,
    product_tensor,
    product_tensor_array,
    right_mult_matrix,
    trivial_datum,
    valid_mask,
)
from leibniz_lab.census import run_census
from leibniz_lab.equivalence import psi_of_witness, verify_witness
from leibniz_lab.field import all_vectors

GF2, GF3, GF5, GF7 = GF(2), GF(3), GF(5), GF(7)


def crit(n, title):
    return pytest.mark.acceptance(id=str(n), title=title)


# -- 1 ---------------------------------------------------------------------------------


@crit(1, "validate <=> Leibniz crossed product, exhaustive over GF(2), dim L <= 2, g_dim <= 2")
def test_crossed_product_soundness():
    t0 = time.time()
    cases = checked = 0
    for m in (1, 2):
        for L in leibniz_tensors(2, m):
            for n in (1, 2):
                try:
                    total = candidate_count(L, n, cap=2**18)
                except Exception:
                    continue  # above the 2^18 bound of the criterion
                cases += 1
                for start in range(0, total, 1 << 15):
                    left, right, f, gb = candidate_block(L, n, start, min(start + (1 << 15), total))
                    ok = valid_mask(L.c, gb, left, right, f, GF2)
                    c = product_tensor_array(L.c, gb, left, right, f, GF2)
                    leib = ~np.any(leibniz_defect_array(c, GF2).reshape(len(c), -1) != 0, axis=1)
                    assert np.array_equal(ok, leib), f"mismatch for L={L.table()}, n={n}"
                    checked += len(c)
                # crossed_product itself on every valid candidate of small cases
                if total <= 1 << 12:
                    for s in enumerate_crossed_systems(L, n):
                        assert is_leibniz(crossed_product(s)) and not leibniz_defect(crossed_product(s))
    assert cases >= 3 and checked > 2**18
    # independent oracle on a random slice of the largest case
    rng = np.random.default_rng(11)
    L = abelian(1, GF2)
    idx = rng.integers(2**18, size=300)
    for i in idx:
        left, right, f, gb = (a[0] for a in candidate_block(L, 2, int(i), int(i) + 1))
        d = PreCrossedDatum(L, 2, left, right, f, gb)
        assert validate(d).valid == product_is_leibniz(d)
    assert time.time() - t0 <= 60


# -- 2 ---------------------------------------------------------------------------------


@crit(2, "induce_from_section round trip on 50 random GF(3) systems; psi_r transports exactly")
def test_induce_round_trip():
    t0 = time.time()
    rng = np.random.default_rng(2024)
    nontrivial = 0
    for _ in range(50):
        m, n = int(rng.integers(1, 3)), int(rng.integers(1, 3))
        d = random_system(rng, 3, m, n)
        E = crossed_product(d)
        pi = canonical_projection(d)
        shift = np.concatenate([GF3.random(rng, (n, m)), GF3.zeros((m, m))])
        s = GF3.reduce(default_section(pi, GF3) + shift)
        back = induce_from_section(E, pi, d.L, s).datum
        res = find_witness(d, back)
        assert res.related
        r = res.witness.r
        nontrivial += bool(np.any(r != 0))
        assert verify_witness(d, back, r)
        assert cohomologous_via(d, back, r.tolist())
        P = psi_of_witness(r, GF3)
        assert transport(product_tensor(d), P) == product_tensor(back)
    assert nontrivial >= 10
    assert time.time() - t0 <= 30


# -- 3 ---------------------------------------------------------------------------------


@crit(3, "co-flag classes over k_0, GF(3): 7 orbits matching k2_(a,0), k2_(0,c), k2_b")
def test_coflag_dim2():
    res = run_census("coflagdim2", GF3)
    assert res.orbit_count == 7
    assert res.groups == {"k2_{a,0}": 3, "k2_{0,c}": 2, "k2_b": 2}
    assert not res.mismatches
    params = sorted((r.label, tuple(sorted((k, str(v)) for k, v in r.params.items()))) for r in res.reports["coflagdim2"].representatives)
    assert params == sorted(
        [("k2_{a,c}", (("a", a), ("c", "0"))) for a in ("0", "1", "2")]
        + [("k2_{a,c}", (("a", "0"), ("c", c))) for c in ("1", "2")]
        + [("k2_b", (("b", b),)) for b in ("1", "2")]
    )


# -- 4 ---------------------------------------------------------------------------------


@crit(4, "six families over k^2_0, GF(2): 22 orbits as 2+1+16+1+1+1; enumeration agrees")
def test_six_families():
    t0 = time.time()
    res = run_census("coflag3_1", GF2)
    assert res.orbit_count == 22
    assert list(res.groups.values()) == [2, 1, 16, 1, 1, 1]
    assert list(res.groups) == ["HL2_1", "HL2_2", "HL2_3", "HL2_4", "HL2_5", "HL2_6"]
    L = abelian(2, GF2)
    full = compute_GHL2(L, 1, method="enumerate")
    assert full.orbit_count == 22
    assert all(r.datum.g_bracket.is_zero() for r in full.representatives)
    # the two representative lists are matched one to one by cohomology
    cf = [r.datum for r in res.reports["coflag3_1"].representatives]
    en = [r.datum for r in full.representatives]
    hits = [[i for i, c in enumerate(cf) if find_witness(e, c).related] for e in en]
    assert sorted(h[0] for h in hits) == list(range(22)) and all(len(h) == 1 for h in hits)
    assert time.time() - t0 <= 60


# -- 5 ---------------------------------------------------------------------------------


@crit(5, "three-dimensional L over GF(3): 7 orbits (2+3+2); co-flag pieces of size 81 and 18")
def test_calexpext():
    res = run_census("calexpext", GF3)
    assert res.orbit_count == 7
    assert res.groups == {"L_(a,0,0,0)": 2, "L_(0,0,c,0)": 3, "L^u_(0,0)": 2}
    assert res.extras == {"CF1_size": 81, "CF2_size": 18}
    assert not res.mismatches
    labels = {r.label for r in res.reports["calexpext"].representatives}
    assert labels == {"L_(a,b,c,d)", "L^u_(beta,gamma)"}


# -- 6 ---------------------------------------------------------------------------------


@crit(6, "sl(2) over GF(5) and GF(7) by k: one class, the direct product")
def test_sl2_single():
    t0 = time.time()
    for F in (GF5, GF7):
        rep = coflag_GHL2(sl2(F))
        assert rep.orbit_count == 1
        (only,) = rep.representatives
        assert only.datum == trivial_datum(sl2(F), 1)
        assert run_census("sl2-single", F).groups == {"direct product": 1}
    assert time.time() - t0 <= 10


# -- 7 ---------------------------------------------------------------------------------


@crit(7, "triple set for n = 2 over GF(2): membership <=> validate; orbits = abelian component")
def test_tn():
    t0 = time.time()
    members = {t.key() for t in tn_enumerate(2, GF2)}
    assert len(members) == 106
    for row in all_vectors(10, GF2):
        t = TnTriple(row[:4].reshape(2, 2), row[4:8].reshape(2, 2), row[8:], GF2)
        assert (t.key() in members) == validate(tn_datum(t)).valid
    q = tn_quotient(tn_enumerate(2, GF2))
    full = compute_GHL2(abelian(1, GF2), 2)
    (abelian_comp,) = [c for c in full.components if not c.key["g_bracket"]]
    assert q.orbit_count == abelian_comp.orbit_count == 61
    assert time.time() - t0 <= 30


# -- 8 ---------------------------------------------------------------------------------


def _remark_identities(d):
    """Per identity, whether it holds on every basis pair."""
    F, gb = d.field, d.g_bracket
    out = dict.fromkeys(("delta-delta", "delta-D", "right-center", "D-D"), True)

    def comb(mat_of, v):
        return F.reduce(sum(v[w] * mat_of(d, w) for w in range(d.m)))

    for x in range(d.m):
        Dx, Ex = delta_matrix(d, x), d_matrix(d, x)
        for y in range(d.m):
            Dy, Ey = delta_matrix(d, y), d_matrix(d, y)
            xy, fxy = d.L.c[x, y], d.f[x, y]
            out["delta-delta"] &= not np.any(F.reduce(Dy @ Dx - Dx @ Dy - comb(delta_matrix, xy) - right_mult_matrix(gb, fxy)))
            out["delta-D"] &= not np.any(F.reduce(Dy @ Ex - Ex @ Dy - comb(d_matrix, xy) - left_mult_matrix(gb, fxy)))
            out["D-D"] &= not np.any(F.reduce(Ex @ Ey + Ex @ Dy))
        # (Delta_x + D_x)(g) lies in the right center of g
        Zr = right_center(gb)
        out["right-center"] &= all(Zr.contains(col) for col in F.reduce(Dx + Ex).T)
    return out


@crit(8, "commutator identities on 200 random systems over GF(3)/GF(5)")
def test_remark_identities():
    rng = np.random.default_rng(8)
    sample = [random_system(rng, p, int(rng.integers(1, 3)), int(rng.integers(1, 3))) for p in (3, 5) for _ in range(50)]
    sample += nonabelian_samples(rng, 3, 100)
    assert len(sample) == 200 and all(validate(d).valid for d in sample)
    failures = dict.fromkeys(("delta-delta", "delta-D", "right-center", "D-D"), 0)
    for d in sample:
        for k, ok in _remark_identities(d).items():
            failures[k] += not ok
    print(f"identity failures over {len(sample)} systems: {failures}")
    # asserted exactly as stated; see the decisions ledger for the right-center identity
    assert failures == dict.fromkeys(failures, 0), failures


# -- 9 ---------------------------------------------------------------------------------


@crit(9, "relatedness is an equivalence on all systems of k_0 by k over GF(2)")
def test_equivalence_relation():
    systems = [s.datum for s in enumerate_crossed_systems(abelian(1, GF2), 1)]
    assert len(systems) == 5
    W = {}
    for (i, a), (j, b) in itertools.product(enumerate(systems), repeat=2):
        res = find_witness(a, b)
        W[i, j] = res
        if res.related:
            assert verify_witness(b, a, -res.witness.r)
            assert find_witness(b, a).related
    for i in range(len(systems)):
        assert W[i, i].related
    for i, j, k in itertools.product(range(len(systems)), repeat=3):
        if W[i, j].related and W[j, k].related:
            assert W[i, k].related

    def partition(data):
        q = quotient(data)
        return sorted(sorted(data[i].key() for i in orbit) for orbit in q.orbits)

    base = partition(systems)
    assert len(base) == 4
    for seed in range(10):
        shuffled = systems[:]
        random.Random(seed).shuffle(shuffled)
        assert partition(shuffled) == base


# -- 10 --------------------------------------------------------------------------------

CENSUS_RUNS = [("coflagdim2", "3"), ("coflag3_1", "2"), ("calexpext", "3"), ("sl2-single", "5"), ("tn", "2"), ("meta-dim3", "2")]


def _perturbations(entry):
    yield ("orbit_count",), entry["orbit_count"]
    for key in ("groups", "extras"):
        for name, value in entry.get(key, {}).items():
            yield (key, name), value


@crit(10, "census CLI exits 0 on the pinned runs and 1 on any perturbed expectation")
def test_census_cli(tmp_path, capsys):
    table = load_table()
    for preset, field in CENSUS_RUNS:
        assert main(["census", preset, "--field", field, "--summary"]) == 0, preset
        (entry,) = [e for e in table["entries"] if e["preset"] == preset and str(e["field"]) == field]
        for path, value in _perturbations(entry):
            bad = json.loads(json.dumps(table))
            (target,) = [e for e in bad["entries"] if e["preset"] == preset and str(e["field"]) == field]
            slot = target
            for k in path[:-1]:
                slot = slot[k]
            slot[path[-1]] = value + 1
            f = tmp_path / "expect.json"
            f.write_text(json.dumps(bad))
            code = main(["census", preset, "--field", field, "--summary", "--expect", str(f)])
            assert code == 1, (preset, path)
    capsys.readouterr()
