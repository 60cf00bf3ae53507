import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import nonabelian_samples, random_system
from oracles import cohomologous_via
from leibniz_lab import (
    GF,
    QQ,
    DimensionError,
    PreCrossedDatum,
    UnsupportedError,
    abelian,
    crossed_product,
    find_witness,
    psi_of_witness,
    quotient,
    trivial_datum,
    twist,
    validate,
    verify_witness,
)
from leibniz_lab.algebra import StructureTensor, is_morphism
from leibniz_lab.classify.enumerate import enumerate_crossed_systems
from leibniz_lab.equivalence import UnionFind


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([3, 5]), st.integers(1, 2), st.integers(1, 2), st.integers(0, 2**32 - 1))
def test_twist_is_cohomologous(p, m, n, seed):
    rng = np.random.default_rng(seed)
    F = GF(p)
    d = random_system(rng, p, m, n)
    r = F.random(rng, (n, m))
    t = twist(d, r)
    assert validate(t).valid
    assert cohomologous_via(t, d, r.tolist())
    assert verify_witness(t, d, r)
    res = find_witness(t, d)
    assert res.related and cohomologous_via(t, d, res.witness.r.tolist())
    assert is_morphism(psi_of_witness(res.witness, F), crossed_product(t), crossed_product(d))


def test_witness_for_non_abelian_bracket_uses_search():
    rng = np.random.default_rng(4)
    for d in nonabelian_samples(rng, 3, 20):
        r = GF(3).random(rng, (2, 1))
        res = find_witness(twist(d, r), d)
        assert res.related and res.method == "brute-force"


def test_different_brackets_are_unrelated():
    L = abelian(1, GF(3))
    gb = StructureTensor(np.array([[[0, 0], [1, 0]], [[0, 0], [0, 0]]]), GF(3))
    a, b = trivial_datum(L, 2), trivial_datum(L, 2, gb)
    res = find_witness(a, b)
    assert not res.related and res.method == "gate"


def test_unrelated_cocycles():
    # over k_0 by k: f = 0 and f = 1 with zero actions are distinct classes
    L = abelian(1, GF(3))
    a = trivial_datum(L, 1)
    b = a.replace(f=np.array([[[1]]]))
    assert not find_witness(a, b).related


def test_rationals_with_abelian_bracket():
    L = abelian(1, QQ)
    a = PreCrossedDatum.build(L, 1, left=QQ.array([[[1]]]), right=QQ.array([[[-1]]]))
    r = QQ.array([["1/2"]])
    res = find_witness(twist(a, r), a)
    assert res.related and res.method == "linear-solve"


def test_rationals_with_non_abelian_bracket_unsupported():
    L = abelian(1, QQ)
    gb = StructureTensor(QQ.array([[[0, 0], [1, 0]], [[0, 0], [0, 0]]]), QQ)
    d = trivial_datum(L, 2, gb)
    with pytest.raises(UnsupportedError):
        find_witness(d, d)


def test_context_mismatch():
    with pytest.raises(DimensionError):
        find_witness(trivial_datum(abelian(1, GF(3)), 1), trivial_datum(abelian(2, GF(3)), 1))


def test_union_find():
    uf = UnionFind(5)
    uf.union(0, 3)
    uf.union(3, 4)
    assert uf.find(4) == uf.find(0) != uf.find(1)


@pytest.mark.parametrize("p, valid, orbits", [(2, 5, 4), (3, 11, 7)])
def test_quotient_counts_over_k0(p, valid, orbits):
    systems = enumerate_crossed_systems(abelian(1, GF(p)), 1)
    assert len(systems) == valid
    q = quotient(systems)
    assert len(q.orbits) == orbits
    data = [s.datum for s in systems]
    # representative is the lexicographically smallest member; orbits sorted by it
    for orbit, rep in zip(q.orbits, q.representatives):
        assert rep == min(orbit, key=lambda i: data[i].key())
    keys = [data[r].key() for r in q.representatives]
    assert keys == sorted(keys)
    # orbit members are pairwise related, different orbits are not
    for a in q.orbits:
        for b in q.orbits:
            assert find_witness(data[a[0]], data[b[0]]).related == (a is b)


def test_quotient_is_order_invariant():
    systems = [s.datum for s in enumerate_crossed_systems(abelian(1, GF(3)), 1)]
    base = sorted(sorted(systems[i].key() for i in o) for o in quotient(systems).orbits)
    for seed in range(5):
        sh = systems[:]
        random.Random(seed).shuffle(sh)
        assert sorted(sorted(sh[i].key() for i in o) for o in quotient(sh).orbits) == base
