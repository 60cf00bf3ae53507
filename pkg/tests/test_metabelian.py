import numpy as np
import pytest

from leibniz_lab import GF, find_witness, validate
from leibniz_lab.classify import tn_algebra, tn_enumerate, tn_quotient, verify_metabelian_presentation
from leibniz_lab.classify.metabelian import TnTriple, is_tn_member, tn_datum, tn_related
from leibniz_lab.crossed import canonical_projection, crossed_product
from leibniz_lab.algebra import sl2
from leibniz_lab.errors import NotMorphismError


@pytest.mark.parametrize("p, members, classes", [(2, 106, 61), (3, 1065, 361)])
def test_counts(p, members, classes):
    triples = tn_enumerate(2, GF(p))
    assert len(triples) == members
    assert tn_quotient(triples).orbit_count == classes


def test_membership_conditions_by_hand():
    F = GF(3)
    rng = np.random.default_rng(0)
    for _ in range(300):
        A, B, g = F.random(rng, (2, 2)), F.random(rng, (2, 2)), F.random(rng, 2)
        t = TnTriple(A, B, g, F)
        want = not (F.reduce(A @ B + B @ B).any() or F.reduce(B @ A + B @ B).any() or F.reduce(B @ g).any())
        assert is_tn_member(t) == want == validate(tn_datum(t)).valid


def test_relatedness_agrees_with_witness_search():
    F = GF(2)
    triples = tn_enumerate(2, F)
    rng = np.random.default_rng(1)
    for i, j in rng.integers(len(triples), size=(300, 2)):
        s, t = triples[i], triples[j]
        assert tn_related(s, t) == find_witness(tn_datum(s), tn_datum(t)).related


def test_algebra_matches_crossed_product():
    F = GF(3)
    for t in tn_enumerate(1, F):
        E = crossed_product(tn_datum(t))  # basis (g1, e1)
        assert tn_algebra(t) == E  # E_1 = g, E_2 = e: same order
    for t in tn_enumerate(2, GF(2)):
        E = crossed_product(tn_datum(t))
        assert tn_algebra(t) == E


def test_metabelian_presentation():
    F = GF(2)
    for t in tn_enumerate(2, F)[:30]:
        d = tn_datum(t)
        assert verify_metabelian_presentation(crossed_product(d), canonical_projection(d))
    E = sl2(GF(3))
    with pytest.raises(NotMorphismError):
        verify_metabelian_presentation(E, np.array([[1, 0, 0]]))
