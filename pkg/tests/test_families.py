import pytest

from leibniz_lab import GF, abelian, is_leibniz
from leibniz_lab.classify.families import (
    FamilyMismatch,
    L_abcd,
    L_u,
    calexpext_L,
    k2_ac,
    k2_b,
    k3_1,
    k3_3,
    match_coflagdim2,
    match_sl2_single,
)
from leibniz_lab.crossed import PreCrossedDatum, trivial_datum


def test_family_algebras_are_leibniz():
    F = GF(5)
    assert is_leibniz(k2_ac(2, 0, F)) and is_leibniz(k2_b(3, F))
    assert is_leibniz(calexpext_L(F))
    for a in range(5):
        assert is_leibniz(L_abcd(a, 0, 0, 0, F))
        assert is_leibniz(L_abcd(0, 0, a, 0, F))
    for u in (1, 2):
        assert is_leibniz(L_u(u, 0, 0, F))
    assert is_leibniz(k3_1(1, 2, F)) and is_leibniz(k3_3(1, 2, 3, 4, F))


def test_kernel_line_is_an_ideal():
    # with {f4, f3} = a f4 the line k f4 is an ideal, so f1..f3 span a quotient isomorphic to L;
    # the reading {f4, f3} = a f1 would leave the kernel line
    F = GF(3)
    for a in (1, 2):
        c = L_abcd(a, 0, 0, 0, F).c
        assert not c[3, :, :3].any() and not c[:, 3, :3].any()
        assert (c[:3, :3, :3] == calexpext_L(F).c).all()


def test_matchers():
    F = GF(3)
    L = abelian(1, F)
    d = PreCrossedDatum.build(L, 1, left=F.array([[[2]]]))  # g <| e = 2 g: {f1, f2} = 2 f1
    m = match_coflagdim2(d)
    assert (m.family, m.group, m.params) == ("k2_{a,c}", "k2_{a,0}", {"a": 2, "c": 0})
    d = PreCrossedDatum.build(L, 1, left=F.array([[[1]]]), right=F.array([[[2]]]))
    assert match_coflagdim2(d).family == "k2_b"
    with pytest.raises(FamilyMismatch):
        match_sl2_single(trivial_datum(abelian(3, F), 1))
