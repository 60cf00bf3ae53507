import json

import numpy as np
import pytest

from helpers import nonabelian_samples, random_system
from leibniz_lab import GF, QQ, FormatError, abelian, sl2
from leibniz_lab.crossed import PreCrossedDatum
from leibniz_lab.formats import (
    algebra_from_json,
    algebra_to_json,
    dumps,
    matrix_from_json,
    matrix_to_json,
    read_system,
    system_from_json,
    system_to_json,
)


def test_algebra_round_trip():
    for F in (GF(5), QQ):
        a = sl2(F)
        obj = json.loads(dumps(algebra_to_json(a)))
        assert algebra_from_json(obj) == a
    assert algebra_to_json(sl2(GF(3)))["brackets"][0] == [1, 2, {"e3": 1}]


def test_system_round_trip():
    rng = np.random.default_rng(0)
    sample = [random_system(rng, 3, 2, 2) for _ in range(10)] + nonabelian_samples(rng, 3, 10)
    for d in sample:
        assert system_from_json(json.loads(dumps(system_to_json(d)))) == d


def test_rational_entries_stay_exact():
    M = QQ.array([["1/3", 2], [0, "-5/2"]])
    obj = matrix_to_json(M, QQ)
    assert obj["entries"] == [["1/3", 2], [0, "-5/2"]]
    assert (matrix_from_json(obj) == M).all()


def test_dumps_is_deterministic():
    d = random_system(np.random.default_rng(1), 3, 2, 1)
    assert dumps(system_to_json(d)) == dumps(system_to_json(d))
    assert dumps({"b": 1, "a": 2}).startswith('{\n  "a"')


def test_family_forms(tmp_path):
    F = GF(3)
    (tmp_path / "L.json").write_text(json.dumps({"field": 3, "dim": 1}))
    sysfile = tmp_path / "s.json"
    sysfile.write_text(json.dumps({"L": "L.json", "family": {"coflag": {"lambda": [1], "f": [[2]]}}}))
    d = read_system(str(sysfile))
    assert d.left.tolist() == [[[1]]] and d.f.tolist() == [[[2]]]
    tn = system_from_json({"field": 2, "family": {"tn": {"A": [[1, 0], [0, 0]], "gamma": [0, 1]}}})
    assert tn.g_dim == 2 and tn.L == abelian(1, GF(2))
    triv = system_from_json({"L": {"field": 3, "dim": 2}, "g_dim": 2, "family": "trivial"})
    assert triv == PreCrossedDatum.build(abelian(2, F), 2)


@pytest.mark.parametrize(
    "obj, where",
    [
        ({"L": {"field": 3, "dim": 1}, "g_dim": 1, "left": [[1, 4, {"g1": 1}]]}, "system.left[0][1]"),
        ({"L": {"field": 3, "dim": 1}, "g_dim": 1, "f": [[1, 1, {"g2": 1}]]}, "system.f[0][2]"),
        ({"L": {"field": 3, "dim": 1}, "g_dim": 1, "f": [[1, 1, {"g1": 0.5}]]}, "system.f[0][2]['g1']"),
        ({"L": {"field": 4, "dim": 1}, "g_dim": 1, "f": []}, "system.L.field"),
        ({"L": {"field": 3, "dim": 1}, "g_dim": 1, "f": [], "family": "trivial"}, "system"),
        ({"L": {"field": 3, "dim": 1}, "f": [[1, 1, {"g1": 1}]]}, "system"),
        ({"field": 3, "L": {"field": 5, "dim": 1}, "g_dim": 1, "f": []}, "system.L.field"),
    ],
)
def test_errors_carry_positions(obj, where):
    with pytest.raises(FormatError) as exc:
        system_from_json(obj)
    assert str(exc.value).startswith(where + ":")


def test_missing_file(tmp_path):
    with pytest.raises(FormatError):
        read_system(str(tmp_path / "nope.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    with pytest.raises(FormatError) as exc:
        read_system(str(bad))
    assert "invalid JSON" in str(exc.value)
