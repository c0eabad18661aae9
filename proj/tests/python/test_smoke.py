"""Smoke tests of the cosplice python module (the pybind11 binding)."""

import pytest

cosplice = pytest.importorskip("cosplice")


def test_closure_example():
    contexts = [("a", "c"), ("c", "d")]
    assert cosplice.apply("bracketed-closure", "abcd", contexts) == ["d", "ab", "abcd"]
    traced = cosplice.apply("bracketed-closure", "abcd", contexts, trace=True)
    assert traced[0]["word"] == "d"
    assert traced[0]["trace"] == [{"begin": 0, "end": 3, "left": "a", "right": "c"}]


def test_hairpin_example():
    log = cosplice.EnergyModel.log(1, 1, 0)
    lin = cosplice.EnergyModel.lin(1, 1, 0)
    assert cosplice.is_stable_hairpin("GAGUAAUC", log) == (2, 4)
    assert cosplice.is_stable_hairpin("GAGUAAUC", lin) is None
    assert cosplice.max_stem("UUAGGAGUAAUCCUAA") == 6


def test_lariat_step_example():
    words = cosplice.apply(
        "lariat-step", "AAUUGGGCUCC", [("AA", "GGG")],
        model=cosplice.EnergyModel.log(1, 1, 0), gap=2,
    )
    assert words == ["CUCC"]


def test_involution_is_antimorphic():
    theta = cosplice.wc_involution()
    assert theta("AAC") == "GUU"
    custom = cosplice.Involution(cosplice.Alphabet(["x", "y"]), {"x": "y", "y": "x"})
    assert custom("xxy") == "xyy"


def test_nfa_roundtrip():
    contexts = [("a", "c"), ("c", "d")]
    nfa = cosplice.closure_nfa("abcd", contexts)
    assert nfa.num_states == 5
    assert nfa.enumerate(4) == ["d", "ab", "abcd"]
    back = cosplice.nfa_from_json(nfa.to_json(contexts))
    assert back.enumerate(4) == ["d", "ab", "abcd"]
    assert "del:(a,c)" in nfa.to_dot(contexts)


def test_solvers():
    contexts = [("a", "c"), ("c", "d")]
    assert cosplice.verify_template("abcd", ["ab", "d"], contexts)["ok"]
    assert cosplice.verify_template("abcd", ["ac"], contexts) == {"ok": False, "missing": ["ac"]}
    assert cosplice.exact_template(["abcd", "ab", "d"], contexts)["template"] == "abcd"
    found = cosplice.search_template(["ab", "d"], contexts, 4)
    assert found["status"] == "found" and len(found["template"]) == 4


def test_scse_reduction():
    enc = cosplice.scse_encode(["ab"], 2)
    assert enc["bound"] == 6
    assert enc["words"] == ["#sa#e#sb#e"]
    res = cosplice.search_template(
        enc["words"], enc["contexts"], enc["bound"],
        alphabet=cosplice.Alphabet(enc["symbols"]),
    )
    assert res["template"] == "#sa#e#sb#e"
    assert cosplice.scse_brute(["ab", "ba"], 3)
    assert not cosplice.scse_brute(["ab", "ba"], 2)


def test_errors_surface_as_python_exceptions():
    with pytest.raises(ValueError):
        cosplice.apply("bracketed-step", "abx", [("a", "b")],
                       alphabet=cosplice.Alphabet(["a", "b"]))
    with pytest.raises(ValueError):
        cosplice.Alphabet(["a", "a"])
