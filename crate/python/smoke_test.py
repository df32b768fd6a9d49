"""Smoke test for the qhbd Python bindings.

Install with `pip install -e crates/python --no-build-isolation`, then run
`python python/smoke_test.py` or `pytest python/smoke_test.py`.
"""

import json

import qhbd

CONFIG = """
field = "13"
q = "2"
seeds = [["1", "4"]]

[multiplicities]
"1" = 1
"4" = 1
"10" = 1
"""


def test_params():
    p = qhbd.Params("13", "2")
    assert p.e == 6
    assert qhbd.Params("rationals", "2").e is None


def test_orbit_and_algebra():
    p = qhbd.Params("13", "2")
    assert len(qhbd.orbit(p, ["1", "4"])) == 4
    v = qhbd.Algebra(p, [["1", "4"]])
    assert v.rank == 2
    assert v.basis_word_count(0) == 8 * len(v.tuples())
    assert all(r["passed"] for r in v.relation_checks())
    w = qhbd.Algebra(p, [["1", "4"]], flavor="D")
    assert all(r["passed"] for r in w.relation_checks())


def test_quotients():
    p = qhbd.Params("13", "2")
    m = {"1": 1, "4": 1, "10": 1}
    v = qhbd.CycloAlgebra(qhbd.Algebra(p, [["1", "4"]]), m)
    w = qhbd.CycloAlgebra(qhbd.Algebra(p, [["1", "4"]], flavor="D"), m)
    assert v.dim == 40
    fixed, minus = v.eigen_dims()
    assert fixed == w.graded_dims()
    assert sum(fixed.values()) + sum(minus.values()) == v.dim


def test_series():
    f, g = qhbd.series("rationals", 4)
    assert f == ["0", "2", "1", "1", "1"]
    assert g == ["0", "1/2", "-1/8", "0", "1/128"]


def test_verify():
    report = json.loads(qhbd.verify(CONFIG, ["series", "iso-b"]))
    assert report["passed"]
    assert [s["suite"] for s in report["sections"]] == ["series", "iso-b"]


def test_errors():
    for bad in [lambda: qhbd.Params("12", "2"), lambda: qhbd.Params("13", "1"),
                lambda: qhbd.verify(CONFIG, ["nope"])]:
        try:
            bad()
        except ValueError:
            continue
        raise AssertionError("expected ValueError")


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            fn()
            print(f"ok  {name}")
