from itertools import permutations

import pytest

from glv.groupoid import cyclic_group, pair_groupoid
from glv.twocat import (
    Fin2Groupoid,
    delooping,
    find_quasi_inverse,
    from_groupoid,
    monoid_delooping,
    right_mult_equivalence,
    verify_2category,
    verify_2groupoid,
)


def s3_table():
    els = list(permutations((0, 1, 2)))
    name = {p: "".join(map(str, p)) for p in els}
    mul = {}
    for a in els:
        for b in els:
            c = tuple(a[b[i]] for i in range(3))  # a after b
            mul[(name[a], name[b])] = name[c]
    return tuple(name[p] for p in els), mul, name[(0, 1, 2)]


def test_delooping_cyclic_groups_verify():
    for n in range(1, 7):
        els, mul, unit = cyclic_group(n)
        g = delooping(els, mul, unit)
        assert not verify_2groupoid(g)


def test_delooping_rejects_nonabelian():
    els, mul, unit = s3_table()
    with pytest.raises(ValueError, match="interchange"):
        delooping(els, mul, unit)


def test_monoid_delooping_is_2category_not_2groupoid():
    els = ("0", "1")
    mul = {("0", "0"): "0", ("0", "1"): "0", ("1", "0"): "0", ("1", "1"): "1"}
    c = monoid_delooping(els, mul, "1")
    assert not verify_2category(c)
    # forcing an inversion table exposes the non-invertible cell "0"
    g = Fin2Groupoid(**{**c.__dict__}, inv2={"0": "0", "1": "1"})
    report = verify_2groupoid(g)
    assert any(v.law == "inverse law" and v.where == ("0",) for v in report)


def test_from_groupoid_is_2groupoid():
    g = from_groupoid(pair_groupoid(["a", "b", "c"]))
    assert not verify_2groupoid(g)


def test_broken_associativity_detected():
    els, mul, unit = cyclic_group(3)
    g = delooping(els, mul, unit)
    g.vcomp[("1", "1")] = "0"  # was "2"
    report = verify_2groupoid(g)
    assert report
    laws = {v.law for v in report}
    assert laws & {"associativity", "interchange", "inverse law"}


def test_strict_2group_from_extension_data():
    # arrows a group Q, cells pairs (arrow, K) with componentwise tables
    q_els, q_mul, q_unit = cyclic_group(2)
    k_els, k_mul, k_unit = cyclic_group(2)
    arrows = {f: ("*", "*") for f in q_els}
    cell = lambda f, a: f"{f};{a}"
    cells = {cell(f, a): (f, f) for f in q_els for a in k_els}
    comp1 = {(g, f): q_mul[(g, f)] for g in q_els for f in q_els}
    hcomp = {
        (cell(g, a), cell(f, b)): cell(q_mul[(g, f)], k_mul[(a, b)])
        for g in q_els
        for f in q_els
        for a in k_els
        for b in k_els
    }
    vcomp = {
        (cell(f, a), cell(f, b)): cell(f, k_mul[(a, b)])
        for f in q_els
        for a in k_els
        for b in k_els
    }
    k_inv = {a: next(b for b in k_els if k_mul[(a, b)] == k_unit) for a in k_els}
    g2 = Fin2Groupoid(
        objects=("*",),
        arrows=arrows,
        cells=cells,
        comp1=comp1,
        hcomp=hcomp,
        vcomp=vcomp,
        unit_arrow={"*": q_unit},
        unit_cell={f: cell(f, k_unit) for f in q_els},
        inv2={cell(f, a): cell(f, k_inv[a]) for f in q_els for a in k_els},
    )
    assert not verify_2groupoid(g2)
    w = right_mult_equivalence(g2, "1", "*")
    assert w.inverse == "1"
    assert set(w.nu) == set(g2.arrows)
    assert set(w.mu) == set(g2.arrows)


def test_find_quasi_inverse_in_delooping():
    els, mul, unit = cyclic_group(4)
    g = delooping(els, mul, unit)
    got = find_quasi_inverse(g, "id")
    assert got is not None and got[0] == "id"


def test_right_mult_equivalence_delooping():
    els, mul, unit = cyclic_group(3)
    g = delooping(els, mul, unit)
    w = right_mult_equivalence(g, "id", "*")
    assert w.f == "id"
