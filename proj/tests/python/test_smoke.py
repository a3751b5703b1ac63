"""Smoke tests for the python bindings."""

import pytest

import crownkit as ck


def test_perm_algebra():
    p = ck.Perm("(1 2 3)", 3)
    assert p.images == [1, 2, 0]
    assert (p * p.inverse()).is_identity()
    assert p.order() == 3
    assert str(ck.Perm("()", 4)) == "()"
    with pytest.raises(ValueError):
        ck.Perm("(1 1)", 3)


def test_group_construction():
    s4 = ck.group("Sym(4)")
    assert s4.order == 24
    assert s4.is_transitive()
    assert s4.is_soluble()
    assert not ck.group("Alt(5)").is_soluble()

    c4 = ck.group_from_generators(4, [[1, 2, 3, 0]], "C4")
    assert c4.order == 4
    assert c4.contains(ck.Perm("(1 3)(2 4)", 4))


def test_max_count():
    s4 = ck.group("Sym(4)")
    count, witnesses = ck.max_count(s4, [])
    assert count == 8
    assert len(witnesses) == 8

    count, _ = ck.max_count(s4, ["(1 2)"])
    assert count == 3


def test_block_systems():
    c4 = ck.group("Cyclic(4)")
    systems = ck.maximal_block_systems(c4)
    assert systems == [[[1, 3], [2, 4]]]
    assert len(ck.all_block_systems(c4)) == 3

    s4 = ck.group("Sym(4)")
    assert ck.maximal_block_systems(s4, 0, True) == []  # primitive


def test_crowns():
    v4 = ck.group("ElemAbelian(2,2)")
    records = ck.crowns(v4)
    assert len(records) == 1
    assert records[0]["delta"] == 2
    assert records[0]["R_order"] == 1
    assert records[0]["members"] == 3

    factors = ck.chief_factors(ck.group("Sym(4)"))
    assert [f["order"] for f in factors] == [4, 3, 2]


def test_isomorphism():
    assert ck.is_isomorphic(ck.group("CrownPower(Cyclic(2),2)"), ck.group("ElemAbelian(2,2)"))
    assert not ck.is_isomorphic(ck.group("Cyclic(4)"), ck.group("ElemAbelian(2,2)"))


def test_run_verify_small():
    out = ck.run_verify("Cyclic(2),ElemAbelian(2,2),Sym(4)", ["soluble", "ratio"])
    assert out["exit_code"] == 0
    assert out["violations"] == 0
    assert abs(out["max_ratio"] - 0.375) < 1e-9
    assert out["tsv"].startswith("group\tH\tindex\tmax_count")
