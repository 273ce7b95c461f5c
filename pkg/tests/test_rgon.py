import pytest
from hypothesis import given, settings, strategies as st

import oracles
from structconst.errors import DecompositionError, ParityError, PreconditionError, TriangleInequalityError
from structconst.hecke import hecke_nonvanishing
from structconst.rgon import (
    hecke_adjoint_reduction,
    saturation_factor,
    special_rgon,
    special_rgon_crosscheck,
    tree_rgon,
    weak_triangle_check,
)
from structconst.rootdata import WeightVec, is_allowed_fundamental, root_datum


def test_tree_examples():
    p = tree_rgon([2, 2, 2])
    assert (p.l, p.m, p.legs) == (1, 2, (1, 1, 1))
    assert p.check()
    with pytest.raises(ParityError):
        tree_rgon([1, 1, 1])
    with pytest.raises(TriangleInequalityError):
        tree_rgon([5, 1, 1])
    # both conditions fail: the triangle inequality is reported
    with pytest.raises(TriangleInequalityError):
        tree_rgon([6, 1, 2])
    with pytest.raises(PreconditionError):
        tree_rgon([])
    assert tree_rgon([0]).legs == (0, 0, 0)
    assert tree_rgon([3, 3]).to_json()["legs"] == [3, 0, 0]


@settings(max_examples=300)
@given(st.lists(st.integers(0, 20), min_size=1, max_size=8))
def test_tree_against_rule(u):
    total = sum(u)
    if any(2 * x > total for x in u):
        with pytest.raises(TriangleInequalityError):
            tree_rgon(u)
    elif total % 2:
        with pytest.raises(ParityError):
            tree_rgon(u)
    else:
        p = tree_rgon(u)
        assert p.check()
        assert (p.l, (p.A, p.B, p.C)) == oracles.tripod_by_rule(u)
        assert sum(p.legs) == total // 2 and min(p.legs) >= 0


def _allowed_multiple(label, a, index=None):
    d = root_datum(label)
    if index is None:
        index = next(i for i in range(1, d.rank + 1) if is_allowed_fundamental(d, i, 0))
    w = d.fundamental_coweights[index - 1]
    return [WeightVec(tuple(x * c for c in w), d) for x in a]


def test_special_rgon_examples():
    mus = _allowed_multiple("C2", [2, 2, 2])
    wit = special_rgon(mus)
    assert wit.check() and wit.per_factor[0].legs == (1, 1, 1)
    assert wit.allowed == (1,) and wit.factor_types == ("B2",)
    assert hecke_nonvanishing(mus, WeightVec((0, 0), mus[0].datum))
    # degenerate 2-gon: a segment traversed twice
    gl2 = root_datum("A1")
    two = special_rgon([gl2.parse("3,0"), gl2.parse("0,-3")])
    assert two.per_factor[0].legs == (3, 0, 0)
    c2 = root_datum("C2")
    with pytest.raises(DecompositionError):
        special_rgon([c2.parse("1,1"), c2.parse("1,1")])
    with pytest.raises(DecompositionError):
        special_rgon([c2.parse("1,0"), c2.parse("1,0")], allowed_choice=[2])
    with pytest.raises(DecompositionError):
        g2 = root_datum("G2")
        special_rgon([g2.parse("w1+w1"), g2.parse("w1+w1")])
    with pytest.raises(TriangleInequalityError):
        special_rgon(_allowed_multiple("C2", [4, 1, 1]))
    with pytest.raises(PreconditionError):
        special_rgon(_allowed_multiple("C2", [1, 1, 1]))


def test_crosscheck_reports():
    rep = special_rgon_crosscheck(_allowed_multiple("C2", [1, 1]))
    assert rep["status"] == "PASS" and rep["hecke"] is True
    assert rep["witness"]["per_factor"][0]["legs"] == [1, 0, 0]


@settings(max_examples=40)
@given(
    st.sampled_from([("A1", None), ("A3", None), ("B2", None), ("C2", None), ("B3", None), ("C3", 1), ("C3", 3), ("D4", 1), ("D4", 3)]),
    st.lists(st.integers(0, 2), min_size=2, max_size=3),
)
def test_certificate_implies_nonvanishing(case, a):
    label, index = case
    mus = _allowed_multiple(label, a, index)
    d = mus[0].datum
    try:
        wit = special_rgon(mus)
    except (ParityError, TriangleInequalityError, PreconditionError):
        return
    assert wit.check()
    assert hecke_nonvanishing(mus, WeightVec(d.zero(), d))


def test_weak_triangle():
    gl2 = root_datum("A1")
    mus = [gl2.parse("1,0")] * 2
    # the central part makes the uncentered test fail; the adjoint images pass
    assert not weak_triangle_check(mus)
    assert weak_triangle_check(mus, centered=True)
    c2 = root_datum("C2")
    assert weak_triangle_check([c2.parse("1,1")] * 3)
    assert not weak_triangle_check([c2.parse("2,0"), c2.parse("1,0"), c2.parse("0,0")])
    with pytest.raises(PreconditionError):
        weak_triangle_check([c2.parse("0,1")])


def test_adjoint_reduction():
    gl2 = root_datum("A1")
    rep = hecke_adjoint_reduction([gl2.parse("1,0")] * 2, gl2.parse("1,1"))
    assert (rep["G"], rep["G_ad"], rep["status"]) == (True, True, "PASS")
    assert rep["lambda_bar"] == [0]
    d = root_datum("A2")
    mus = [d.parse("2,1,0"), d.parse("1,1,0")]
    for lam in ["3,2,0", "2,2,1", "3,1,1"]:
        base = hecke_adjoint_reduction(mus, d.parse(lam))
        # shifting everything by a central cocharacter changes nothing downstairs
        shifted = hecke_adjoint_reduction([d.parse("3,2,1"), d.parse("1,1,0")], d.parse(",".join(str(int(x) + 1) for x in lam.split(","))))
        assert base["status"] == shifted["status"] == "PASS"
        assert base["G"] == shifted["G"]
        assert base["mu_bar"] == shifted["mu_bar"]
    with pytest.raises(PreconditionError):
        hecke_adjoint_reduction([gl2.parse("1,0")], gl2.parse("0,0"))


def test_saturation_factors():
    assert [saturation_factor(x) for x in ("GL3", "GL_1", "GSp4", "GSp6", "E7")] == [1, 1, 2, 2, 12]
    assert [saturation_factor(x) for x in ("GSp3", "SO5", "E8", "G2")] == [None] * 4
    assert saturation_factor(root_datum("A2")) == 1
    assert saturation_factor(root_datum("E7")) == 12
    assert saturation_factor(root_datum("B2")) is None
