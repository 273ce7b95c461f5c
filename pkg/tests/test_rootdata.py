import json
from fractions import Fraction
from importlib import resources

import pytest
from hypothesis import given, strategies as st

import oracles
from structconst.errors import DatumMismatchError, PreconditionError
from structconst.repring import weight_system
from structconst.rootdata import (
    WeightVec,
    adjoint_group,
    allowed_fundamental_indices,
    cartan_matrix,
    dominance_leq,
    dominant_representative,
    dual_coweight,
    is_allowed_fundamental,
    is_dominant,
    is_minuscule,
    is_quasi_minuscule,
    minuscule_fundamental_indices,
    pairing,
    project_to_adjoint,
    root_count,
    root_datum,
    sum_of_minuscules_decomposition,
)

LABELS = ["A1", "A2", "A3", "A4", "B2", "C2", "B3", "C3", "D4", "D5", "D6", "G2", "F4", "E6", "E7", "E8"]
SMALL = ["A1", "A2", "A3", "B2", "C2", "B3", "C3", "D4", "G2"]


@pytest.mark.parametrize("label", LABELS)
def test_datum_invariants(label):
    d = root_datum(label)
    n = len(d.simple_roots)
    cartan = tuple(tuple(d.pair(d.simple_roots[j], d.simple_coroots[i]) for j in range(n)) for i in range(n))
    assert cartan == cartan_matrix(label) or cartan == tuple(zip(*cartan_matrix(label)))
    for c in d.simple_coroots:
        assert d.pair(d.two_rho, c) == 2
    roots = set(d.roots)
    assert all(tuple(-x for x in a) in roots for a in roots)
    assert len(d.roots) == root_count(label)
    for a, w in zip(d.simple_roots, d.fundamental_coweights):
        assert d.pair(a, w) == 1


def test_pairing_examples():
    d = root_datum("D6")
    w6 = d.parse("w6")
    assert pairing(d.fundamental_weights[2], w6 * 2) == 3
    assert pairing(d.simple_roots[0], d.parse("w1")) == 1
    assert pairing(d.simple_roots[3], WeightVec(d.zero(), d)) == 0
    with pytest.raises(DatumMismatchError):
        pairing((1, 0), w6)


def test_weightvec_rejects_mixed_data():
    a, b = root_datum("A1").parse("1,0"), root_datum("C2").parse("1,0")
    with pytest.raises(DatumMismatchError):
        a + b


def test_dominance_examples():
    gl3, gl2 = root_datum("A2"), root_datum("A1")
    assert is_dominant(gl3.parse("2,1,0"))
    assert not is_dominant(gl3.parse("0,1,0"))
    assert is_dominant(gl3.parse("0,0,0"))
    assert dominance_leq(gl3.parse("1,1,1"), gl3.parse("2,1,0"))
    assert not dominance_leq(gl2.parse("2,0"), gl2.parse("1,1"))
    assert not dominance_leq(gl2.parse("1,0"), gl2.parse("1,1"))
    with pytest.raises(PreconditionError):
        dominance_leq(gl3.parse("0,1,0"), gl3.parse("2,1,0"))


def test_dominant_representative():
    gl3, c2 = root_datum("A2"), root_datum("C2")
    assert dominant_representative(gl3.parse("0,2,1")).coords == (2, 1, 0)
    assert dominant_representative(c2.parse("-1,-1")).coords == (1, 1)
    assert (1, 1) in oracles.brute_orbit(c2, (-1, -1))
    v = gl3.parse("3,1,1")
    assert dominant_representative(v) == v


def test_duals():
    assert dual_coweight(root_datum("A1").parse("1,0")).coords == (0, -1)
    for v in ["1,0", "1,1", "3,1"]:
        c2 = root_datum("C2").parse(v)
        assert dual_coweight(c2) == c2
        b2 = root_datum("B2").parse(v.replace("3,1", "2,1"))
        assert dual_coweight(b2) == b2
    w6 = root_datum("D6").parse("w6")
    assert dual_coweight(w6) == w6
    with pytest.raises(PreconditionError):
        dual_coweight(root_datum("A2").parse("0,1,0"))


def test_minuscule_and_quasi():
    for n in (1, 2, 3):
        d = root_datum(f"A{n}")
        assert is_minuscule(WeightVec((1,) + (0,) * n, d))
    c2 = root_datum("C2")
    assert not is_minuscule(c2.parse("1,1"))
    assert is_minuscule(c2.parse("0,0"))
    assert is_quasi_minuscule(c2.parse("1,1"))
    assert not is_quasi_minuscule(c2.parse("1,0"))
    assert is_quasi_minuscule(root_datum("A2").parse("1,0,-1"))
    with pytest.raises(PreconditionError):
        is_quasi_minuscule(c2.parse("0,0"))


def test_allowed_examples():
    assert is_allowed_fundamental(adjoint_group("C4"), 4)
    assert not is_allowed_fundamental(adjoint_group("B3"), 2)
    assert not any(is_allowed_fundamental(adjoint_group("E8"), i) for i in range(1, 9))
    with pytest.raises(IndexError):
        is_allowed_fundamental(adjoint_group("B3"), 4)


@pytest.mark.parametrize("h", ["B2", "B3", "B4", "B5", "B6", "C2", "C3", "C4", "C5", "C6",
                               "D4", "D5", "D6", "E6", "E7", "E8", "F4", "G2"])
def test_classification_matches_table(h):
    d = adjoint_group(h)
    expected = oracles.table_from_rules(h)
    assert allowed_fundamental_indices(d) == expected["allowed"]
    assert minuscule_fundamental_indices(d) == expected["minuscule"]
    shipped = json.loads(resources.files("structconst").joinpath("data/allowed_table.json").read_text())
    assert shipped["expanded"][h] == expected
    if len(expected["minuscule"]) == 1:
        assert expected["minuscule"][0] in expected["allowed"]


def test_sum_of_minuscules():
    gl3 = root_datum("A2")
    parts = sum_of_minuscules_decomposition(gl3.parse("2,1,0"))
    assert sorted((v.coords, k) for v, k in parts) == [((1, 0, 0), 1), ((1, 1, 0), 1)]
    assert sum_of_minuscules_decomposition(root_datum("C2").parse("1,1")) is None
    w = root_datum("D4").parse("w3")
    assert [(v, k) for v, k in sum_of_minuscules_decomposition(w)] == [(w, 1)]


def test_project_to_adjoint():
    gl2 = root_datum("A1")
    (p,) = project_to_adjoint(gl2.parse("1,0"))
    assert p.coords == (1,)
    (z,) = project_to_adjoint(gl2.parse("1,1"))
    assert z.is_zero
    prod = root_datum("A1xC2")
    parts = project_to_adjoint(prod.parse("w2"))
    assert [x.coords for x in parts] == [(0,), (1, 0)]


def _dominant(label):
    d = root_datum(label)
    coeff = st.lists(st.integers(0, 3), min_size=len(d.fundamental_coweights), max_size=len(d.fundamental_coweights))

    def build(cs):
        v = [0] * d.rank
        for c, w in zip(cs, d.fundamental_coweights):
            v = [a + c * b for a, b in zip(v, w)]
        return WeightVec(tuple(v), d)

    return coeff.map(build)


@given(st.sampled_from(SMALL).flatmap(lambda lab: st.tuples(_dominant(lab), _dominant(lab), _dominant(lab))))
def test_dominance_is_a_partial_order(triple):
    a, b, c = triple
    assert dominance_leq(a, a)
    if dominance_leq(a, b) and dominance_leq(b, a):
        assert a == b
    if dominance_leq(a, b) and dominance_leq(b, c):
        assert dominance_leq(a, c)


@given(st.sampled_from(SMALL + ["D5", "E6"]).flatmap(_dominant))
def test_dual_is_an_involution(v):
    assert dual_coweight(dual_coweight(v)) == v
    assert is_dominant(dual_coweight(v))


@given(st.sampled_from(SMALL).flatmap(_dominant))
def test_minuscule_iff_orbit_weight_system(v):
    ws = weight_system(v)
    orbit = oracles.brute_orbit(v.datum, v.coords)
    flat = set(w.coords for w in ws.entries) == orbit and all(m == 1 for m in ws.entries.values())
    assert is_minuscule(v) == flat


def test_fundamental_weights_are_dual_to_coroots():
    d = root_datum("D6")
    for i, w in enumerate(d.fundamental_weights):
        assert [sum(Fraction(x) * y for x, y in zip(w, c)) for c in d.simple_coroots] == [int(i == j) for j in range(6)]
