import math
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from structconst.fiber import component_count_recursion
from structconst.repring import (
    prv_witness_search,
    rep_nonvanishing,
    rep_to_simply_connected,
    tensor_decompose,
    tensor_multiplicity,
    weight_system,
    weyl_dimension,
)
from structconst.rootdata import WeightVec, dominant_weights_below, root_datum


def test_weyl_dimensions():
    assert weyl_dimension(root_datum("A2").parse("0,0,0")) == 1
    assert weyl_dimension(root_datum("A2").parse("1,0,-1")) == 8
    assert weyl_dimension(root_datum("C2").parse("1,1")) == 5
    assert weyl_dimension(root_datum("C2").parse("1,1")) == len(oracles.brute_orbit(root_datum("C2"), (1, 1))) + 1
    # fundamental representations of the exceptional groups
    assert weyl_dimension(root_datum("E6").parse("w1")) == 27
    assert weyl_dimension(root_datum("E7").parse("w7")) == 56
    assert weyl_dimension(root_datum("E8").parse("w8")) == 248
    assert weyl_dimension(root_datum("F4").parse("w4")) == 26
    assert weyl_dimension(root_datum("G2").parse("w1")) == 7


@pytest.mark.parametrize("lam", [(1, 0, -1), (2, 1, 0), (3, 1, 0), (2, 2, 0)])
def test_weight_systems_match_tableaux(lam):
    ws = weight_system(root_datum("A2").parse(",".join(map(str, lam))))
    assert {w.coords: m for w, m in ws.entries.items()} == dict(oracles.gl_character(lam))


def test_weight_system_examples():
    adj = weight_system(root_datum("A2").parse("1,0,-1"))
    assert adj[WeightVec((0, 0, 0), adj.datum)] == 2 and adj.dimension == 8
    spin = weight_system(root_datum("D6").parse("w6"))
    assert len(spin.entries) == 32 and set(spin.entries.values()) == {1}
    d = root_datum("A3")
    mins = weight_system(d.parse("1,1,0,0"))
    assert {w.coords for w in mins.entries} == oracles.brute_orbit(d, (1, 1, 0, 0))


def test_tensor_examples():
    gl2 = root_datum("A1")
    td = tensor_decompose([gl2.parse("1,0")] * 2)
    assert {k.coords: v for k, v in td.constituents.items()} == {(2, 0): 1, (1, 1): 1}
    c2 = root_datum("C2")
    assert tensor_multiplicity([c2.parse("1,1")] * 3, c2.parse("0,0")) == 0
    d6 = root_datum("D6")
    assert tensor_multiplicity([d6.parse("w6")] * 2, WeightVec(d6.zero(), d6)) == 1


def test_so5_cube_frozen():
    c2 = root_datum("C2")
    td = tensor_decompose([c2.parse("1,1")] * 3)
    frozen = {(3, 3): 1, (3, 1): 2, (2, 0): 1, (1, 1): 3}
    assert {k.coords: v for k, v in td.constituents.items()} == frozen
    ch = oracles.minuscule_character(c2, (1, 1))
    ch[(0, 0)] += 1
    for lam in [(3, 3), (3, 1), (2, 2), (2, 0), (1, 1), (0, 0)]:
        assert oracles.tensor_multiplicity_from_characters(c2, [ch] * 3, lam) == frozen.get(lam, 0)
    assert td.mass() == 125


@pytest.mark.parametrize("mus,lam", [
    ([(1, 0, 0), (1, 1, 0), (1, 0, 0), (1, 1, 0)], (2, 2, 2)),
    ([(1, 0, 0), (1, 1, 0), (1, 0, 0), (1, 1, 0)], (3, 2, 1)),
    ([(2, 1, 0), (2, 1, 0)], (2, 2, 2)),
    ([(2, 1, 0), (2, 1, 0), (1, 0, -1)], (3, 2, 1)),
])
def test_gl3_multiplicities_against_tableaux(mus, lam):
    d = root_datum("A2")
    assert tensor_multiplicity([WeightVec(m, d) for m in mus], WeightVec(lam, d)) == oracles.gl_tensor_multiplicity(mus, lam)


def test_spin12_against_alternating_sum():
    d = root_datum("D6")
    w6 = d.parse("w6").coords
    ch = oracles.minuscule_character(d, w6)
    assert oracles.tensor_multiplicity_from_characters(d, [ch, ch], d.zero()) == 1


def test_rep_nonvanishing_examples():
    gl2 = root_datum("A1")
    assert rep_nonvanishing([gl2.parse("1,0")] * 2, gl2.parse("1,1"))
    c2 = root_datum("C2")
    assert not rep_nonvanishing([c2.parse("1,1")] * 3, c2.parse("0,0"))
    assert rep_nonvanishing([c2.parse("1,1")] * 3, c2.parse("3,3"))


def test_prv_examples():
    gl2 = root_datum("A1")
    ws = prv_witness_search([gl2.parse("1,0")] * 2, gl2.parse("1,1"))
    assert sorted(w.weights for w in ws) == [((0, 1), (1, 0)), ((1, 0), (0, 1))]
    w = next(w for w in ws if w.weights == ((1, 0), (0, 1)))
    assert w.words == ((), (1,))
    c2 = root_datum("C2")
    assert prv_witness_search([c2.parse("1,1")] * 3, c2.parse("0,0")) is None
    assert oracles.brute_prv(c2, [(1, 1)] * 3, (0, 0)) == []
    ws = prv_witness_search([c2.parse("1,0")] * 2, c2.parse("0,0"))
    assert len(ws) == len(oracles.brute_prv(c2, [(1, 0)] * 2, (0, 0))) == 4
    d = root_datum("A2")
    assert prv_witness_search([d.parse("2,1,0")], d.parse("2,1,0")) is not None
    assert prv_witness_search([d.parse("2,1,0")], d.parse("1,1,1")) is None


def test_rep_to_simply_connected():
    gl2 = root_datum("A1")
    mus, lam = rep_to_simply_connected([gl2.parse("1,0")] * 2, gl2.parse("1,1"))
    assert [m.coords for m in mus] == [(1,), (1,)] and lam.coords == (0,)
    assert rep_nonvanishing(mus, lam) == rep_nonvanishing([gl2.parse("1,0")] * 2, gl2.parse("1,1"))
    c2 = root_datum("C2")
    mus, lam = rep_to_simply_connected([c2.parse("1,1")] * 3, c2.parse("0,0"))
    assert rep_nonvanishing(mus, lam) is False


def _dom(d, cs):
    v = [0] * d.rank
    for c, w in zip(cs, d.fundamental_coweights):
        v = [a + c * b for a, b in zip(v, w)]
    return WeightVec(tuple(v), d)


def _tuple(label, r, top):
    d = root_datum(label)
    k = len(d.fundamental_coweights)
    return st.lists(st.lists(st.integers(0, top), min_size=k, max_size=k), min_size=2, max_size=r).map(
        lambda cs: [_dom(d, c) for c in cs])


CASES = st.one_of(_tuple("A2", 3, 2), _tuple("B2", 3, 2), _tuple("C2", 3, 2), _tuple("G2", 2, 1), _tuple("A3", 3, 1))


@settings(max_examples=40)
@given(CASES)
def test_mass_conservation(mus):
    td = tensor_decompose(mus)
    assert td.mass() == math.prod(weyl_dimension(m) for m in mus)
    assert all(v > 0 for v in td.constituents.values())


@settings(max_examples=30)
@given(CASES, st.randoms(use_true_random=False))
def test_fold_order_does_not_matter(mus, rnd):
    shuffled = list(mus)
    rnd.shuffle(shuffled)
    assert tensor_decompose(mus).constituents == tensor_decompose(shuffled).constituents


@settings(max_examples=30)
@given(CASES)
def test_contragredient_duality(mus):
    d = mus[0].datum
    for lam, m in tensor_decompose(mus).constituents.items():
        dual = WeightVec(d.dual(lam.coords), d)
        assert tensor_multiplicity(list(mus) + [dual], WeightVec(d.zero(), d)) == m


@settings(max_examples=30)
@given(CASES)
def test_prv_implies_multiplicity(mus):
    d = mus[0].datum
    total = tuple(map(sum, zip(*[m.coords for m in mus])))
    for lam in dominant_weights_below(d, total)[:6]:
        lw = WeightVec(lam, d)
        if prv_witness_search(mus, lw, limit=1) is not None:
            assert tensor_multiplicity(mus, lw) >= 1


@settings(max_examples=25)
@given(st.sampled_from(["A2", "B2", "C2", "A3", "D4"]), st.data())
def test_minuscule_path_identity(label, data):
    d = root_datum(label)
    mins = [w for w in d.fundamental_coweights if d.minuscule(w)]
    mus = [WeightVec(data.draw(st.sampled_from(mins)), d) for _ in range(data.draw(st.integers(1, 4)))]
    for lam, m in tensor_decompose(mus).constituents.items():
        assert component_count_recursion(mus, lam) == m


@settings(max_examples=20)
@given(_tuple("A2", 3, 1))
def test_gl_tensor_against_tableaux(mus):
    d = mus[0].datum
    for lam, m in tensor_decompose(mus).constituents.items():
        assert oracles.gl_tensor_multiplicity([x.coords for x in mus], lam.coords) == m


def test_weight_system_is_w_stable():
    ws = weight_system(root_datum("B3").parse("w2"))
    d = ws.datum
    counts = Counter()
    for v, m in ws.entries.items():
        assert all(ws.entries[WeightVec(u, d)] == m for u in d.orbit(v.coords))
        counts[m] += 1
    assert sum(m for m in ws.entries.values()) == weyl_dimension(d.parse("w2"))
