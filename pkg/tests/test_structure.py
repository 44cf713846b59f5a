from math import gcd

import pytest
from hypothesis import given, strategies as st

from weightless.gf import make_field
from weightless.structure import (AlgElement, adjoint_orbits, alg_det, centralizer_order, closed_orbits,
                                  conjugacy_classes, conjugate_alg, elliptic_complement_identity,
                                  enumerate_algebra, enumerate_group, group_inv, group_mul, incidence_set,
                                  is_elliptic, radicals, trace_pairing)


def test_enumeration_sizes(f3, f5):
    assert len(enumerate_algebra(f3)) == 27
    assert len(enumerate_algebra(f5)) == 125
    assert enumerate_algebra(f3)[0] == (0, 0, 0)
    assert len(enumerate_group(f3)) == 24
    assert len(enumerate_group(f5)) == 120


def test_orbit_census_q3(f3):
    orbits = adjoint_orbits(f3)
    assert [o.size for o in orbits] == [1, 8, 12, 6]
    e = AlgElement(0, 1, 0)
    assert next(o for o in orbits if e in o.points).size == 8
    assert len(conjugacy_classes(f3)) == 5


@pytest.mark.parametrize("q", [3, 5, 7])
def test_orbits_partition(q):
    spec = make_field(q)
    for orbits, total in ((adjoint_orbits(spec), q ** 3), (conjugacy_classes(spec), q ** 3 - q)):
        pts = [x for o in orbits for x in o.points]
        assert len(pts) == len(set(pts)) == total
        assert all((q ** 3 - q) % o.size == 0 for o in orbits)
    assert len(adjoint_orbits(spec)) == q + 1


def test_closures_q3(f3):
    by_size = {c.orbit.size: c for c in closed_orbits(f3, "lie")}
    assert len(by_size[8].closure_points) == 9
    assert len(by_size[6].closure_points) == 6
    assert by_size[1].closure_points == (AlgElement(0, 0, 0),)


def test_elliptic_count_and_witness(f3):
    assert sum(is_elliptic(f3, x) for x in enumerate_algebra(f3)) == 6
    assert is_elliptic(f3, AlgElement(0, 1, f3.generator))
    assert not is_elliptic(f3, AlgElement(0, 0, 0))


@pytest.mark.parametrize("q", [3, 5])
def test_elliptic_by_centralizer(q):
    spec = make_field(q)
    for o in adjoint_orbits(spec):
        x = o.representative
        assert is_elliptic(spec, x) == (centralizer_order(spec, x) == q + 1)


def test_radicals(f3):
    rads = radicals(f3, "nilradical")
    assert len(rads) == 4
    assert set(rads[0].elements) == {AlgElement(0, t, 0) for t in range(3)}
    nonzero = {x for r in rads for x in r.elements if x != (0, 0, 0)}
    assert len(nonzero) == 8
    assert all(alg_det(f3, x) == 0 for x in nonzero)
    for r in radicals(f3, "unipotent_radical"):
        assert len(set(r.elements)) == 3


def test_incidence_examples(f3):
    cl = {c.orbit.size: c for c in closed_orbits(f3, "lie")}
    assert len(incidence_set(f3, cl[8])) == 12
    assert len(incidence_set(f3, cl[6])) == 0
    assert len(incidence_set(f3, cl[1])) == 0


@pytest.mark.parametrize("q", [3, 5, 7])
def test_elliptic_complement(q):
    assert elliptic_complement_identity(make_field(q))


@given(st.data())
def test_adjoint_action_preserves_pairing(data):
    spec = make_field(data.draw(st.sampled_from([3, 5, 7])))
    g = data.draw(st.sampled_from(enumerate_group(spec)))
    pts = enumerate_algebra(spec)
    x, y = data.draw(st.sampled_from(pts)), data.draw(st.sampled_from(pts))
    assert trace_pairing(spec, conjugate_alg(spec, g, x), conjugate_alg(spec, g, y)) == trace_pairing(spec, x, y)
    assert alg_det(spec, conjugate_alg(spec, g, x)) == alg_det(spec, x)


@given(st.data())
def test_group_axioms(data):
    spec = make_field(data.draw(st.sampled_from([3, 5])))
    g, h = data.draw(st.sampled_from(enumerate_group(spec))), data.draw(st.sampled_from(enumerate_group(spec)))
    one = (1, 0, 0, 1)
    assert group_mul(spec, g, group_inv(spec, g)) == one
    assert group_inv(spec, group_mul(spec, g, h)) == group_mul(spec, group_inv(spec, h), group_inv(spec, g))


def test_pairing_nondegenerate(f5):
    # the trace pairing is nondegenerate for odd q
    pts = enumerate_algebra(f5)
    for x in pts[1:]:
        assert any(trace_pairing(f5, x, y) for y in pts)
    assert gcd(2, f5.p) == 1
