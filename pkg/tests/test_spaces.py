import random

import pytest

from weightless.cyclolin import CycNumber, root_of_unity
from weightless.errors import ContainmentViolation
from weightless.gf import make_field
from weightless.spaces import (FunctionVector, coset_constraints, cuspidal_space_group, cuspidal_space_lie,
                               cuspidal_space_lie_by_cosets, fourier, psi, restricted_cuspidal, verify_conjecture,
                               weightless_space)
from weightless.structure import (AlgElement, alg_neg, alg_scale, closed_orbits, enumerate_algebra, enumerate_group,
                                  incidence_set, is_elliptic)
from weightless.cyclolin import echelonize


def _closures(spec):
    return {(c.orbit.invariant_label, c.orbit.size): c for c in closed_orbits(spec, "lie")}


def test_fourier_examples(f3):
    pts = enumerate_algebra(f3)
    zero = AlgElement(0, 0, 0)
    assert all(v == 1 for v in fourier(FunctionVector.delta(pts, zero), f3).values)
    one = FunctionVector(pts, [CycNumber.rational(1) for _ in pts])
    assert fourier(one, f3) == FunctionVector(pts, [CycNumber.rational(27 if x == zero else 0) for x in pts])


@pytest.mark.parametrize("q", [3, 5])
def test_fourier_of_scaled_witness_on_nilpotents(q):
    spec = make_field(q)
    pts = enumerate_algebra(spec)
    x = AlgElement(0, 1, spec.generator)
    for a in range(1, q):
        fa = fourier(FunctionVector.delta(pts, alg_scale(spec, a, x)), spec)
        for u in range(1, q):
            assert fa[AlgElement(0, 0, u)] == psi(spec, spec.mul(a, u))


@pytest.mark.parametrize("q", [3, 5])
def test_fourier_involution_random(q):
    spec = make_field(q)
    pts = enumerate_algebra(spec)
    rng = random.Random(q)
    for _ in range(5):
        vals = [CycNumber.rational(0) for _ in pts]
        for i in rng.sample(range(len(pts)), 3):
            vals[i] = root_of_unity(spec.p, rng.randrange(spec.p)) * rng.randint(1, 4)
        f = FunctionVector(pts, vals)
        ff = fourier(fourier(f, spec), spec)
        for x in pts:
            assert ff[x] == f[alg_neg(spec, x)] * q ** 3


def test_cuspidal_lie_q3(f3):
    a, b = cuspidal_space_lie(f3), cuspidal_space_lie_by_cosets(f3)
    assert a.dim == 6 == sum(is_elliptic(f3, x) for x in enumerate_algebra(f3))
    assert a == b
    for v in a.vectors():
        assert sum(v, CycNumber.zero(3)).is_zero()
    pts = enumerate_algebra(f3)
    xi = AlgElement(0, 1, 2)
    g = fourier(FunctionVector.delta(pts, xi), f3)
    assert echelonize(a.vectors() + [g.values], ambient=pts).rank == 6


def test_constraint_shapes(f3):
    rows = coset_constraints(f3, "group")
    assert all(sum(1 for x in r if x) == 3 for r in rows)
    lie = coset_constraints(f3, "lie")
    # q^3 (q + 1) pairs collapse to q^2 (q + 1) distinct cosets
    assert len(lie) == 9 * 4


def test_cuspidal_group_q3(f3):
    s = cuspidal_space_group(f3)
    pts = enumerate_group(f3)
    assert len(pts) == 24
    assert s.dim == 4
    assert echelonize(s.vectors() + [[1] * 24], ambient=pts).rank == s.dim + 1


def test_weightless_examples_q3(f3):
    cl = _closures(f3)
    cone, ell, zero = cl[(0, 8)], cl[(1, 6)], cl[(0, 1)]
    assert weightless_space(f3, cone).dim == 5
    assert weightless_space(f3, zero).dim == 1
    assert weightless_space(f3, ell).dim == 6
    cusp = cuspidal_space_lie_by_cosets(f3)
    assert restricted_cuspidal(zero, cusp).dim == 1
    full = closed_orbits(f3, "lie")[0]
    assert restricted_cuspidal(full, cusp).dim == 1


def test_restriction_of_full_space_is_identity(f3):
    cusp = cuspidal_space_lie_by_cosets(f3)
    from weightless.cyclolin import project
    assert project(cusp, cusp.ambient) == cusp


def test_verify_reports_q3(f3):
    cl = _closures(f3)
    r0 = verify_conjecture(f3, cl[(0, 1)])
    assert (r0.dim_weightless, r0.dim_restricted_cuspidal, r0.equality_holds) == (1, 1, True)
    re = verify_conjecture(f3, cl[(1, 6)])
    assert re.dim_weightless == 6 and re.equality_holds
    rc = verify_conjecture(f3, cl[(0, 8)])
    assert rc.containment_holds
    assert rc.dim_weightless == 5
    if not rc.equality_holds:
        assert rc.witness is not None and len(rc.witness.values) == 9


def test_containment_violation_is_raised(f3):
    cl = _closures(f3)
    # a fake "cuspidal" space containing the constants cannot sit inside the weightless space
    fake = echelonize([[1] * 27], ambient=enumerate_algebra(f3))
    with pytest.raises(ContainmentViolation):
        verify_conjecture(f3, cl[(0, 8)], fake)


def test_report_serializes(f3):
    import json
    r = verify_conjecture(f3, _closures(f3)[(0, 8)])
    d = json.loads(json.dumps(r.to_dict()))
    assert d["mode"] == "lie" and d["closure_size"] == 9
