"""Function spaces on finite point sets and the cuspidal/weightless comparison.

All functions are complex valued with exact values in a cyclotomic field.
The Fourier transform uses the trace pairing on sl2 and the additive
character ``psi(t) = zeta_p ** Tr(t)``, unnormalized:

    F(f)(x) = sum_xi f(xi) psi(tr(xi x)),   F(F(f)) = q^3 * f(-x).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .cyclolin import (CycNumber, Q0, Q1, SubspaceBasis, basis_from_native, field, from_native,
                       kernel_from_native, lcm, project, stacked_rank, subspace_compare)
from .errors import ContainmentViolation
from .gf import FieldSpec
from .structure import (ClosedOrbit, IncidenceSet, closed_orbits, enumerate_algebra, enumerate_group,
                        incidence_set, is_elliptic, radicals, trace_pairing, translate)


@dataclass
class FunctionVector:
    ambient: tuple
    values: list[CycNumber]

    def __post_init__(self):
        if len(self.values) != len(self.ambient):
            raise ValueError("values and ambient differ in length")

    def __getitem__(self, point) -> CycNumber:
        return self.values[self.ambient.index(point)]

    def restrict(self, points: Sequence) -> "FunctionVector":
        index = {pt: i for i, pt in enumerate(self.ambient)}
        return FunctionVector(tuple(points), [self.values[index[pt]] for pt in points])

    def __eq__(self, other) -> bool:
        return (isinstance(other, FunctionVector) and self.ambient == other.ambient
                and all(a == b for a, b in zip(self.values, other.values)))

    @classmethod
    def delta(cls, ambient: tuple, point, conductor: int = 1) -> "FunctionVector":
        return cls(ambient, [CycNumber.rational(1 if pt == point else 0, conductor) for pt in ambient])


def psi(spec: FieldSpec, t: int) -> CycNumber:
    from .cyclolin import root_of_unity
    return root_of_unity(spec.p, spec.trace(t))


def fourier(f: FunctionVector, spec: FieldSpec) -> FunctionVector:
    """Forward transform S(g^v) -> S(g) on the full sl2 enumeration."""
    points = enumerate_algebra(spec)
    if tuple(f.ambient) != points:
        raise ValueError("fourier needs a function on the full sl2 enumeration")
    p = spec.p
    n = p
    for v in f.values:
        n = lcm(n, v.n)
    step = n // p
    support = [(xi, (v.embed(n) if v.n != n else v).coeffs)
               for xi, v in zip(points, f.values) if not v.is_zero()]
    fn = field(n)
    out = []
    for x in points:
        acc = [Q0] * n
        for xi, coeffs in support:
            shift = spec.trace(trace_pairing(spec, xi, x)) * step
            for i, c in enumerate(coeffs):
                if c:
                    acc[(i + shift) % n] += c
        out.append(CycNumber(n, fn.reduce(acc)))
    return FunctionVector(points, out)


# -- constraint matrices ----------------------------------------------------

def _coset_rows(points: Sequence, pairs) -> list[list]:
    """0/1 indicator rows of distinct cosets, first-seen order."""
    index = {pt: i for i, pt in enumerate(points)}
    seen = set()
    rows = []
    width = len(points)
    for cols in pairs:
        key = frozenset(index[pt] for pt in cols)
        if key in seen:
            continue
        seen.add(key)
        row = [Q0] * width
        for j in key:
            row[j] = Q1
        rows.append(row)
    return rows


def coset_constraints(spec: FieldSpec, kind: str) -> list[list]:
    """Rows sum_{n in N} f(x + n) (lie) or sum_{u in U} f(g u) (group), deduplicated."""
    if kind == "lie":
        points, rads = enumerate_algebra(spec), radicals(spec, "nilradical")
    else:
        points, rads = enumerate_group(spec), radicals(spec, "unipotent_radical")
    return _coset_rows(points, (translate(spec, x, r) for r in rads for x in points))


@lru_cache(maxsize=None)
def cuspidal_space_lie_by_cosets(spec: FieldSpec) -> SubspaceBasis:
    points = enumerate_algebra(spec)
    return kernel_from_native(coset_constraints(spec, "lie"), 1, points)


@lru_cache(maxsize=None)
def cuspidal_space_lie(spec: FieldSpec) -> SubspaceBasis:
    """Functions whose Fourier transform is supported on the elliptic set."""
    points = enumerate_algebra(spec)
    p = spec.p
    fp = field(p)
    roots = [fp.root(t) for t in range(p)]
    rows = []
    for xi in points:
        if is_elliptic(spec, xi):
            continue
        rows.append([roots[spec.trace(trace_pairing(spec, xi, x))] for x in points])
    return kernel_from_native(rows, p, points)


@lru_cache(maxsize=None)
def cuspidal_space_group(spec: FieldSpec) -> SubspaceBasis:
    points = enumerate_group(spec)
    return kernel_from_native(coset_constraints(spec, "group"), 1, points)


def cuspidal_space(spec: FieldSpec, kind: str) -> SubspaceBasis:
    return cuspidal_space_lie_by_cosets(spec) if kind == "lie" else cuspidal_space_group(spec)


def weightless_space(spec: FieldSpec, c: ClosedOrbit, y: IncidenceSet | None = None) -> SubspaceBasis:
    """Functions on the closure whose sums over every coset inside it vanish."""
    if y is None:
        y = incidence_set(spec, c)
    rows = _coset_rows(c.closure_points, (translate(spec, pr.base, pr.radical) for pr in y))
    return kernel_from_native(rows, 1, c.closure_points)


def restricted_cuspidal(c: ClosedOrbit, cusp: SubspaceBasis) -> SubspaceBasis:
    return project(cusp, c.closure_points)


# -- verdicts ---------------------------------------------------------------

@dataclass
class ConjectureReport:
    q: int
    mode: str
    orbit_index: int
    orbit_label: int
    orbit_size: int
    closure_size: int
    incidence_pairs: int
    dim_schwartz: int
    dim_weightless: int
    dim_restricted_cuspidal: int
    containment_holds: bool
    equality_holds: bool
    witness: FunctionVector | None = None

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "mode": self.mode,
            "orbit": {"index": self.orbit_index, "invariant_label": self.orbit_label,
                      "size": self.orbit_size},
            "closure_size": self.closure_size,
            "incidence_pairs": self.incidence_pairs,
            "dim_schwartz": self.dim_schwartz,
            "dim_weightless": self.dim_weightless,
            "dim_restricted_cuspidal": self.dim_restricted_cuspidal,
            "containment_holds": self.containment_holds,
            "equality_holds": self.equality_holds,
            "witness": None if self.witness is None else {
                "points": [list(pt) for pt in self.witness.ambient],
                "values": [v.to_json() for v in self.witness.values],
            },
        }


def _witness(sw: SubspaceBasis, sc: SubspaceBasis) -> FunctionVector:
    n = lcm(sw.conductor, sc.conductor)
    for row in sw.rows:
        single = basis_from_native([list(row)], sw.conductor, sw.ambient)
        if stacked_rank(sc, single) > sc.dim:
            return FunctionVector(sw.ambient, [from_native(v, sw.conductor) for v in row])
    raise AssertionError(f"no witness although spaces differ (conductor {n})")  # pragma: no cover


def verify_conjecture(spec: FieldSpec, c: ClosedOrbit, cusp: SubspaceBasis | None = None) -> ConjectureReport:
    """Compare the restricted cuspidal space with the weightless space on ``c``."""
    mode = c.kind
    if cusp is None:
        cusp = cuspidal_space(spec, mode)
    y = incidence_set(spec, c)
    sw = weightless_space(spec, c, y)
    sc = restricted_cuspidal(c, cusp)
    cmp = subspace_compare(sc, sw)
    if not cmp.a_in_b:
        raise ContainmentViolation(
            f"q={spec.q} {mode} orbit {c.orbit.index}: restricted cuspidal not inside weightless")
    equal = cmp.relation == "equal"
    return ConjectureReport(
        q=spec.q, mode=mode, orbit_index=c.orbit.index, orbit_label=c.orbit.invariant_label,
        orbit_size=c.orbit.size, closure_size=len(c.closure_points), incidence_pairs=len(y),
        dim_schwartz=len(c.closure_points), dim_weightless=sw.dim, dim_restricted_cuspidal=sc.dim,
        containment_holds=True, equality_holds=equal,
        witness=None if equal else _witness(sw, sc),
    )


def verify_all(spec: FieldSpec, mode: str) -> list[ConjectureReport]:
    cusp = cuspidal_space(spec, mode)
    return [verify_conjecture(spec, c, cusp) for c in closed_orbits(spec, mode)]
