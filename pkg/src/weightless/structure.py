"""Explicit models of sl2(F_q) and PGL(2, F_q).

``AlgElement`` is the trace-zero matrix [[a, b], [c, -a]]; ``GroupElement``
is a 2x2 invertible matrix scaled so that its first nonzero entry (scan
order (1,1), (1,2), (2,1), (2,2)) is 1.  Entries are integer encodings of
F_q (see :mod:`weightless.gf`), so tuples compare and hash syntactically
and sorted tuples follow the enumeration order.

The adjoint action is conjugation by PGL(2, F_q), which is GL2-conjugation;
in odd characteristic the Lie algebra of PGL2 is identified with sl2.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import NamedTuple

from .gf import FieldSpec


class AlgElement(NamedTuple):
    a: int
    b: int
    c: int


class GroupElement(NamedTuple):
    a: int
    b: int
    c: int
    d: int


@dataclass(frozen=True)
class Orbit:
    kind: str  # "lie" | "group"
    points: tuple
    invariant_label: int
    index: int = 0

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def representative(self):
        return self.points[0]


@dataclass(frozen=True)
class ClosedOrbit:
    orbit: Orbit
    closure_points: tuple
    added_orbits: tuple = ()

    @property
    def kind(self) -> str:
        return self.orbit.kind


@dataclass(frozen=True)
class Radical:
    kind: str  # "nilradical" | "unipotent_radical"
    label: tuple[int, int]
    base: AlgElement  # spanning nilpotent n_v
    elements: tuple


@dataclass(frozen=True)
class IncidencePair:
    base: tuple
    radical: Radical


@dataclass
class IncidenceSet:
    closed: ClosedOrbit
    pairs: list[IncidencePair] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


# -- Lie algebra ------------------------------------------------------------

@lru_cache(maxsize=None)
def enumerate_algebra(spec: FieldSpec) -> tuple[AlgElement, ...]:
    r = range(spec.q)
    return tuple(AlgElement(a, b, c) for a, b, c in product(r, r, r))


def alg_add(spec: FieldSpec, x: AlgElement, y: AlgElement) -> AlgElement:
    add = spec.add
    return AlgElement(add(x.a, y.a), add(x.b, y.b), add(x.c, y.c))


def alg_scale(spec: FieldSpec, t: int, x: AlgElement) -> AlgElement:
    mul = spec.mul
    return AlgElement(mul(t, x.a), mul(t, x.b), mul(t, x.c))


def alg_neg(spec: FieldSpec, x: AlgElement) -> AlgElement:
    return AlgElement(spec.neg(x.a), spec.neg(x.b), spec.neg(x.c))


def alg_det(spec: FieldSpec, x: AlgElement) -> int:
    # det [[a, b], [c, -a]] = -a^2 - bc
    return spec.neg(spec.add(spec.mul(x.a, x.a), spec.mul(x.b, x.c)))


def trace_pairing(spec: FieldSpec, x: AlgElement, y: AlgElement) -> int:
    """tr(xy) = 2 a a' + b c' + c b'."""
    add, mul = spec.add, spec.mul
    aa = mul(x.a, y.a)
    return add(add(aa, aa), add(mul(x.b, y.c), mul(x.c, y.b)))


def is_elliptic(spec: FieldSpec, x: AlgElement) -> bool:
    """Characteristic polynomial t^2 + det(x) irreducible, i.e. -det a nonzero non-square."""
    m = spec.neg(alg_det(spec, x))
    return m != 0 and not spec.square(m)


def is_nilpotent(spec: FieldSpec, x: AlgElement) -> bool:
    return alg_det(spec, x) == 0


# -- group ------------------------------------------------------------------

def canonical(spec: FieldSpec, m: tuple[int, int, int, int]) -> GroupElement:
    lead = next(v for v in m if v)
    if lead == 1:
        return GroupElement(*m)
    inv = spec.inv(lead)
    return GroupElement(*(spec.mul(v, inv) for v in m))


def group_det(spec: FieldSpec, g) -> int:
    return spec.sub(spec.mul(g[0], g[3]), spec.mul(g[1], g[2]))


def _matmul(spec: FieldSpec, g, h) -> tuple[int, int, int, int]:
    add, mul = spec.add, spec.mul
    return (add(mul(g[0], h[0]), mul(g[1], h[2])),
            add(mul(g[0], h[1]), mul(g[1], h[3])),
            add(mul(g[2], h[0]), mul(g[3], h[2])),
            add(mul(g[2], h[1]), mul(g[3], h[3])))


def _adjugate(spec: FieldSpec, g) -> tuple[int, int, int, int]:
    return (g[3], spec.neg(g[1]), spec.neg(g[2]), g[0])


def group_mul(spec: FieldSpec, g, h) -> GroupElement:
    return canonical(spec, _matmul(spec, g, h))


def group_inv(spec: FieldSpec, g) -> GroupElement:
    return canonical(spec, _adjugate(spec, g))


@lru_cache(maxsize=None)
def enumerate_group(spec: FieldSpec) -> tuple[GroupElement, ...]:
    """All q^3 - q elements of PGL(2, F_q) in canonical form, sorted."""
    out = []
    for m in product(range(spec.q), repeat=4):
        lead = next((v for v in m if v), 0)
        if lead == 1 and group_det(spec, m) != 0:
            out.append(GroupElement(*m))
    return tuple(out)


def conjugate_alg(spec: FieldSpec, g, x: AlgElement) -> AlgElement:
    """g x g^-1."""
    xm = (x.a, x.b, x.c, spec.neg(x.a))
    y = _matmul(spec, _matmul(spec, g, xm), _adjugate(spec, g))
    inv = spec.inv(group_det(spec, g))
    return AlgElement(spec.mul(y[0], inv), spec.mul(y[1], inv), spec.mul(y[2], inv))


def conjugate_group(spec: FieldSpec, g, h) -> GroupElement:
    return canonical(spec, _matmul(spec, _matmul(spec, g, h), _adjugate(spec, g)))


def group_label(spec: FieldSpec, g) -> int:
    """tr^2 / det of any lift; constant on PGL classes."""
    tr = spec.add(g[0], g[3])
    return spec.mul(spec.mul(tr, tr), spec.inv(group_det(spec, g)))


# -- orbits -----------------------------------------------------------------

def _orbits(points, act, label, kind) -> list[Orbit]:
    group = act[0]
    seen: set = set()
    out = []
    for x in points:
        if x in seen:
            continue
        orb = {act[1](g, x) for g in group}
        seen |= orb
        out.append(Orbit(kind, tuple(sorted(orb)), label(x), len(out)))
    return out


@lru_cache(maxsize=None)
def adjoint_orbits(spec: FieldSpec) -> tuple[Orbit, ...]:
    """Partition of sl2(F_q) into PGL2-orbits, ordered by first point."""
    g = enumerate_group(spec)
    return tuple(_orbits(enumerate_algebra(spec),
                         (g, lambda h, x: conjugate_alg(spec, h, x)),
                         lambda x: alg_det(spec, x), "lie"))


@lru_cache(maxsize=None)
def conjugacy_classes(spec: FieldSpec) -> tuple[Orbit, ...]:
    g = enumerate_group(spec)
    return tuple(_orbits(g, (g, lambda h, x: conjugate_group(spec, h, x)),
                         lambda x: group_label(spec, x), "group"))


def orbit_closure(o: Orbit, all_orbits) -> ClosedOrbit:
    """Union of the orbits in o's invariant fiber that are no larger than o.

    This is the rank-one stand-in for Zariski closure on F-points: a fiber
    of det (resp. tr^2/det) is a single orbit or a big orbit plus a
    one-point orbit in its closure.
    """
    added = [w for w in all_orbits
             if w.invariant_label == o.invariant_label and w.size <= o.size and w != o]
    pts = set(o.points)
    for w in added:
        pts.update(w.points)
    return ClosedOrbit(o, tuple(sorted(pts)), tuple(added))


def closed_orbits(spec: FieldSpec, kind: str) -> list[ClosedOrbit]:
    orbits = adjoint_orbits(spec) if kind == "lie" else conjugacy_classes(spec)
    return [orbit_closure(o, orbits) for o in orbits]


def centralizer_order(spec: FieldSpec, x: AlgElement) -> int:
    return sum(1 for g in enumerate_group(spec) if conjugate_alg(spec, g, x) == x)


# -- radicals and incidence -------------------------------------------------

def projective_line(spec: FieldSpec) -> list[tuple[int, int]]:
    return [(1, 0)] + [(x, 1) for x in range(spec.q)]


def _line_generator(spec: FieldSpec, v: tuple[int, int]) -> AlgElement:
    """Nilpotent with image and kernel F.v, lower-left entry 1 (else upper-right 1)."""
    if v == (1, 0):
        return AlgElement(0, 1, 0)
    x = v[0]
    return AlgElement(x, spec.neg(spec.mul(x, x)), 1)


@lru_cache(maxsize=None)
def radicals(spec: FieldSpec, kind: str = "nilradical") -> tuple[Radical, ...]:
    """The q + 1 Borel radicals indexed by P^1(F_q)."""
    out = []
    for v in projective_line(spec):
        n = _line_generator(spec, v)
        if kind == "nilradical":
            elems = tuple(alg_scale(spec, t, n) for t in range(spec.q))
        elif kind == "unipotent_radical":
            # exp(t n) = 1 + t n exactly since n^2 = 0
            elems = tuple(canonical(spec, (spec.add(1, spec.mul(t, n.a)), spec.mul(t, n.b),
                                           spec.mul(t, n.c), spec.sub(1, spec.mul(t, n.a))))
                          for t in range(spec.q))
        else:
            raise ValueError(f"unknown radical kind {kind!r}")
        out.append(Radical(kind, v, n, elems))
    return tuple(out)


def translate(spec: FieldSpec, base, rad: Radical) -> list:
    if rad.kind == "nilradical":
        return [alg_add(spec, base, n) for n in rad.elements]
    return [group_mul(spec, base, u) for u in rad.elements]


def incidence_set(spec: FieldSpec, c: ClosedOrbit, rads=None) -> IncidenceSet:
    """All (base, radical) with every translate inside the closure."""
    if rads is None:
        rads = radicals(spec, "nilradical" if c.kind == "lie" else "unipotent_radical")
    inside = set(c.closure_points)
    pairs = []
    for base in c.closure_points:
        for rad in rads:
            if all(t in inside for t in translate(spec, base, rad)):
                pairs.append(IncidencePair(base, rad))
    return IncidenceSet(c, pairs)


def annihilator(spec: FieldSpec, rad: Radical) -> list[AlgElement]:
    """Points xi of g^v = sl2 with tr(xi n) = 0 for all n in the nilradical."""
    return [xi for xi in enumerate_algebra(spec) if trace_pairing(spec, xi, rad.base) == 0]


def elliptic_complement_identity(spec: FieldSpec) -> bool:
    """Non-elliptic set equals the union of the annihilators of the nilradicals."""
    union: set = set()
    for rad in radicals(spec, "nilradical"):
        union.update(annihilator(spec, rad))
    non_elliptic = {x for x in enumerate_algebra(spec) if not is_elliptic(spec, x)}
    return union == non_elliptic
