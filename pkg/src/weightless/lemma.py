"""Gauss sums, the kappa transform on the regular nilpotent orbit, the
witness functions h_chi, and representation-theoretic diagnostics for
PGL(2, F_q).

Norm factors ``|a|^(+-1/2)`` are identically 1 over a finite field and are
dropped everywhere.  Multiplicative characters are ``chi_m(g^j) =
zeta_{q-1}^(m j)`` for the fixed generator ``g`` of the field.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cyclolin import CycNumber, Q0, conjugate, field, kernel_basis, lcm, project, root_of_unity
from .errors import CharacterTableError, NoSeparatingPair
from .gf import FieldSpec
from .spaces import (FunctionVector, cuspidal_space, fourier, restricted_cuspidal, weightless_space)
from .structure import (AlgElement, GroupElement, Orbit, adjoint_orbits, alg_scale, closed_orbits,
                        conjugacy_classes, conjugate_alg, conjugate_group, enumerate_algebra, enumerate_group,
                        group_det, is_elliptic, projective_line, radicals)


@dataclass(frozen=True)
class MultChar:
    m: int
    q: int

    @property
    def conductor(self) -> int:
        return self.q - 1

    @property
    def trivial(self) -> bool:
        return self.m % (self.q - 1) == 0

    def exponent(self, spec: FieldSpec, a: int) -> int:
        """j with chi(a) = zeta_{q-1}^j."""
        return self.m * spec.log(a) % (self.q - 1)

    def __call__(self, spec: FieldSpec, a: int) -> CycNumber:
        return root_of_unity(self.q - 1, self.exponent(spec, a))


def characters(spec: FieldSpec) -> list[MultChar]:
    return [MultChar(m, spec.q) for m in range(spec.q - 1)]


@dataclass
class GaussSumValue:
    chi: MultChar
    value: CycNumber


def gauss_sum(chi: MultChar, spec: FieldSpec) -> GaussSumValue:
    """sum over u in F^* of psi(u) chi(u^-1)."""
    q, p = spec.q, spec.p
    n = lcm(p, q - 1)
    acc = [Q0] * n
    for u in range(1, q):
        e = spec.trace(u) * (n // p) + (-chi.exponent(spec, u)) % (q - 1) * (n // (q - 1))
        acc[e % n] += 1
    return GaussSumValue(chi, CycNumber(n, field(n).reduce(acc)))


# -- the regular nilpotent orbit --------------------------------------------

def regular_nilpotent_orbit(spec: FieldSpec) -> Orbit:
    return next(o for o in adjoint_orbits(spec) if o.invariant_label == 0 and o.size > 1)


def scaling_transversal(spec: FieldSpec) -> list[AlgElement]:
    """One base point per line of nilpotents, ordered by P^1 label."""
    return [r.base for r in radicals(spec, "nilradical")]


def z_point(spec: FieldSpec, u: int) -> AlgElement:
    """[[0, 0], [u, 0]]."""
    return AlgElement(0, 0, u)


def elliptic_witness(spec: FieldSpec) -> AlgElement:
    """[[0, 1], [eps, 0]] with eps the generator (a non-square)."""
    return AlgElement(0, 1, spec.generator)


@dataclass
class KappaImage:
    chi: MultChar
    bases: list[AlgElement]
    values: list[CycNumber]

    def at(self, z: AlgElement) -> CycNumber:
        return self.values[self.bases.index(z)]

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)


def kappa(chi: MultChar, f: FunctionVector, spec: FieldSpec) -> KappaImage:
    """kappa_chi(f)(z) = sum_{a in F^*} f(a z) chi^-1(a) at each transversal point z."""
    index = {pt: i for i, pt in enumerate(f.ambient)}
    bases = scaling_transversal(spec)
    vals = []
    for z in bases:
        total = CycNumber.zero(1)
        for a in range(1, spec.q):
            fv = f.values[index[alg_scale(spec, a, z)]]
            if not fv.is_zero():
                total = total + fv * chi(spec, spec.inv(a))
        vals.append(total)
    return KappaImage(chi, bases, vals)


@dataclass
class HChi:
    chi: MultChar
    a: int
    b: int
    x: AlgElement
    function: FunctionVector


def build_h_chi(chi: MultChar, spec: FieldSpec) -> HChi:
    """delta_{a x} - delta_{b x} for the least generator powers a, b with chi(a/b) != 1."""
    x = elliptic_witness(spec)
    q = spec.q
    pair = None
    for i in range(q - 1):
        for j in range(q - 1):
            if i != j and (chi.m * (i - j)) % (q - 1):
                pair = (spec.exp(i), spec.exp(j))
                break
        if pair:
            break
    if pair is None:
        raise NoSeparatingPair(f"no a, b with chi(a/b) != 1 for m={chi.m}")
    a, b = pair
    pa, pb = alg_scale(spec, a, x), alg_scale(spec, b, x)
    points = enumerate_algebra(spec)
    vals = [CycNumber.rational((pt == pa) - (pt == pb)) for pt in points]
    return HChi(chi, a, b, x, FunctionVector(points, vals))


@dataclass
class LemmaChiRecord:
    m: int
    status: str  # "checked" | "not covered by Lemma chi"
    a: int | None = None
    b: int | None = None
    support_elliptic: bool | None = None
    fourier_at_zero_vanishes: bool | None = None
    kappa_nonzero: bool | None = None
    closed_form_holds: bool | None = None
    printed_closed_form_holds: bool | None = None
    kappa_at_z1: CycNumber | None = None
    gauss_sum: CycNumber | None = None

    @property
    def passed(self) -> bool:
        if self.status != "checked":
            return True
        return bool(self.support_elliptic and self.fourier_at_zero_vanishes
                    and self.kappa_nonzero and self.closed_form_holds)

    def to_dict(self) -> dict:
        out = {"m": self.m, "status": self.status}
        if self.status == "checked":
            out.update({
                "a": self.a, "b": self.b,
                "support_elliptic": self.support_elliptic,
                "fourier_at_zero_vanishes": self.fourier_at_zero_vanishes,
                "kappa_nonzero": self.kappa_nonzero,
                "closed_form_holds": self.closed_form_holds,
                "printed_closed_form_holds": self.printed_closed_form_holds,
                "kappa_at_z1": self.kappa_at_z1.to_json(),
                "gauss_sum": self.gauss_sum.to_json(),
                "passed": self.passed,
            })
        return out


def verify_lemma_chi_one(chi: MultChar, spec: FieldSpec) -> LemmaChiRecord:
    if chi.trivial:
        return LemmaChiRecord(chi.m, "not covered by Lemma chi")
    h = build_h_chi(chi, spec)
    support = [pt for pt, v in zip(h.function.ambient, h.function.values) if not v.is_zero()]
    fh = fourier(h.function, spec)
    nil = regular_nilpotent_orbit(spec)
    k = kappa(chi, fh.restrict(nil.points), spec)
    delta = gauss_sum(chi, spec).value
    z1 = z_point(spec, 1)
    val = k.at(z1)
    # substituting v = a u in sum_u psi(a u) chi(u^-1) gives chi(a) * Delta
    closed = (chi(spec, h.a) - chi(spec, h.b)) * delta
    printed = (chi(spec, spec.inv(h.a)) - chi(spec, spec.inv(h.b))) * delta
    return LemmaChiRecord(
        chi.m, "checked", h.a, h.b,
        support_elliptic=all(is_elliptic(spec, pt) for pt in support) and len(support) == 2,
        fourier_at_zero_vanishes=fh[AlgElement(0, 0, 0)].is_zero(),
        kappa_nonzero=not k.is_zero(),
        closed_form_holds=val == closed,
        printed_closed_form_holds=val == printed,
        kappa_at_z1=val, gauss_sum=delta,
    )


def verify_lemma_chi(spec: FieldSpec) -> list[LemmaChiRecord]:
    return [verify_lemma_chi_one(chi, spec) for chi in characters(spec)]


# -- PGL(2, q) permutation characters ---------------------------------------

def fixed_points_p1(spec: FieldSpec, g: GroupElement) -> int:
    """Number of eigenlines of g on P^1(F_q)."""
    tr = spec.add(g.a, g.d)
    disc = spec.sub(spec.mul(tr, tr), spec.mul(4 % spec.p, group_det(spec, g)))
    if disc == 0:
        return spec.q + 1 if (g.b == 0 and g.c == 0 and g.a == g.d) else 1
    return 2 if spec.square(disc) else 0


def class_of(spec: FieldSpec) -> dict:
    return {g: o.index for o in conjugacy_classes(spec) for g in o.points}


def _action(spec: FieldSpec, o: Orbit):
    return conjugate_alg if o.kind == "lie" else conjugate_group


def fix_counts(spec: FieldSpec, o: Orbit) -> list[int]:
    """fix_O evaluated at a representative of each conjugacy class of G.

    ``o`` may be a conjugacy class of G or an adjoint orbit in sl2.
    """
    act = _action(spec, o)
    return [sum(1 for h in o.points if act(spec, c.representative, h) == h)
            for c in conjugacy_classes(spec)]


def steinberg_multiplicity(spec: FieldSpec, o: Orbit) -> int:
    classes = conjugacy_classes(spec)
    fix = fix_counts(spec, o)
    total = sum(c.size * f * (fixed_points_p1(spec, c.representative) - 1) for c, f in zip(classes, fix))
    m = Fraction(total, len(enumerate_group(spec)))
    if m.denominator != 1 or m < 0:
        raise CharacterTableError(f"non-integral Steinberg multiplicity {m}")
    return int(m)


def end_dimension(spec: FieldSpec, o: Orbit) -> int:
    """Number of G-orbits on O x O (Burnside)."""
    classes = conjugacy_classes(spec)
    fix = fix_counts(spec, o)
    total = sum(c.size * f * f for c, f in zip(classes, fix))
    m = Fraction(total, len(enumerate_group(spec)))
    assert m.denominator == 1
    return int(m)


def pair_orbit_count(spec: FieldSpec, o: Orbit) -> int:
    """Brute-force count of G-orbits on O x O: orbits of the centralizer of one point on O."""
    act = _action(spec, o)
    h0 = o.representative
    cent = [g for g in enumerate_group(spec) if act(spec, g, h0) == h0]
    seen: set = set()
    count = 0
    for h in o.points:
        if h in seen:
            continue
        count += 1
        seen.update(act(spec, g, h) for g in cent)
    return count


# -- character table of PGL(2, q) ------------------------------------------

class _QuadExt:
    """F_{q^2} = F_q[s]/(s^2 - eps) on pairs (x, y) = x + y s."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.eps = spec.generator
        q = spec.q
        order = q * q - 1
        one = (1, 0)
        for cand in ((x, y) for x in range(q) for y in range(q) if (x, y) != (0, 0)):
            log = {}
            z = one
            for j in range(order):
                if z in log:
                    break
                log[z] = j
                z = self.mul(z, cand)
            if len(log) == order:
                self.generator = cand
                self.log = log
                break

    def mul(self, u, v):
        s = self.spec
        x = s.add(s.mul(u[0], v[0]), s.mul(self.eps, s.mul(u[1], v[1])))
        y = s.add(s.mul(u[0], v[1]), s.mul(u[1], v[0]))
        return (x, y)

    def frob(self, u):
        s = self.spec
        return (u[0], s.neg(u[1]))


@dataclass
class IrrChar:
    name: str
    dim: int
    values: list[CycNumber]  # indexed by conjugacy class


@dataclass
class CharacterTable:
    q: int
    class_sizes: list[int]
    chars: list[IrrChar]
    group_order: int

    @property
    def steinberg(self) -> IrrChar:
        return next(c for c in self.chars if c.name == "St")

    def inner(self, u: list, v: list) -> CycNumber:
        tot = CycNumber.zero(1)
        for size, a, b in zip(self.class_sizes, u, v):
            tot = tot + conjugate(b) * a * size if isinstance(b, CycNumber) else tot + a * b * size
        return tot * Fraction(1, self.group_order)


def _sqrt(spec: FieldSpec, a: int) -> int:
    if a == 0:
        return 0
    return spec.exp(spec.log(a) // 2)


@lru_cache(maxsize=None)
def character_table_pgl2(spec: FieldSpec) -> CharacterTable:
    """Irreducible characters of GL(2, q) trivial on the center, on PGL classes."""
    q = spec.q
    N = q * q - 1
    ext = _QuadExt(spec)
    half = spec.inv(2 % spec.p)
    classes = conjugacy_classes(spec)

    def zeta(j):
        return root_of_unity(N, j)

    def alpha(i, x):  # character of F_q^*, exponent i mod q-1
        return i * spec.log(x) % (q - 1) * (q + 1)

    def phi(l, z):  # character of F_{q^2}^* trivial on F_q^*
        return (q - 1) * l * ext.log[z] % N

    # class data: type and parameters of a lift of each representative
    info = []
    for c in classes:
        g = c.representative
        tr = spec.add(g.a, g.d)
        det = group_det(spec, g)
        disc = spec.sub(spec.mul(tr, tr), spec.mul(4 % spec.p, det))
        if disc == 0:
            x = spec.mul(tr, half)
            kind = "a" if (g.b == 0 and g.c == 0) else "b"
            info.append((kind, x, None))
        elif spec.square(disc):
            r = _sqrt(spec, disc)
            info.append(("c", spec.mul(spec.add(tr, r), half), spec.mul(spec.sub(tr, r), half)))
        else:
            r = _sqrt(spec, spec.mul(disc, spec.inv(ext.eps)))
            z = (spec.mul(tr, half), spec.mul(r, half))
            info.append(("d", z, det))

    chars: list[IrrChar] = []

    def one_dim(i, steinberg_twist):
        vals = []
        for kind, x, y in info:
            if kind == "a":
                vals.append(zeta(2 * alpha(i, x)) * (q if steinberg_twist else 1))
            elif kind == "b":
                vals.append(CycNumber.zero(1) if steinberg_twist else zeta(2 * alpha(i, x)))
            elif kind == "c":
                vals.append(zeta(alpha(i, x) + alpha(i, y)))
            else:
                e = zeta(alpha(i, y))  # y = det of the lift = norm of its eigenvalue
                vals.append(-e if steinberg_twist else e)
        return vals

    quad = (q - 1) // 2
    chars.append(IrrChar("1", 1, one_dim(0, False)))
    chars.append(IrrChar("sgn", 1, one_dim(quad, False)))
    chars.append(IrrChar("St", q, one_dim(0, True)))
    chars.append(IrrChar("sgn.St", q, one_dim(quad, True)))
    for i in range(1, (q - 3) // 2 + 1):
        j = -i % (q - 1)
        vals = []
        for kind, x, y in info:
            if kind == "a":
                vals.append(zeta(alpha(i, x) + alpha(j, x)) * (q + 1))
            elif kind == "b":
                vals.append(zeta(alpha(i, x) + alpha(j, x)))
            elif kind == "c":
                vals.append(zeta(alpha(i, x) + alpha(j, y)) + zeta(alpha(i, y) + alpha(j, x)))
            else:
                vals.append(CycNumber.zero(1))
        chars.append(IrrChar(f"PS({i})", q + 1, vals))
    for l in range(1, (q - 1) // 2 + 1):
        vals = []
        for kind, x, y in info:
            if kind == "a":
                vals.append(zeta(phi(l, (x, 0))) * (q - 1))
            elif kind == "b":
                vals.append(-zeta(phi(l, (x, 0))))
            elif kind == "c":
                vals.append(CycNumber.zero(1))
            else:
                vals.append(-(zeta(phi(l, x)) + zeta(phi(l, ext.frob(x)))))
        chars.append(IrrChar(f"Cusp({l})", q - 1, vals))

    table = CharacterTable(q, [c.size for c in classes], chars, len(enumerate_group(spec)))
    _validate(table)
    return table


def _validate(table: CharacterTable) -> None:
    if len(table.chars) != len(table.class_sizes):
        raise CharacterTableError("number of characters differs from number of classes")
    if sum(c.dim ** 2 for c in table.chars) != table.group_order:
        raise CharacterTableError("sum of squared dimensions differs from |G|")
    for i, a in enumerate(table.chars):
        if a.values[_identity_class(table)] != a.dim:
            raise CharacterTableError(f"{a.name}: value at identity is not the dimension")
        for j, b in enumerate(table.chars):
            ip = table.inner(a.values, b.values)
            if ip != (1 if i == j else 0):
                raise CharacterTableError(f"<{a.name}, {b.name}> = {ip}")


def _identity_class(table: CharacterTable) -> int:
    return table.class_sizes.index(1)


@dataclass
class AssertionReport:
    q: int
    orbit_index: int
    orbit_size: int
    multiplicities: dict[str, int]
    steinberg_multiplicity: int
    violators: list[str]
    sum_squares: int
    end_dimension: int
    dimension_check: bool

    @property
    def passed(self) -> bool:
        return not self.violators and self.sum_squares == self.end_dimension and self.dimension_check

    def to_dict(self) -> dict:
        return {"q": self.q, "orbit": {"index": self.orbit_index, "size": self.orbit_size},
                "multiplicities": self.multiplicities, "steinberg_multiplicity": self.steinberg_multiplicity,
                "violators": self.violators, "sum_squares": self.sum_squares,
                "end_dimension": self.end_dimension, "dimension_check": self.dimension_check,
                "passed": self.passed}


def multiplicities(spec: FieldSpec, o: Orbit, table: CharacterTable) -> dict[str, int]:
    fix = fix_counts(spec, o)
    out = {}
    for ch in table.chars:
        ip = table.inner(fix, ch.values)
        # fix is rational, so <fix, chi> = <chi, fix>; the value must be a natural number
        r = ip.as_rational() if isinstance(ip, CycNumber) else Fraction(ip)
        if r.denominator != 1 or r < 0:
            raise CharacterTableError(f"multiplicity of {ch.name} is {r}")
        out[ch.name] = int(r)
    return out


def verify_assertion(spec: FieldSpec, o: Orbit, table: CharacterTable | None = None) -> AssertionReport:
    table = table or character_table_pgl2(spec)
    mult = multiplicities(spec, o, table)
    violators = [name for name, m in mult.items() if name != "St" and m > 1]
    dims = {c.name: c.dim for c in table.chars}
    return AssertionReport(
        q=spec.q, orbit_index=o.index, orbit_size=o.size, multiplicities=mult,
        steinberg_multiplicity=mult["St"], violators=violators,
        sum_squares=sum(m * m for m in mult.values()), end_dimension=end_dimension(spec, o),
        dimension_check=sum(m * dims[n] for n, m in mult.items()) == o.size,
    )


# -- diagnostics on the nilpotent cone --------------------------------------

def nilpotent_cone(spec: FieldSpec):
    nil = regular_nilpotent_orbit(spec)
    return next(c for c in closed_orbits(spec, "lie") if c.orbit == nil)


def quadratic_functional(spec: FieldSpec, points) -> list[int]:
    """l(f) = sum of eta(t) f(t n_v) over the nonzero nilpotents t n_v (eta quadratic)."""
    weight = {}
    for v in projective_line(spec):
        # n_v = v w^T with w = (-v2, v1); rescaling v rescales n_v by a square
        n = AlgElement(spec.neg(spec.mul(v[0], v[1])), spec.mul(v[0], v[0]), spec.neg(spec.mul(v[1], v[1])))
        for t in range(1, spec.q):
            weight[alg_scale(spec, t, n)] = 1 if spec.square(t) else -1
    return [weight.get(pt, 0) for pt in points]


@dataclass
class ConeDiagnostic:
    q: int
    dim_weightless: int
    dim_restricted_cuspidal: int
    functional_kills_cuspidal: bool
    functional_kills_weightless: bool
    weightless_in_kernel_dim: int
    dim_ker_kappa_trivial: int
    dim_weightless_on_orbit: int

    @property
    def explains_gap(self) -> bool:
        return (self.functional_kills_cuspidal and not self.functional_kills_weightless
                and self.weightless_in_kernel_dim == self.dim_restricted_cuspidal)

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__} | {"explains_gap": self.explains_gap}


def cone_diagnostic(spec: FieldSpec) -> ConeDiagnostic:
    """Locate the gap between the cuspidal and weightless spaces on the nilpotent cone.

    The quadratic-character functional vanishes on every restricted cuspidal
    function (for elliptic xi the eta-weighted sum of psi(tr(xi z)) over the
    cone is a Gauss sum times the sum of eta over an anisotropic binary form,
    which is 0) but not on the weightless space.  Also compares ker kappa_1
    on S(N) with the restriction of the weightless space to N.
    """
    cone = nilpotent_cone(spec)
    pts = cone.closure_points
    sw = weightless_space(spec, cone)
    sc = restricted_cuspidal(cone, cuspidal_space(spec, "lie"))
    ell = [CycNumber.rational(w) for w in quadratic_functional(spec, pts)]

    def kills(space):
        return all(sum((v * w for v, w in zip(row, ell)), CycNumber.zero(1)).is_zero()
                   for row in space.vectors())

    with_l = kernel_basis([ell] + [list(r) for r in kernel_basis(sw.vectors(), pts).vectors()], pts)
    nil = cone.orbit.points
    index = {pt: i for i, pt in enumerate(nil)}
    rows = []
    for z in scaling_transversal(spec):
        row = [0] * len(nil)
        for t in range(1, spec.q):
            row[index[alg_scale(spec, t, z)]] = 1
        rows.append(row)
    ker_k = kernel_basis(rows, nil)
    return ConeDiagnostic(
        q=spec.q, dim_weightless=sw.dim, dim_restricted_cuspidal=sc.dim,
        functional_kills_cuspidal=kills(sc), functional_kills_weightless=kills(sw),
        weightless_in_kernel_dim=with_l.dim, dim_ker_kappa_trivial=ker_k.dim,
        dim_weightless_on_orbit=project(sw, nil).dim,
    )
