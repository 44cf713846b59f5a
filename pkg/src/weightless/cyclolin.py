"""Exact arithmetic in Q(zeta_n) and exact linear algebra over it.

Numbers are coefficient vectors in the power basis ``1, z, ..., z^(d-1)``
reduced modulo the n-th cyclotomic polynomial, so zero testing is
syntactic.  Rationals are ``gmpy2.mpq``.

Matrices are handled in a "native" form during elimination: for d == 1
an entry is an ``mpq``; otherwise it is either the int ``0`` or a nonzero
tuple of ``mpq`` of length d.  ``SubspaceBasis`` stores native rows.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from gmpy2 import mpq

from .errors import AmbientMismatch

MAX_CONDUCTOR = 5000

Q0 = mpq(0)
Q1 = mpq(1)


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _to_mpq(x) -> mpq:
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1 or n > MAX_CONDUCTOR:
        raise ValueError(f"conductor {n} out of range")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num, rem = poly_divmod(num, cyclotomic_polynomial(d))
            assert not any(rem)
    return tuple(num)


def poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    """Divide polynomials with exact (rational or integer) coefficients; b monic or unit-leading."""
    a = list(a)
    lead = b[-1]
    db = len(b) - 1
    if len(a) - 1 < db:
        return [0], a
    quot = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            f = c // lead if isinstance(c, int) and c % lead == 0 else Fraction(c) / lead
            quot[i - db] = f
            for j, bc in enumerate(b):
                a[i - db + j] -= f * bc
    rem = a[:db] if db else [0]
    return quot, rem


class CyclotomicField:
    """Reduction data for Q(zeta_n).  Use :func:`field` to get the cached instance."""

    def __init__(self, n: int):
        self.n = n
        self.phi = cyclotomic_polynomial(n)
        self.d = d = len(self.phi) - 1
        # power[j] = zeta^j reduced, for 0 <= j < max(n, 2d - 1)
        top = max(n, 2 * d - 1)
        cur = [Q0] * d
        cur[0] = Q1
        powers = []
        for _ in range(top):
            powers.append(tuple(cur))
            lead = cur[-1]
            cur = [Q0] + cur[:-1]
            if lead:
                for i in range(d):
                    cur[i] -= lead * self.phi[i]
        self.power = powers

    # -- tuple arithmetic --------------------------------------------------
    def zero(self) -> tuple:
        return (Q0,) * self.d

    def one(self) -> tuple:
        return self.power[0]

    def reduce(self, poly: Sequence) -> tuple:
        """Reduce a polynomial in zeta of any length."""
        d = self.d
        out = [_to_mpq(c) for c in poly[:d]] + [Q0] * max(0, d - len(poly))
        n = self.n
        for j in range(d, len(poly)):
            c = poly[j]
            if c:
                c = _to_mpq(c)
                pj = self.power[j % n]
                for i in range(d):
                    if pj[i]:
                        out[i] += c * pj[i]
        return tuple(out)

    def mul(self, a: Sequence, b: Sequence) -> tuple:
        d = self.d
        prod = [Q0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:d]
        for j in range(d, 2 * d - 1):
            c = prod[j]
            if c:
                pj = self.power[j]
                for i in range(d):
                    if pj[i]:
                        out[i] += c * pj[i]
        return tuple(out)

    def mul_matrix(self, a: Sequence) -> list[list]:
        """Matrix M with M @ v == a * v in coordinates."""
        d = self.d
        cols = [self.mul(a, self.power[j]) for j in range(d)]
        return [[cols[j][i] for j in range(d)] for i in range(d)]

    def inv(self, a: Sequence) -> tuple:
        m = self.mul_matrix(a)
        e0 = [Q1] + [Q0] * (self.d - 1)
        return tuple(_solve_rational(m, e0))

    def conj(self, a: Sequence) -> tuple:
        n = self.n
        poly = [Q0] * n
        for i, c in enumerate(a):
            if c:
                poly[(-i) % n] += c
        return self.reduce(poly)

    def root(self, j: int) -> tuple:
        return self.power[j % self.n]


@lru_cache(maxsize=None)
def field(n: int) -> CyclotomicField:
    return CyclotomicField(n)


def _solve_rational(m: list[list], rhs: list) -> list:
    """Solve a square nonsingular rational system."""
    n = len(m)
    a = [list(row) + [rhs[i]] for i, row in enumerate(m)]
    for c in range(n):
        piv = next(i for i in range(c, n) if a[i][c])
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [a[i][n] for i in range(n)]


def _embed_tuple(coeffs: Sequence, n: int, big: int) -> tuple:
    if n == big:
        return tuple(coeffs)
    step = big // n
    fb = field(big)
    poly = [Q0] * big
    for i, c in enumerate(coeffs):
        if c:
            poly[(i * step) % big] += c
    return fb.reduce(poly)


class CycNumber:
    """An exact element of Q(zeta_n)."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Sequence):
        f = field(n)
        if len(coeffs) != f.d:
            coeffs = f.reduce(list(coeffs))
        self.n = n
        self.coeffs = tuple(_to_mpq(c) for c in coeffs)

    @classmethod
    def rational(cls, x, n: int = 1) -> "CycNumber":
        d = field(n).d
        return cls(n, (_to_mpq(x),) + (Q0,) * (d - 1))

    @classmethod
    def zero(cls, n: int = 1) -> "CycNumber":
        return cls(n, field(n).zero())

    def embed(self, big: int) -> "CycNumber":
        if big % self.n:
            raise ValueError(f"Q(zeta_{self.n}) does not embed in Q(zeta_{big})")
        return CycNumber(big, _embed_tuple(self.coeffs, self.n, big))

    def _coerce(self, other) -> tuple["CycNumber", "CycNumber"]:
        if not isinstance(other, CycNumber):
            other = CycNumber.rational(other, self.n)
        if other.n == self.n:
            return self, other
        big = lcm(self.n, other.n)
        return self.embed(big), other.embed(big)

    def __add__(self, other):
        a, b = self._coerce(other)
        return CycNumber(a.n, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._coerce(other)
        return CycNumber(a.n, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return CycNumber(self.n, tuple(-x for x in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) or type(other) is type(Q0):
            c = _to_mpq(other)
            return CycNumber(self.n, tuple(x * c for x in self.coeffs))
        a, b = self._coerce(other)
        return CycNumber(a.n, field(a.n).mul(a.coeffs, b.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "CycNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return CycNumber(self.n, field(self.n).inv(self.coeffs))

    def __truediv__(self, other):
        if not isinstance(other, CycNumber):
            other = CycNumber.rational(other, self.n)
        return self * other.inverse()

    def __pow__(self, e: int):
        out = CycNumber.rational(1, self.n)
        base = self if e >= 0 else self.inverse()
        for _ in range(abs(e)):
            out = out * base
        return out

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        c = self.coeffs[0]
        return Fraction(int(c.numerator), int(c.denominator))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycNumber):
            try:
                other = CycNumber.rational(other, self.n)
            except (TypeError, ValueError):
                return NotImplemented
        a, b = self._coerce(other)
        return a.coeffs == b.coeffs

    __hash__ = None

    def to_json(self) -> dict:
        return {"conductor": self.n, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "CycNumber":
        return cls(obj["conductor"], [mpq(c) for c in obj["coeffs"]])

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if i == 0 else f"{c}*z{self.n}^{i}")
        return " + ".join(terms) or "0"


def root_of_unity(n: int, j: int) -> CycNumber:
    return CycNumber(n, field(n).root(j))


def conjugate(z: CycNumber) -> CycNumber:
    return CycNumber(z.n, field(z.n).conj(z.coeffs))


# -- native matrices -----------------------------------------------------

def _conductor_of(x) -> int:
    return x.n if isinstance(x, CycNumber) else 1


def to_native(x, n: int):
    """Convert a scalar to the native entry type of Q(zeta_n)."""
    f = field(n)
    if isinstance(x, CycNumber):
        coeffs = x.coeffs if x.n == n else _embed_tuple(x.coeffs, x.n, n)
    else:
        coeffs = (_to_mpq(x),) + (Q0,) * (f.d - 1)
    if f.d == 1:
        return coeffs[0]
    return tuple(coeffs) if any(coeffs) else 0


def from_native(v, n: int) -> CycNumber:
    f = field(n)
    if f.d == 1:
        return CycNumber(n, (v,))
    if not v:
        return CycNumber(n, f.zero())
    return CycNumber(n, v)


def embed_native_row(row: Sequence, n: int, big: int) -> list:
    if n == big:
        return list(row)
    fb = field(big)
    d_small = field(n).d
    out = []
    for v in row:
        if not v:
            out.append(Q0 if fb.d == 1 else 0)
            continue
        coeffs = (v,) if d_small == 1 else v
        t = _embed_tuple(coeffs, n, big)
        out.append(t[0] if fb.d == 1 else (t if any(t) else 0))
    return out


def native_matrix(rows: Iterable[Sequence], conductor: int | None = None) -> tuple[list[list], int]:
    rows = [list(r) for r in rows]
    n = conductor or 1
    if conductor is None:
        for r in rows:
            for x in r:
                c = _conductor_of(x)
                if c != 1:
                    n = lcm(n, c)
    return [[to_native(x, n) for x in r] for r in rows], n


def _scale_rows_factory(n: int):
    """Return (is_zero, normalize, axpy) closures for the native field."""
    f = field(n)
    d = f.d
    if d == 1:
        def normalize(row, c):
            inv = 1 / row[c]
            return [x * inv if x else Q0 for x in row]

        def eliminate(target, factor, nz):
            for j, v in nz:
                target[j] -= factor * v
        return normalize, eliminate

    def normalize(row, c):
        m = f.mul_matrix(f.inv(row[c]))
        out = []
        for x in row:
            if not x:
                out.append(0)
            else:
                out.append(tuple(sum(mi[k] * x[k] for k in range(d) if x[k]) for mi in m))
        return out

    def eliminate(target, factor, nz):
        m = f.mul_matrix(factor)
        rng = range(d)
        for j, v in nz:
            prod = [sum(mi[k] * v[k] for k in rng if v[k]) for mi in m]
            cur = target[j]
            if cur:
                res = tuple(a - b for a, b in zip(cur, prod))
                target[j] = res if any(res) else 0
            else:
                res = tuple(-b for b in prod)
                target[j] = res if any(res) else 0
    return normalize, eliminate


def rref(rows: list[list], n: int, ncols: int | None = None) -> tuple[list[list], list[int]]:
    """Reduced row-echelon form of a native matrix (rows are consumed)."""
    if not rows:
        return [], []
    ncols = len(rows[0]) if ncols is None else ncols
    normalize, eliminate = _scale_rows_factory(n)
    work = [r for r in rows if any(1 for x in r if x)]
    pivots: list[int] = []
    done: list[list] = []
    for c in range(ncols):
        idx = next((i for i, r in enumerate(work) if r[c]), None)
        if idx is None:
            continue
        prow = normalize(work.pop(idx), c)
        nz = [(j, prow[j]) for j in range(c, ncols) if prow[j]]
        rest = []
        for r in work:
            fac = r[c]
            if fac:
                eliminate(r, fac, nz)
                if not any(1 for x in r if x):
                    continue
            rest.append(r)
        work = rest
        pivots.append(c)
        done.append(prow)
        if not work:
            break
    # back substitution, bottom pivot upward
    for k in range(len(done) - 1, -1, -1):
        c = pivots[k]
        nz = [(j, done[k][j]) for j in range(c, ncols) if done[k][j]]
        for i in range(k):
            fac = done[i][c]
            if fac:
                eliminate(done[i], fac, nz)
    return done, pivots


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """Canonical (reduced row-echelon) basis of a space of functions on ``ambient``."""

    ambient: tuple
    conductor: int
    rows: tuple
    pivots: tuple

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def vectors(self) -> list[list[CycNumber]]:
        return [[from_native(v, self.conductor) for v in r] for r in self.rows]

    def native_rows(self, n: int | None = None) -> list[list]:
        n = n or self.conductor
        return [embed_native_row(r, self.conductor, n) for r in self.rows]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubspaceBasis):
            return NotImplemented
        if self.ambient != other.ambient or self.pivots != other.pivots:
            return False
        n = lcm(self.conductor, other.conductor)
        return self.native_rows(n) == other.native_rows(n)

    __hash__ = None

    def __repr__(self) -> str:
        return f"SubspaceBasis(dim={self.dim}, |ambient|={len(self.ambient)}, conductor={self.conductor})"


def _basis_from_native(rows: list[list], n: int, ambient: Sequence) -> SubspaceBasis:
    red, piv = rref(rows, n, len(ambient))
    return SubspaceBasis(tuple(ambient), n, tuple(tuple(r) for r in red), tuple(piv))


def echelonize(rows: Iterable[Sequence], ambient: Sequence | None = None,
               conductor: int | None = None) -> SubspaceBasis:
    mat, n = native_matrix(rows, conductor)
    if ambient is None:
        ambient = tuple(range(len(mat[0]) if mat else 0))
    if any(len(r) != len(ambient) for r in mat):
        raise AmbientMismatch("row length differs from ambient size")
    return _basis_from_native(mat, n, ambient)


def _kernel_from_rref(red: list[list], piv: list[int], n: int, ncols: int) -> list[list]:
    d = field(n).d
    zero = Q0 if d == 1 else 0
    one = Q1 if d == 1 else field(n).one()
    pivset = set(piv)
    vecs = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [zero] * ncols
        v[free] = one
        for row, pc in zip(red, piv):
            x = row[free]
            if x:
                v[pc] = -x if d == 1 else tuple(-c for c in x)
        vecs.append(v)
    return vecs


def kernel_basis(rows: Iterable[Sequence], ambient: Sequence, conductor: int | None = None) -> SubspaceBasis:
    """Canonical basis of {f : M f = 0} for the constraint matrix M."""
    mat, n = native_matrix(rows, conductor)
    return kernel_from_native(mat, n, ambient)


def kernel_from_native(mat: list[list], n: int, ambient: Sequence) -> SubspaceBasis:
    ncols = len(ambient)
    red, piv = rref(mat, n, ncols)
    vecs = _kernel_from_rref(red, piv, n, ncols)
    # the free-column kernel basis is already reduced on the free columns;
    # echelonize to obtain the canonical representative
    return _basis_from_native(vecs, n, ambient)


def basis_from_native(rows: list[list], n: int, ambient: Sequence) -> SubspaceBasis:
    if any(len(r) != len(ambient) for r in rows):
        raise AmbientMismatch("row length differs from ambient size")
    return _basis_from_native([list(r) for r in rows], n, ambient)


def stacked_rank(*spaces: SubspaceBasis) -> int:
    ambient = spaces[0].ambient
    if any(s.ambient != ambient for s in spaces):
        raise AmbientMismatch("subspaces live on different point lists")
    n = 1
    for s in spaces:
        n = lcm(n, s.conductor)
    rows = [r for s in spaces for r in s.native_rows(n)]
    _, piv = rref(rows, n, len(ambient))
    return len(piv)


@dataclass(frozen=True)
class Comparison:
    relation: str  # equal | A_strictly_in_B | B_strictly_in_A | incomparable
    dim_a: int
    dim_b: int
    dim_intersection: int

    @property
    def a_in_b(self) -> bool:
        return self.relation in ("equal", "A_strictly_in_B")


def subspace_compare(a: SubspaceBasis, b: SubspaceBasis) -> Comparison:
    joint = stacked_rank(a, b)
    inter = a.dim + b.dim - joint
    a_in_b = joint == b.dim
    b_in_a = joint == a.dim
    if a_in_b and b_in_a:
        rel = "equal"
    elif a_in_b:
        rel = "A_strictly_in_B"
    elif b_in_a:
        rel = "B_strictly_in_A"
    else:
        rel = "incomparable"
    return Comparison(rel, a.dim, b.dim, inter)


def project(space: SubspaceBasis, points: Sequence) -> SubspaceBasis:
    """Restrict every function in ``space`` to ``points`` (a subset of its ambient)."""
    index = {pt: i for i, pt in enumerate(space.ambient)}
    cols = [index[pt] for pt in points]
    rows = [[r[c] for c in cols] for r in space.rows]
    return _basis_from_native(rows, space.conductor, tuple(points))


class IncrementalRank:
    """Rank of a growing set of vectors, one vector at a time.

    Keeps a row-echelon basis with unit pivots; ``add`` reduces a new
    vector against it and reports whether the rank grew.
    """

    def __init__(self, length: int, conductor: int):
        self.length = length
        self.n = conductor
        self._normalize, self._eliminate = _scale_rows_factory(conductor)
        self._basis: list[tuple[int, list, list]] = []

    @property
    def rank(self) -> int:
        return len(self._basis)

    @property
    def full(self) -> bool:
        return self.rank == self.length

    def add(self, vector: Sequence) -> bool:
        v = list(vector)
        for pc, row, nz in self._basis:
            fac = v[pc]
            if fac:
                self._eliminate(v, fac, nz)
        pc = next((j for j, x in enumerate(v) if x), None)
        if pc is None:
            return False
        row = self._normalize(v, pc)
        nz = [(j, row[j]) for j in range(pc, self.length) if row[j]]
        self._basis.append((pc, row, nz))
        return True
