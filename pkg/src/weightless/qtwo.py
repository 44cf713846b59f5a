"""Restriction-of-Fourier surjectivity experiments over extension towers.

For polynomial maps P: V -> A^r, Q: V^v -> A^r over F_q and an open set
U = {D != 0} of A^r, the map sending a function supported on
Q^-1(U)(F_{q^n}) to the restriction of its Fourier transform to
X_n = P^-1(0)(F_{q^n}) is onto iff the character matrix

    M[x, xi] = zeta_p ** Tr(<xi, x>),   x in X_n, xi in Q^-1(U)(F_{q^n})

has rank |X_n|.  Columns are streamed through an incremental exact rank
and the scan stops as soon as the rank reaches |X_n|.

Flatness of P and Q, the absence of affine lines in X, and absolute
irreducibility of the fibers of Q are NOT checked; configs carry an
attestation flag and every report restates these hypotheses.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Sequence

from .cyclolin import IncrementalRank, field as cyc_field
from .errors import BudgetExceeded, ConfigError
from .gf import FieldSpec, field_for_q, make_field, subfield_embedding

DEFAULT_BUDGET = 20000
BUDGET_ENV = "WEIGHTLESS_BUDGET"

UNCHECKED_HYPOTHESES = [
    "P is flat and surjective",
    "X = P^-1(0) contains no image of a non-constant affine morphism A^1 -> V over the algebraic closure",
    "Q is flat with absolutely irreducible fibers",
    "deg Q = deg P",
]


def budget_from_env() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


Term = tuple  # (coefficient, exponent tuple)


def _parse_coeff(c, spec: FieldSpec) -> int:
    if isinstance(c, int):
        return spec.from_int(c)
    if isinstance(c, list) and all(isinstance(x, int) for x in c):
        return spec.element(c).index
    raise ConfigError(f"bad coefficient {c!r}")


@dataclass
class Polynomial:
    variables: int
    terms: list[Term]  # (coefficient encoding in F_q, exponents)

    def __post_init__(self):
        for _, exps in self.terms:
            if len(exps) != self.variables or any(e < 0 for e in exps):
                raise ConfigError(f"exponent vector {exps} does not fit {self.variables} variables")

    @property
    def degree(self) -> int:
        return max((sum(e) for c, e in self.terms if c), default=0)

    def is_zero(self) -> bool:
        return not any(c for c, _ in self.terms)

    def evaluate(self, big: FieldSpec, emb: Sequence[int], point: Sequence[int]) -> int:
        acc = 0
        for c, exps in self.terms:
            if not c:
                continue
            v = emb[c]
            for x, e in zip(point, exps):
                if e:
                    v = big.mul(v, big.power(x, e))
            acc = big.add(acc, v)
        return acc


@dataclass
class PolyMap:
    variables: int
    polynomials: list[Polynomial]

    def __post_init__(self):
        if not self.polynomials:
            raise ConfigError("a polynomial map needs at least one output")
        for poly in self.polynomials:
            if poly.variables != self.variables:
                raise ConfigError("component polynomial has the wrong number of variables")
            if poly.is_zero():
                raise ConfigError("every output polynomial must be nonzero")

    @property
    def outputs(self) -> int:
        return len(self.polynomials)

    @property
    def degree(self) -> int:
        return max(p.degree for p in self.polynomials)

    def evaluate(self, big: FieldSpec, emb: Sequence[int], point: Sequence[int]) -> tuple[int, ...]:
        return tuple(p.evaluate(big, emb, point) for p in self.polynomials)


@dataclass
class OpenSetSpec:
    denominator: Polynomial

    def __post_init__(self):
        if self.denominator.is_zero():
            raise ConfigError("the open set {D != 0} needs D nonzero")

    def contains(self, big: FieldSpec, emb: Sequence[int], t: Sequence[int]) -> bool:
        return self.denominator.evaluate(big, emb, t) != 0


def _poly_from_json(obj, variables: int, spec: FieldSpec) -> Polynomial:
    try:
        terms = [(_parse_coeff(c, spec), tuple(int(e) for e in exps)) for c, exps in obj]
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"malformed polynomial {obj!r}: {exc}") from exc
    return Polynomial(variables, terms)


def polymap_from_json(obj: dict, spec: FieldSpec) -> PolyMap:
    try:
        m = int(obj["variables"])
        polys = [_poly_from_json(p, m, spec) for p in obj["polynomials"]]
    except KeyError as exc:
        raise ConfigError(f"polynomial map missing key {exc}") from exc
    return PolyMap(m, polys)


@dataclass
class Experiment:
    q: int
    n_max: int
    P: PolyMap
    Q: PolyMap
    U: OpenSetSpec
    name: str = "question2"
    hypotheses_attested: bool = False
    spec: FieldSpec | None = None

    def __post_init__(self):
        if self.P.variables != self.Q.variables:
            raise ConfigError("P and Q must act on spaces of the same dimension")
        if self.P.outputs != self.Q.outputs:
            raise ConfigError("P and Q must have the same number of outputs")
        if self.U.denominator.variables != self.P.outputs:
            raise ConfigError("D must be a polynomial in r variables")


def load_experiment(path: str | Path) -> Experiment:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"experiment file not found: {path}")
    try:
        obj = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    return experiment_from_json(obj)


def experiment_from_json(obj: dict) -> Experiment:
    try:
        spec = field_for_q(int(obj["q"]))
        P = polymap_from_json(obj["P"], spec)
        Q = polymap_from_json(obj["Q"], spec)
        D = _poly_from_json(obj["U"]["denominator"], P.outputs, spec)
        return Experiment(q=spec.q, n_max=int(obj.get("n_max", 1)), P=P, Q=Q, U=OpenSetSpec(D),
                          name=str(obj.get("name", "question2")),
                          hypotheses_attested=bool(obj.get("hypotheses_attested", False)), spec=spec)
    except KeyError as exc:
        raise ConfigError(f"experiment missing key {exc}") from exc


# -- enumeration ------------------------------------------------------------

def tower_field(spec: FieldSpec, n: int) -> tuple[FieldSpec, list[int]]:
    """F_{q^n} as F_{p^(kn)} together with the embedding of F_q."""
    big = make_field(spec.p, spec.k * n, bound=spec.q ** n)
    return big, subfield_embedding(spec, big)


def _check_budget(spec: FieldSpec, n: int, m: int, budget: int) -> None:
    size = spec.q ** (n * m)
    if size > budget:
        raise BudgetExceeded(f"q^(n m) = {spec.q}^({n}*{m}) = {size} exceeds budget {budget}")


def _points(big: FieldSpec, m: int):
    return product(range(big.q), repeat=m)


def fiber_points(P: PolyMap, n: int, spec: FieldSpec, budget: int | None = None) -> list[tuple[int, ...]]:
    budget = budget_from_env() if budget is None else budget
    _check_budget(spec, n, P.variables, budget)
    big, emb = tower_field(spec, n)
    zero = (0,) * P.outputs
    return [pt for pt in _points(big, P.variables) if P.evaluate(big, emb, pt) == zero]


def open_preimage_points(Q: PolyMap, U: OpenSetSpec, n: int, spec: FieldSpec,
                         budget: int | None = None) -> list[tuple[int, ...]]:
    budget = budget_from_env() if budget is None else budget
    _check_budget(spec, n, Q.variables, budget)
    big, emb = tower_field(spec, n)
    return [xi for xi in _points(big, Q.variables) if U.contains(big, emb, Q.evaluate(big, emb, xi))]


@dataclass
class LevelRecord:
    n: int
    x_count: int
    source_count: int
    rank: int
    surjective: bool
    columns_scanned: int
    note: str = ""

    def to_dict(self) -> dict:
        return {"n": self.n, "x_count": self.x_count, "source_count": self.source_count,
                "rank": self.rank, "surjective": self.surjective,
                "columns_scanned": self.columns_scanned, "note": self.note}


def surjectivity_check(P: PolyMap, Q: PolyMap, U: OpenSetSpec, n: int, spec: FieldSpec,
                       budget: int | None = None) -> LevelRecord:
    xs = fiber_points(P, n, spec, budget)
    if not xs:
        raise ValueError(f"X_{n} is empty")
    sources = open_preimage_points(Q, U, n, spec, budget)
    big, _ = tower_field(spec, n)
    p = spec.p
    fp = cyc_field(p)
    roots = [fp.root(t) if fp.d > 1 else fp.root(t)[0] for t in range(p)]
    inc = IncrementalRank(len(xs), p)
    scanned = 0
    for xi in sources:
        if inc.full:
            break
        col = []
        for x in xs:
            s = 0
            for a, b in zip(xi, x):
                s = big.add(s, big.mul(a, b))
            col.append(roots[big.trace(s)])
        inc.add(col)
        scanned += 1
    note = "" if sources else "U misses the image of Q at this level"
    return LevelRecord(n, len(xs), len(sources), inc.rank, inc.rank == len(xs), scanned, note)


@dataclass
class SweepResult:
    name: str
    q: int
    records: list[LevelRecord] = field(default_factory=list)
    hypotheses_attested: bool = False

    @property
    def first_surjective_n(self) -> int | None:
        return next((r.n for r in self.records if r.surjective and r.x_count), None)

    def to_dict(self) -> dict:
        return {"name": self.name, "q": self.q,
                "records": [r.to_dict() for r in self.records],
                "first_surjective_n": self.first_surjective_n,
                "hypotheses_attested": self.hypotheses_attested,
                "unchecked_hypotheses": UNCHECKED_HYPOTHESES}


def sweep(exp: Experiment, n_max: int | None = None, budget: int | None = None) -> SweepResult:
    spec = exp.spec or field_for_q(exp.q)
    n_max = exp.n_max if n_max is None else n_max
    out = SweepResult(exp.name, exp.q, hypotheses_attested=exp.hypotheses_attested)
    for n in range(1, n_max + 1):
        xs = fiber_points(exp.P, n, spec, budget)
        if not xs:
            out.records.append(LevelRecord(n, 0, 0, 0, False, 0, "empty fiber"))
            continue
        out.records.append(surjectivity_check(exp.P, exp.Q, exp.U, n, spec, budget))
    return out
