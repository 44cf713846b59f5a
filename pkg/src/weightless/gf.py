"""Odd finite fields F_q, q = p^k, with deterministic modulus and generator.

Elements are encoded as integers ``sum(c_i * p**i)`` over the polynomial
basis ``1, t, ..., t^(k-1)``.  Integer order on the encoding is the
lexicographic order on ``(c_{k-1}, ..., c_0)``; it is used everywhere a
"least" element is chosen, so every choice is reproducible.

Heavy enumeration code works with the raw integer encodings through the
``FieldSpec`` table methods; ``FieldElement`` is the user-facing wrapper.
"""
from __future__ import annotations

from itertools import product
from typing import Iterator, Sequence

from .errors import CharAtZero, EvenCharacteristic, FieldTooLarge, NotPrime

DEFAULT_BOUND = 49
_TABLE_LIMIT = 400


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``q == p**k`` or None."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            return (p, k) if q == 1 else None
    return None


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over F_p as coefficient lists, lowest degree first ---------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        f = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - f * c) % p
        _trim(a)
    return a


def _monic_polys(p: int, degree: int) -> Iterator[list[int]]:
    """Monic polynomials of the given degree, in increasing encoding order."""
    for low in product(range(p), repeat=degree):
        yield list(reversed(low)) + [1]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg <= 0:
        return False
    for d in range(1, deg // 2 + 1):
        for div in _monic_polys(p, d):
            if not _polymod(poly, div, p):
                return False
    return True


class FieldSpec:
    """The field F_q with its tables.  Immutable after construction."""

    __slots__ = ("p", "k", "q", "modulus", "generator", "_digits", "_log",
                 "_exp", "_trace", "_add", "_mul")

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = modulus
        q = self.q
        self._digits = [tuple((i // p ** j) % p for j in range(k)) for i in range(q)]
        self.generator = self._find_generator()
        exp = [0] * (q - 1)
        log = [None] * q
        x = 1
        for j in range(q - 1):
            exp[j] = x
            log[x] = j
            x = self._slow_mul(x, self.generator)
        self._exp = exp
        self._log = log
        self._trace = [self._slow_trace(i) for i in range(q)]
        if q <= _TABLE_LIMIT:
            self._add = [[self._slow_add(a, b) for b in range(q)] for a in range(q)]
            self._mul = [[self.mul(a, b) for b in range(q)] for a in range(q)]
        else:
            self._add = None
            self._mul = None

    # -- construction helpers -------------------------------------------
    def _encode(self, coeffs: Sequence[int]) -> int:
        p = self.p
        return sum((c % p) * p ** j for j, c in enumerate(coeffs))

    def _slow_add(self, a: int, b: int) -> int:
        da, db = self._digits[a], self._digits[b]
        return self._encode([x + y for x, y in zip(da, db)])

    def _slow_mul(self, a: int, b: int) -> int:
        da, db = self._digits[a], self._digits[b]
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return self._encode(_polymod(prod, self.modulus, self.p))

    def _slow_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return r

    def _find_generator(self) -> int:
        n = self.q - 1
        factors = _prime_factors(n)
        for g in range(1, self.q):
            if all(self._slow_pow(g, n // r) != 1 for r in factors):
                return g
        raise AssertionError("no primitive root found")  # pragma: no cover

    def _slow_trace(self, a: int) -> int:
        total, x = 0, a
        for _ in range(self.k):
            total = self._slow_add(total, x)
            x = self._slow_pow(x, self.p)
        assert total < self.p, "trace must land in the prime field"
        return total

    # -- table arithmetic on encodings ----------------------------------
    def add(self, a: int, b: int) -> int:
        if self._add is not None:
            return self._add[a][b]
        if self.k == 1:
            return (a + b) % self.p
        return self._slow_add(a, b)

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        return self._encode([-c for c in self._digits[a]])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._exp[-self._log[a] % (self.q - 1)]

    def power(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e > 0 else 1
        return self._exp[self._log[a] * e % (self.q - 1)]

    def log(self, a: int) -> int:
        if a == 0:
            raise CharAtZero("discrete log of 0 is undefined")
        return self._log[a]

    def exp(self, j: int) -> int:
        return self._exp[j % (self.q - 1)]

    def trace(self, a: int) -> int:
        return self._trace[a]

    def digits(self, a: int) -> tuple[int, ...]:
        return self._digits[a]

    def square(self, a: int) -> bool:
        return a == 0 or self._log[a] % 2 == 0

    def from_int(self, n: int) -> int:
        """Image of an integer in the prime field."""
        return n % self.p

    # -- wrappers -------------------------------------------------------
    def element(self, value: int | Sequence[int]) -> "FieldElement":
        if isinstance(value, int):
            return FieldElement(self, value % self.p)
        if len(value) > self.k:
            raise ValueError("too many coefficients")
        return FieldElement(self, self._encode(value))

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, i) for i in range(self.q)]

    def descriptor(self) -> dict:
        return {"p": self.p, "k": self.k, "q": self.q,
                "modulus": list(self.modulus), "generator": list(self._digits[self.generator])}

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, k={self.k}, modulus={self.modulus}, generator={self.generator})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldSpec) and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))


class FieldElement:
    """An element of F_q, stored as its integer encoding."""

    __slots__ = ("spec", "index")

    def __init__(self, spec: FieldSpec, index: int):
        self.spec = spec
        self.index = index

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.digits(self.index)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise ValueError("elements of different fields")
            return other.index
        if isinstance(other, int):
            return other % self.spec.p
        return NotImplemented

    def __add__(self, other):
        return FieldElement(self.spec, self.spec.add(self.index, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.spec, self.spec.sub(self.index, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.spec, self.spec.sub(self._other(other), self.index))

    def __mul__(self, other):
        return FieldElement(self.spec, self.spec.mul(self.index, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.index))

    def __truediv__(self, other):
        return FieldElement(self.spec, self.spec.mul(self.index, self.spec.inv(self._other(other))))

    def __pow__(self, e: int):
        if e < 0:
            return FieldElement(self.spec, self.spec.power(self.spec.inv(self.index), -e))
        return FieldElement(self.spec, self.spec.power(self.index, e))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.index == other.index
        if isinstance(other, int):
            return self.index == other % self.spec.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.spec.q, self.index))

    def __bool__(self) -> bool:
        return self.index != 0

    def __repr__(self) -> str:
        if self.spec.k == 1:
            return f"{self.index}"
        terms = [f"{c}*t^{j}" if j else f"{c}" for j, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


def make_field(p: int, k: int = 1, bound: int = DEFAULT_BOUND) -> FieldSpec:
    """Build F_{p^k} with the least irreducible modulus and least primitive root."""
    if p == 2:
        raise EvenCharacteristic("characteristic 2 is excluded: a non-square is required")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be positive")
    if p ** k > bound:
        raise FieldTooLarge(f"q = {p}^{k} = {p ** k} exceeds bound {bound}")
    if k == 1:
        modulus: tuple[int, ...] = (0, 1)
    else:
        modulus = next(tuple(m) for m in _monic_polys(p, k) if is_irreducible(m, p))
    return FieldSpec(p, k, modulus)


def field_for_q(q: int, bound: int = DEFAULT_BOUND) -> FieldSpec:
    pk = prime_power(q)
    if pk is None:
        raise NotPrime(f"{q} is not a prime power")
    return make_field(pk[0], pk[1], bound=bound)


def is_square(a: FieldElement) -> bool:
    return a.spec.square(a.index)


def canonical_nonsquare(spec: FieldSpec) -> FieldElement:
    # a primitive root of an odd field is never a square
    return FieldElement(spec, spec.generator)


def absolute_trace(a: FieldElement) -> int:
    return a.spec.trace(a.index)


def char_log(m: int, a: FieldElement) -> int:
    if a.index == 0:
        raise CharAtZero("multiplicative characters are undefined at 0")
    return m * a.spec.log(a.index) % (a.spec.q - 1)


def subfield_embedding(small: FieldSpec, big: FieldSpec) -> list[int]:
    """Map encodings of ``small`` into ``big``; t goes to the least root of small's modulus."""
    if small.p != big.p or big.k % small.k:
        raise ValueError("no embedding between these fields")
    if small.k == 1:
        return list(range(small.q))

    def horner(coeffs, x):
        acc = 0
        for c in reversed(coeffs):
            acc = big.add(big.mul(acc, x), c)
        return acc

    root = next(r for r in range(big.q) if horner(small.modulus, r) == 0)
    return [horner(small.digits(i), root) for i in range(small.q)]
