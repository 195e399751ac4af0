"""Arithmetic in GF(p^n), elements stored as coefficient tuples.

Only what the Latin square constructions need: add, multiply, invert,
a primitive element and a fixed enumeration of the field.

    >>> F = make_field(2, 2)
    >>> F.modulus
    (1, 1, 1)
    >>> x = F.element((0, 1))
    >>> fmul(x, x).coeffs
    (1, 1)
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import FieldMismatch, NotPrime, NotPrimePower, OrderTooLarge, ZeroInverse

MAX_ORDER = 2 ** 16


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, n)`` with ``q == p**n``; raise NotPrimePower otherwise."""
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    p = next(f for f in itertools.count(2) if q % f == 0)
    n = 0
    r = q
    while r % p == 0:
        r //= p
        n += 1
    if r != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    return p, n


def factorize(m: int) -> dict[int, int]:
    """Prime factorization ``{p: exponent}`` by trial division."""
    out: dict[int, int] = {}
    f = 2
    while f * f <= m:
        while m % f == 0:
            out[f] = out.get(f, 0) + 1
            m //= f
        f += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


# -- polynomials over GF(p): tuples, constant term first, no trailing zeros --

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _polymod(a, m, p):
    """Remainder of a modulo the monic polynomial m."""
    a = list(a)
    dm = len(m) - 1
    for top in range(len(a) - 1, dm - 1, -1):
        c = a[top] % p
        if c:
            shift = top - dm
            for i, mi in enumerate(m):
                a[shift + i] = (a[shift + i] - c * mi) % p
    return _trim(x % p for x in a[:dm])


def _is_irreducible(m, p):
    n = len(m) - 1
    if n == 1:
        return True
    for deg in range(1, n // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if not _polymod(m, low + (1,), p):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^n) defined by a monic irreducible ``modulus`` (constant term first)."""

    p: int
    n: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        m = tuple(int(c) for c in self.modulus)
        if len(m) != self.n + 1 or m[-1] != 1 or any(not 0 <= c < self.p for c in m):
            raise ValueError(f"modulus {m} is not monic of degree {self.n} over GF({self.p})")
        if not _is_irreducible(m, self.p):
            raise ValueError(f"modulus {m} is reducible over GF({self.p})")
        object.__setattr__(self, "modulus", m)

    @property
    def q(self) -> int:
        return self.p ** self.n

    def element(self, coeffs) -> FieldElement:
        c = tuple(int(x) % self.p for x in coeffs)
        if len(c) > self.n:
            c = _polymod(c, self.modulus, self.p)
        return FieldElement(c + (0,) * (self.n - len(c)), self)

    def from_int(self, v: int) -> FieldElement:
        """Element whose coefficients are the base-p digits of ``v``."""
        digits = []
        for _ in range(self.n):
            v, r = divmod(v, self.p)
            digits.append(r)
        return FieldElement(tuple(digits), self)

    @property
    def zero(self) -> FieldElement:
        return FieldElement((0,) * self.n, self)

    @property
    def one(self) -> FieldElement:
        return FieldElement((1,) + (0,) * (self.n - 1), self)

    def __repr__(self):
        return f"FieldSpec(p={self.p}, n={self.n}, modulus={self.modulus})"


@dataclass(frozen=True)
class FieldElement:
    coeffs: tuple[int, ...]
    spec: FieldSpec

    def __int__(self):
        return sum(c * self.spec.p ** i for i, c in enumerate(self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __add__(self, other):
        return fadd(self, other)

    def __sub__(self, other):
        return fadd(self, -other)

    def __neg__(self):
        p = self.spec.p
        return FieldElement(tuple((-c) % p for c in self.coeffs), self.spec)

    def __mul__(self, other):
        return fmul(self, other)

    def __pow__(self, e: int):
        if e < 0:
            return finv(self) ** (-e)
        result, base = self.spec.one, self
        while e:
            if e & 1:
                result = fmul(result, base)
            base = fmul(base, base)
            e >>= 1
        return result

    def __repr__(self):
        return f"GF({self.spec.q}){list(self.coeffs)}"


def _check(a: FieldElement, b: FieldElement):
    if a.spec != b.spec:
        raise FieldMismatch(f"{a.spec!r} vs {b.spec!r}")


def fadd(a: FieldElement, b: FieldElement) -> FieldElement:
    _check(a, b)
    p = a.spec.p
    return FieldElement(tuple((x + y) % p for x, y in zip(a.coeffs, b.coeffs)), a.spec)


def fmul(a: FieldElement, b: FieldElement) -> FieldElement:
    _check(a, b)
    spec = a.spec
    prod = [0] * (2 * spec.n - 1)
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                prod[i + j] += x * y
    return spec.element(_polymod(prod, spec.modulus, spec.p))


def finv(a: FieldElement) -> FieldElement:
    if not a:
        raise ZeroInverse("zero has no multiplicative inverse")
    return a ** (a.spec.q - 2)


@lru_cache(maxsize=None)
def make_field(p: int, n: int = 1) -> FieldSpec:
    """GF(p^n) using the lexicographically smallest monic irreducible modulus.

    Candidates are compared as coefficient tuples, constant term first.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if n < 1:
        raise ValueError("exponent must be >= 1")
    if p ** n > MAX_ORDER:
        raise OrderTooLarge(f"{p}^{n} exceeds {MAX_ORDER}")
    for low in itertools.product(range(p), repeat=n):
        m = low + (1,)
        if _is_irreducible(m, p):
            return FieldSpec(p, n, m)
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


def field_of_order(q: int) -> FieldSpec:
    return make_field(*prime_power(q))


def multiplicative_order(a: FieldElement) -> int:
    if not a:
        raise ZeroInverse("zero has no multiplicative order")
    one = a.spec.one
    x, k = a, 1
    while x != one:
        x = fmul(x, a)
        k += 1
    return k


@lru_cache(maxsize=None)
def primitive_element(spec: FieldSpec) -> FieldElement:
    """First nonzero element, by integer encoding, of order q - 1."""
    q = spec.q
    for v in range(1, q):
        a = spec.from_int(v)
        if multiplicative_order(a) == q - 1:
            return a
    raise AssertionError("unreachable: the multiplicative group is cyclic")


@lru_cache(maxsize=None)
def enumerate_field(spec: FieldSpec) -> tuple[FieldElement, ...]:
    """All elements as ``0, 1, a, a^2, ..., a^(q-2)`` with ``a`` primitive."""
    alpha = primitive_element(spec)
    out = [spec.zero, spec.one]
    x = alpha
    for _ in range(spec.q - 2):
        out.append(x)
        x = fmul(x, alpha)
    return tuple(out)
