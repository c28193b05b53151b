"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored in the power basis 1, z, ..., z^(phi(n)-1) of the
primitive root z = exp(2*pi*i/n), reduced modulo the n-th cyclotomic
polynomial.  Internally the coefficients are kept as integer numerators
over one positive common denominator; :attr:`Cyclotomic.coeffs` exposes
them as :class:`fractions.Fraction`.

Operands of different conductors are embedded into the lcm conductor.
No floating point is used except in :meth:`Cyclotomic.to_complex`, which
is a debugging aid.
"""
from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

import numpy as np


class DivisionByZero(ZeroDivisionError):
    pass


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divexact(num: list[int], den: Sequence[int]) -> list[int]:
    # both lists are little-endian, den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    assert not any(num[: len(den) - 1]), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, constant term first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row k holds the reduced coordinates of z^k for 0 <= k < n."""
    phi = totient(n)
    cyc = cyclotomic_polynomial(n)
    rows = []
    cur = [1] + [0] * (phi - 1)
    for _ in range(n):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(phi):
                cur[i] -= top * cyc[i]
    return tuple(rows)


def _normalize(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        num = [-a for a in num]
        den = -den
    g = den
    for a in num:
        if a:
            g = gcd(g, a)
            if g == 1:
                break
    if g != 1:
        num = [a // g for a in num]
        den //= g
    return tuple(num), den


def _reduce(n: int, raw: Sequence[int]) -> list[int]:
    """Reduce integer coefficients of z^0, z^1, ... (any length) mod Phi_n."""
    phi = totient(n)
    table = power_table(n)
    out = [0] * phi
    for k, a in enumerate(raw):
        if not a:
            continue
        k %= n
        if k < phi:
            out[k] += a
        else:
            for i, c in enumerate(table[k]):
                if c:
                    out[i] += a * c
    return out


class Cyclotomic:
    """An element of Q(zeta_n) in reduced power-basis form."""

    __slots__ = ("conductor", "_num", "_den", "_hash")

    def __init__(self, conductor: int, num: Sequence[int], den: int = 1, *, _trusted: bool = False):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        self.conductor = conductor
        if _trusted:
            self._num, self._den = tuple(num), den
        else:
            if len(num) != totient(conductor):
                raise ValueError(f"expected {totient(conductor)} coefficients, got {len(num)}")
            self._num, self._den = _normalize(list(num), den)
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def from_raw(cls, conductor: int, raw: Sequence) -> "Cyclotomic":
        """Canonical element for sum raw[k] * z^k; raw may have any length."""
        fracs = [Fraction(x) for x in raw]
        den = 1
        for f in fracs:
            den = _lcm(den, f.denominator)
        ints = [int(f * den) for f in fracs]
        num, den = _normalize(_reduce(conductor, ints), den)
        return cls(conductor, num, den, _trusted=True)

    @classmethod
    def from_coeffs(cls, conductor: int, coeffs: Sequence) -> "Cyclotomic":
        if len(coeffs) != totient(conductor):
            raise ValueError("coefficient sequence has the wrong length")
        return cls.from_raw(conductor, coeffs)

    @classmethod
    def rational(cls, value, conductor: int = 1) -> "Cyclotomic":
        f = Fraction(value)
        num = [f.numerator] + [0] * (totient(conductor) - 1)
        return cls(conductor, num, f.denominator)

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "Cyclotomic":
        """exp(2*pi*i*k/n)."""
        return cls(n, power_table(n)[k % n], 1, _trusted=True)

    @classmethod
    def zero(cls, conductor: int = 1) -> "Cyclotomic":
        return cls(conductor, [0] * totient(conductor), 1, _trusted=True)

    @classmethod
    def one(cls, conductor: int = 1) -> "Cyclotomic":
        return cls.zeta(conductor, 0)

    # accessors ----------------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, self._den) for a in self._num)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    def is_zero(self) -> bool:
        return not any(self._num)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    # embedding ----------------------------------------------------------
    def embed(self, m: int) -> "Cyclotomic":
        """Image in Q(zeta_m); m must be a multiple of the conductor."""
        n = self.conductor
        if m == n:
            return self
        if m % n:
            raise ValueError(f"cannot embed conductor {n} into {m}")
        step = m // n
        raw = [0] * m
        for k, a in enumerate(self._num):
            raw[k * step] = a
        num, den = _normalize(_reduce(m, raw), self._den)
        return Cyclotomic(m, num, den, _trusted=True)

    def _pair(self, other) -> tuple["Cyclotomic", "Cyclotomic"]:
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.rational(other, self.conductor)
        if other.conductor == self.conductor:
            return self, other
        m = _lcm(self.conductor, other.conductor)
        return self.embed(m), other.embed(m)

    # field operations ---------------------------------------------------
    def __add__(self, other) -> "Cyclotomic":
        try:
            a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        den = _lcm(a._den, b._den)
        fa, fb = den // a._den, den // b._den
        num, den = _normalize([x * fa + y * fb for x, y in zip(a._num, b._num)], den)
        return Cyclotomic(a.conductor, num, den, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.conductor, [-x for x in self._num], self._den, _trusted=True)

    def __sub__(self, other) -> "Cyclotomic":
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.rational(other, self.conductor)
        return self + (-other)

    def __rsub__(self, other) -> "Cyclotomic":
        return (-self) + other

    def __mul__(self, other) -> "Cyclotomic":
        try:
            a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        n = a.conductor
        phi = len(a._num)
        if phi == 1:
            num, den = _normalize([a._num[0] * b._num[0]], a._den * b._den)
            return Cyclotomic(n, num, den, _trusted=True)
        raw = [0] * (2 * phi - 1)
        for i, x in enumerate(a._num):
            if x:
                for j, y in enumerate(b._num):
                    if y:
                        raw[i + j] += x * y
        num, den = _normalize(_reduce(n, raw), a._den * b._den)
        return Cyclotomic(n, num, den, _trusted=True)

    __rmul__ = __mul__

    def galois(self, k: int) -> "Cyclotomic":
        """Apply the automorphism z -> z^k (k coprime to the conductor)."""
        n = self.conductor
        if gcd(k, n) != 1:
            raise ValueError("Galois exponent must be coprime to the conductor")
        raw = [0] * n
        for i, a in enumerate(self._num):
            raw[(i * k) % n] += a
        num, den = _normalize(_reduce(n, raw), self._den)
        return Cyclotomic(n, num, den, _trusted=True)

    def conjugate(self) -> "Cyclotomic":
        return self.galois(self.conductor - 1) if self.conductor > 2 else self

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise DivisionByZero("inverse of zero in a cyclotomic field")
        n = self.conductor
        phi = len(self._num)
        if phi == 1:
            f = Fraction(self._den, self._num[0])
            return Cyclotomic(n, [f.numerator], f.denominator)
        # product of the other Galois conjugates is rational multiple of the inverse
        prod = Cyclotomic.one(n)
        for k in range(2, n):
            if gcd(k, n) == 1:
                prod = prod * self.galois(k)
        norm = (self * prod)
        assert norm.is_rational()
        return prod * Cyclotomic.rational(Fraction(norm._den, norm._num[0]), n)

    def __truediv__(self, other) -> "Cyclotomic":
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.rational(other, self.conductor)
        return self * other.inverse()

    def __rtruediv__(self, other) -> "Cyclotomic":
        return Cyclotomic.rational(other, self.conductor) * self.inverse()

    def __pow__(self, k: int) -> "Cyclotomic":
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclotomic.one(self.conductor)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, Cyclotomic):
            try:
                other = Cyclotomic.rational(other, self.conductor)
            except (TypeError, ValueError):
                return NotImplemented
        a, b = self._pair(other)
        return a._den == b._den and a._num == b._num

    def __hash__(self) -> int:
        # normalized trace does not depend on the ambient conductor
        if self._hash is None:
            self._hash = hash(normalized_trace(self))
        return self._hash

    def sort_key(self) -> tuple[Fraction, ...]:
        return self.coeffs

    # misc ---------------------------------------------------------------
    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.conductor)
        return sum(a * z**k for k, a in enumerate(self._num)) / self._den

    def __repr__(self) -> str:
        return f"Cyclotomic({self.conductor}, {list(self._num)}, {self._den})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            terms.append(str(c) if k == 0 else (f"{c}*z" if k == 1 else f"{c}*z^{k}"))
        return " + ".join(terms) if terms else "0"

    def to_json(self) -> dict:
        return {"conductor": self.conductor, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "Cyclotomic":
        return cls.from_coeffs(int(obj["conductor"]), [Fraction(c) for c in obj["coeffs"]])


def _mobius(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def normalized_trace(a: Cyclotomic) -> Fraction:
    """Tr_{Q(zeta_n)/Q}(a) / phi(n); independent of the chosen conductor."""
    n = a.conductor
    total = Fraction(0)
    for k, x in enumerate(a._num):
        if x:
            q = n // gcd(n, k)
            total += Fraction(x * _mobius(q), totient(q))
    return total / a._den


def cyc_canonicalize(conductor: int, raw: Sequence) -> Cyclotomic:
    """Canonical representative of sum raw[k] z^k with z = zeta_conductor."""
    if conductor < 1:
        raise ValueError("conductor must be positive")
    return Cyclotomic.from_raw(conductor, raw)


def as_root_of_unity(a: Cyclotomic) -> tuple[int, int] | None:
    """Return (N, k) with a == zeta_N^k, N = lcm(2, conductor), or None."""
    n = a.conductor
    if a._den != 1:
        return None
    big = _lcm(2, n)
    if big != n:
        a = a.embed(big)
    target = a._num
    for k, row in enumerate(power_table(big)):
        if row == target:
            return big, k
    return None


def root_of_unity_order(a: Cyclotomic) -> int | None:
    """Minimal k >= 1 with a^k == 1, or None when a is not a root of unity."""
    hit = as_root_of_unity(a)
    if hit is None:
        return None
    big, k = hit
    return big // gcd(big, k)


def order_by_powers(a: Cyclotomic) -> int | None:
    """Brute-force counterpart of :func:`root_of_unity_order`."""
    bound = _lcm(2, a.conductor)
    x = a
    for k in range(1, bound + 1):
        if x == 1:
            return k
        x = x * a
    return None


class CyclotomicField:
    """Vectorised kernel for matrices over Q(zeta_n).

    A matrix is an integer array of shape (rows, cols, phi) holding
    numerators, paired with one positive common denominator.
    """

    def __init__(self, n: int):
        self.n = n
        self.phi = totient(n)
        table = np.array(power_table(n), dtype=np.int64)
        phi = self.phi
        mult = np.zeros((phi, phi, phi), dtype=np.int64)
        for i in range(phi):
            for j in range(phi):
                mult[i, j] = table[(i + j) % n]
        self._mult = mult.reshape(phi * phi, phi)
        self._table = table

    def encode(self, entries: Sequence[Sequence[Cyclotomic]]) -> tuple[np.ndarray, int]:
        rows = [[e.embed(self.n) if e.conductor != self.n else e for e in row] for row in entries]
        den = 1
        for row in rows:
            for e in row:
                den = _lcm(den, e._den)
        arr = np.zeros((len(rows), len(rows[0]), self.phi), dtype=np.int64)
        for i, row in enumerate(rows):
            for j, e in enumerate(row):
                arr[i, j] = [x * (den // e._den) for x in e._num]
        return arr, den

    def decode(self, arr: np.ndarray, den: int) -> tuple[tuple[Cyclotomic, ...], ...]:
        return tuple(
            tuple(Cyclotomic(self.n, [int(x) for x in arr[i, j]], den) for j in range(arr.shape[1]))
            for i in range(arr.shape[0])
        )

    def normalize(self, arr: np.ndarray, den: int) -> tuple[np.ndarray, int]:
        g = int(np.gcd.reduce(np.abs(arr), axis=None)) if arr.size else 0
        g = gcd(g, den)
        if g > 1:
            return arr // g, den // g
        return arr, den

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Numerator array of a @ b (denominators multiply)."""
        phi = self.phi
        if phi == 1:
            return np.einsum("ija,jka->ika", a, b)
        outer = np.einsum("ija,jkb->ikab", a, b).reshape(a.shape[0], b.shape[1], phi * phi)
        return outer @ self._mult

    def scalar_mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Elementwise product of two broadcast-compatible (..., phi) arrays."""
        phi = self.phi
        outer = (x[..., :, None] * y[..., None, :]).reshape(*np.broadcast_shapes(x.shape[:-1], y.shape[:-1]), phi * phi)
        return outer @ self._mult

    def identity(self, r: int) -> np.ndarray:
        arr = np.zeros((r, r, self.phi), dtype=np.int64)
        for i in range(r):
            arr[i, i, 0] = 1
        return arr


def parse_coeffs(conductor: int, coeffs: Iterable[str | int]) -> Cyclotomic:
    return Cyclotomic.from_coeffs(conductor, [Fraction(c) for c in coeffs])
