"""Exact arithmetic in the cyclotomic fields Q(zeta_n).

Elements are stored in the power basis 1, zeta, ..., zeta^(phi(n)-1) with
rational coefficients, reduced modulo the n-th cyclotomic polynomial Phi_n.
Phi_n is computed by the recursive quotient of x^n - 1 by the Phi_d of the
proper divisors d | n, and inversion runs the extended Euclidean algorithm
against Phi_n over Q.  Everything in this module is exact; floating point
enters only through :meth:`CycNum.embed`.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

RationalLike = Union[int, Fraction]


@functools.lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    """Euler's totient, the degree of Q(zeta_n) over Q."""
    if n < 1:
        raise ValueError("conductor must be a positive integer, got %r" % (n,))
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_div_exact(num: list[int], den: Sequence[int]) -> list[int]:
    # Long division by a monic integer polynomial; the remainder must vanish.
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c == 0:
            continue
        out[i - dn] = c
        for j in range(dn + 1):
            num[i - dn + j] -= c * den[j]
    if any(num):
        raise ArithmeticError("polynomial division left a remainder")
    return out


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, constant term first, monic.

    Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d.
    """
    if n < 1:
        raise ValueError("conductor must be a positive integer, got %r" % (n,))
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_div_exact(num, cyclotomic_polynomial(d))
    return tuple(num)


def _reduce_mod_phi(n: int, coeffs: Sequence[RationalLike]) -> tuple[Fraction, ...]:
    """Reduce a coefficient vector in powers of zeta_n to the canonical basis."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    work = [Fraction(c) for c in coeffs]
    for i in range(len(work) - 1, deg - 1, -1):
        c = work[i]
        if c == 0:
            continue
        work[i] = Fraction(0)
        for j in range(deg):
            work[i - deg + j] -= c * phi[j]
    work = work[:deg]
    work.extend([Fraction(0)] * (deg - len(work)))
    return tuple(work)


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _trim(out)


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return _trim(out)


def _poly_divmod(num: list[Fraction], den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    num = list(num)
    dn = len(den) - 1
    lead = den[-1]
    if len(num) - 1 < dn:
        return [], _trim(num)
    out = [Fraction(0)] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c == 0:
            continue
        q = c / lead
        out[i - dn] = q
        for j in range(dn + 1):
            num[i - dn + j] -= q * den[j]
    return _trim(out), _trim(num)


def _xgcd_first(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """Return (g, u) with u*a = g (mod b), g the gcd of a and b."""
    r0, r1 = _trim(list(a)), _trim(list(b))
    s0, s1 = [Fraction(1)], []
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    return r0, s0


@dataclass(frozen=True)
class CycNum:
    """An element of Q(zeta_n): `coeffs[k]` multiplies zeta_n^k, k < phi(n)."""

    n: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("conductor must be a positive integer, got %r" % (self.n,))
        if len(self.coeffs) != euler_phi(self.n):
            raise ValueError(
                "coefficient vector of length %d does not match phi(%d) = %d"
                % (len(self.coeffs), self.n, euler_phi(self.n))
            )

    @staticmethod
    def zero(n: int) -> "CycNum":
        return CycNum(n, tuple([Fraction(0)] * euler_phi(n)))

    @staticmethod
    def one(n: int) -> "CycNum":
        return CycNum.from_rational(n, 1)

    @staticmethod
    def from_rational(n: int, value: RationalLike) -> "CycNum":
        coeffs = [Fraction(0)] * euler_phi(n)
        coeffs[0] = Fraction(value)
        return CycNum(n, tuple(coeffs))

    def _coerce(self, other) -> "CycNum | None":
        if isinstance(other, CycNum):
            if other.n != self.n:
                raise ValueError(
                    "conductor mismatch: %d vs %d (promote explicitly)" % (self.n, other.n)
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CycNum.from_rational(self.n, other)
        return None

    def __add__(self, other) -> "CycNum":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return CycNum(self.n, tuple(a + b for a, b in zip(self.coeffs, rhs.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CycNum":
        return CycNum(self.n, tuple(-a for a in self.coeffs))

    def __sub__(self, other) -> "CycNum":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other) -> "CycNum":
        return (-self) + other

    def __mul__(self, other) -> "CycNum":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        prod = [Fraction(0)] * (2 * len(self.coeffs) - 1 if self.coeffs else 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(rhs.coeffs):
                prod[i + j] += a * b
        return CycNum(self.n, _reduce_mod_phi(self.n, prod))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "CycNum":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self * rhs.invert()

    def __rtruediv__(self, other) -> "CycNum":
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs * self.invert()

    def __pow__(self, k: int) -> "CycNum":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.invert() ** (-k)
        out = CycNum.one(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational: %s" % (self,))
        return self.coeffs[0]

    def invert(self) -> "CycNum":
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_n."""
        if self.is_zero():
            raise ZeroDivisionError("inversion of zero in Q(zeta_%d)" % self.n)
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.n)]
        g, u = _xgcd_first(list(self.coeffs), phi)
        # Phi_n is irreducible over Q, so the gcd is a nonzero constant.
        if len(g) != 1:
            raise ArithmeticError("gcd with Phi_%d is not constant" % self.n)
        return CycNum(self.n, _reduce_mod_phi(self.n, [c / g[0] for c in u]))

    def galois(self, l: int) -> "CycNum":
        """Apply the automorphism zeta_n -> zeta_n^l; l must be a unit mod n."""
        if math.gcd(l, self.n) != 1:
            raise ValueError("gcd(%d, %d) != 1: not a Galois automorphism" % (l, self.n))
        v = [Fraction(0)] * self.n
        for k, c in enumerate(self.coeffs):
            v[(k * l) % self.n] += c
        return CycNum(self.n, _reduce_mod_phi(self.n, v))

    def conjugate(self) -> "CycNum":
        """Complex conjugation, the automorphism zeta_n -> zeta_n^(n-1)."""
        return self.galois(self.n - 1) if self.n > 1 else self

    def is_real(self) -> bool:
        return self.conjugate() == self

    def embed(self) -> complex:
        """Numerical value under zeta_n = exp(2*pi*i/n)."""
        root = cmath.exp(2j * cmath.pi / self.n)
        total = 0j
        for c in reversed(self.coeffs):
            total = total * root + float(c)
        return total

    def promote(self, m: int) -> "CycNum":
        """Re-express the element in Q(zeta_m) for a conductor multiple m."""
        if m % self.n != 0:
            raise ValueError("cannot promote conductor %d to %d" % (self.n, m))
        step = m // self.n
        v = [Fraction(0)] * m
        for k, c in enumerate(self.coeffs):
            v[k * step] += c
        return CycNum(m, _reduce_mod_phi(m, v))

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "coeffs": [[c.numerator, c.denominator] for c in self.coeffs],
        }

    @staticmethod
    def from_json_dict(data: dict) -> "CycNum":
        try:
            n = int(data["n"])
            pairs = data["coeffs"]
            coeffs = tuple(Fraction(int(num), int(den)) for num, den in pairs)
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValueError("malformed cyclotomic number: %s" % (exc,)) from exc
        return CycNum(n, coeffs)

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                terms.append("%s*z%d^%d" % (c, self.n, k))
        return " + ".join(terms) if terms else "0"


def cyc_from_exponent_vector(n: int, v: Sequence[RationalLike]) -> CycNum:
    """Build sum_k v[k] * zeta_n^k from a length-n exponent vector."""
    if len(v) != n:
        raise ValueError("exponent vector has length %d, expected n = %d" % (len(v), n))
    return CycNum(n, _reduce_mod_phi(n, v))


def zeta(n: int, k: int = 1) -> CycNum:
    """The root of unity zeta_n^k; negative k is normalized mod n."""
    v = [Fraction(0)] * n
    v[k % n] = Fraction(1)
    return CycNum(n, _reduce_mod_phi(n, v))
