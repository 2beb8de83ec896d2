"""Closed-form recipes for graphs with universal perfect state transfer.

Two families: flat-spectrum graphs built from the block index map theta
(non-circulant for beta >= 2), and circulants whose eigenvalues realize the
integer progression l + c_l * n, including the non-dense two-prime variant
obtained from the exact inverse of 1 - zeta_n^(-1).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .cyclotomic import CycNum, cyc_from_exponent_vector, zeta
from .graph import CirculantSpec, HermitianGraph, is_connected_circulant
from .spectra import EigenSystem, UNITARITY_TOL

__all__ = [
    "NoncirculantParams",
    "theta",
    "noncirculant_graph",
    "gk_example",
    "circulant_from_c",
    "nondense_circulant",
    "integer_spectrum_shift",
]


def theta(d: int, beta: int, x: int) -> int:
    """Block index map: beta*floor(x/d)*d + (x mod d).

    Stretches the block part of x by beta while keeping the offset, so
    consecutive x in one block stay consecutive but blocks start beta*d apart.
    """
    return beta * (x // d) * d + (x % d)


@dataclass(frozen=True)
class NoncirculantParams:
    """Parameters (a, b, beta) with n = a*b.

    The construction needs a >= b >= 2; beta >= 2 makes the result provably
    non-circulant, while beta = 1 is allowed and degenerates to the Fourier
    (circulant) case.
    """

    a: int
    b: int
    beta: int

    def __post_init__(self) -> None:
        if not (self.a >= self.b >= 2):
            raise ValueError("need a >= b >= 2, got a=%d b=%d" % (self.a, self.b))
        if self.beta < 1:
            raise ValueError("need beta >= 1, got %d" % self.beta)

    @property
    def n(self) -> int:
        return self.a * self.b


def _flat_assembly(
    params: NoncirculantParams, eigens: Sequence[int]
) -> tuple[HermitianGraph, EigenSystem]:
    n = params.n
    bn = params.beta * n
    rows = np.array([theta(params.a, params.beta, j) for j in range(n)])
    cols = np.array([theta(params.b, params.beta, k) for k in range(n)])
    x = np.exp(2j * np.pi * np.outer(rows, cols) / bn) / math.sqrt(n)
    if np.max(np.abs(x.conj().T @ x - np.eye(n))) > UNITARITY_TOL:
        raise ArithmeticError("construction produced a non-unitary diagonalizer")
    lambdas = np.array(eigens, dtype=float)
    adj = (x * lambdas) @ x.conj().T
    adj = (adj + adj.conj().T) / 2
    graph = HermitianGraph(n=n, adjacency=adj)
    es = EigenSystem(
        n=n, X=x, lambdas=lambdas, exact_lambdas=tuple(Fraction(v) for v in eigens)
    )
    return graph, es


def noncirculant_graph(params: NoncirculantParams) -> tuple[HermitianGraph, EigenSystem]:
    """Flat-spectrum graph with eigenvalue theta_b(k) on Fourier-like column k.

    The diagonalizer X[j][k] = zeta_(beta*n)^(theta_a(j) * theta_b(k)) / sqrt(n)
    is type II; for beta >= 2 the transfer-time spacings rule out any circulant
    relabeling.
    """
    cols = [theta(params.b, params.beta, k) for k in range(params.n)]
    return _flat_assembly(params, cols)


def gk_example(k: int) -> tuple[HermitianGraph, EigenSystem]:
    """Order-4 graph with spectrum {0, 1, k, k+1} for even k >= 2.

    Same diagonalizer as noncirculant_graph(NoncirculantParams(2, 2, k//2)) but
    with the eigenvalue-to-column pairing reversed; the two assemblies sum to
    (k+1)*I, so they share the spectrum while differing in orientation (here
    transfer 0 -> 1 happens late in the period instead of at 2*pi/(beta*n)).
    This one carries diagonal (k+1)/2; subtract that shift to zero it.
    """
    if k < 2 or k % 2 != 0:
        raise ValueError("k must be an even integer >= 2, got %r" % (k,))
    params = NoncirculantParams(2, 2, k // 2)
    cols = [theta(params.b, params.beta, j) for j in range(params.n)]
    return _flat_assembly(params, cols[::-1])


@functools.lru_cache(maxsize=None)
def _inv_zeta_power_minus_one(n: int, e: int) -> CycNum:
    # 1 / (zeta_n^e - 1); requires e not divisible by n.
    return (zeta(n, e) - CycNum.one(n)).invert()


def circulant_from_c(n: int, c: Sequence[int]) -> CirculantSpec:
    """Hermitian circulant with a_0 = 0 and eigenvalues l + c_l*n + shift.

    Coefficients a_j = 1/(zeta_n^(-j) - 1) + sum_k c_k zeta_n^(-jk) for
    j = 1..n-1.  In Fourier order the spectrum is l + c_l*n up to one common
    rational shift (see integer_spectrum_shift), i.e. lambda_l - lambda_0 =
    l + (c_l - c_0)*n exactly -- the integer progression that makes the walk
    transfer perfectly between every vertex pair.
    """
    if n < 2:
        raise ValueError("order must be at least 2, got %r" % (n,))
    if len(c) != n:
        raise ValueError("expected %d integers, got %d" % (n, len(c)))
    c = [int(v) for v in c]
    coeffs = [CycNum.zero(n)]
    for j in range(1, n):
        v = [Fraction(0)] * n
        for k, ck in enumerate(c):
            if ck:
                v[(-j * k) % n] += ck
        aj = _inv_zeta_power_minus_one(n, (n - j) % n) + cyc_from_exponent_vector(n, v)
        coeffs.append(aj)
    return CirculantSpec(n, tuple(coeffs))


def integer_spectrum_shift(n: int, c: Sequence[int]) -> Fraction:
    """The a_0 making circulant_from_c(n, c) have eigenvalues exactly l + c_l*n."""
    return Fraction(n - 1, 2) + sum(int(v) for v in c)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


def nondense_circulant(p: int, q: int) -> CirculantSpec:
    """UPST circulant of order p*q (distinct primes) with a_1 = a_(n-1) = 0.

    Because n has two distinct prime factors, 1 - zeta_n is a unit of the ring
    of integers, so 1/(1 - zeta_n^(-1)) expands with integer coordinates; those
    integers, re-indexed from zeta powers to the zeta^(-k) convention, are the
    c-vector.  The choice cancels a_1 exactly while keeping a_p, a_q nonzero,
    hence a connected, non-dense UPST circulant.
    """
    if p == q or not (_is_prime(p) and _is_prime(q)):
        raise ValueError("need distinct primes, got p=%r q=%r" % (p, q))
    n = p * q
    u = (CycNum.one(n) - zeta(n, -1)).invert()
    if any(coef.denominator != 1 for coef in u.coeffs):
        raise ArithmeticError(
            "internal error: 1/(1 - zeta_%d^(-1)) should be integral" % n
        )
    c = [0] * n
    for m, coef in enumerate(u.coeffs):
        c[(n - m) % n] += int(coef)
    check = [Fraction(0)] * n
    for k, ck in enumerate(c):
        check[(n - k) % n] += ck
    if cyc_from_exponent_vector(n, check) != u:
        raise ArithmeticError("internal error: c-vector does not reproduce the unit")
    spec = circulant_from_c(n, c)
    if not (spec.a[1].is_zero() and spec.a[n - 1].is_zero()):
        raise ArithmeticError("internal error: a_1 did not cancel")
    if not is_connected_circulant(spec):
        raise ArithmeticError("internal error: non-dense circulant came out disconnected")
    return spec
