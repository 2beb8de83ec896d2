"""Eigenstructure tools: Fourier diagonalization of circulants, type-II and
canonical-form machinery for flat unitaries, and recognition of the
integer-progression eigenvalue form that characterizes circulant UPST."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .cyclotomic import CycNum, _reduce_mod_phi
from .graph import CirculantSpec, HermitianGraph
from .ratios import MAX_DENOMINATOR, integer_multiples

UNITARITY_TOL = 1e-10
EIGEN_RESIDUAL_TOL = 1e-9
ZERO_SUM_TOL = 1e-9
RECOGNIZER_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class EigenSystem:
    """Unitary diagonalizer X with eigenvalue k attached to column k.

    For circulants X is the Fourier matrix and the ordering is the Fourier
    index; eigenvalues are never sorted.  exact_lambdas is present when every
    eigenvalue is rational.
    """

    n: int
    X: np.ndarray
    lambdas: np.ndarray
    exact_lambdas: Optional[tuple[Fraction, ...]] = None


@dataclass(frozen=True)
class CanonicalForm:
    """X = S @ Z @ D with unit-modulus diagonal scalings S (rows), D (columns)."""

    X: np.ndarray
    D: np.ndarray
    S: np.ndarray


@dataclass(frozen=True)
class EigenvalueForm:
    """Witness lambda_k = alpha + beta*(q*k + c[k]*n) with gcd(q, n) = 1."""

    alpha: float
    beta: float
    q: int
    c: tuple[int, ...]


def fourier_matrix(n: int) -> np.ndarray:
    """The unitary F with entries zeta_n^(jk) / sqrt(n)."""
    if n < 1:
        raise ValueError("order must be positive, got %r" % (n,))
    j = np.arange(n)
    return np.exp(2j * np.pi * np.outer(j, j) / n) / math.sqrt(n)


def circulant_eigensystem(spec: CirculantSpec) -> EigenSystem:
    """Diagonalize a circulant exactly: lambda_k = sum_j a_j zeta_n^(jk).

    The sums are carried out in Q(zeta_L) for L = lcm(conductor, n) and must
    come out real; a non-real value means the spec data is corrupt.
    """
    n = spec.n
    lcond = math.lcm(spec.conductor, n)
    step = lcond // n
    promoted = [x.promote(lcond) for x in spec.a]
    exact: list[CycNum] = []
    for k in range(n):
        v = [Fraction(0)] * lcond
        for j, aj in enumerate(promoted):
            shift = (step * j * k) % lcond
            for idx, coef in enumerate(aj.coeffs):
                if coef:
                    v[(idx + shift) % lcond] += coef
        lam = CycNum(lcond, _reduce_mod_phi(lcond, v))
        if not lam.is_real():
            raise ArithmeticError(
                "internal consistency failure: eigenvalue %d of a Hermitian "
                "circulant came out non-real (imag %.3e)" % (k, lam.embed().imag)
            )
        exact.append(lam)
    lambdas = np.array([x.embed().real for x in exact])
    exact_lambdas = None
    if all(x.is_rational() for x in exact):
        exact_lambdas = tuple(x.as_fraction() for x in exact)
    return EigenSystem(n=n, X=fourier_matrix(n), lambdas=lambdas, exact_lambdas=exact_lambdas)


def eigensystem_for(graph: HermitianGraph) -> EigenSystem:
    """Exact Fourier route when circulant data is attached, else numerical."""
    if graph.spec is not None:
        return circulant_eigensystem(graph.spec)
    return numerical_eigensystem(graph.adjacency)


def numerical_eigensystem(matrix: np.ndarray) -> EigenSystem:
    """Dense Hermitian eigensolve (ascending eigenvalues).

    Plumbing for matrix-only inputs and for cross-checking the exact route;
    circulants should go through circulant_eigensystem instead.
    """
    m = np.asarray(matrix, dtype=complex)
    lambdas, x = np.linalg.eigh(m)
    return EigenSystem(n=m.shape[0], X=x, lambdas=lambdas)


def is_type_ii(matrix: np.ndarray, tol: float = UNITARITY_TOL) -> bool:
    """Flat (all |entries| = 1/sqrt(n)) and unitary, both within tol."""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    n = m.shape[0]
    if np.max(np.abs(np.abs(m) - 1 / math.sqrt(n))) > tol:
        return False
    return bool(np.max(np.abs(m.conj().T @ m - np.eye(n))) <= tol)


def canonicalize(z: np.ndarray, tol: float = UNITARITY_TOL) -> CanonicalForm:
    """Scale a flat unitary to the canonical form with first row and column
    1/sqrt(n): X = S @ Z @ D, where D fixes the first row column-by-column and
    S then fixes the first column row-by-row.  S maps the adjacency it
    diagonalizes to the switching-equivalent S A S^(-1)."""
    z = np.asarray(z, dtype=complex)
    if not is_type_ii(z, tol):
        raise ValueError("canonical form needs a flat unitary input")
    n = z.shape[0]
    root = 1 / math.sqrt(n)
    d = root / z[0, :]
    z2 = z * d[np.newaxis, :]
    s = root / z2[:, 0]
    x = z2 * s[:, np.newaxis]
    return CanonicalForm(X=x, D=np.diag(d), S=np.diag(s))


def zero_sum_check(x: np.ndarray, tol: float = ZERO_SUM_TOL) -> bool:
    """All row and column sums beyond the first vanish (canonical flat unitary)."""
    x = np.asarray(x, dtype=complex)
    row_sums = x.sum(axis=1)[1:]
    col_sums = x.sum(axis=0)[1:]
    if row_sums.size == 0:
        return True
    return bool(max(np.max(np.abs(row_sums)), np.max(np.abs(col_sums))) <= tol)


def recognize_eigenvalue_form(
    lambdas: Sequence[float], n: int, tol: float = RECOGNIZER_TOL
) -> Optional[EigenvalueForm]:
    """Decide whether lambda_k = alpha + beta*(q*k + c_k*n) for some beta > 0,
    unit q mod n, and integers c_k, reading k as the given index order.

    The differences delta_k = lambda_k - lambda_0 must be integer multiples of
    a common positive beta (rational-ratio reconstruction, denominators up to
    10^6), with multiples congruent to q*k mod n.  alpha is normalized into
    [0, beta*n) by absorbing whole periods into c_0; q is the smallest
    positive representative.  Returns None when no such witness exists.
    """
    lam = np.asarray(lambdas, dtype=float)
    if lam.shape != (n,):
        raise ValueError("expected %d eigenvalues, got shape %s" % (n, lam.shape))
    if len(set(lam.tolist())) != n:
        raise ValueError("eigenvalues must be distinct")
    if n == 1:
        c0 = math.floor(lam[0])
        return EigenvalueForm(alpha=lam[0] - c0, beta=1.0, q=1, c=(c0,))
    deltas = lam[1:] - lam[0]
    structure = integer_multiples(list(deltas), max_denominator=MAX_DENOMINATOR)
    if structure is None:
        return None
    beta, m = structure
    q = m[0] % n
    if q == 0 or math.gcd(q, n) != 1:
        return None
    for k in range(1, n):
        if (m[k - 1] - q * k) % n != 0:
            return None
    bn = beta * n
    ratio = lam[0] / bn
    c0 = math.floor(ratio)
    if ratio - c0 > 1 - 1e-9:
        c0 += 1
    alpha = lam[0] - bn * c0
    c = [c0] + [(m[k - 1] - q * k) // n + c0 for k in range(1, n)]
    for k in range(n):
        if abs(alpha + beta * (q * k + c[k] * n) - lam[k]) > tol:
            return None
    return EigenvalueForm(alpha=float(alpha), beta=float(beta), q=int(q), c=tuple(c))
