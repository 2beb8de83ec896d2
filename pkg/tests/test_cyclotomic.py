"""Exact cyclotomic arithmetic: reduction, inversion, automorphisms, embedding.

The independent oracle throughout is double-precision evaluation at
e^(2*pi*i/n): every exact identity must also hold numerically after embed().
"""

import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from upst.cyclotomic import (
    CycNum,
    cyc_from_exponent_vector,
    cyclotomic_polynomial,
    euler_phi,
    zeta,
)

EMBED_TOL = 1e-10


def naive_embed(x: CycNum) -> complex:
    # independent of CycNum.embed's Horner loop
    root = cmath.exp(2j * cmath.pi / x.n)
    return sum(float(c) * root**k for k, c in enumerate(x.coeffs))


# ---------------------------------------------------------------- euler phi

def test_euler_phi_small_values():
    expected = {1: 1, 2: 1, 3: 2, 4: 2, 5: 4, 6: 2, 8: 4, 9: 6, 10: 4, 12: 4, 15: 8, 30: 8}
    for n, phi in expected.items():
        assert euler_phi(n) == phi


def test_euler_phi_rejects_nonpositive():
    with pytest.raises(ValueError):
        euler_phi(0)
    with pytest.raises(ValueError):
        euler_phi(-3)


# ------------------------------------------------- cyclotomic polynomials

def test_cyclotomic_polynomial_table():
    # frozen table entries, low-degree-first coefficients
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(9) == (1, 0, 0, 1, 0, 0, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    assert cyclotomic_polynomial(15) == (1, -1, 0, 1, -1, 1, 0, -1, 1)


def test_cyclotomic_polynomial_degree_is_phi():
    for n in (1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 16, 24, 30):
        assert len(cyclotomic_polynomial(n)) == euler_phi(n) + 1


def test_cyclotomic_polynomials_multiply_to_x_pow_n_minus_1():
    # prod_{d | n} Phi_d = x^n - 1, checked as exact integer polynomials
    for n in (6, 12, 15):
        prod = [1]
        for d in range(1, n + 1):
            if n % d == 0:
                phi_d = cyclotomic_polynomial(d)
                new = [0] * (len(prod) + len(phi_d) - 1)
                for i, p in enumerate(prod):
                    for j, q in enumerate(phi_d):
                        new[i + j] += p * q
                prod = new
        expected = [-1] + [0] * (n - 1) + [1]
        assert prod == expected


def test_primitive_root_is_a_root_of_phi_n():
    for n in (5, 6, 8, 12, 15):
        poly = cyclotomic_polynomial(n)
        root = cmath.exp(2j * cmath.pi / n)
        value = sum(c * root**k for k, c in enumerate(poly))
        assert abs(value) < 1e-9


# ------------------------------------------------------------ construction

def test_zeta_normalizes_exponent():
    assert zeta(6, 7) == zeta(6, 1)
    assert zeta(6, -1) == zeta(6, 5)


def test_coefficient_vector_length_is_enforced():
    with pytest.raises(ValueError):
        CycNum(6, (Fraction(1),))  # needs phi(6) = 2 entries


def test_high_zeta_powers_reduce():
    # zeta_6^2 lies outside the power basis {1, zeta}; reduction must kick in
    z = zeta(6)
    assert z * z == z - 1  # Phi_6 = x^2 - x + 1
    assert zeta(6, 3) == CycNum.from_rational(6, -1)


def test_exponent_vector_builder_matches_powers():
    v = [0] * 12
    v[3] = 1
    v[7] = -2
    assert cyc_from_exponent_vector(12, v) == zeta(12, 3) - 2 * zeta(12, 7)
    with pytest.raises(ValueError):
        cyc_from_exponent_vector(12, [0] * 5)


# ------------------------------------------------------------- arithmetic

def test_sum_of_conjugate_sixth_roots_is_rational():
    assert (zeta(6) + zeta(6, 5) - 1).is_zero()


def test_rationality_detection():
    assert zeta(6, 3).is_rational()  # equals -1
    assert not zeta(6).is_rational()
    assert zeta(6, 3).as_fraction() == Fraction(-1)
    with pytest.raises(ValueError):
        zeta(6).as_fraction()


def test_division_matches_inversion():
    x = 1 + zeta(12, 5)
    y = 2 - zeta(12, 7)
    assert x / y == x * y.invert()
    assert (x / y) * y == x


def test_pow_negative_and_zero():
    z = zeta(15, 2)
    assert z**0 == CycNum.one(15)
    assert z**-3 == (z**3).invert()


def test_inversion_of_one():
    assert CycNum.one(9).invert() == CycNum.one(9)


def test_inversion_of_root_is_conjugate_exponent():
    assert zeta(15).invert() == zeta(15, 14)


def test_inversion_of_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        CycNum.zero(6).invert()


def test_known_inverse_of_one_minus_inverse_root():
    # 1/(1 - zeta_6^(-1)) = 1 - zeta_6
    x = 1 - zeta(6, -1)
    assert x.invert() == 1 - zeta(6)


def test_unit_inverse_has_integer_coefficients_at_two_prime_conductors():
    # 1 - zeta_n is a unit of the ring of integers exactly when n has at
    # least two distinct prime factors
    for n in (6, 10, 12, 15):
        inv = (1 - zeta(n)).invert()
        assert all(c.denominator == 1 for c in inv.coeffs), n


def test_unit_inverse_fails_integrality_at_prime_conductors():
    for n in (5, 7):
        inv = (1 - zeta(n)).invert()
        assert (inv * (1 - zeta(n))) == CycNum.one(n)
        assert any(c.denominator != 1 for c in inv.coeffs), n


# ------------------------------------------------------------------ galois

def test_galois_at_n_minus_1_is_conjugation():
    z = zeta(6)
    assert z.galois(5) == zeta(6, 5)
    assert z.galois(5) == z.conjugate()
    assert abs(z.galois(5).embed() - z.embed().conjugate()) < 1e-15


def test_galois_fixes_rationals():
    q = CycNum.from_rational(12, Fraction(7, 3))
    for l in (1, 5, 7, 11):
        assert q.galois(l) == q


def test_galois_rejects_non_units():
    with pytest.raises(ValueError):
        zeta(12).galois(4)


def test_galois_composition():
    x = 2 * zeta(12) - zeta(12, 7) + Fraction(1, 2)
    assert x.galois(5).galois(7) == x.galois(35 % 12)


def test_conjugate_of_real_element_is_identity():
    x = zeta(12, 3) + zeta(12, 9)  # i + (-i) = 0, trivially real
    assert x.conjugate() == x
    y = CycNum.from_rational(1, Fraction(3, 4))
    assert y.conjugate() == y and y.is_real()


def test_is_real_detects_imaginary_parts():
    assert (zeta(12) + zeta(12, 11)).is_real()  # z + conj(z)
    assert not zeta(12).is_real()


# --------------------------------------------------------------- embedding

def test_embed_fourth_root():
    assert abs(zeta(4).embed() - 1j) < 1e-15


def test_embed_one_minus_sixth_root():
    expected = 0.5 - 1j * math.sqrt(3) / 2
    assert abs((1 - zeta(6)).embed() - expected) < 1e-12


def test_embed_of_sixth_root_inverse_identity():
    # 1/(1 - zeta_6^(-1)) embeds to the same value as 1 - zeta_6
    lhs = (1 - zeta(6, -1)).invert().embed()
    rhs = (1 - zeta(6)).embed()
    assert abs(lhs - rhs) < 1e-12


def test_embed_matches_naive_polynomial_evaluation():
    samples = [
        1 - zeta(6),
        (1 - zeta(10)).invert(),
        zeta(12, 7) * 3 - Fraction(1, 2),
        (2 + zeta(15, 4)) * (1 - zeta(15, 11)),
    ]
    for x in samples:
        assert abs(x.embed() - naive_embed(x)) < EMBED_TOL


# ----------------------------------------------------- conductor promotion

def test_promote_preserves_value():
    z6 = zeta(6)
    z12 = z6.promote(12)
    assert z12.n == 12
    assert z12 == zeta(12, 2)
    assert abs(z12.embed() - z6.embed()) < 1e-15


def test_promote_requires_divisibility():
    with pytest.raises(ValueError):
        zeta(6).promote(8)


def test_mixed_conductor_arithmetic_rejected():
    with pytest.raises(ValueError):
        zeta(6) + zeta(4)


# ----------------------------------------------------------- serialization

def test_json_round_trip_is_exact():
    x = Fraction(2, 3) - zeta(12, 5) * Fraction(7, 2)
    data = x.to_json_dict()
    assert data["n"] == 12
    assert all(isinstance(pair, list) and len(pair) == 2 for pair in data["coeffs"])
    assert CycNum.from_json_dict(data) == x


def test_json_rejects_malformed_input():
    with pytest.raises(ValueError):
        CycNum.from_json_dict({"n": 6})


# ------------------------------------------------------- hypothesis: field

def small_cyc(ns=(1, 2, 3, 4, 6, 8, 12)):
    def build(n, numerators, denominator):
        deg = euler_phi(n)
        coeffs = tuple(Fraction(numerators[i % len(numerators)], denominator) for i in range(deg))
        return CycNum(n, coeffs)

    return st.builds(
        build,
        st.sampled_from(ns),
        st.lists(st.integers(-5, 5), min_size=1, max_size=4),
        st.integers(1, 4),
    )


@settings(max_examples=60, deadline=None)
@given(small_cyc(), small_cyc(), small_cyc())
def test_ring_axioms_hold_exactly(x, y, z):
    y = y if y.n == x.n else CycNum(x.n, tuple(Fraction(i + 1, 2) for i in range(euler_phi(x.n))))
    z = z if z.n == x.n else x - 1
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert x + CycNum.zero(x.n) == x
    assert x * CycNum.one(x.n) == x


@settings(max_examples=60, deadline=None)
@given(small_cyc())
def test_multiplicative_inverse_exact(x):
    if x.is_zero():
        return
    assert x * x.invert() == CycNum.one(x.n)


@settings(max_examples=60, deadline=None)
@given(small_cyc(), small_cyc())
def test_embed_is_multiplicative(x, y):
    y = y if y.n == x.n else x + 1
    assert abs((x * y).embed() - x.embed() * y.embed()) < EMBED_TOL
    assert abs((x + y).embed() - (x.embed() + y.embed())) < EMBED_TOL


@settings(max_examples=40, deadline=None)
@given(small_cyc())
def test_conjugation_is_an_involution_matching_embedding(x):
    assert x.conjugate().conjugate() == x
    assert abs(x.conjugate().embed() - x.embed().conjugate()) < EMBED_TOL


@settings(max_examples=40, deadline=None)
@given(small_cyc())
def test_json_round_trip_property(x):
    assert CycNum.from_json_dict(x.to_json_dict()) == x
