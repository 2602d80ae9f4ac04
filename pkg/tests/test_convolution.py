"""Boxed convolutions, special series, transforms, and law convolutions."""
from fractions import Fraction
import random

import pytest

from infree.ck import CkScalar, CkSeries, NotInvertible, ck_mul, series_mul
from infree.convolve import (
    additive_convolve,
    boxed_conv_ck,
    boxed_conv_type_b,
    boxed_conv_type_k,
    boxed_inverse,
    example_law,
    fourier_transform,
    law_from_moment_series,
    moment_series,
    moments_from_r,
    multiplicative_convolve,
    r_from_moments,
    s_transform,
    special_series,
)
from infree.cumulants import all_words, moments_to_cumulants

from helpers import rand_law, rand_scalar, rand_series


def scalar(k, v):
    return CkScalar.from_rational(k, v)


def test_special_series():
    d = special_series("delta", 0, 4)
    assert [c.coords[0] for c in d.coeffs] == [1, 0, 0, 0]
    z = special_series("zeta", 1, 3)
    assert all(c == CkScalar.one(1) for c in z.coeffs)
    mob = special_series("moebius", 0, 4)
    assert [c.coords[0] for c in mob.coeffs] == [1, -1, 2, -5]
    with pytest.raises(ValueError):
        special_series("gamma", 0, 3)


def test_boxed_unit_and_degree_two():
    rng = random.Random(41)
    for k in range(3):
        f = rand_series(rng, k, 5)
        assert boxed_conv_ck(f, special_series("delta", k, 5)) == f
    a = rand_series(rng, 0, 2)
    b = rand_series(rng, 0, 2)
    g = boxed_conv_ck(a, b)
    a1, a2 = a.coeffs
    b1, b2 = b.coeffs
    assert g.coeff(1) == ck_mul(a1, b1)
    assert g.coeff(2) == ck_mul(a2, ck_mul(b1, b1)) + ck_mul(ck_mul(a1, a1), b2)


def test_zeta_boxed_moebius_is_delta():
    for k in range(3):
        z = special_series("zeta", k, 5)
        mob = special_series("moebius", k, 5)
        assert boxed_conv_ck(z, mob) == special_series("delta", k, 5)
        assert boxed_conv_ck(mob, z) == special_series("delta", k, 5)


def test_boxed_associative_commutative():
    rng = random.Random(43)
    for k in range(3):
        f = rand_series(rng, k, 5)
        g = rand_series(rng, k, 5)
        h = rand_series(rng, k, 5)
        assert boxed_conv_ck(f, g) == boxed_conv_ck(g, f)
        assert boxed_conv_ck(boxed_conv_ck(f, g), h) == boxed_conv_ck(
            f, boxed_conv_ck(g, h)
        )


def test_boxed_invertibility():
    rng = random.Random(47)
    for k in range(3):
        f = rand_series(rng, k, 5, invertible=True)
        inv = boxed_inverse(f)
        assert boxed_conv_ck(f, inv) == special_series("delta", k, 5)
    bad = CkSeries(1, 3, [CkScalar(1, [0, 1]), CkScalar.one(1), CkScalar.one(1)])
    with pytest.raises(NotInvertible):
        boxed_inverse(bad)


def test_type_b_degree_one_and_agreement():
    rng = random.Random(53)
    f = rand_series(rng, 1, 4)
    g = rand_series(rng, 1, 4)
    got = boxed_conv_type_b(f, g)
    a1, b1 = f.coeff(1), g.coeff(1)
    # gamma_1' = a1'b1', gamma_1'' = a1'b1'' + a1''b1'
    assert got.coeff(1).coords[0] == a1.coords[0] * b1.coords[0]
    assert got.coeff(1).coords[1] == (
        a1.coords[0] * b1.coords[1] + a1.coords[1] * b1.coords[0]
    )
    assert got == boxed_conv_ck(f, g)
    assert boxed_conv_type_b(f, special_series("delta", 1, 4)) == f
    with pytest.raises(ValueError):
        boxed_conv_type_b(rand_series(rng, 0, 3), rand_series(rng, 0, 3))


def test_type_k_agreement():
    rng = random.Random(59)
    for k in range(3):
        f = rand_series(rng, k, 4)
        g = rand_series(rng, k, 4)
        assert boxed_conv_type_k(f, g) == boxed_conv_ck(f, g), k
    f = rand_series(rng, 1, 4)
    g = rand_series(rng, 1, 4)
    assert boxed_conv_type_k(f, g) == boxed_conv_type_b(f, g)


def test_r_transform_round_trip_and_semicircular():
    rng = random.Random(61)
    for k in range(3):
        f = rand_series(rng, k, 6)
        assert r_from_moments(moments_from_r(f)) == f
        assert moments_from_r(r_from_moments(f)) == f
    m = CkSeries.from_rationals(0, [0, 1, 0, 2, 0, 5])
    r = r_from_moments(m)
    assert [c.coords[0] for c in r.coeffs] == [0, 1, 0, 0, 0, 0]
    z = CkSeries.zero(1, 4)
    assert r_from_moments(z) == z and moments_from_r(z) == z


def test_fourier_transform():
    for k in range(3):
        d = special_series("delta", k, 4)
        fd = fourier_transform(d)
        assert fd.const == CkScalar.one(k)
        assert all(c == CkScalar.zero(k) for c in fd.coeffs)
    rng = random.Random(67)
    for k in range(3):
        f = rand_series(rng, k, 5, invertible=True)
        g = rand_series(rng, k, 5, invertible=True)
        lhs = fourier_transform(boxed_conv_ck(f, g))
        rhs = series_mul(fourier_transform(f), fourier_transform(g))
        assert lhs == rhs
    # the two special series map to mutually inverse constants
    prod = series_mul(
        fourier_transform(special_series("moebius", 0, 5)),
        fourier_transform(special_series("zeta", 0, 5)),
    )
    assert prod.const == CkScalar.one(0)
    assert all(c == CkScalar.zero(0) for c in prod.coeffs)
    with pytest.raises(ValueError):
        fourier_transform(special_series("delta", 0, 1))
    with pytest.raises(NotInvertible):
        fourier_transform(CkSeries.zero(0, 3))


def test_moment_series_round_trip():
    rng = random.Random(71)
    law = rand_law(rng, k=2, num_vars=1, max_len=5)
    ms = moment_series(law)
    assert ms.trunc == 5
    assert law_from_moment_series(ms) == law


def test_additive_convolution():
    rng = random.Random(73)
    k = 1
    mu = rand_law(rng, k=k, num_vars=1, max_len=5)
    nu = rand_law(rng, k=k, num_vars=1, max_len=5)
    rho = rand_law(rng, k=k, num_vars=1, max_len=5)
    delta0 = law_from_moment_series(CkSeries.zero(k, 5))
    assert additive_convolve(mu, delta0) == mu
    assert additive_convolve(mu, nu) == additive_convolve(nu, mu)
    lhs = additive_convolve(additive_convolve(mu, nu), rho)
    assert lhs == additive_convolve(mu, additive_convolve(nu, rho))
    # cumulants add
    cm = moments_to_cumulants(mu)
    cn = moments_to_cumulants(nu)
    cs = moments_to_cumulants(additive_convolve(mu, nu))
    for w in all_words(1, 5):
        assert cs.cumulant(w) == cm.cumulant(w) + cn.cumulant(w)
    with pytest.raises(ValueError):
        additive_convolve(mu, rand_law(rng, k=0, num_vars=1, max_len=5))


def test_semicircular_variance_adds():
    a = example_law("semicircular", scalar(0, 1), 0, 6)
    b = example_law("semicircular", scalar(0, 2), 0, 6)
    assert additive_convolve(a, b) == example_law("semicircular", scalar(0, 3), 0, 6)


def test_multiplicative_convolution():
    rng = random.Random(79)
    k = 1
    mu = rand_law(rng, k=k, num_vars=1, max_len=5)
    nu = rand_law(rng, k=k, num_vars=1, max_len=5)
    rho = rand_law(rng, k=k, num_vars=1, max_len=5)
    ones = CkSeries(k, 5, [CkScalar.one(k)] * 5)
    delta1 = law_from_moment_series(ones)  # law of the unit element
    assert multiplicative_convolve(mu, delta1) == mu
    lhs = multiplicative_convolve(multiplicative_convolve(mu, nu), rho)
    assert lhs == multiplicative_convolve(mu, multiplicative_convolve(nu, rho))


def test_s_transform_multiplicative_on_bernoulli():
    # fair Bernoulli on {0,1}: every moment is 1/2
    half = CkSeries.from_rationals(0, [Fraction(1, 2)] * 5)
    bern = law_from_moment_series(half)
    prod = multiplicative_convolve(bern, bern)
    lhs = s_transform(prod)
    rhs = series_mul(s_transform(bern), s_transform(bern))
    assert lhs == rhs


def test_s_transform_multiplicative_random():
    rng = random.Random(83)
    for k in range(3):
        while True:
            mu = rand_law(rng, k=k, num_vars=1, max_len=5)
            nu = rand_law(rng, k=k, num_vars=1, max_len=5)
            if (
                mu.moment((1,)).coords[0] != 0
                and nu.moment((1,)).coords[0] != 0
            ):
                break
        lhs = s_transform(multiplicative_convolve(mu, nu))
        assert lhs == series_mul(s_transform(mu), s_transform(nu))


def test_example_laws():
    semi = example_law("semicircular", scalar(0, 1), 0, 6)
    moments = [semi.moment((1,) * n).coords[0] for n in range(1, 7)]
    assert moments == [0, 1, 0, 2, 0, 5]
    fp = example_law("free_poisson", scalar(0, 1), 0, 6)
    catalan = [1, 2, 5, 14, 42, 132]
    assert [fp.moment((1,) * n).coords[0] for n in range(1, 7)] == catalan
    with pytest.raises(ValueError):
        example_law("uniform", scalar(0, 1), 0, 4)


def test_example_law_with_infinitesimal_parameter():
    # parameter 1 + eps: the first-order part of each cumulant is 1
    params = CkScalar(1, [1, 1])
    semi = example_law("semicircular", params, 1, 4)
    c = moments_to_cumulants(semi)
    assert c.cumulant((1, 1)) == params
    assert c.cumulant((1,)) == CkScalar.zero(1)
    assert c.cumulant((1, 1, 1)) == CkScalar.zero(1)
