"""Moment-cumulant transforms over C_k and their componentwise forms."""
from fractions import Fraction
import random

import pytest

from infree.ck import CkScalar, ck_mul, ck_prod_many
from infree.cumulants import (
    CumulantTable,
    InfLaw,
    all_words,
    assemble_components,
    cumulant_of_products,
    cumulants_to_moments,
    infinitesimal_component,
    interval_partition,
    kappa_pi,
    moments_to_cumulants,
    restrict,
)
from infree.partitions import NcPartition, SetPartition

from helpers import (
    kappa_component_oracle,
    nc_star_moment_oracle,
    phi_component_oracle,
    rand_cumulants,
    rand_law,
    rand_scalar,
)


def test_all_words_shortlex():
    ws = list(all_words(2, 2))
    assert ws == [(1,), (2,), (1, 1), (1, 2), (2, 1), (2, 2)]
    assert list(all_words(3, 1)) == [(1,), (2,), (3,)]


def test_restrict():
    assert restrict((5, 6, 7, 8), (1, 3)) == (5, 7)
    assert restrict((5, 6, 7), (2,)) == (6,)


def test_table_validation():
    one_entry = {(1,): CkScalar(0, [Fraction(1)])}
    law = InfLaw(0, 1, 1, one_entry)
    assert law.moment(()) == CkScalar.one(0)
    with pytest.raises(ValueError):
        InfLaw(0, 1, 2, one_entry)  # word (1,1) missing
    with pytest.raises(ValueError):
        InfLaw(1, 1, 1, one_entry)  # entry has order 0, table has order 1
    bad = dict(one_entry)
    bad[(1, 1)] = CkScalar(0, [Fraction(1)])
    with pytest.raises(ValueError):
        InfLaw(0, 1, 1, bad)  # extra key beyond max_len


def test_length_one_and_two_formulas():
    rng = random.Random(11)
    c = rand_cumulants(rng, k=1, num_vars=2, max_len=2)
    m = cumulants_to_moments(c)
    for v in (1, 2):
        assert m.moment((v,)) == c.cumulant((v,))
    for w in [(1, 2), (2, 1), (1, 1)]:
        expected = c.cumulant(w) + ck_mul(c.cumulant((w[0],)), c.cumulant((w[1],)))
        assert m.moment(w) == expected
    back = moments_to_cumulants(m)
    for w in [(1, 2), (2, 2)]:
        expected = m.moment(w) - ck_mul(m.moment((w[0],)), m.moment((w[1],)))
        assert back.cumulant(w) == expected


def test_semicircular_moments():
    values = {}
    for w in all_words(1, 6):
        c = Fraction(1) if len(w) == 2 else Fraction(0)
        values[w] = CkScalar(0, [c])
    m = cumulants_to_moments(CumulantTable(0, 1, 6, values))
    got = [m.moment((1,) * n).coords[0] for n in range(1, 7)]
    assert got == [0, 1, 0, 2, 0, 5]


def test_round_trip():
    rng = random.Random(7)
    for k in range(3):
        for _ in range(4):
            c = rand_cumulants(rng, k=k, num_vars=2, max_len=4)
            assert moments_to_cumulants(cumulants_to_moments(c)) == c
            law = rand_law(rng, k=k, num_vars=1, max_len=4)
            assert cumulants_to_moments(moments_to_cumulants(law)) == law
    c = rand_cumulants(random.Random(8), k=1, num_vars=1, max_len=6)
    assert moments_to_cumulants(cumulants_to_moments(c)) == c


def test_unit_law_cumulants_vanish():
    k = 2
    values = {w: CkScalar.one(k) for w in all_words(1, 5)}
    c = moments_to_cumulants(InfLaw(k, 1, 5, values))
    assert c.cumulant((1,)) == CkScalar.one(k)
    for n in range(2, 6):
        assert c.cumulant((1,) * n) == CkScalar.zero(k)


def test_unit_variable_insertion_kills_cumulants():
    # variable 2 acts as the unit: dropping it never changes a moment
    rng = random.Random(3)
    base = rand_law(rng, k=1, num_vars=1, max_len=4)
    values = {}
    for w in all_words(2, 4):
        stripped = tuple(x for x in w if x == 1)
        values[w] = base.moment(stripped)
    c = moments_to_cumulants(InfLaw(1, 2, 4, values))
    for w in all_words(2, 4):
        if len(w) >= 2 and 2 in w:
            assert c.cumulant(w) == CkScalar.zero(1), w


def test_kappa_pi():
    rng = random.Random(5)
    c = rand_cumulants(rng, k=1, num_vars=2, max_len=3)
    w = (1, 2, 1)
    assert kappa_pi(c, NcPartition(3, [[1, 2, 3]]), w) == c.cumulant(w)
    singles = kappa_pi(c, NcPartition(3, [[1], [2], [3]]), w)
    assert singles == ck_prod_many([c.cumulant((x,)) for x in w])
    nested = kappa_pi(c, NcPartition(3, [[1, 3], [2]]), w)
    assert nested == ck_mul(c.cumulant((1, 1)), c.cumulant((2,)))
    with pytest.raises(ValueError):
        kappa_pi(c, NcPartition(2, [[1], [2]]), w)


def test_interval_partition():
    assert interval_partition((2, 3), 3) == SetPartition(3, [[1, 2], [3]])
    assert interval_partition((1, 2, 3), 3) == SetPartition(3, [[1], [2], [3]])
    with pytest.raises(ValueError):
        interval_partition((2, 2), 2)
    with pytest.raises(ValueError):
        interval_partition((2,), 3)


def test_cumulant_of_products():
    rng = random.Random(13)
    c = rand_cumulants(rng, k=1, num_vars=3, max_len=3)
    w = (1, 2, 3)
    # trivial grouping changes nothing
    assert cumulant_of_products(c, (1, 2, 3), w) == c.cumulant(w)
    # one product of two letters: both partitions of [2] survive
    got = cumulant_of_products(c, (2,), (1, 2))
    expected = c.cumulant((1, 2)) + ck_mul(c.cumulant((1,)), c.cumulant((2,)))
    assert got == expected
    assert got == cumulants_to_moments(c).moment((1, 2))
    # kappa_2(ab, c)
    got = cumulant_of_products(c, (2, 3), w)
    expected = (
        c.cumulant(w)
        + ck_mul(c.cumulant((1,)), c.cumulant((2, 3)))
        + ck_mul(c.cumulant((1, 3)), c.cumulant((2,)))
    )
    assert got == expected


def test_infinitesimal_component_scalar_and_table():
    a = CkScalar(2, [Fraction(3), Fraction(1, 2), Fraction(-4)])
    assert infinitesimal_component(a, 0) == Fraction(3)
    assert infinitesimal_component(a, 2) == Fraction(-4)
    with pytest.raises(ValueError):
        infinitesimal_component(a, 3)
    assert assemble_components(2, [Fraction(3), Fraction(1, 2), Fraction(-4)]) == a

    rng = random.Random(17)
    c = rand_cumulants(rng, k=2, num_vars=1, max_len=3)
    comp = infinitesimal_component(c, 1)
    for w in all_words(1, 3):
        assert comp[w] == c.cumulant(w).coords[1]


def test_componentwise_moment_formula():
    # each component of a moment expands over partitions and weight splittings
    rng = random.Random(23)
    for k in range(3):
        c = rand_cumulants(rng, k=k, num_vars=2, max_len=5)
        m = cumulants_to_moments(c)
        for w in all_words(2, 5):
            if len(w) > 5:
                continue
            for i in range(k + 1):
                assert m.moment(w).coords[i] == phi_component_oracle(c, w, i)


def test_componentwise_cumulant_formula():
    rng = random.Random(29)
    for k in range(3):
        law = rand_law(rng, k=k, num_vars=1, max_len=5)
        c = moments_to_cumulants(law)
        for w in all_words(1, 5):
            for i in range(k + 1):
                assert c.cumulant(w).coords[i] == kappa_component_oracle(law, w, i)


def test_star_rewrite_of_moment_formula():
    rng = random.Random(31)
    c = rand_cumulants(rng, k=2, num_vars=2, max_len=4)
    m = cumulants_to_moments(c)
    for w in all_words(2, 4):
        for i in range(3):
            assert m.moment(w).coords[i] == nc_star_moment_oracle(c, w, i), (w, i)
