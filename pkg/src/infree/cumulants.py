"""Moment and cumulant tables over C_k and the transforms between them.

A table assigns a C_k scalar to every word over {1, ..., num_vars} of
length 1..max_len; the empty word is implicitly the unit.  Moments and
cumulants determine each other through the non-crossing partition sums,
with the Mobius weights on the inverse direction.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator

from .ck import CkScalar, ck_prod_many
from .partitions import NcPartition, SetPartition, enumerate_nc, mobius_to_top, partition_join


def all_words(num_vars: int, max_len: int) -> Iterator[tuple]:
    """Non-empty words over {1..num_vars} of length <= max_len, shortlex."""
    for length in range(1, max_len + 1):
        yield from product(range(1, num_vars + 1), repeat=length)


def restrict(w: tuple, block: tuple) -> tuple:
    """Subword of w at the 1-based positions in block, in increasing order."""
    return tuple(w[i - 1] for i in block)


class _WordTable:
    """Dense map from words to C_k scalars; base for laws and cumulant tables."""

    __slots__ = ("k", "num_vars", "max_len", "values")

    def __init__(self, k: int, num_vars: int, max_len: int, values: dict):
        if num_vars < 1 or max_len < 1 or k < 0:
            raise ValueError("need num_vars >= 1, max_len >= 1, k >= 0")
        store = {}
        for w in all_words(num_vars, max_len):
            if w not in values:
                raise ValueError(f"missing entry for word {w}")
            v = values[w]
            if not isinstance(v, CkScalar) or v.k != k:
                raise ValueError(f"entry for word {w} is not a C_{k} scalar")
            store[w] = v
        if len(values) != len(store):
            extra = sorted(set(values) - set(store))[:3]
            raise ValueError(f"unexpected word keys: {extra}")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "max_len", max_len)
        object.__setattr__(self, "values", store)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def value(self, w: tuple) -> CkScalar:
        if len(w) == 0:
            return CkScalar.one(self.k)
        return self.values[w]

    def words(self) -> Iterator[tuple]:
        return all_words(self.num_vars, self.max_len)

    def __eq__(self, other) -> bool:
        return (
            type(self) is type(other)
            and self.k == other.k
            and self.num_vars == other.num_vars
            and self.max_len == other.max_len
            and self.values == other.values
        )

    def __hash__(self):
        return hash((type(self).__name__, self.k, self.num_vars, self.max_len,
                     tuple(sorted(self.values.items()))))

    def __repr__(self):
        return (f"{type(self).__name__}(k={self.k}, num_vars={self.num_vars}, "
                f"max_len={self.max_len})")


class InfLaw(_WordTable):
    """Infinitesimal law of order k: word w maps to the moment of a_w1...a_wm."""

    __slots__ = ()

    def moment(self, w: tuple) -> CkScalar:
        return self.value(w)


class CumulantTable(_WordTable):
    """Same shape as InfLaw but entries are the free cumulants of the words."""

    __slots__ = ()

    def cumulant(self, w: tuple) -> CkScalar:
        return self.value(w)


@lru_cache(maxsize=None)
def _nc_with_mobius(n: int) -> tuple:
    """(blocks, Mobius-to-top) for every non-crossing partition of [n]."""
    return tuple((p.blocks, mobius_to_top(p)) for p in enumerate_nc(n))


def cumulants_to_moments(c: CumulantTable) -> InfLaw:
    """Moment of each word as the sum over non-crossing partitions of the
    block products of cumulants."""
    out = {}
    for w in c.words():
        n = len(w)
        acc = CkScalar.zero(c.k)
        for blocks, _ in _nc_with_mobius(n):
            acc = acc + ck_prod_many([c.value(restrict(w, b)) for b in blocks])
        out[w] = acc
    return InfLaw(c.k, c.num_vars, c.max_len, out)


def moments_to_cumulants(m: InfLaw) -> CumulantTable:
    """Mobius inversion of the partition sum; exact inverse of
    cumulants_to_moments."""
    out = {}
    for w in m.words():
        n = len(w)
        acc = CkScalar.zero(m.k)
        for blocks, mob in _nc_with_mobius(n):
            acc = acc + ck_prod_many([m.value(restrict(w, b)) for b in blocks]).scale(mob)
        out[w] = acc
    return CumulantTable(m.k, m.num_vars, m.max_len, out)


def kappa_pi(c: CumulantTable, pi: SetPartition, w: tuple) -> CkScalar:
    """Product over the blocks of pi of the cumulants of the restricted word."""
    if pi.n != len(w):
        raise ValueError(f"partition on [{pi.n}] against a word of length {len(w)}")
    return ck_prod_many([c.value(restrict(w, b)) for b in pi.blocks])


def interval_partition(grouping: tuple, s: int) -> SetPartition:
    """Intervals (1..s1), (s1+1..s2), ... for a strictly increasing grouping
    ending at s."""
    if not grouping or list(grouping) != sorted(set(grouping)) or grouping[-1] != s:
        raise ValueError(f"grouping must be strictly increasing and end at {s}: {grouping}")
    if grouping[0] < 1:
        raise ValueError("grouping entries must be >= 1")
    blocks = []
    lo = 1
    for hi in grouping:
        blocks.append(range(lo, hi + 1))
        lo = hi + 1
    return SetPartition(s, blocks)


def cumulant_of_products(c: CumulantTable, grouping: tuple, w: tuple) -> CkScalar:
    """Cumulant of the grouped products a_{w_1}..a_{w_s1}, a_{w_s1+1}.., ...

    Sum of kappa_pi over the non-crossing pi whose join with the grouping's
    interval partition is the one-block partition.
    """
    s = len(w)
    theta = interval_partition(tuple(grouping), s)
    top = SetPartition(s, [range(1, s + 1)])
    acc = CkScalar.zero(c.k)
    for pi in enumerate_nc(s):
        if partition_join(pi, theta) == top:
            acc = acc + kappa_pi(c, pi, w)
    return acc


def infinitesimal_component(x, i: int):
    """Component i of a C_k scalar (a rational) or of a whole table (a dict).

    Stored coordinate vectors are already the component tuples
    (kappa^(0), ..., kappa^(k)), so this is a plain projection.
    """
    if isinstance(x, CkScalar):
        if not 0 <= i <= x.k:
            raise ValueError(f"component {i} out of range 0..{x.k}")
        return x.coords[i]
    if isinstance(x, _WordTable):
        if not 0 <= i <= x.k:
            raise ValueError(f"component {i} out of range 0..{x.k}")
        return {w: v.coords[i] for w, v in x.values.items()}
    raise TypeError(f"expected CkScalar or a word table, got {type(x).__name__}")


def assemble_components(k: int, components: list) -> CkScalar:
    """Inverse of componentwise projection: components[i] becomes coordinate i."""
    if len(components) != k + 1:
        raise ValueError(f"need {k + 1} components")
    return CkScalar(k, [Fraction(c) for c in components])
