"""Non-crossing partitions of type k.

An element of NC^(k)(n) is a non-crossing partition of [(k+1)n] whose mod-n
reduction, and the reduction of its Kreweras complement, are both
non-crossing partitions of [n].  The fiber over a fixed reduction p is
enumerated directly by a constrained left-to-right scan: a block may only
grow along the successor cycle of its reduced block, and may only close
once its length is a multiple of that block's size.
"""
from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Iterator

from .ck import LambdaVector
from .partitions import (
    BarredElement,
    NcPartition,
    SetPartition,
    biane_permutation,
    enumerate_nc,
    is_noncrossing,
    kreweras,
    ordered_blocks,
    refines,
)


def residue(x: int, n: int) -> int:
    return (x - 1) % n + 1


def reduce_mod(p: SetPartition, n: int, k: int) -> tuple:
    """Blockwise image of p under x -> residue mod n, duplicates merged.

    The result is a collection of subsets of [n]; it need not be a partition.
    """
    if p.n != (k + 1) * n:
        raise ValueError(f"ground size {p.n} is not (k+1)n = {(k + 1) * n}")
    images = {tuple(sorted({residue(x, n) for x in b})) for b in p.blocks}
    return tuple(sorted(images))


def reduction_partition(p: SetPartition, n: int, k: int) -> NcPartition | None:
    """reduce_mod as a non-crossing partition of [n], or None if it is not one."""
    images = reduce_mod(p, n, k)
    flat = sorted(x for b in images for x in b)
    if flat != list(range(1, n + 1)):
        return None
    if not is_noncrossing(images):
        return None
    return NcPartition(n, images)


def _charac_form(p: NcPartition, n: int, k: int) -> bool:
    """Single-condition membership: the reduction of p united with its
    complement is a non-crossing partition of the interleaved doubled [n]."""
    kr = kreweras(p)
    images = {tuple(sorted({2 * residue(x, n) - 1 for x in b})) for b in p.blocks}
    images |= {tuple(sorted({2 * residue(x, n) for x in b})) for b in kr.blocks}
    flat = sorted(x for b in images for x in b)
    if flat != list(range(1, 2 * n + 1)):
        return False
    return is_noncrossing(images)


def is_type_k(p: NcPartition, n: int, k: int) -> bool:
    """Membership in NC^(k)(n) for a non-crossing p on [(k+1)n]."""
    if p.n != (k + 1) * n:
        raise ValueError(f"ground size {p.n} is not (k+1)n = {(k + 1) * n}")
    q = reduction_partition(p, n, k)
    ok = q is not None and reduction_partition(kreweras(p), n, k) is not None
    assert ok == _charac_form(p, n, k)
    return ok


def _fiber_scan(p: NcPartition, k: int) -> Iterator[NcPartition]:
    """All pi in NC^(k)(n) with reduction p.

    Scan positions 1..(k+1)n keeping a stack of open blocks.  A position may
    start a new block, or extend an open block whose walk expects its
    residue; extending a non-top block closes everything above it, which is
    only allowed when those blocks have completed whole cycles.
    """
    n = p.n
    m = (k + 1) * n
    t = biane_permutation(p)
    cyc_size = {x: len(b) for b in p.blocks for x in b}

    # stack entries are [elements, expected_next_residue, cycle_size]
    def rec(pos: int, stack: list, closed: list, excess_closed: int):
        if pos > m:
            if all(len(e[0]) % e[2] == 0 for e in stack):
                yield NcPartition(m, [list(e[0]) for e in stack] + closed)
            return
        remaining = m - pos + 1
        # each open block still needs (-len) mod cycle elements to finish
        if sum((-len(e[0])) % e[2] for e in stack) > remaining:
            return
        # blocks of pi contribute len/cycle - 1 each to the excess budget k
        if excess_closed + sum((len(e[0]) - 1) // e[2] for e in stack) > k:
            return
        r = residue(pos, n)
        stack.append([[pos], t[r], cyc_size[r]])
        yield from rec(pos + 1, stack, closed, excess_closed)
        stack.pop()
        popped = []  # completed entries closed over, top-first
        extra = 0
        while stack:
            top = stack[-1]
            if top[1] == r:
                stack.pop()
                elems, _, cyc = top
                elems.append(pos)
                yield from rec(
                    pos + 1,
                    stack + [[elems, t[r], cyc]],
                    closed + [list(e[0]) for e in popped],
                    excess_closed + extra,
                )
                elems.pop()
                stack.append(top)
            if len(top[0]) % top[2] != 0:
                break  # an incomplete block cannot be closed over
            popped.append(stack.pop())
            extra += len(top[0]) // top[2] - 1
        while popped:
            stack.append(popped.pop())

    yield from rec(1, [], [], 0)


@lru_cache(maxsize=None)
def _fiber_raw(p: NcPartition, k: int) -> tuple:
    return tuple(_fiber_scan(p, k))


@lru_cache(maxsize=None)
def _fiber_tk(p: NcPartition, k: int) -> tuple:
    return tuple(TypeKPartition(pi, p.n, k) for pi in _fiber_raw(p, k))


class TypeKPartition:
    """Element of NC^(k)(n) with its reduction and shape cached."""

    __slots__ = ("n", "k", "partition", "reduction", "shape")

    def __init__(self, partition: NcPartition, n: int, k: int):
        if not is_type_k(partition, n, k):
            raise ValueError(f"not a type-{k} partition over [{(k + 1) * n}]: {partition!r}")
        reduction = reduction_partition(partition, n, k)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "partition", partition)
        object.__setattr__(self, "reduction", reduction)
        object.__setattr__(self, "shape", _compute_shape(partition, reduction, n, k))

    def __setattr__(self, name, value):
        raise AttributeError("TypeKPartition is immutable")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TypeKPartition)
            and self.n == other.n
            and self.k == other.k
            and self.partition == other.partition
        )

    def __hash__(self):
        return hash((self.n, self.k, self.partition))

    def __repr__(self):
        return f"TypeKPartition(n={self.n}, k={self.k}, partition={self.partition!r})"


def _compute_shape(pi: NcPartition, q: NcPartition, n: int, k: int) -> LambdaVector:
    """Shape vector over the n+1 blocks of q united with Kr(q), nesting order.

    Entry i collects (multiplicity - 1) over the blocks of pi and Kr(pi)
    reducing to the i-th mixed block; multiplicity is |V| / |reduced V|.
    """
    mix_list, _ = ordered_blocks(q)
    index_of = {blk: i for i, blk in enumerate(mix_list)}
    entries = [0] * (n + 1)
    for barred, part in ((False, pi), (True, kreweras(pi))):
        for b in part.blocks:
            red = tuple(sorted({residue(x, n) for x in b}))
            if len(b) % len(red) != 0:
                raise ValueError(f"block {b} has fractional multiplicity")
            key = tuple(BarredElement(r, barred) for r in red)
            entries[index_of[key]] += len(b) // len(red) - 1
    return LambdaVector(tuple(entries), k)


def shape_of(tk: TypeKPartition) -> LambdaVector:
    return tk.shape


def fiber_over(p: NcPartition, k: int) -> tuple:
    """All TypeKPartition with reduction p, memoized per (p, k)."""
    return _fiber_tk(p, k)


@lru_cache(maxsize=None)
def _enumerate_type_k_cache(n: int, k: int) -> tuple:
    out = []
    for p in enumerate_nc(n):
        out.extend(fiber_over(p, k))
    return tuple(out)


def enumerate_type_k(n: int, k: int) -> tuple:
    """All of NC^(k)(n), grouped by reduction."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    return _enumerate_type_k_cache(n, k)


def fiber_size_formula(n: int, k: int) -> int:
    """Common fiber cardinality over any reduction: the Fuss-Catalan count
    C((n+1)(k+1), k+1) / ((k+1)n + 1)."""
    return comb((n + 1) * (k + 1), k + 1) // ((k + 1) * n + 1)


def is_star(tk: TypeKPartition) -> bool:
    """True when every block of the Kreweras complement is simple, i.e. the
    barred half of the shape vanishes."""
    kr = kreweras(tk.partition)
    n = tk.n
    for b in kr.blocks:
        red = {residue(x, n) for x in b}
        if len(b) != len(red):
            return False
    return True


@lru_cache(maxsize=None)
def _enumerate_star_cache(n: int, k: int) -> tuple:
    return tuple(tk for tk in enumerate_type_k(n, k) if is_star(tk))


def enumerate_type_k_star(n: int, k: int) -> tuple:
    """The subset NC*^(k)(n): no non-simple blocks in the complement."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    return _enumerate_star_cache(n, k)


def star_shape(tk: TypeKPartition) -> LambdaVector:
    """Shape restricted to the blocks of the reduction, in nesting order.

    Only meaningful on NC* elements, where the dropped barred entries are
    all zero; the restriction then still sums to k.
    """
    mix_list, _ = ordered_blocks(tk.reduction)
    entries = tuple(
        e for blk, e in zip(mix_list, tk.shape.entries) if not blk[0].barred
    )
    return LambdaVector(entries, tk.k)


@lru_cache(maxsize=None)
def _shape_counts(p: NcPartition, k: int) -> dict:
    counts = {}
    for tk in fiber_over(p, k):
        key = tk.shape.entries
        counts[key] = counts.get(key, 0) + 1
    return counts


def r_of_shape(lam: LambdaVector, n: int, k: int, p: NcPartition | None = None) -> int:
    """Number of elements in the fiber over p with the given shape vector.

    The count does not depend on p; the default reference is the one-block
    partition of [n].
    """
    if len(lam.entries) != n + 1 or lam.target != k:
        raise ValueError(f"shape must have n+1 = {n + 1} entries summing to k = {k}")
    if p is None:
        p = NcPartition(n, [range(1, n + 1)])
    return _shape_counts(p, k).get(lam.entries, 0)


def nc_meet(p: NcPartition, q: NcPartition):
    """Meet of p and q in the non-crossing lattice, by brute force:
    the unique maximal non-crossing common refinement.  Small n only."""
    if p.n != q.n:
        raise ValueError("meet needs a common ground set")
    candidates = [
        r for r in enumerate_nc(p.n) if refines(r, p) and refines(r, q)
    ]
    for r in candidates:
        if all(refines(s, r) for s in candidates):
            return r
    raise ValueError("no maximum among common refinements")
