"""Set partitions and non-crossing partitions of [n] = {1, ..., n}.

Blocks are stored as sorted tuples of ints, the partition as a tuple of
blocks sorted by minimum.  Kreweras complements are computed by a cycle
formula on [2n] rather than by search, so both directions are O(n).
"""
from __future__ import annotations

from functools import cmp_to_key, lru_cache
from math import comb
from typing import Iterable, Iterator, NamedTuple


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


class SetPartition:
    """Partition of {1, ..., n} into disjoint non-empty blocks."""

    __slots__ = ("n", "blocks", "_block_of")

    def __init__(self, n: int, blocks: Iterable[Iterable[int]]):
        blocks = tuple(tuple(sorted(b)) for b in blocks)
        blocks = tuple(sorted(blocks, key=lambda b: b[0]))
        seen = [x for b in blocks for x in b]
        if sorted(seen) != list(range(1, n + 1)):
            raise ValueError(f"blocks do not partition 1..{n}: {blocks}")
        block_of = {}
        for idx, b in enumerate(blocks):
            for x in b:
                block_of[x] = idx
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "_block_of", block_of)

    def __setattr__(self, name, value):
        raise AttributeError("SetPartition is immutable")

    def block_index_of(self, x: int) -> int:
        return self._block_of[x]

    def block_of(self, x: int) -> tuple:
        return self.blocks[self._block_of[x]]

    def same_block(self, x: int, y: int) -> bool:
        return self._block_of[x] == self._block_of[y]

    def num_blocks(self) -> int:
        return len(self.blocks)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SetPartition)
            and self.n == other.n
            and self.blocks == other.blocks
        )

    def __hash__(self):
        return hash((self.n, self.blocks))

    def __repr__(self):
        body = ", ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)
        return f"<{type(self).__name__} {self.n}: {body}>"


class NcPartition(SetPartition):
    """Non-crossing partition; the constructor rejects crossings."""

    __slots__ = ()

    def __init__(self, n: int, blocks: Iterable[Iterable[int]]):
        super().__init__(n, blocks)
        if not is_noncrossing(self.blocks):
            raise ValueError(f"partition has a crossing: {self.blocks}")


def is_noncrossing(blocks: Iterable[Iterable[int]]) -> bool:
    """True when no a < b < c < d has a~c in one block and b~d in another.

    Only consecutive-in-block pairs need checking: any crossing between two
    blocks forces a crossing between some pair of consecutive arcs.
    """
    arcs = []
    for b in blocks:
        b = sorted(b)
        for i in range(len(b) - 1):
            arcs.append((b[i], b[i + 1]))
    for i, (a, c) in enumerate(arcs):
        for b, d in arcs[i + 1:]:
            lo, hi = (a, c)
            x, y = (b, d)
            if lo < x < hi < y or x < lo < y < hi:
                return False
    return True


def enumerate_set_partitions(n: int) -> Iterator[SetPartition]:
    """All partitions of [n] via restricted growth strings."""
    if n == 0:
        yield SetPartition(0, ())
        return

    def rec(i: int, labels: list, maxi: int):
        if i > n:
            blocks = [[] for _ in range(maxi + 1)]
            for pos, lab in enumerate(labels, start=1):
                blocks[lab].append(pos)
            yield SetPartition(n, blocks)
            return
        for lab in range(maxi + 2):
            labels.append(lab)
            yield from rec(i + 1, labels, max(maxi, lab))
            labels.pop()

    yield from rec(2, [0], 0)


def _enumerate_nc_blocks(n: int) -> Iterator[tuple]:
    """Block tuples of all non-crossing partitions of [n].

    Left-to-right scan with a stack of open blocks.  At each position either
    open a new block, or extend one of the open blocks; extending a block
    below the top closes everything above it, so each partition is produced
    exactly once.
    """
    if n == 0:
        yield ()
        return

    def rec(pos: int, stack: list, closed: list):
        if pos > n:
            yield tuple(sorted((tuple(b) for b in closed + stack), key=lambda b: b[0]))
            return
        stack.append([pos])
        yield from rec(pos + 1, stack, closed)
        stack.pop()
        popped = []
        while stack:
            top = stack.pop()
            top.append(pos)
            yield from rec(pos + 1, stack + [top], closed + popped)
            top.pop()
            popped.append(top)
        while popped:
            stack.append(popped.pop())

    yield from rec(1, [], [])


@lru_cache(maxsize=None)
def _nc_cache(n: int) -> tuple:
    return tuple(NcPartition(n, blocks) for blocks in _enumerate_nc_blocks(n))


def enumerate_nc(n: int) -> tuple:
    """All non-crossing partitions of [n], memoized; Catalan(n) of them."""
    if n < 1:
        raise ValueError("enumerate_nc needs n >= 1")
    return _nc_cache(n)


def biane_permutation(p: SetPartition) -> dict:
    """x -> next element of its block, cyclically within the block."""
    t = {}
    for b in p.blocks:
        for i, x in enumerate(b):
            t[x] = b[(i + 1) % len(b)]
    return t


def kreweras(p: NcPartition, direction: str = "forward") -> NcPartition:
    """Kreweras complement of p, or the inverse complement.

    Forward: blocks are the cycles of x -> t^(-1)((x mod n) + 1) where t is
    the cyclic-successor map of p.  Inverse composes the steps the other way
    round, so kreweras(kreweras(p), "inverse") == p.
    """
    if direction not in ("forward", "inverse"):
        raise ValueError(f"direction must be 'forward' or 'inverse', not {direction!r}")
    n = p.n
    if n == 0:
        return NcPartition(0, ())
    t = biane_permutation(p)
    t_inv = {v: k for k, v in t.items()}
    if direction == "forward":
        step = lambda x: t_inv[(x % n) + 1]
    else:
        step = lambda x: (t_inv[x] % n) + 1
    blocks = []
    seen = set()
    for start in range(1, n + 1):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        x = step(start)
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = step(x)
        blocks.append(cyc)
    return NcPartition(n, blocks)


class BarredElement(NamedTuple):
    """Element i or i-bar of the doubled ground set; tuple order interleaves
    1 < 1bar < 2 < 2bar < ... so sorting gives the alternating arrangement."""

    index: int
    barred: bool

    def __repr__(self):
        return f"{self.index}'" if self.barred else f"{self.index}"


def _doubled_position(e: BarredElement) -> int:
    return 2 * e.index if e.barred else 2 * e.index - 1


def block_order_cmp(v: tuple, w: tuple) -> int:
    """Partial order on disjoint blocks: V before W when max V < min W, or W
    nests around V (min W < min V and max V < max W).  Blocks here are sorted
    tuples of comparable elements; on blocks of a single non-crossing
    partition together with its complement this order is total."""
    if v == w:
        return 0
    if v[-1] < w[0]:
        return -1
    if w[-1] < v[0]:
        return 1
    if w[0] < v[0] and v[-1] < w[-1]:
        return -1
    if v[0] < w[0] and w[-1] < v[-1]:
        return 1
    raise ValueError(f"blocks {v} and {w} are incomparable")


def ordered_blocks(p: NcPartition) -> tuple:
    """Canonical block lists of p united with its Kreweras complement.

    Returns (mix_list, sep_list).  Both list the same n+1 blocks over the
    doubled alphabet 1 < 1bar < 2 < 2bar < ... < n < nbar, with p living on
    the unbarred copy and the complement on the barred one.  mix_list sorts
    all blocks together by the nesting order; sep_list lists p's blocks in
    that order first, then the complement's.
    """
    kr = kreweras(p)
    key = cmp_to_key(block_order_cmp)
    p_blocks = [tuple(BarredElement(x, False) for x in b) for b in p.blocks]
    kr_blocks = [tuple(BarredElement(x, True) for x in b) for b in kr.blocks]
    mix_list = sorted(p_blocks + kr_blocks, key=key)
    sep_list = sorted(p_blocks, key=key) + sorted(kr_blocks, key=key)
    return tuple(mix_list), tuple(sep_list)


def partition_join(p: SetPartition, q: SetPartition) -> SetPartition:
    """Least common coarsening in the full partition lattice (union-find)."""
    if p.n != q.n:
        raise ValueError("join needs a common ground set")
    n = p.n
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for part in (p, q):
        for b in part.blocks:
            for x in b[1:]:
                union(b[0], x)
    groups = {}
    for x in range(1, n + 1):
        groups.setdefault(find(x), []).append(x)
    return SetPartition(n, groups.values())


def refines(p: SetPartition, q: SetPartition) -> bool:
    """True when every block of p sits inside a block of q."""
    if p.n != q.n:
        raise ValueError("refinement needs a common ground set")
    return all(q.same_block(b[0], x) for b in p.blocks for x in b[1:])


def mobius_to_top(p: NcPartition) -> int:
    """Mobius function of the interval [p, 1_n] in the non-crossing lattice.

    Product over the Kreweras complement's blocks of the one-block value
    (-1)^(m-1) Catalan(m-1) for a block of size m.
    """
    out = 1
    for b in kreweras(p).blocks:
        m = len(b)
        out *= (-1) ** (m - 1) * catalan(m - 1)
    return out


def nc_coarsenings(p: NcPartition) -> Iterator[NcPartition]:
    """All non-crossing q with p <= q, by merging blocks of p."""
    blocks = p.blocks
    for grouping in enumerate_set_partitions(len(blocks)):
        merged = []
        for g in grouping.blocks:
            merged.append(sorted(x for i in g for x in blocks[i - 1]))
        if is_noncrossing(merged):
            yield NcPartition(p.n, merged)


def rotate_partition(p: SetPartition, shift: int = 1) -> SetPartition:
    """Image of p under x -> x + shift modulo n (anticlockwise for shift=-1)."""
    n = p.n
    return type(p)(n, [[(x - 1 + shift) % n + 1 for x in b] for b in p.blocks])
