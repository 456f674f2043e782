"""Non-crossing and bi-non-crossing set partitions with exact Mobius values.

Partitions of [n] = {1..n} are stored canonically: each block sorted
ascending, blocks ordered by their minima. The lattice order used
throughout is reverse refinement: ``pi <= sigma`` iff every block of pi is
contained in a block of sigma, so the one-block partition 1_n is the top
element and the all-singletons partition 0_n is the bottom.

Enumeration order is deterministic: lexicographic on the restricted-growth
string of the canonical form, so downstream sums are reproducible.
"""

from __future__ import annotations

import functools
import math
import os
from bisect import bisect_right
from dataclasses import dataclass
from itertools import combinations

from .errors import OrderError, SizeLimitError

LEFT = "L"
RIGHT = "R"

DEFAULT_MAX_N = 14
HARD_MAX_N = 16


def size_cap() -> int:
    """Enumeration cap; BIFREE_MAX_N may raise it up to the hard ceiling."""
    raw = os.environ.get("BIFREE_MAX_N")
    if raw is None:
        return DEFAULT_MAX_N
    return min(int(raw), HARD_MAX_N)


def catalan(n: int) -> int:
    """The n-th Catalan number, |NC(n)|."""
    return math.comb(2 * n, n) // (n + 1)


@dataclass(frozen=True)
class Partition:
    """A set partition of {1..n} in canonical block form."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def from_blocks(cls, n, blocks) -> "Partition":
        """Canonicalize and validate a collection of blocks covering {1..n}."""
        canon = tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0]))
        seen: list[int] = []
        for block in canon:
            if not block:
                raise ValueError("empty block")
            seen.extend(block)
        if sorted(seen) != list(range(1, n + 1)):
            raise ValueError(f"blocks do not partition {{1..{n}}}: {blocks}")
        return cls(n, canon)

    def rgs(self) -> tuple[int, ...]:
        """Restricted-growth string: position k carries the block index of k+1."""
        label = {}
        for i, block in enumerate(self.blocks):
            for k in block:
                label[k] = i
        return tuple(label[k] for k in range(1, self.n + 1))

    def block_of(self, k: int) -> tuple[int, ...]:
        for block in self.blocks:
            if k in block:
                return block
        raise KeyError(k)

    def to_jsonable(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]

    @classmethod
    def from_jsonable(cls, data) -> "Partition":
        n = sum(len(b) for b in data)
        return cls.from_blocks(n, data)


def zero_partition(n: int) -> Partition:
    return Partition(n, tuple((k,) for k in range(1, n + 1)))


def one_partition(n: int) -> Partition:
    return Partition(n, (tuple(range(1, n + 1)),))


def is_noncrossing(p: Partition) -> bool:
    """True iff no a < b < c < d has a, c in one block and b, d in another.

    Equivalently: between consecutive members of a block, only whole blocks
    may occur.
    """
    for block in p.blocks:
        for lo, hi in zip(block, block[1:]):
            for other in p.blocks:
                if other is block:
                    continue
                inside = sum(1 for x in other if lo < x < hi)
                if inside not in (0, len(other)):
                    return False
    return True


def _first_block_splits(rest):
    # Yield (members, segments): `members` joins the leading element's block,
    # `segments` are the maximal runs of skipped elements. Each segment is
    # partitioned independently; no block may straddle two segments without
    # crossing the leading block.
    if not rest:
        yield (), ()
        return
    yield (), (rest,)
    for j in range(len(rest)):
        seg = rest[:j]
        for members, segments in _first_block_splits(rest[j + 1:]):
            yield (rest[j],) + members, ((seg,) if seg else ()) + segments


def _nc_blocks(elems):
    # Yield the canonical block tuple of every non-crossing partition of
    # the increasing tuple `elems`.
    if not elems:
        yield ()
        return
    first, rest = elems[0], elems[1:]

    def expand(segments, i):
        if i == len(segments):
            yield ()
            return
        for left in _nc_blocks(segments[i]):
            for right in expand(segments, i + 1):
                yield left + right

    for members, segments in _first_block_splits(rest):
        head = (first,) + members
        for tail in expand(segments, 0):
            yield (head,) + tail


@functools.lru_cache(maxsize=None)
def _enumerate_nc_cached(n: int) -> tuple[Partition, ...]:
    parts = [Partition(n, blocks) for blocks in _nc_blocks(tuple(range(1, n + 1)))]
    parts.sort(key=Partition.rgs)
    return tuple(parts)


def enumerate_nc(n: int) -> tuple[Partition, ...]:
    """All non-crossing partitions of [n], RGS-lexicographic order.

    >>> [len(enumerate_nc(k)) for k in (1, 2, 3, 4)]
    [1, 2, 5, 14]
    """
    cap = size_cap()
    if not 1 <= n <= cap:
        raise SizeLimitError(f"n = {n} outside [1, {cap}] (Catalan growth)")
    if n <= 11:
        return _enumerate_nc_cached(n)
    parts = [Partition(n, blocks) for blocks in _nc_blocks(tuple(range(1, n + 1)))]
    parts.sort(key=Partition.rgs)
    return tuple(parts)


@dataclass(frozen=True)
class ChiMap:
    """Left/right labelling of the positions 1..n."""

    labels: tuple[str, ...]

    def __post_init__(self):
        if any(s not in (LEFT, RIGHT) for s in self.labels):
            raise ValueError(f"labels must be {LEFT!r} or {RIGHT!r}: {self.labels}")

    @classmethod
    def from_string(cls, text: str) -> "ChiMap":
        return cls(tuple(text.upper()))

    @property
    def n(self) -> int:
        return len(self.labels)

    def left_positions(self) -> tuple[int, ...]:
        return tuple(k for k in range(1, self.n + 1) if self.labels[k - 1] == LEFT)

    def right_positions(self) -> tuple[int, ...]:
        return tuple(k for k in range(1, self.n + 1) if self.labels[k - 1] == RIGHT)


def sigma_chi(chi: ChiMap) -> tuple[int, ...]:
    """Permutation reading left positions upward then right positions downward.

    Entry k-1 holds the image of k: the first p values are the left
    positions in increasing order, the rest the right positions in
    decreasing order.
    """
    lefts = chi.left_positions()
    rights = chi.right_positions()
    return lefts + tuple(reversed(rights))


def apply_permutation(p: Partition, perm: tuple[int, ...]) -> Partition:
    """Relabel every element k of every block by perm[k-1], recanonicalized."""
    return Partition.from_blocks(p.n, [[perm[k - 1] for k in block] for block in p.blocks])


def enumerate_bnc(chi: ChiMap) -> tuple[tuple[Partition, Partition], ...]:
    """Bi-non-crossing partitions for chi, each paired with its source.

    Returns (image, source) pairs where image = sigma_chi . source; the
    pairing transfers Mobius values, since the relabelling is a lattice
    isomorphism.
    """
    perm = sigma_chi(chi)
    return tuple((apply_permutation(p, perm), p) for p in enumerate_nc(chi.n))


def refines(pi: Partition, sigma: Partition) -> bool:
    """True iff every block of pi is contained in a block of sigma."""
    if pi.n != sigma.n:
        return False
    owner = {}
    for i, block in enumerate(sigma.blocks):
        for k in block:
            owner[k] = i
    return all(len({owner[k] for k in block}) == 1 for block in pi.blocks)


def restrict(p: Partition, subset) -> Partition:
    """Restriction of p to a union of its blocks, relabelled to {1..|subset|}.

    Order-preserving relabelling, so non-crossing is preserved.
    """
    subset = sorted(subset)
    rank = {x: i + 1 for i, x in enumerate(subset)}
    inside = [tuple(rank[k] for k in block) for block in p.blocks if block[0] in rank]
    return Partition(len(subset), tuple(sorted(inside, key=lambda b: b[0])))


def _set_partitions(k: int):
    # All set partitions of range(k) as tuples of index tuples.
    if k == 0:
        yield ()
        return
    for smaller in _set_partitions(k - 1):
        for i, group in enumerate(smaller):
            yield smaller[:i] + (group + (k - 1,),) + smaller[i + 1:]
        yield smaller + ((k - 1,),)


_MOBIUS_TOP_CACHE: dict[tuple, int] = {}


def mobius_top(pi: Partition) -> int:
    """Mobius value of the interval [pi, 1_n] in NC(n), exact integer.

    Computed by the defining recursion: the Mobius values over an interval
    sum to zero, and along a coarsening tau with several blocks the value
    factors over the restrictions to tau's blocks (blocks of a refinement
    never cross between two blocks of a non-crossing tau). Memoized on the
    canonical type of the interval, i.e. the relabelled lower partition.
    """
    if len(pi.blocks) == 1:
        return 1
    key = pi.blocks
    cached = _MOBIUS_TOP_CACHE.get(key)
    if cached is not None:
        return cached
    blocks = pi.blocks
    total = 0
    for grouping in _set_partitions(len(blocks)):
        if len(grouping) == 1:
            continue  # tau = 1_n is the value being solved for
        merged = tuple(
            sorted((tuple(sorted(x for i in group for x in blocks[i])) for group in grouping),
                   key=lambda b: b[0]))
        tau = Partition(pi.n, merged)
        if not is_noncrossing(tau):
            continue
        prod = 1
        for union in merged:
            prod *= mobius_top(restrict(pi, union))
        total += prod
    value = -total
    _MOBIUS_TOP_CACHE[key] = value
    return value


def mobius_nc(pi: Partition, sigma: Partition) -> int:
    """Mobius value of the interval [pi, sigma] in NC(n).

    Both arguments must be non-crossing with pi <= sigma in reverse
    refinement order. The interval splits as a product over sigma's blocks,
    so the value is the product of the top-interval values of the
    restrictions.

    >>> mobius_nc(zero_partition(3), one_partition(3))
    2
    """
    if pi.n != sigma.n:
        raise OrderError(f"ground sets differ: {pi.n} vs {sigma.n}")
    if not (is_noncrossing(pi) and is_noncrossing(sigma)):
        raise OrderError("both arguments must be non-crossing")
    if not refines(pi, sigma):
        raise OrderError(f"{pi.blocks} does not refine {sigma.blocks}")
    value = 1
    for block in sigma.blocks:
        value *= mobius_top(restrict(pi, block))
    return value


def block_side_counts(block, left_count: int) -> tuple[int, int]:
    """Split a block of positions in the word a^m b^n into (a-count, b-count)."""
    a = bisect_right(block, left_count)
    return a, len(block) - a


def all_chi_maps(m: int, n: int):
    """Every labelling of [m+n] with m left symbols, deterministic order."""
    total = m + n
    for lefts in combinations(range(1, total + 1), m):
        left_set = set(lefts)
        yield ChiMap(tuple(LEFT if k in left_set else RIGHT for k in range(1, total + 1)))
