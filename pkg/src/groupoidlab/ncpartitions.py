"""Noncrossing partitions of {1..n}: lattice order, Moebius functional,
Catalan counts, and nested partition-dependent moment evaluation.

The Moebius value against the top element is computed through the
standard interval factorization: [pi, 1_n] is a product of smaller
noncrossing lattices indexed by the blocks of the Kreweras complement
of pi, so mu multiplies over those blocks.  The two anchor identities
mu(0_n, 1_n) = (-1)^(n-1) c_(n-1) and sum_pi mu(pi, 1_n) = 0 are held
by the test suite.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb

NC_BUDGET = 12


def catalan(k: int) -> int:
    if k < 0:
        raise ValueError("catalan index must be >= 0")
    return comb(2 * k, k) // (k + 1)


@dataclass(frozen=True)
class NoncrossingPartition:
    """A noncrossing partition in canonical form: blocks sorted by their
    minimum, elements sorted inside each block."""

    n: int
    blocks: tuple

    def __post_init__(self):
        flat = sorted(x for b in self.blocks for x in b)
        if flat != list(range(1, self.n + 1)):
            raise ValueError("blocks must partition 1..n")
        canon = tuple(tuple(sorted(b)) for b in sorted(self.blocks, key=min))
        if canon != self.blocks:
            raise ValueError("blocks not in canonical form")
        if _has_crossing(self.blocks):
            raise ValueError("partition has a crossing")

    @staticmethod
    def of(n: int, blocks) -> "NoncrossingPartition":
        canon = tuple(tuple(sorted(b)) for b in sorted(blocks, key=min))
        return NoncrossingPartition(n, canon)

    def block_of(self, x: int):
        for b in self.blocks:
            if x in b:
                return b
        raise KeyError(x)

    def __repr__(self) -> str:
        return "NC(" + "".join("(" + ",".join(map(str, b)) + ")" for b in self.blocks) + ")"


def _has_crossing(blocks) -> bool:
    # a < b < c < d with a, c in one block and b, d in another
    for b1, b2 in itertools.combinations(blocks, 2):
        for a, c in itertools.combinations(b1, 2):
            for b, d in itertools.combinations(b2, 2):
                if a < b < c < d or b < a < d < c:
                    return True
    return False


def zero_partition(n: int) -> NoncrossingPartition:
    return NoncrossingPartition.of(n, [(i,) for i in range(1, n + 1)])


def one_partition(n: int) -> NoncrossingPartition:
    return NoncrossingPartition.of(n, [tuple(range(1, n + 1))])


def _gen_blocks(elems):
    """Yield the noncrossing partitions of the sorted tuple elems, as
    tuples of blocks."""
    if not elems:
        yield ()
        return
    first = elems[0]
    others = elems[1:]
    for k in range(len(others) + 1):
        for extra in itertools.combinations(others, k):
            block = (first,) + extra
            segments = []
            seg = []
            chosen = set(extra)
            for x in others:
                if x in chosen:
                    segments.append(tuple(seg))
                    seg = []
                else:
                    seg.append(x)
            segments.append(tuple(seg))
            for parts in itertools.product(*(_gen_blocks(s) for s in segments)):
                rest = tuple(b for p in parts for b in p)
                yield tuple(sorted((block,) + rest, key=min))


def enumerate_nc(n: int, budget: int = NC_BUDGET):
    """All noncrossing partitions of {1..n}, deterministically ordered.
    Guarded: the count is catalan(n), which explodes quickly."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > budget:
        raise ValueError(f"n={n} exceeds the NC enumeration budget {budget}")
    return [NoncrossingPartition(n, bs) for bs in _gen_blocks(tuple(range(1, n + 1)))]


def leq(pi: NoncrossingPartition, theta: NoncrossingPartition) -> bool:
    """Refinement order: every block of pi fits inside a block of theta."""
    if pi.n != theta.n:
        raise ValueError("partitions of different ground sets")
    owner = {}
    for i, b in enumerate(theta.blocks):
        for x in b:
            owner[x] = i
    return all(len({owner[x] for x in b}) == 1 for b in pi.blocks)


def kreweras(pi: NoncrossingPartition):
    """Block sizes of the Kreweras complement of pi.

    Bar i sits after element i; bars i < j join exactly when no block of
    pi separates the window {i+1..j} (every block lies inside it or
    misses it).  Pairwise compatibility is transitive here, so a
    union-find over pairs is enough.
    """
    n = pi.n
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            window = range(i + 1, j + 1)
            ok = True
            for b in pi.blocks:
                inside = sum(1 for x in b if x in window)
                if 0 < inside < len(b):
                    ok = False
                    break
            if ok:
                union(i, j)
    sizes: dict[int, int] = {}
    for i in range(1, n + 1):
        r = find(i)
        sizes[r] = sizes.get(r, 0) + 1
    return sorted(sizes.values())


@lru_cache(maxsize=None)
def _moebius_sizes(sizes: tuple) -> int:
    value = 1
    for s in sizes:
        value *= (-1) ** (s - 1) * catalan(s - 1)
    return value


def moebius(pi: NoncrossingPartition) -> int:
    """mu(pi, 1_n) in the noncrossing incidence algebra."""
    return _moebius_sizes(tuple(kreweras(pi)))


def moebius_row(n: int, budget: int = NC_BUDGET):
    """(pi, mu(pi, 1_n)) for every pi, in enumeration order."""
    return [(pi, moebius(pi)) for pi in enumerate_nc(n, budget)]


def _nesting_forest(pi: NoncrossingPartition):
    """children[b] lists the blocks nested immediately inside block b,
    ordered by minimum; roots are the outermost blocks."""
    children = {b: [] for b in pi.blocks}
    roots = []
    span = {}
    for b in pi.blocks:
        span[b] = (b[0], b[-1])
    stack = []
    block_at = {}
    for b in pi.blocks:
        for x in b:
            block_at[x] = b
    opened = set()
    for x in range(1, pi.n + 1):
        b = block_at[x]
        if b not in opened:
            opened.add(b)
            if stack:
                children[stack[-1]].append(b)
            else:
                roots.append(b)
            if x != span[b][1]:
                stack.append(b)
        elif stack and stack[-1] == b and x == span[b][1]:
            stack.pop()
    return roots, children


def e_pi(pi: NoncrossingPartition, operands, expect, multiply):
    """Partition-dependent nested moment.

    Innermost blocks are evaluated first; a nested block's expect-value
    is spliced in right after the operand it follows; the outermost
    blocks' values multiply left to right in position order.  operands
    are 1-indexed by position; expect and multiply are supplied by the
    caller (they fix the algebra).
    """
    if len(operands) != pi.n:
        raise ValueError("operand count must equal n")
    roots, children = _nesting_forest(pi)

    def value(block):
        kids = children[block]
        acc = None
        for i, x in enumerate(block):
            acc = operands[x - 1] if acc is None else multiply(acc, operands[x - 1])
            if i + 1 < len(block):
                lo, hi = x, block[i + 1]
                for c in kids:
                    if lo < c[0] < hi:
                        acc = multiply(acc, value(c))
        return expect(acc)

    result = None
    for r in roots:
        result = value(r) if result is None else multiply(result, value(r))
    return result
