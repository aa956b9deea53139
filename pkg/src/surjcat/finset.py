"""Finite sets [n] = {1,...,n} and the surjections between them.

Everything downstream is built on maps between standard sets, so this module
keeps the representation deliberately boring: a map is its value tuple.
"""

from __future__ import annotations

import math


class FinMap:
    """A function [source_size] -> [target_size], stored as its value tuple.

    Values are 1-based: ``values[x-1]`` is the image of ``x``.  Instances are
    immutable and hashable; equality is componentwise.
    """

    __slots__ = ("source_size", "target_size", "values")

    def __init__(self, source_size: int, target_size: int, values):
        values = tuple(values)
        if source_size < 1 or target_size < 1:
            raise ValueError("set sizes must be positive")
        if len(values) != source_size:
            raise ValueError(f"expected {source_size} values, got {len(values)}")
        for v in values:
            if not (1 <= v <= target_size):
                raise ValueError(f"value {v} outside 1..{target_size}")
        object.__setattr__(self, "source_size", source_size)
        object.__setattr__(self, "target_size", target_size)
        object.__setattr__(self, "values", values)

    def __setattr__(self, name, value):
        raise AttributeError("FinMap is immutable")

    def __call__(self, x: int) -> int:
        assert 1 <= x <= self.source_size
        return self.values[x - 1]

    def __eq__(self, other):
        return (
            isinstance(other, FinMap)
            and self.source_size == other.source_size
            and self.target_size == other.target_size
            and self.values == other.values
        )

    def __hash__(self):
        return hash((self.source_size, self.target_size, self.values))

    def __repr__(self):
        return f"FinMap({self.source_size}->{self.target_size}, {list(self.values)})"

    def is_surjective(self) -> bool:
        return set(self.values) == set(range(1, self.target_size + 1))

    def is_injective(self) -> bool:
        return len(set(self.values)) == self.source_size

    def is_bijective(self) -> bool:
        return self.source_size == self.target_size and self.is_injective()

    def fibers(self) -> list[tuple[int, ...]]:
        """Preimages of 1..target_size, each as a sorted tuple."""
        out = [[] for _ in range(self.target_size)]
        for x, v in enumerate(self.values, start=1):
            out[v - 1].append(x)
        return [tuple(f) for f in out]

    def fiber_sizes(self) -> tuple[int, ...]:
        sizes = [0] * self.target_size
        for v in self.values:
            sizes[v - 1] += 1
        return tuple(sizes)

    @staticmethod
    def identity(n: int) -> "FinMap":
        return FinMap(n, n, range(1, n + 1))


def compose(g: FinMap, f: FinMap) -> FinMap:
    """The composite g∘f (apply f first)."""
    if f.target_size != g.source_size:
        raise ValueError(
            f"cannot compose: f targets [{f.target_size}] but g starts at [{g.source_size}]"
        )
    return FinMap(f.source_size, g.target_size, tuple(g.values[v - 1] for v in f.values))


def enumerate_surjections(k: int, i: int) -> list[FinMap]:
    """All surjections [k] -> [i], in lexicographic order of value tuples.

    Generated recursively with a reachability prune (remaining positions must
    be able to cover the values not yet hit), so no time is wasted on the
    i**k - Surj(k,i) non-surjective tuples.
    """
    if k < 1 or i < 1:
        raise ValueError("sizes must be positive")
    if i > k:
        return []
    out: list[FinMap] = []
    values = [0] * k
    hit = [0] * (i + 1)

    def rec(pos: int, used: int) -> None:
        if k - pos < i - used:
            return
        if pos == k:
            out.append(FinMap(k, i, tuple(values)))
            return
        for v in range(1, i + 1):
            values[pos] = v
            hit[v] += 1
            rec(pos + 1, used + (1 if hit[v] == 1 else 0))
            hit[v] -= 1

    rec(0, 0)
    return out


def surjection_count(k: int, i: int) -> int:
    """|Epi(k, i)| by inclusion-exclusion, as an exact integer."""
    if k < 1 or i < 1:
        raise ValueError("sizes must be positive")
    return sum((-1) ** j * math.comb(i, j) * (i - j) ** k for j in range(i + 1))


def elementary_factorization(f: FinMap) -> list[FinMap]:
    """Factor a surjection [k]↠[l] into maps each identifying exactly two elements.

    Returns a chain ``[e_1, ..., e_{k-l}]`` with ``e_1: [k]↠[k-1]``, ...,
    ``e_{k-l}: [l+1]↠[l]`` and ``e_{k-l} ∘ ... ∘ e_1 == f``.  Each step merges
    exactly one pair (every surjection dropping the size by one has exactly
    one fiber of two elements).  The intermediate stages label the blocks of
    the growing kernel partition by their minimal elements; the final step
    absorbs f's own labeling.
    """
    if not f.is_surjective():
        raise ValueError("elementary_factorization needs a surjection")
    k, l = f.source_size, f.target_size
    if k == l:
        if f.values != FinMap.identity(k).values:
            raise ValueError("a non-identity bijection has no elementary factorization")
        return []

    # Partitions of [k] refining ker(f), as sorted tuples of sorted blocks.
    blocks = [(x,) for x in range(1, k + 1)]
    chain: list[FinMap] = []
    while len(blocks) > l:
        # merge the lex-first pair of f-equivalent blocks
        pair = None
        for a in range(len(blocks)):
            for b in range(a + 1, len(blocks)):
                if f(blocks[a][0]) == f(blocks[b][0]):
                    pair = (a, b)
                    break
            if pair:
                break
        assert pair is not None, "more blocks than fibers yet no mergeable pair"
        a, b = pair
        new_blocks = [blk for j, blk in enumerate(blocks) if j not in (a, b)]
        new_blocks.append(tuple(sorted(blocks[a] + blocks[b])))
        new_blocks.sort(key=lambda blk: blk[0])
        if len(new_blocks) > l:
            # label both stages by minimal elements
            step = FinMap(
                len(blocks),
                len(new_blocks),
                tuple(
                    next(j + 1 for j, nb in enumerate(new_blocks) if set(blocks[i]) <= set(nb))
                    for i in range(len(blocks))
                ),
            )
        else:
            # last step: land in f's own labels
            step = FinMap(
                len(blocks),
                l,
                tuple(f(blocks[i][0]) for i in range(len(blocks))),
            )
        chain.append(step)
        blocks = new_blocks

    return chain
