"""Induced-copy search: decide whether a family contains an induced copy of a
poset and produce a checkable witness.

An induced copy is an injective assignment of poset elements to family
members that reproduces the strict order exactly: x below y iff the image of
x is a proper subset of the image of y, and incomparable elements map to
incomparable sets. The search backtracks over poset elements in descending
constraint order; candidate sets are pruned by cardinality bounds and by
intersecting precomputed relation bitsets over member indices, so the hot
loops run on machine-word operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Optional, Sequence

from .core import PosetSpec, SetFamily, SubsetMask
from .errors import UsageError

_BELOW, _ABOVE, _NONE = 1, 2, 0


def _automorphism_orbits(q: PosetSpec) -> tuple[int, ...]:
    """One representative element per automorphism orbit: a copy through a
    required member exists at some position iff it exists at the orbit's
    representative, so the forced search only tries representatives."""
    m = q.size
    parent = list(range(m))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    image: list[int] = []
    used = [False] * m

    def extend(x: int) -> None:
        if x == m:
            for i, y in enumerate(image):
                union(i, y)
            return
        for y in range(m):
            if used[y]:
                continue
            ok = True
            for x2, y2 in enumerate(image):
                if q.less[x][x2] != q.less[y][y2] or q.less[x2][x] != q.less[y2][y]:
                    ok = False
                    break
            if ok:
                image.append(y)
                used[y] = True
                extend(x + 1)
                image.pop()
                used[y] = False

    extend(0)
    return tuple(sorted({find(x) for x in range(m)}))


@lru_cache(maxsize=None)
def _poset_tables(q: PosetSpec):
    """Relation codes, search order, chain-length bounds, and automorphism
    orbit representatives for a poset."""
    m = q.size
    rel = [[_NONE] * m for _ in range(m)]
    degree = [0] * m
    for a in range(m):
        for b in range(m):
            if q.less[a][b]:
                rel[a][b] = _BELOW
                rel[b][a] = _ABOVE
                degree[a] += 1
                degree[b] += 1
    order = tuple(sorted(range(m), key=lambda x: (-degree[x], x)))

    def chain_len(x: int, direction: int, memo: dict) -> int:
        if x in memo:
            return memo[x]
        nbrs = [y for y in range(m) if rel[x][y] == direction]
        memo[x] = 1 + max(chain_len(y, direction, memo) for y in nbrs) if nbrs else 0
        return memo[x]

    below = tuple(chain_len(x, _ABOVE, {}) for x in range(m))
    above = tuple(chain_len(x, _BELOW, {}) for x in range(m))
    rel = tuple(tuple(row) for row in rel)
    return rel, order, below, above, _automorphism_orbits(q)


class _FamilyIndex:
    """Mutable search index over a duplicate-free list of subset masks.

    Per member index i it keeps bitsets (ints over member indices) of the
    members strictly below, strictly above, and incomparable, plus cumulative
    cardinality masks. Append/pop make probing family-plus-one-set cheap.
    """

    __slots__ = ("n", "bits", "below", "above", "incomp", "cum_card")

    def __init__(self, bits: Sequence[int], n: int):
        self.n = n
        self.bits: list[int] = []
        self.below: list[int] = []
        self.above: list[int] = []
        self.incomp: list[int] = []
        self.cum_card = [0] * (n + 1)
        for b in bits:
            self.append(b)

    def append(self, new: int) -> None:
        idx = len(self.bits)
        bit = 1 << idx
        bl = ab = inc = 0
        for j, old in enumerate(self.bits):
            jbit = 1 << j
            if old & new == old:
                bl |= jbit
                self.above[j] |= bit
            elif new & old == new:
                ab |= jbit
                self.below[j] |= bit
            else:
                inc |= jbit
                self.incomp[j] |= bit
        self.bits.append(new)
        self.below.append(bl)
        self.above.append(ab)
        self.incomp.append(inc)
        for c in range(new.bit_count(), self.n + 1):
            self.cum_card[c] |= bit

    def pop(self) -> None:
        idx = len(self.bits) - 1
        keep = (1 << idx) - 1
        self.bits.pop()
        self.below.pop()
        self.above.pop()
        self.incomp.pop()
        for row in (self.below, self.above, self.incomp):
            for j in range(idx):
                row[j] &= keep
        for c in range(self.n + 1):
            self.cum_card[c] &= keep

    def _card_range(self, lo: int, hi: int) -> int:
        hi = min(hi, self.n)
        if hi < lo:
            return 0
        mask = self.cum_card[hi]
        if lo > 0:
            mask &= ~self.cum_card[lo - 1]
        return mask

    def search(self, q: PosetSpec, forced_index: int | None = None) -> list[int] | None:
        """Assignment of poset elements to member indices, or None. When
        ``forced_index`` is given, that member appears in the image."""
        m = q.size
        if m > len(self.bits):
            return None
        rel, base_order, lo_chain, hi_chain, orbit_reps = _poset_tables(q)
        below, above, incomp = self.below, self.above, self.incomp
        n = self.n
        assign = [-1] * m

        def backtrack(order: tuple[int, ...], depth: int, used: int) -> bool:
            if depth == m:
                return True
            x = order[depth]
            cand = self._card_range(lo_chain[x], n - hi_chain[x]) & ~used
            if depth == 0 and forced_index is not None:
                cand &= 1 << forced_index
            row = rel[x]
            for y in range(m):
                if cand == 0:
                    return False
                a = assign[y]
                if a < 0:
                    continue
                r = row[y]
                if r == _BELOW:
                    cand &= below[a]
                elif r == _ABOVE:
                    cand &= above[a]
                else:
                    cand &= incomp[a]
            while cand:
                low = cand & -cand
                cand ^= low
                idx = low.bit_length() - 1
                assign[x] = idx
                if backtrack(order, depth + 1, used | low):
                    return True
                assign[x] = -1
            return False

        if forced_index is None:
            if backtrack(base_order, 0, 0):
                return list(assign)
            return None
        for p in orbit_reps:
            order = (p,) + tuple(x for x in base_order if x != p)
            if backtrack(order, 0, 0):
                return list(assign)
        return None

    def probe_with(self, q: PosetSpec, new: int) -> bool:
        """True iff the family plus ``new`` contains a copy through ``new``."""
        self.append(new)
        try:
            return self.search(q, forced_index=len(self.bits) - 1) is not None
        finally:
            self.pop()


def _search_bits(
    bits: Sequence[int],
    n: int,
    q: PosetSpec,
    required_bit: int | None = None,
) -> tuple[int, ...] | None:
    """One-shot search over raw masks; ``bits`` must be duplicate-free (in
    canonical order when the caller needs the deterministic witness). Returns
    the assignment (poset index -> mask) or None."""
    if q.size > len(bits):
        return None
    index = _FamilyIndex(bits, n)
    forced = None
    if required_bit is not None:
        forced = index.bits.index(required_bit)
    assignment = index.search(q, forced_index=forced)
    if assignment is None:
        return None
    return tuple(bits[i] for i in assignment)


@dataclass(frozen=True)
class EmbeddingWitness:
    """Injective assignment of poset elements to family members realising an
    induced copy. ``assignment[i]`` is the image of poset element i."""

    poset: PosetSpec
    assignment: tuple[SubsetMask, ...]

    def image_bits(self) -> frozenset:
        return frozenset(s.bits for s in self.assignment)

    def verify(self, family: SetFamily | None = None) -> bool:
        """Independent relation-by-relation recheck of the witness."""
        m = self.poset.size
        if len(self.assignment) != m:
            return False
        masks = [s.bits for s in self.assignment]
        if len(set(masks)) != m:
            return False
        if family is not None and any(not family.has_mask(b) for b in masks):
            return False
        for x in range(m):
            for y in range(m):
                if x == y:
                    continue
                is_below = masks[x] != masks[y] and masks[x] & masks[y] == masks[x]
                if self.poset.less[x][y] != is_below:
                    return False
        return True

    def to_json_obj(self) -> list[dict]:
        return [
            {"poset_element": self.poset.labels[i], "set": list(s.elements())}
            for i, s in enumerate(self.assignment)
        ]


def find_induced_copy(
    family: SetFamily,
    q: PosetSpec,
    required: SubsetMask | None = None,
) -> Optional[EmbeddingWitness]:
    """First induced copy of ``q`` in ``family`` in deterministic search
    order, or None. When ``required`` is given it must be a family member and
    appears in the image of any returned witness."""
    required_bit = None
    if required is not None:
        if required.ground != family.ground:
            raise UsageError("required member over a different ground set")
        if required.bits not in family:
            raise UsageError(f"required set {required} is not a member of the family")
        required_bit = required.bits
    assignment = _search_bits(family.bit_list, family.ground.n, q, required_bit)
    if assignment is None:
        return None
    return EmbeddingWitness(
        q, tuple(SubsetMask(b, family.ground) for b in assignment)
    )


def count_induced_copies(family: SetFamily, q: PosetSpec, cap: int) -> int:
    """Number of distinct unordered member subsets forming induced copies of
    ``q``, truncated at ``cap``. Symmetric assignments onto the same image
    count once."""
    if cap < 1:
        raise UsageError(f"cap must be at least 1, got {cap}")
    n = family.ground.n
    count = 0
    for combo in combinations(family.bit_list, q.size):
        if _search_bits(combo, n, q) is not None:
            count += 1
            if count >= cap:
                return count
    return count
