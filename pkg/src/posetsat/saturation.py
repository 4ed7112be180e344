"""Freeness and saturation checking, explicit saturated families, and greedy
completion of free families to saturated ones.

A family is q-saturated when it is q-free and adding any missing subset
creates an induced copy of q; equivalently, when it is maximal q-free. The
per-missing-set test can restrict the copy search to copies through the new
set because the base family is free.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .core import GroundSet, PosetSpec, SetFamily, SubsetMask
from .embedding import EmbeddingWitness, _FamilyIndex, find_induced_copy
from .errors import UsageError


@dataclass(frozen=True)
class SaturationReport:
    """Outcome of a saturation check.

    ``unsaturated_sets`` lists every missing subset whose addition creates no
    copy; it is empty whenever the family is not free (freeness fails first).
    """

    free: bool
    witness_if_not_free: EmbeddingWitness | None
    unsaturated_sets: tuple[SubsetMask, ...]
    saturated: bool

    def to_json_obj(self) -> dict:
        return {
            "free": self.free,
            "saturated": self.saturated,
            "unsaturated": [list(s.elements()) for s in self.unsaturated_sets],
            "witness": None
            if self.witness_if_not_free is None
            else self.witness_if_not_free.to_json_obj(),
        }


def is_free(family: SetFamily, q: PosetSpec) -> bool:
    """True iff the family contains no induced copy of q."""
    return find_induced_copy(family, q) is None


def _creates_copy(bits: list[int], n: int, q: PosetSpec, new: int) -> bool:
    """One-shot probe: does ``bits`` plus ``new`` contain a copy through
    ``new``? Builds a fresh index; callers with a hot loop over one family
    should hold a _FamilyIndex instead."""
    return _FamilyIndex(bits, n).probe_with(q, new)


def saturation_report(
    family: SetFamily,
    q: PosetSpec,
    fail_fast: bool = False,
    threads: int = 1,
) -> SaturationReport:
    """Full saturation verdict: freeness, then a scan of every missing subset.

    ``fail_fast`` stops at the first unsaturated set (solver hot loop);
    ``threads`` splits the read-only scan, with deterministic merge order.
    """
    witness = find_induced_copy(family, q)
    if witness is not None:
        return SaturationReport(False, witness, (), False)
    n = family.ground.n
    bits = list(family.bit_list)
    missing = family.missing_masks()
    unsat: list[int] = []
    if threads > 1 and not fail_fast:
        chunk = max(1, (len(missing) + threads - 1) // threads)
        chunks = [missing[i:i + chunk] for i in range(0, len(missing), chunk)]

        def scan(part: list[int]) -> list[int]:
            index = _FamilyIndex(bits, n)
            return [s for s in part if not index.probe_with(q, s)]

        with ThreadPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(scan, chunks):
                unsat.extend(part)
    else:
        index = _FamilyIndex(bits, n)
        for s in missing:
            if not index.probe_with(q, s):
                unsat.append(s)
                if fail_fast:
                    break
    masks = tuple(SubsetMask(s, family.ground) for s in unsat)
    return SaturationReport(True, None, masks, not unsat)


def greedy_saturate(
    seed: SetFamily,
    q: PosetSpec,
    order: Sequence[int] | None = None,
) -> SetFamily:
    """Close a free seed to a saturated family: walk every missing subset in
    the given order (canonical by default) and add it whenever the addition
    creates no copy through it. One pass suffices since rejections stay
    rejected as the family grows."""
    witness = find_induced_copy(seed, q)
    if witness is not None:
        raise UsageError("greedy seed already contains an induced copy", witness=witness)
    ground = seed.ground
    n = ground.n
    if order is None:
        candidates: Sequence[int] = ground.all_masks()
    else:
        candidates = list(order)
        needed = set(range(1 << n)) - set(seed.bit_list)
        if not needed.issubset(candidates):
            raise UsageError("candidate order must cover every subset outside the seed")
    index = _FamilyIndex(seed.bit_list, n)
    present = set(seed.bit_list)
    for s in candidates:
        if s in present:
            continue
        if not index.probe_with(q, s):
            index.append(s)
            present.add(s)
    return SetFamily.from_masks(ground, index.bits)


# --- explicit families ------------------------------------------------------


def _prefix_mask(i: int) -> int:
    return (1 << i) - 1


def butterfly_construction(n: int) -> SetFamily:
    """The empty set, all singletons, all pairs, and all prefixes {1..i}."""
    if n < 2:
        raise UsageError(f"butterfly construction needs n >= 2, got {n}")
    ground = GroundSet(n)
    masks = {0}
    for i in range(n):
        masks.add(1 << i)
        for j in range(i + 1, n):
            masks.add(1 << i | 1 << j)
    for i in range(1, n + 1):
        masks.add(_prefix_mask(i))
    return SetFamily.from_masks(ground, masks)


def n_construction(n: int) -> SetFamily:
    """The empty set, all singletons, and all prefixes {1..i}; 2n sets."""
    if n < 2:
        raise UsageError(f"N construction needs n >= 2, got {n}")
    ground = GroundSet(n)
    masks = {0}
    for i in range(n):
        masks.add(1 << i)
    for i in range(1, n + 1):
        masks.add(_prefix_mask(i))
    return SetFamily.from_masks(ground, masks)


def k2k_seed(n: int, k: int) -> SetFamily:
    """Free seed for closing toward K_{2,k}: all singletons plus the full
    prefix chain (empty set included)."""
    if k < 2 or n <= k:
        raise UsageError(f"k2k seed needs n > k >= 2, got n={n}, k={k}")
    ground = GroundSet(n)
    masks = {0}
    for i in range(n):
        masks.add(1 << i)
    for i in range(1, n + 1):
        masks.add(_prefix_mask(i))
    return SetFamily.from_masks(ground, masks)


def kkk_seed(n: int, k: int) -> SetFamily:
    """Free seed for closing toward K_{k,k}: all singletons plus k-1 full
    chains; chain i lists the elements of [n] without i in increasing order
    and then appends i, so it ends with [n]-{i} and [n]."""
    # n >= 2k-1 leaves enough room for k incomparable sets above the bottoms
    if k < 2 or n < 2 * k - 1:
        raise UsageError(f"kkk seed needs n >= 2k-1 and k >= 2, got n={n}, k={k}")
    ground = GroundSet(n)
    masks = set()
    for i in range(n):
        masks.add(1 << i)
    for i in range(1, k):
        sequence = [e for e in range(1, n + 1) if e != i] + [i]
        masks.add(0)
        cur = 0
        for e in sequence:
            cur |= 1 << (e - 1)
            masks.add(cur)
    return SetFamily.from_masks(ground, masks)
