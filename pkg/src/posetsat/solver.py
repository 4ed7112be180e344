"""Exact saturation numbers at desk scale and enumeration of saturated
families.

The exhaustive enumerator (n <= 4) iterates every subfamily of the power set
against a precomputed table of forbidden member subsets: a family contains an
induced copy of q exactly when some |q|-subset of its members is order-
isomorphic to q, and the isomorphism test here is a deliberately naive
permutation check so the enumerator stays independent of the backtracking
embedder it cross-checks. Larger n fall back to branch and bound (exact
search with a time budget) and randomised greedy closure (upper bounds).
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations, permutations

from .core import (
    GroundSet,
    PosetSpec,
    SetFamily,
    _bipartite_shape,
    mask_key,
    n_poset,
    poset_isomorphic,
    poset_name,
)
from .errors import ContractViolationError, UsageError
from .saturation import (
    _creates_copy,
    butterfly_construction,
    greedy_saturate,
    k2k_seed,
    kkk_seed,
    n_construction,
)

_EXHAUSTIVE_LIMIT = 4


@dataclass(frozen=True)
class SolveResult:
    """Exact value or best-known upper bound for sat*(n, q)."""

    n: int
    poset: str
    value: int
    exact: bool
    certificate: SetFamily
    enumerated_count: int | None
    elapsed_ms: float

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "poset": self.poset,
            "value": self.value,
            "exact": self.exact,
            "certificate": [list(m.elements()) for m in self.certificate],
            "enumerated_count": self.enumerated_count,
            "elapsed_ms": self.elapsed_ms,
        }


def _naive_isomorphic(combo: tuple[int, ...], q: PosetSpec) -> bool:
    m = q.size
    for perm in permutations(combo):
        ok = True
        for a in range(m):
            for b in range(m):
                if a == b:
                    continue
                below = perm[a] != perm[b] and perm[a] & perm[b] == perm[a]
                if q.less[a][b] != below:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


def _forbidden_tables(n: int, q: PosetSpec):
    """All member subsets of size |q| isomorphic to q, as subfamily masks,
    plus per-set lists of the remaining members of each such subset."""
    nsets = 1 << n
    copies = []
    for combo in combinations(range(nsets), q.size):
        if _naive_isomorphic(combo, q):
            copies.append(sum(1 << s for s in combo))
    rest: list[list[int]] = [[] for _ in range(nsets)]
    for cmask in copies:
        probe = cmask
        while probe:
            low = probe & -probe
            probe ^= low
            rest[low.bit_length() - 1].append(cmask ^ low)
    return copies, rest


def _free_bitmap(nsets: int, copies: list[int]) -> bytearray:
    free = bytearray([1]) * (1 << nsets)
    full = (1 << nsets) - 1
    for cmask in copies:
        sup = cmask
        while True:
            free[sup] = 0
            if sup == full:
                break
            sup = (sup + 1) | cmask
    return free


def _saturated_in_range(start: int, stop: int, nsets: int, free: bytearray,
                        rest: list[list[int]]) -> list[int]:
    out = []
    for fam in range(start, stop):
        if not free[fam]:
            continue
        ok = True
        for s in range(nsets):
            if fam >> s & 1:
                continue
            blockers = rest[s]
            hit = False
            for r in blockers:
                if r & fam == r:
                    hit = True
                    break
            if not hit:
                ok = False
                break
        if ok:
            out.append(fam)
    return out


def enumerate_saturated_families(
    n: int,
    q: PosetSpec,
    cap: int | None = None,
    threads: int = 1,
) -> list[SetFamily]:
    """All q-saturated families over [n] for n <= 4 (complete); for larger n
    a cap is required and a depth-first walk over maximal free families
    returns the first ``cap`` of them."""
    ground = GroundSet(n)
    if n > _EXHAUSTIVE_LIMIT:
        if cap is None:
            raise UsageError(
                f"exhaustive enumeration is limited to n <= {_EXHAUSTIVE_LIMIT}; "
                "pass a cap for larger ground sets"
            )
        return _enumerate_maximal_free(ground, q, cap)
    nsets = 1 << n
    copies, rest = _forbidden_tables(n, q)
    free = _free_bitmap(nsets, copies)
    total = 1 << nsets
    if threads > 1 and cap is None:
        chunk = (total + threads - 1) // threads
        spans = [(i, min(i + chunk, total)) for i in range(0, total, chunk)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = pool.map(
                lambda span: _saturated_in_range(span[0], span[1], nsets, free, rest),
                spans,
            )
            found = [fam for part in parts for fam in part]
    elif cap is None:
        found = _saturated_in_range(0, total, nsets, free, rest)
    else:
        found = []
        for fam in range(total):
            if free[fam] and _saturated_in_range(fam, fam + 1, nsets, free, rest):
                found.append(fam)
                if len(found) >= cap:
                    break
    out = []
    for fam in found:
        masks = [s for s in range(nsets) if fam >> s & 1]
        out.append(SetFamily.from_masks(ground, masks))
    return out


def _enumerate_maximal_free(ground: GroundSet, q: PosetSpec, cap: int) -> list[SetFamily]:
    """Depth-first in/out walk over the canonical subset list; a leaf is kept
    when every excluded subset is blocked by the final family."""
    n = ground.n
    order = ground.all_masks()
    total = len(order)
    results: list[SetFamily] = []

    def walk(idx: int, bits: list[int], pending: list[int]) -> bool:
        if len(results) >= cap:
            return True
        if idx == total:
            for s in pending:
                if not _creates_copy(bits, n, q, s):
                    return False
            results.append(SetFamily.from_masks(ground, bits))
            return len(results) >= cap
        s = order[idx]
        if _creates_copy(bits, n, q, s):
            return walk(idx + 1, bits, pending)
        # canonical walk order means appending keeps bits canonical
        if walk(idx + 1, bits + [s], pending):
            return True
        return walk(idx + 1, bits, pending + [s])

    walk(0, [], [])
    return results


class _BudgetExpired(Exception):
    pass


def _search_saturated_of_size(
    ground: GroundSet,
    q: PosetSpec,
    size: int,
    deadline: float | None,
) -> list[int] | None:
    """First (in canonical order) q-saturated family of exactly ``size``
    members, or None when none exists."""
    n = ground.n
    order = ground.all_masks()
    total = len(order)
    chosen: list[int] = []
    ticks = 0

    def check_budget():
        nonlocal ticks
        ticks += 1
        if deadline is not None and ticks % 256 == 0 and time.perf_counter() > deadline:
            raise _BudgetExpired

    def dfs(start: int) -> list[int] | None:
        check_budget()
        if len(chosen) == size:
            present = set(chosen)
            for s in order:
                if s not in present and not _creates_copy(chosen, n, q, s):
                    return None
            return list(chosen)
        needed = size - len(chosen)
        for idx in range(start, total - needed + 1):
            cand = order[idx]
            if _creates_copy(chosen, n, q, cand):
                continue
            chosen.append(cand)
            res = dfs(idx + 1)
            if res is not None:
                return res
            chosen.pop()
        return None

    return dfs(0)


def _bound_discrepancy_check(n: int, q: PosetSpec, result: "SolveResult") -> None:
    """Exact values must respect the proved lower bounds; a violation is a
    halt-worthy discrepancy, never silently reported."""
    if not result.exact:
        return
    if _bipartite_shape(q) == (2, 2) and result.value < n + 1:
        raise ContractViolationError(
            f"exact sat*({n}, B) = {result.value} violates the n+1 lower bound",
            detail={"certificate": [list(m.elements()) for m in result.certificate]},
        )
    if poset_isomorphic(q, n_poset()) and result.value ** 2 < n:
        raise ContractViolationError(
            f"exact sat*({n}, N) = {result.value} violates the sqrt(n) lower bound",
            detail={"certificate": [list(m.elements()) for m in result.certificate]},
        )


def exact_sat_star(
    n: int,
    q: PosetSpec,
    budget_s: float | None = None,
    method: str = "auto",
    threads: int = 1,
) -> SolveResult:
    """sat*(n, q): exact for n <= 4, otherwise exact if the budget allows and
    the best greedy certificate with ``exact=False`` when it expires.

    ``method="enumerate"`` (n <= 4 only) takes the minimum over the complete
    enumeration instead of the branch-and-bound search; the two paths
    cross-check each other.
    """
    t0 = time.perf_counter()
    ground = GroundSet(n)
    if method not in ("auto", "enumerate"):
        raise UsageError(f"unknown method {method!r}")
    if method == "enumerate":
        if n > _EXHAUSTIVE_LIMIT:
            raise UsageError(f"method 'enumerate' requires n <= {_EXHAUSTIVE_LIMIT}")
        families = enumerate_saturated_families(n, q, threads=threads)
        best = min(families, key=lambda f: (len(f), f.bit_list))
        result = SolveResult(
            n=n,
            poset=poset_name(q),
            value=len(best),
            exact=True,
            certificate=best,
            enumerated_count=len(families),
            elapsed_ms=(time.perf_counter() - t0) * 1000.0,
        )
        _bound_discrepancy_check(n, q, result)
        return result

    best = greedy_saturate(SetFamily.from_masks(ground, []), q)
    named = _named_seed(n, q)
    if named is not None:
        closed = greedy_saturate(named, q)
        if (len(closed), closed.bit_list) < (len(best), best.bit_list):
            best = closed
    exact = True
    deadline = None if budget_s is None else t0 + budget_s
    try:
        for size in range(1, len(best)):
            found = _search_saturated_of_size(ground, q, size, deadline)
            if found is not None:
                best = SetFamily.from_masks(ground, found)
                break
    except _BudgetExpired:
        exact = False
    result = SolveResult(
        n=n,
        poset=poset_name(q),
        value=len(best),
        exact=exact,
        certificate=best,
        enumerated_count=None,
        elapsed_ms=(time.perf_counter() - t0) * 1000.0,
    )
    _bound_discrepancy_check(n, q, result)
    return result


def _named_seed(n: int, q: PosetSpec) -> SetFamily | None:
    """The construction or seed family matching a recognised poset."""
    shape = _bipartite_shape(q)
    if shape == (2, 2):
        return butterfly_construction(n) if n >= 2 else None
    if poset_isomorphic(q, n_poset()):
        return n_construction(n) if n >= 2 else None
    if shape is not None:
        bottoms, tops = shape
        if tops == 2 and bottoms >= 2 and n > bottoms:
            return k2k_seed(n, bottoms)
        if tops == bottoms and bottoms >= 2 and n >= 2 * bottoms:
            return kkk_seed(n, bottoms)
    return None


def _random_free_seed(ground: GroundSet, q: PosetSpec, rng: random.Random,
                      max_size: int = 3) -> SetFamily:
    n = ground.n
    target = rng.randint(0, max_size)
    bits: list[int] = []
    for _ in range(4 * max_size):
        if len(bits) >= target:
            break
        s = rng.randrange(1 << n)
        if s in bits:
            continue
        if not _creates_copy(sorted(bits, key=mask_key), n, q, s):
            bits.append(s)
    return SetFamily.from_masks(ground, bits)


def upper_bound_via_random_greedy(
    n: int,
    q: PosetSpec,
    trials: int,
    rng_seed: int,
    seeds: list[SetFamily] | None = None,
) -> SolveResult:
    """Best saturated family over ``trials`` greedy closures: explicit seeds
    first (falling back to the recognised construction, then the empty
    family), then random free seeds under random candidate orders. Fully
    reproducible from ``rng_seed``."""
    if trials < 1:
        raise UsageError(f"trials must be at least 1, got {trials}")
    t0 = time.perf_counter()
    ground = GroundSet(n)
    rng = random.Random(rng_seed)
    if seeds is None:
        named = _named_seed(n, q)
        seed_list = [named] if named is not None else [SetFamily.from_masks(ground, [])]
    else:
        seed_list = list(seeds)
    best: SetFamily | None = None
    for trial in range(trials):
        if trial < len(seed_list):
            seed = seed_list[trial]
            order = None
        else:
            seed = _random_free_seed(ground, q, rng)
            order = list(range(1 << n))
            rng.shuffle(order)
        closed = greedy_saturate(seed, q, order=order)
        if best is None or (len(closed), closed.bit_list) < (len(best), best.bit_list):
            best = closed
    assert best is not None
    return SolveResult(
        n=n,
        poset=poset_name(q),
        value=len(best),
        exact=False,
        certificate=best,
        enumerated_count=None,
        elapsed_ms=(time.perf_counter() - t0) * 1000.0,
    )


def sample_saturated_families(
    n: int,
    q: PosetSpec,
    count: int,
    rng_seed: int,
) -> list[SetFamily]:
    """``count`` greedy-closed saturated families from random free seeds and
    random candidate orders; deterministic in ``rng_seed``. Duplicates are
    possible and harmless."""
    if count < 1:
        raise UsageError(f"count must be at least 1, got {count}")
    ground = GroundSet(n)
    rng = random.Random(rng_seed)
    out = []
    for _ in range(count):
        seed = _random_free_seed(ground, q, rng)
        order = list(range(1 << n))
        rng.shuffle(order)
        out.append(greedy_saturate(seed, q, order=order))
    return out
