"""Claim battery: every verifiable statement the library operationalises,
bundled as one deterministic pass/fail table.

The table rows are keyed to the claim identifiers used by the verify
subcommand (lemma1, theorem2, theorem3, prop4, prop5, prop6) plus rows for
the explicit constructions, the exact small-n oracle, and the embedding
cross-check. Output is byte-stable for a fixed seed and independent of the
thread count: worker partitions merge in index order and nothing timed is
printed.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from itertools import permutations
from math import comb

from .core import (
    GroundSet,
    PosetSpec,
    SetFamily,
    antichain_poset,
    butterfly_poset,
    chain_poset,
    complete_bipartite_poset,
    n_poset,
)
from .embedding import find_induced_copy
from .saturation import (
    butterfly_construction,
    greedy_saturate,
    k2k_seed,
    kkk_seed,
    n_construction,
    saturation_report,
)
from .solver import enumerate_saturated_families, sample_saturated_families
from .theorems import lemma1_check, verify_prop4, verify_theorem2, verify_theorem3

B_GREEDY_COUNTS = {5: 17, 6: 14, 7: 11, 8: 8}
N_GREEDY_COUNTS = {5: 15, 6: 12, 7: 9, 8: 6, 9: 4, 10: 4}


@dataclass(frozen=True)
class SuiteRow:
    key: str
    passed: bool
    detail: str


def _naive_has_copy(bits: tuple[int, ...], q: PosetSpec) -> bool:
    """All-tuples oracle used to cross-check the backtracking search."""
    m = q.size
    for tup in permutations(bits, m):
        ok = True
        for a in range(m):
            for b in range(m):
                if a == b:
                    continue
                below = tup[a] != tup[b] and tup[a] & tup[b] == tup[a]
                if q.less[a][b] != below:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


def _butterfly_size(n: int) -> int:
    return 1 + n + comb(n, 2) + (n - 2)


def _row_construction_b() -> SuiteRow:
    q = butterfly_poset()
    bad = []
    for n in range(4, 9):
        fam = butterfly_construction(n)
        rep = saturation_report(fam, q)
        if not rep.saturated or len(fam) != _butterfly_size(n):
            bad.append(n)
    detail = "saturated with expected sizes at n=4..8" if not bad else f"failed at n={bad}"
    return SuiteRow("construction-B", not bad, detail)


def _row_construction_n() -> SuiteRow:
    q = n_poset()
    bad = []
    for n in range(3, 11):
        fam = n_construction(n)
        rep = saturation_report(fam, q)
        if not rep.saturated or len(fam) != 2 * n:
            bad.append(n)
    detail = "saturated with size 2n at n=3..10" if not bad else f"failed at n={bad}"
    return SuiteRow("construction-N", not bad, detail)


def _row_exact_oracle(threads: int) -> tuple[SuiteRow, list[SetFamily]]:
    q = butterfly_poset()
    values = {}
    families4: list[SetFamily] = []
    for n in (2, 3, 4):
        fams = enumerate_saturated_families(n, q, threads=threads)
        values[n] = (min(len(f) for f in fams), len(fams))
        if n == 4:
            families4 = fams
    ok = values[2][0] == 4 and values[3][0] == 8 and values[4][0] >= 5
    detail = "; ".join(
        f"sat*({n},B)={v} [{c} saturated families]" for n, (v, c) in sorted(values.items())
    )
    return SuiteRow("exact-oracle", ok, detail), families4


def _b_instances(seed: int, exhaustive4: list[SetFamily]) -> list[SetFamily]:
    instances = list(exhaustive4)
    q = butterfly_poset()
    for n, count in sorted(B_GREEDY_COUNTS.items()):
        instances.extend(sample_saturated_families(n, q, count, rng_seed=seed * 1000 + n))
    return instances


def _n_instances(seed: int, threads: int) -> list[SetFamily]:
    q = n_poset()
    instances: list[SetFamily] = []
    for n in (2, 3, 4):
        instances.extend(enumerate_saturated_families(n, q, threads=threads))
    for n, count in sorted(N_GREEDY_COUNTS.items()):
        instances.extend(sample_saturated_families(n, q, count, rng_seed=seed * 2000 + n))
    return instances


def _row_lemma1(instances: list[SetFamily]) -> SuiteRow:
    failures = sum(1 for fam in instances if not lemma1_check(fam).passed)
    return SuiteRow(
        "lemma1",
        failures == 0,
        f"pair closure on {len(instances)} saturated families, {failures} counterexamples",
    )


def _row_theorem2(instances: list[SetFamily]) -> SuiteRow:
    failures = sum(1 for fam in instances if not verify_theorem2(fam).passed)
    return SuiteRow(
        "theorem2",
        failures == 0,
        f"singleton map injective with |F|>=n+1 on {len(instances)} families, "
        f"{failures} counterexamples",
    )


def _row_theorem3(instances: list[SetFamily]) -> SuiteRow:
    evaluated = 0
    failures = 0
    skipped = 0
    for fam in instances:
        if not any(m.cardinality == 1 for m in fam):
            skipped += 1
            continue
        evaluated += 1
        if not verify_theorem3(fam).passed:
            failures += 1
    return SuiteRow(
        "theorem3",
        failures == 0,
        f"pair map injective with the binomial bound on {evaluated} families "
        f"({skipped} without singletons skipped), {failures} counterexamples",
    )


def _row_prop4(instances: list[SetFamily]) -> SuiteRow:
    failures = sum(1 for fam in instances if not verify_prop4(fam).passed)
    return SuiteRow(
        "prop4",
        failures == 0,
        f"difference-pair cover with |F|^2>=n on {len(instances)} families, "
        f"{failures} counterexamples",
    )


def _row_prop5() -> SuiteRow:
    bad = []
    for k in (2, 3):
        q = complete_bipartite_poset(k, 2)
        for n in range(k + 1, 9):
            seed_fam = k2k_seed(n, k)
            closed = greedy_saturate(seed_fam, q)
            added = [b for b in closed.bit_list if not seed_fam.has_mask(b)]
            bound = sum(comb(n, i) for i in range(k + 1)) + n - k
            ok = (
                saturation_report(closed, q).saturated
                and all(b.bit_count() <= k for b in added)
                and len(closed) <= bound
            )
            if not ok:
                bad.append((n, k))
    detail = (
        "greedy closures stay below the level-k size bound for k=2,3"
        if not bad
        else f"failed at (n,k)={bad}"
    )
    return SuiteRow("prop5", not bad, detail)


def _row_prop6() -> SuiteRow:
    k = 3
    q = complete_bipartite_poset(k, k)
    bad = []
    for n in range(6, 9):
        seed_fam = kkk_seed(n, k)
        closed = greedy_saturate(seed_fam, q)
        added = [b for b in closed.bit_list if not seed_fam.has_mask(b)]
        bound = sum(comb(n, i) for i in range(2 * k - 1)) + (k - 1) * (n - 2 * k + 1)
        ok = (
            saturation_report(closed, q).saturated
            and all(b.bit_count() <= 2 * k - 2 for b in added)
            and len(closed) <= bound
        )
        if not ok:
            bad.append(n)
    detail = (
        "greedy closures stay below the level-(2k-2) size bound for k=3"
        if not bad
        else f"failed at n={bad}"
    )
    return SuiteRow("prop6", not bad, detail)


def _row_embedding_oracle() -> SuiteRow:
    ground = GroundSet(3)
    patterns = [
        butterfly_poset(),
        n_poset(),
        chain_poset(2),
        antichain_poset(2),
    ]
    mismatches = 0
    checked = 0
    for fam_mask in range(1 << 8):
        bits = tuple(s for s in range(8) if fam_mask >> s & 1)
        family = SetFamily.from_masks(ground, bits)
        for q in patterns:
            checked += 1
            fast = find_induced_copy(family, q) is not None
            slow = _naive_has_copy(bits, q)
            if fast != slow:
                mismatches += 1
    return SuiteRow(
        "embedding-oracle",
        mismatches == 0,
        f"backtracking search agrees with the all-tuples oracle on {checked} checks",
    )


def run_paper_suite(seed: int = 1, threads: int = 1, out=None, err=None) -> bool:
    """Run the full battery and print the pass/fail table; True iff all rows
    pass."""
    out = out or sys.stdout
    err = err or sys.stderr

    def progress(msg: str) -> None:
        print(msg, file=err)

    rows: list[SuiteRow] = []
    progress("checking explicit constructions")
    rows.append(_row_construction_b())
    rows.append(_row_construction_n())
    progress("enumerating saturated families at small n")
    oracle_row, exhaustive4 = _row_exact_oracle(threads)
    rows.append(oracle_row)
    progress("generating butterfly-saturated instances")
    b_instances = _b_instances(seed, exhaustive4)
    progress("running singleton and pair analyses")
    rows.append(_row_lemma1(b_instances))
    rows.append(_row_theorem2(b_instances))
    rows.append(_row_theorem3(b_instances))
    progress("generating N-saturated instances")
    n_instances = _n_instances(seed, threads)
    rows.append(_row_prop4(n_instances))
    progress("closing bipartite seed families")
    rows.append(_row_prop5())
    rows.append(_row_prop6())
    progress("cross-checking the embedding search")
    rows.append(_row_embedding_oracle())

    width = max(len(r.key) for r in rows)
    print(f"battery seed={seed}", file=out)
    for row in rows:
        status = "PASS" if row.passed else "FAIL"
        print(f"{row.key:<{width}}  {status}  {row.detail}", file=out)
    passed = sum(1 for r in rows if r.passed)
    print(f"passed {passed}/{len(rows)}", file=out)
    return passed == len(rows)
