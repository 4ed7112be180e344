"""Command-line front end.

Subcommands: construct, check, embed, greedy, verify, solve, hasse. Reports
go to stdout as JSON (or the family/DOT text formats); human-readable
summaries go to stderr. Exit codes: 0 success, 1 failed check/verify (the
report is still emitted), 2 usage error, 3 broken internal contract.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .core import (
    GroundSet,
    SetFamily,
    complete_bipartite_poset,
    butterfly_poset,
    format_family,
    load_family,
    load_poset,
    n_poset,
    parse_family,
    poset_name,
)
from .errors import ContractViolationError, UsageError
from .hasse import emit_hasse
from .saturation import (
    butterfly_construction,
    greedy_saturate,
    k2k_seed,
    kkk_seed,
    n_construction,
    saturation_report,
)
from .embedding import find_induced_copy
from .solver import exact_sat_star, upper_bound_via_random_greedy
from .suite import run_paper_suite
from .theorems import (
    lemma1_check,
    theorem2_assignment,
    theorem3_assignment,
    verify_prop4,
    verify_theorem2,
    verify_theorem3,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_CONTRACT = 3


@dataclass(frozen=True)
class RunConfig:
    """Common knobs of one parsed invocation; subcommand-specific flags stay
    on the argparse namespace."""

    subcommand: str
    n: int | None = None
    poset: str | None = None
    input_path: str | None = None
    output_path: str | None = None
    fmt: str = "json"
    rng_seed: int = 1
    budget_s: float | None = None
    threads: int = 1


def _default_threads() -> int:
    raw = os.environ.get("POSETSAT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _resolve_poset(selector: str | None):
    if selector is None:
        raise UsageError("a poset selector is required")
    low = selector.lower()
    if low in ("butterfly", "b"):
        return butterfly_poset()
    if low == "n":
        return n_poset()
    if low.startswith("k2k:"):
        return complete_bipartite_poset(int(low.split(":", 1)[1]), 2)
    if low.startswith("kkk:"):
        k = int(low.split(":", 1)[1])
        return complete_bipartite_poset(k, k)
    return load_poset(selector)


def _load_family_arg(cfg: RunConfig) -> SetFamily:
    if cfg.input_path is None:
        raise UsageError(f"{cfg.subcommand} needs --in FAMILY_FILE")
    ground = GroundSet(cfg.n) if cfg.n is not None else None
    try:
        return load_family(cfg.input_path, ground)
    except OSError as exc:
        raise UsageError(f"cannot read family file {cfg.input_path}: {exc}") from None


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _print_json(obj) -> None:
    print(json.dumps(obj))


def _cmd_construct(cfg: RunConfig, args) -> int:
    if args.family in ("k2k", "kkk") and args.k is None:
        raise UsageError(f"--family {args.family} requires --k")
    if args.family == "butterfly":
        fam = butterfly_construction(cfg.n)
    elif args.family == "n":
        fam = n_construction(cfg.n)
    elif args.family == "k2k":
        fam = k2k_seed(cfg.n, args.k)
    else:
        fam = kkk_seed(cfg.n, args.k)
    _emit(format_family(fam), cfg.output_path)
    print(f"{args.family} family over [{cfg.n}]: {len(fam)} sets", file=sys.stderr)
    return EXIT_OK


def _cmd_check(cfg: RunConfig, args) -> int:
    q = _resolve_poset(cfg.poset)
    fam = _load_family_arg(cfg)
    report = saturation_report(fam, q, fail_fast=args.fail_fast, threads=cfg.threads)
    _print_json(report.to_json_obj())
    if report.saturated:
        print(f"saturated: {len(fam)} sets, no free additions", file=sys.stderr)
        return EXIT_OK
    if not report.free:
        print("not free: induced copy present", file=sys.stderr)
    else:
        print(
            f"free but unsaturated: {len(report.unsaturated_sets)} addable sets",
            file=sys.stderr,
        )
    return EXIT_FAILED


def _cmd_embed(cfg: RunConfig, args) -> int:
    q = _resolve_poset(cfg.poset)
    fam = _load_family_arg(cfg)
    required = None
    if args.required is not None:
        required_fam = parse_family(args.required, fam.ground)
        if len(required_fam) != 1:
            raise UsageError(f"--required must name exactly one set, got {args.required!r}")
        required = required_fam.members[0]
        if required.bits not in fam:
            raise UsageError(f"required set {required} is not a member of the family")
    witness = find_induced_copy(fam, q, required=required)
    if witness is None:
        print("none")
        print("no induced copy", file=sys.stderr)
    else:
        _print_json(witness.to_json_obj())
        print("induced copy found", file=sys.stderr)
    return EXIT_OK


def _cmd_greedy(cfg: RunConfig, args) -> int:
    q = _resolve_poset(cfg.poset)
    if cfg.input_path is not None:
        seed = _load_family_arg(cfg)
    else:
        if cfg.n is None:
            raise UsageError("greedy needs --n when no seed file is given")
        seed = SetFamily.from_masks(GroundSet(cfg.n), [])
    closed = greedy_saturate(seed, q)
    _emit(format_family(closed), cfg.output_path)
    print(
        f"closed {len(seed)}-set seed to a saturated family of {len(closed)} sets",
        file=sys.stderr,
    )
    return EXIT_OK


_VERIFIERS = {
    "lemma1": lemma1_check,
    "t2": verify_theorem2,
    "t3": verify_theorem3,
    "p4": verify_prop4,
}


def _cmd_verify(cfg: RunConfig, args) -> int:
    if args.suite is not None:
        if args.suite != "paper":
            raise UsageError(f"unknown suite {args.suite!r}")
        ok = run_paper_suite(seed=cfg.rng_seed, threads=cfg.threads)
        return EXIT_OK if ok else EXIT_FAILED
    if args.target is None:
        raise UsageError("verify needs a target (lemma1|t2|t3|p4) or --suite paper")
    fam = _load_family_arg(cfg)
    if args.target == "p4":
        report = verify_prop4(fam, strong=args.strong)
    else:
        report = _VERIFIERS[args.target](fam)
    if cfg.fmt == "tsv":
        if args.target not in ("t2", "t3"):
            raise UsageError("--format tsv is only available for t2 and t3")
        if not report.hypotheses_hold:
            raise UsageError("chevron export needs a butterfly-saturated family")
        assignment = (
            theorem2_assignment(fam) if args.target == "t2" else theorem3_assignment(fam)
        )
        sys.stdout.write(assignment.to_tsv())
    elif cfg.fmt == "text":
        status = "passed" if report.passed else "failed"
        print(f"{report.theorem}: {status} (size {report.family_size}, bound {report.bound_value})")
    else:
        _print_json(report.to_json_obj())
    print(
        f"{report.theorem} {'passed' if report.passed else 'failed'} "
        f"on a {report.family_size}-set family",
        file=sys.stderr,
    )
    return EXIT_OK if report.passed else EXIT_FAILED


def _cmd_solve(cfg: RunConfig, args) -> int:
    q = _resolve_poset(cfg.poset)
    if args.method == "greedy":
        result = upper_bound_via_random_greedy(
            cfg.n, q, trials=args.trials, rng_seed=cfg.rng_seed
        )
    else:
        result = exact_sat_star(
            cfg.n, q, budget_s=cfg.budget_s, method=args.method, threads=cfg.threads
        )
    _print_json(result.to_json_obj())
    kind = "exact" if result.exact else "upper bound"
    print(f"sat*({cfg.n}, {poset_name(q)}) {kind}: {result.value}", file=sys.stderr)
    return EXIT_OK


def _cmd_hasse(cfg: RunConfig, args) -> int:
    fam = _load_family_arg(cfg)
    _emit(emit_hasse(fam), cfg.output_path)
    print(f"emitted Hasse diagram of {len(fam)} sets", file=sys.stderr)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="posetsat",
        description="Induced poset saturation in the Boolean lattice",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("construct", help="emit a named family")
    p.add_argument("--family", required=True, choices=["butterfly", "n", "k2k", "kkk"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("check", help="saturation report for a family")
    p.add_argument("--poset", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--fail-fast", action="store_true")
    p.add_argument("--threads", type=int, default=_default_threads())
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("embed", help="find an induced copy of a poset")
    p.add_argument("--poset", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--required", help="set that must appear in the image, e.g. '{1,3}'")
    p.set_defaults(func=_cmd_embed)

    p = sub.add_parser("greedy", help="close a free seed to a saturated family")
    p.add_argument("--poset", required=True)
    p.add_argument("--in", dest="infile")
    p.add_argument("--n", type=int)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_greedy)

    p = sub.add_parser("verify", help="run a verifier or the full battery")
    p.add_argument("target", nargs="?", choices=sorted(_VERIFIERS))
    p.add_argument("--suite", help="'paper' runs the full battery")
    p.add_argument("--in", dest="infile")
    p.add_argument("--n", type=int)
    p.add_argument("--strong", action="store_true", help="p4: also check the per-member claim")
    p.add_argument("--format", choices=["json", "tsv", "text"], default="json")
    p.add_argument("--rng-seed", type=int, default=1)
    p.add_argument("--threads", type=int, default=_default_threads())
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("solve", help="exact or best-known saturation number")
    p.add_argument("--poset", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=["auto", "enumerate", "greedy"], default="auto")
    p.add_argument("--budget", type=float, help="time budget in seconds")
    p.add_argument("--trials", type=int, default=20, help="greedy method: closure count")
    p.add_argument("--rng-seed", type=int, default=1)
    p.add_argument("--threads", type=int, default=_default_threads())
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("hasse", help="DOT digraph of a family's cover relations")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_hasse)

    return parser


def build_config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        subcommand=args.subcommand,
        n=getattr(args, "n", None),
        poset=getattr(args, "poset", None),
        input_path=getattr(args, "infile", None),
        output_path=getattr(args, "out", None),
        fmt=getattr(args, "format", "json"),
        rng_seed=getattr(args, "rng_seed", 1),
        budget_s=getattr(args, "budget", None),
        threads=getattr(args, "threads", 1),
    )


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    cfg = build_config(args)
    try:
        return args.func(cfg, args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ContractViolationError as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return EXIT_CONTRACT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
