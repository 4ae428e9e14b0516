"""Command-line front end.

Exit codes: 0 success, 1 violation found, 2 input error, 3 precondition
refusal (for instance n too large for exhaustive mode).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from . import acceptance, enumeration, nice_sets, sparse, witness
from .conjugate import Perm, conjugate
from .core import InvariantViolation, Network, PreconditionError, interaction_graph
from .formats import (
    ParseError,
    digraph_to_dict,
    digraph_to_dot,
    digraph_to_text,
    dumps,
    format_truth_table,
    load_network,
    network_to_dict,
)
from .rng import worker_count

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_REFUSED = 0, 1, 2, 3


@dataclass
class RunConfig:
    seed: int = acceptance.DEFAULT_SEED
    trials: int = 1000
    n: int | None = None
    input: Path | None = None
    output: Path | None = None
    format: str = "json"
    override_large: bool = False
    deterministic: bool = False

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> RunConfig:
        return cls(
            seed=args.seed,
            trials=args.trials,
            n=args.n,
            input=Path(args.input) if args.input else None,
            output=Path(args.output) if args.output else None,
            format=args.format or ("text" if args.command == "verify-paper" else "json"),
            override_large=args.override_large,
            deterministic=args.deterministic,
        )


class InputError(Exception):
    pass


def _read_network(cfg: RunConfig) -> Network:
    if cfg.input is None:
        raise InputError("--input is required")
    try:
        text = sys.stdin.read() if str(cfg.input) == "-" else cfg.input.read_text()
    except OSError as exc:
        raise InputError(str(exc)) from None
    return load_network(text)


def _read_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output:
        cfg.output.write_text(text)
    else:
        sys.stdout.write(text)


def _emit_json(cfg: RunConfig, obj: Any) -> None:
    _emit(cfg, dumps(obj))


# -- subcommands -------------------------------------------------------------


def cmd_graph(cfg: RunConfig, args) -> int:
    g = interaction_graph(_read_network(cfg))
    if cfg.format == "dot":
        _emit(cfg, digraph_to_dot(g))
    elif cfg.format == "text":
        _emit(cfg, digraph_to_text(g))
    else:
        _emit_json(cfg, digraph_to_dict(g))
    return EXIT_OK


def cmd_witness(cfg: RunConfig, args) -> int:
    f = _read_network(cfg)
    res = witness.complete_witness(f, best_effort=args.best_effort)
    if res is None:
        _emit_json(cfg, {"n": f.n, "found": False})
        return EXIT_OK
    _emit_json(cfg, res.to_dict())
    return EXIT_OK


def cmd_nice(cfg: RunConfig, args) -> int:
    f = _read_network(cfg)
    if args.set_file:
        data = _read_json(args.set_file)
        A = data.get("A", []) if isinstance(data, dict) else data
        try:
            rep = nice_sets.is_nice(f, A)
        except (PreconditionError, TypeError, ValueError) as exc:
            raise InputError(f"bad set file: {exc}") from None
        if rep is None:
            _emit_json(cfg, {"nice": False, "A": sorted(A)})
            return EXIT_VIOLATION
    else:
        k = args.k if args.k is not None else 1 << max(f.n - 2, 0)
        rep = nice_sets.find_nice_set(f, k)
    out: dict[str, Any] = rep.to_dict()
    if args.arc:
        j, i = args.arc
        pi, h = nice_sets.missing_arc_network(f, rep, i, j)
        out = {"report": out, "pi": pi.to_dict(), "h": network_to_dict(h)}
    _emit_json(cfg, out)
    return EXIT_OK


def cmd_enumerate(cfg: RunConfig, args) -> int:
    f = _read_network(cfg)
    if args.sample:
        fam = enumeration.sample_graphs(f, cfg.trials, cfg.seed)
    else:
        fam = enumeration.all_graphs(f, override=cfg.override_large)
    _emit_json(cfg, fam.to_dict())
    return EXIT_OK


def cmd_estimate(cfg: RunConfig, args) -> int:
    f = _read_network(cfg)
    distinct, trials = enumeration.gsize_estimate(f, cfg.trials, cfg.seed)
    _emit_json(cfg, {"n": f.n, "distinct_graphs": distinct, "trials": trials, "seed": cfg.seed})
    return EXIT_OK


def cmd_catalog(cfg: RunConfig, args) -> int:
    rep = enumeration.catalog_n2()
    _emit_json(cfg, rep.to_dict())
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_sparse(cfg: RunConfig, args) -> int:
    if cfg.n is None:
        raise InputError("--n is required")
    rep = sparse.verify_sparse_family(cfg.n, cfg.trials, cfg.seed, args.conjugations)
    _emit_json(cfg, rep.to_dict())
    return EXIT_OK if rep.violations == 0 else EXIT_VIOLATION


def cmd_conjugate(cfg: RunConfig, args) -> int:
    f = _read_network(cfg)
    try:
        p = Perm.from_dict(_read_json(args.perm))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad permutation file: {exc}") from None
    if p.n != f.n:
        raise InputError(f"permutation has n={p.n}, network has n={f.n}")
    h = conjugate(f, p)
    if cfg.format == "text":
        _emit(cfg, format_truth_table(h))
    else:
        _emit_json(cfg, network_to_dict(h))
    return EXIT_OK


def cmd_uniqueness(cfg: RunConfig, args) -> int:
    if cfg.n is None:
        raise InputError("--n is required")
    mode = "exhaustive" if args.exhaustive else ("sample", cfg.trials, cfg.seed)
    rep = enumeration.uniqueness_check(cfg.n, mode, workers=worker_count(cfg.deterministic))
    _emit_json(cfg, rep.to_dict())
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_verify_paper(cfg: RunConfig, args) -> int:
    numbers = None
    if args.criteria:
        try:
            numbers = [int(c) for c in args.criteria.split(",")]
        except ValueError:
            raise InputError(f"bad --criteria {args.criteria!r}") from None
        unknown = sorted(set(numbers) - set(acceptance.CRITERIA))
        if unknown:
            raise InputError(f"unknown criteria {unknown}; choose from 1-9")
    results = acceptance.run(numbers, seed=cfg.seed)
    failed = [r for r in results if not r.passed]
    extra: dict[str, Any] = {}
    if args.level == "full":
        def progress(i: int) -> None:
            print(f"n=3 sweep: {i} / {1 << 24} networks", file=sys.stderr, flush=True)
        sweep = acceptance.full_sweep_n3(progress, worker_count(cfg.deterministic))
        extra["n3_sweep"] = sweep.to_dict()
        if not sweep.ok:
            failed.append(sweep)
    if cfg.format == "json":
        _emit_json(cfg, {"level": args.level, "seed": cfg.seed,
                         "criteria": [{k: v for k, v in r.to_dict().items() if k != "seconds"}
                                      for r in results], **extra,
                         "passed": not failed})
    else:
        lines = [r.line() for r in results]
        for r in results:
            if not r.passed:
                lines.append(f"  reproducer for criterion {r.number}: {json.dumps(r.detail, default=str)}")
        if "n3_sweep" in extra:
            lines.append(f"n=3 sweep: {json.dumps(extra['n3_sweep'])}")
        lines.append("all criteria passed" if not failed else
                     "FAILED: " + ", ".join(f"criterion {r.number}" for r in results if not r.passed))
        _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_OK if not failed else EXIT_VIOLATION


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", metavar="PATH", help="network file (truth table or JSON); '-' for stdin")
    common.add_argument("--output", metavar="PATH")
    common.add_argument("--seed", type=int, default=acceptance.DEFAULT_SEED)
    common.add_argument("--trials", type=int, default=1000)
    common.add_argument("--n", type=int)
    # default is json, or text for verify-paper; resolved in RunConfig
    common.add_argument("--format", choices=["json", "dot", "text"])
    common.add_argument("--override-large", action="store_true",
                        help="unlock sizes refused by exhaustive modes")
    common.add_argument("--deterministic", action="store_true",
                        help="force sequential, first-found search order")

    parser = argparse.ArgumentParser(prog="bniso", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, fn, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=fn)
        return p

    add("graph", cmd_graph, "interaction graph of a network")
    p = add("witness", cmd_witness, "permutation making the interaction graph complete")
    p.add_argument("--best-effort", action="store_true", help="attempt n <= 4 as well")
    p = add("nice", cmd_nice, "find or verify a k-nice set")
    p.add_argument("--k", type=int)
    p.add_argument("--set-file", metavar="PATH", help="JSON set to verify instead of searching")
    p.add_argument("--arc", type=int, nargs=2, metavar=("J", "I"),
                   help="also build a conjugate with no arc J -> I")
    p = add("enumerate", cmd_enumerate, "family of interaction graphs over all conjugates")
    p.add_argument("--sample", action="store_true", help="sample --trials conjugates instead")
    add("estimate", cmd_estimate, "lower bound on the family size by sampling")
    add("catalog", cmd_catalog, "cross-check the two-component catalog")
    p = add("sparse", cmd_sparse, "arc lower bound for the collapse family")
    p.add_argument("--conjugations", type=int, default=20)
    p = add("conjugate", cmd_conjugate, "conjugate a network by a permutation")
    p.add_argument("--perm", metavar="PATH", required=True)
    p = add("uniqueness", cmd_uniqueness, "scan small networks for |family| >= 2 and K_n")
    p.add_argument("--exhaustive", action="store_true")
    p = add("verify-paper", cmd_verify_paper, "run the acceptance criteria")
    p.add_argument("level", nargs="?", choices=["fast", "full"], default="fast")
    p.add_argument("--criteria", help="comma-separated subset, e.g. 1,4,8")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig.from_args(args)
    try:
        return args.func(cfg, args)
    except (InputError, ParseError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except InvariantViolation as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
