"""complab command-line entry point.

Subcommands:
  analyze   sink analysis, C^1..C^m_max and the competition profile of one instance
  generate  seeded bipartite tournament as JSON
  verify    structural checks for one instance or an exhaustive (n1, n2) enumeration
  sweep     per-instance table plus frequency aggregates
  export    DOT files for D and the requested C^m

Exit codes: 0 success, 2 input error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

from src.characterization.checks import CHECK_GROUPS
from src.characterization.verifier import verify_instance
from src.cli.render import render_analysis, to_json
from src.cli.sweep import (
    SweepJob,
    aggregate,
    rows_to_csv,
    run_sweep,
    run_verification,
)
from src.competition.engine import competition_graph_sequence
from src.competition.profile import competition_profile
from src.core.digraph import BipartiteTournament, Digraph
from src.core.errors import ComplabError, InfeasibleParts, InputError
from src.core.io import digraph_to_dot, graph_to_dot, instance_to_json, load_instance, tournament_to_json
from src.generators.fixtures import FIXTURE_NAMES, load_fixture
from src.generators.generators import (
    DEFAULT_SINKLESS_RETRIES,
    MODES,
    SINKLESS,
    UNIFORM,
    GenSpec,
    enumeration_size,
    generate,
)
from src.sinks.sink_analysis import sink_analysis
from src.utils.config_loader import (
    get_default_m_max,
    get_export_dir,
    get_safety_cap,
    get_witness_dir,
    load_settings,
)
from src.utils.file_lock import atomic_write_json, atomic_write_text
from src.utils.logger import set_global_level, setup_logger

logger = setup_logger("cli")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_FAILED = 3


# ─── argument parsing ────────────────────────────────────


def _add_instance_source(p: argparse.ArgumentParser, exhaustive: bool = False) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--input", type=Path, help="instance JSON file")
    src.add_argument("--fixture", choices=FIXTURE_NAMES, help="named reference instance")
    if exhaustive:
        src.add_argument("--exhaustive", nargs=2, type=int, metavar=("N1", "N2"), help="every orientation of K_{N1,N2}")
    _add_gen_flags(p)


def _add_gen_flags(p: argparse.ArgumentParser, required: bool = False) -> None:
    p.add_argument("--n1", type=int, required=required, help="size of part 1")
    p.add_argument("--n2", type=int, required=required, help="size of part 2")
    p.add_argument("--seed", type=int, default=None, help="64-bit seed (default 0)")
    p.add_argument("--mode", choices=MODES, default=UNIFORM, help="generator mode")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="complab", description=__doc__.splitlines()[0])
    parser.add_argument("--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyse one instance")
    _add_instance_source(p)
    p.add_argument("--m-max", type=int, default=None)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--safety-cap", type=int, default=None)

    p = sub.add_parser("generate", help="emit a seeded bipartite tournament")
    _add_gen_flags(p, required=True)
    p.add_argument("--output", type=Path, default=None)

    p = sub.add_parser("verify", help="run structural checks")
    _add_instance_source(p, exhaustive=True)
    p.add_argument("--m-max", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--groups", default=",".join(CHECK_GROUPS), help="comma-separated check groups")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--safety-cap", type=int, default=None)

    p = sub.add_parser("sweep", help="tabulate (zeta, cindex, cperiod, shapes)")
    p.add_argument("--exhaustive", nargs=2, type=int, metavar=("N1", "N2"))
    _add_gen_flags(p)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", type=Path, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--safety-cap", type=int, default=None)

    p = sub.add_parser("export", help="write DOT files")
    _add_instance_source(p)
    p.add_argument("--m", dest="m_list", default="1", help="comma-separated m values, e.g. 1,3,4")
    p.add_argument("--out-dir", type=Path, default=None)

    return parser


# ─── instance resolution ─────────────────────────────────


def _has_gen_flags(args) -> bool:
    return args.n1 is not None or args.n2 is not None or args.seed is not None


def _check_exhaustive_alone(args) -> None:
    """--exhaustive は単独の instance source。生成器フラグとは併用不可。"""
    if _has_gen_flags(args) or getattr(args, "samples", None) is not None:
        raise InputError("--exhaustive cannot be combined with --n1/--n2/--seed/--samples")


def _resolve_instance(args, settings: dict) -> tuple[str, Digraph | BipartiteTournament]:
    """(name, instance) from exactly one of --input, --fixture, or generator flags."""
    sources = [args.input is not None, args.fixture is not None, _has_gen_flags(args)]
    if sum(sources) != 1:
        raise InputError("give exactly one instance source: --input, --fixture, or --n1/--n2/--seed")
    if args.fixture is not None:
        return args.fixture, load_fixture(args.fixture)
    if args.input is not None:
        return args.input.stem, load_instance(args.input)
    if args.n1 is None or args.n2 is None:
        raise InputError("generator flags need both --n1 and --n2")
    spec = GenSpec(args.n1, args.n2, args.seed or 0, args.mode)
    return f"{spec.mode}_{spec.n1}x{spec.n2}_s{spec.seed}", generate(spec, settings)


def _workers(args, settings: dict) -> int:
    if args.workers is not None:
        return max(1, args.workers)
    return max(1, int(settings.get("verify", {}).get("workers", 1)))


# ─── subcommands ─────────────────────────────────────────


def cmd_analyze(args, settings: dict) -> int:
    _, instance = _resolve_instance(args, settings)
    d = instance.digraph if isinstance(instance, BipartiteTournament) else instance
    analysis = sink_analysis(d)
    m_max = args.m_max if args.m_max is not None else get_default_m_max(analysis.zeta, settings)
    if m_max < 1:
        raise InputError(f"--m-max must be >= 1, got {m_max}")
    profile = competition_profile(d, get_safety_cap(d.n, settings, override=args.safety_cap))
    graphs = competition_graph_sequence(d, m_max)

    if args.format == "text":
        sys.stdout.write(render_analysis(instance, analysis, graphs, profile))
        return EXIT_OK

    out = {
        "instance": instance_to_json(instance),
        "sinks": analysis.to_dict(),
        "competition_graphs": [
            {"m": m, "edges": g.edge_labels()} for m, g in enumerate(graphs, start=1)
        ],
        "profile": profile.to_dict(),
    }
    sys.stdout.write(to_json(out))
    return EXIT_OK


def cmd_generate(args, settings: dict) -> int:
    spec = GenSpec(args.n1, args.n2, args.seed or 0, args.mode)
    data = tournament_to_json(generate(spec, settings))
    if args.output is not None:
        atomic_write_json(args.output, data)
        logger.info("Wrote %s", args.output)
    else:
        sys.stdout.write(to_json(data))
    return EXIT_OK


def _write_witness(witness_id: str, payload: dict, settings: dict) -> Path:
    path = get_witness_dir(settings) / f"witness_{witness_id}.json"
    atomic_write_json(path, payload)
    logger.info("Witness written to %s", path)
    return path


def _parse_groups(raw: str) -> tuple[str, ...]:
    groups = tuple(g.strip() for g in raw.split(",") if g.strip())
    unknown = [g for g in groups if g not in CHECK_GROUPS]
    if unknown or not groups:
        raise InputError(f"unknown check groups {unknown}; choose from {', '.join(CHECK_GROUPS)}")
    return groups


def cmd_verify(args, settings: dict) -> int:
    groups = _parse_groups(args.groups)
    if args.m_max is not None and args.m_max < 2:
        raise InputError(f"--m-max must be >= 2, got {args.m_max}")
    if args.exhaustive is not None:
        return _verify_exhaustive(args, settings, groups)

    name, instance = _resolve_instance(args, settings)
    if not isinstance(instance, BipartiteTournament):
        raise InputError("verify needs a bipartite tournament (n1/n2 JSON form)")
    cap = get_safety_cap(instance.n, settings, override=args.safety_cap)
    report = verify_instance(instance, m_max=args.m_max, safety_cap=cap, groups=groups, settings=settings)
    if args.format == "json":
        sys.stdout.write(to_json(report.to_dict()))
    else:
        sys.stdout.write(report.to_text())
    if not report.passed:
        _write_witness(name, report.to_dict(), settings)
        return EXIT_FAILED
    return EXIT_OK


def _verify_exhaustive(args, settings: dict, groups: tuple[str, ...]) -> int:
    _check_exhaustive_alone(args)
    n1, n2 = args.exhaustive
    total = enumeration_size(n1, n2, settings=settings)
    cap = get_safety_cap(n1 + n2, settings, override=args.safety_cap)
    jobs = (SweepJob(mask, n1, n2, cap, mask=mask) for mask in range(total))

    started = time.monotonic()
    logger.info("Verifying %d orientations of (%d,%d)", total, n1, n2)
    results = run_verification(jobs, _workers(args, settings), m_max=args.m_max, groups=groups, settings=settings)
    failed = [r for r in results if not r["passed"]]
    logger.info("Verified %d instances in %.1fs, %d failed", total, time.monotonic() - started, len(failed))

    summary = {
        "n1": n1,
        "n2": n2,
        "instances": total,
        "acyclic": sum(1 for r in results if r["acyclic"]),
        "cyclic": sum(1 for r in results if not r["acyclic"]),
        "failed": len(failed),
        "first_failure": failed[0] if failed else None,
    }
    if args.format == "json":
        sys.stdout.write(to_json(summary))
    else:
        sys.stdout.write(
            f"({n1},{n2}): {total} instances, {summary['acyclic']} acyclic, "
            f"{summary['cyclic']} cyclic, {len(failed)} failed\n"
        )
    if failed:
        first = failed[0]
        bt = BipartiteTournament.from_orientation(n1, n2, first["mask"])
        _write_witness(f"{n1}x{n2}_{first['mask']}", {"instance": tournament_to_json(bt), **first}, settings)
        return EXIT_FAILED
    return EXIT_OK


def cmd_sweep(args, settings: dict) -> int:
    if args.exhaustive is not None:
        _check_exhaustive_alone(args)
        n1, n2 = args.exhaustive
        total = enumeration_size(n1, n2, settings=settings)
        cap = get_safety_cap(n1 + n2, settings, override=args.safety_cap)
        jobs = [SweepJob(mask, n1, n2, cap, mask=mask) for mask in range(total)]
    else:
        if args.n1 is None or args.n2 is None:
            raise InputError("sweep needs --exhaustive N1 N2 or --n1/--n2 with --samples")
        n1, n2 = args.n1, args.n2
        samples = args.samples if args.samples is not None else int(settings.get("sweep", {}).get("samples", 1000))
        base_seed = args.seed or 0
        GenSpec(n1, n2, base_seed, args.mode)
        if args.mode == SINKLESS and min(n1, n2) < 2:
            raise InfeasibleParts(n1, n2)
        cap = get_safety_cap(n1 + n2, settings, override=args.safety_cap)
        retries = int(settings.get("generators", {}).get("sinkless_max_retries", DEFAULT_SINKLESS_RETRIES))
        jobs = [
            SweepJob(i, n1, n2, cap, seed=base_seed + i, mode=args.mode, sinkless_retries=retries)
            for i in range(samples)
        ]

    started = time.monotonic()
    rows = run_sweep(jobs, _workers(args, settings))
    summary = aggregate(rows)
    logger.info("Swept %d instances in %.1fs", len(rows), time.monotonic() - started)

    if args.format == "csv":
        text = rows_to_csv(rows, summary)
    else:
        text = to_json({"rows": rows, "aggregate": summary})
    if args.output is not None:
        atomic_write_text(args.output, text)
        logger.info("Wrote %s", args.output)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _parse_m_list(raw: str) -> list[int]:
    try:
        values = [int(x) for x in raw.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"--m expects comma-separated integers, got {raw!r}") from None
    if not values or any(m < 1 for m in values):
        raise InputError(f"--m values must be >= 1, got {raw!r}")
    return values


def cmd_export(args, settings: dict) -> int:
    name, instance = _resolve_instance(args, settings)
    m_values = _parse_m_list(args.m_list)
    if isinstance(instance, BipartiteTournament):
        d, parts = instance.digraph, (instance.part1, instance.part2)
    else:
        d, parts = instance, None
    out_dir = args.out_dir if args.out_dir is not None else get_export_dir(settings)
    out_dir.mkdir(parents=True, exist_ok=True)

    graphs = competition_graph_sequence(d, max(m_values))
    written = [out_dir / f"{name}_D.dot"]
    atomic_write_text(written[0], digraph_to_dot(d, parts, name="D"))
    for m in m_values:
        path = out_dir / f"{name}_C{m}.dot"
        atomic_write_text(path, graph_to_dot(graphs[m - 1], parts, name=f"C{m}"))
        written.append(path)
    for path in written:
        sys.stdout.write(f"{path}\n")
    logger.info("Exported %d DOT files to %s", len(written), out_dir)
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "generate": cmd_generate,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "export": cmd_export,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        set_global_level(logging.DEBUG)
    try:
        settings = load_settings()
        return COMMANDS[args.command](args, settings)
    except ComplabError as e:
        logger.error("%s", e)
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INPUT
    except OSError as e:
        logger.error("I/O failure: %s", e)
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
