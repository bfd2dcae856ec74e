"""Command-line interface.

Subcommands mirror the library surface:

* ``distinguish single`` / ``distinguish multi``: classify bits from a file
  or stdin; the verdict, exactly ``McCulloch-Pitts`` or ``random``, is the
  only stdout output, so scripts can grep it.
* ``count bound`` / ``count enumerate`` / ``count table``: the counting
  machinery.
* ``experiment soundness|completeness-single|completeness-multi|collision``:
  Monte Carlo runs driven by a JSON config; ``experiment sweep`` emits CSV.
* ``generate``: write one trajectory stream from a system descriptor.

Exit codes: 0 on success, 1 when a run's own acceptance rule fails (a
soundness failure or a missed collision bound), 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import BitVector
from .counting import cover_bound, enumerate_separable_dichotomies, region_count_table
from .distinguisher import (
    MultiSampleInput,
    SingleStreamInput,
    classify_multi,
    classify_single,
)
from .dynamics import BitStream, read_streams_ascii, read_streams_packed
from .experiments import (
    RUNNERS,
    config_from_json,
    format_report_text,
    generate_stream,
    report_to_json,
    sweep_completeness,
    write_sweep_csv,
)
from .separability import witness_to_json


def _read_streams(path: str, fmt: str) -> list[BitStream]:
    if path == "-":
        if fmt != "ascii":
            raise ValueError("packed streams cannot be read from stdin; use a file")
        return [
            BitStream.from_string(line.strip())
            for line in sys.stdin
            if line.strip()
        ]
    if fmt == "ascii":
        return read_streams_ascii(path)
    if fmt == "packed":
        return read_streams_packed(path)
    raise ValueError(f"unknown stream format {fmt!r}")


def _write_json(obj: dict, path: str) -> None:
    if path == "-":
        json.dump(obj, sys.stdout, indent=2)
        sys.stdout.write("\n")
        return
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


def _cmd_distinguish(args: argparse.Namespace) -> int:
    if args.variant == "single":
        streams = _read_streams(args.stream, args.format)
        if len(streams) != 1:
            raise ValueError(f"expected exactly one stream, found {len(streams)}")
        verdict = classify_single(SingleStreamInput(args.n, streams[0]))
    else:
        samples = _read_streams(args.samples, args.format)
        verdict = classify_multi(MultiSampleInput(args.n, tuple(samples)))
    print(verdict.tag.label)
    if args.witness and verdict.witness is not None:
        _write_json(witness_to_json(verdict.witness), args.witness)
    return 0


def _cmd_count_bound(args: argparse.Namespace) -> int:
    print(cover_bound(args.m, args.n))
    return 0


def _cmd_count_enumerate(args: argparse.Namespace) -> int:
    if args.points == "-":
        obj = json.load(sys.stdin)
    else:
        with open(args.points) as fh:
            obj = json.load(fh)
    if not isinstance(obj, dict) or "points" not in obj:
        raise ValueError('point set file must be JSON {"n": int, "points": [...]}')
    n = obj.get("n")
    if not isinstance(n, int) or n < 1:
        raise ValueError("field 'n': expected a positive integer")
    points = [BitVector.from_string(s) for s in obj["points"]]
    for p in points:
        if len(p) != n:
            raise ValueError(f"point {p.to_string()} does not have declared length {n}")
    report, _ = enumerate_separable_dichotomies(points, workers=args.workers or 1)
    if args.json:
        _write_json(
            {
                "m": report.m,
                "n": report.n,
                "separable_count": report.separable_count,
                "bound": report.bound,
                "attained": report.attained,
            },
            "-",
        )
    else:
        print(f"points           {report.m}")
        print(f"dimension        {report.n}")
        print(f"separable_count  {report.separable_count}")
        print(f"bound            {report.bound}")
        print(f"attained         {'yes' if report.attained else 'no'}")
    return 0


def _cmd_count_table(args: argparse.Namespace) -> int:
    table = region_count_table(args.m_max, args.n_max)
    if args.format == "json":
        _write_json(
            {"m_max": args.m_max, "n_max": args.n_max, "table": table},
            args.out,
        )
        return 0
    lines = ["m," + ",".join(f"n={j}" for j in range(1, args.n_max + 1))]
    for m, row in enumerate(table, start=1):
        lines.append(f"{m}," + ",".join(str(v) for v in row))
    text = "\n".join(lines) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    return 0


def _cmd_experiment(args: argparse.Namespace) -> int:
    if args.config == "-":
        obj = json.load(sys.stdin)
    else:
        with open(args.config) as fh:
            obj = json.load(fh)
    config = config_from_json(obj)
    if args.kind == "sweep":
        values = [int(v) for v in args.values.split(",") if v.strip()]
        if not values:
            raise ValueError("--values must list at least one integer")
        rows = sweep_completeness(config, values, workers=args.workers)
        if args.out:
            write_sweep_csv(rows, args.out, config.mode)
        else:
            header = "t" if config.mode == "single" else "m"
            print(f"{header},random_rate,random_rate_float")
            for value, rate in rows:
                print(f"{value},{rate},{float(rate):.6f}")
        return 0
    runner = RUNNERS[args.kind]
    report = runner(config, workers=args.workers)
    if args.json:
        _write_json(report_to_json(report), "-")
    else:
        print(format_report_text(report))
    return 0 if report.passed else 1


def _cmd_generate(args: argparse.Namespace) -> int:
    generate_stream(args.system, args.seed_state, args.t, args.out, args.format)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mpbits",
        description="Threshold-network bit streams and randomness distinguishers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_dist = sub.add_parser("distinguish", help="classify bits as network output or random")
    dist_sub = p_dist.add_subparsers(dest="variant", required=True)
    p_single = dist_sub.add_parser("single", help="one stream, chunked against itself")
    p_single.add_argument("--n", type=int, required=True, help="network dimension")
    p_single.add_argument("--stream", required=True, help="stream file, or - for stdin")
    p_multi = dist_sub.add_parser("multi", help="m samples of n+1 bits")
    p_multi.add_argument("--n", type=int, required=True, help="network dimension")
    p_multi.add_argument("--samples", required=True, help="samples file, or - for stdin")
    for p in (p_single, p_multi):
        p.add_argument(
            "--format", choices=("ascii", "packed"), default="ascii",
            help="stream file format (default ascii)",
        )
        p.add_argument("--witness", help="write the separating witness JSON here")
        p.set_defaults(func=_cmd_distinguish)

    p_count = sub.add_parser("count", help="separable-dichotomy counting")
    count_sub = p_count.add_subparsers(dest="variant", required=True)
    p_bound = count_sub.add_parser("bound", help="closed-form upper bound")
    p_bound.add_argument("--m", type=int, required=True, help="point count")
    p_bound.add_argument("--n", type=int, required=True, help="dimension")
    p_bound.set_defaults(func=_cmd_count_bound)
    p_enum = count_sub.add_parser("enumerate", help="brute-force count over a point set")
    p_enum.add_argument("--points", required=True, help="JSON point set file, or -")
    p_enum.add_argument("--workers", type=int, help="process count for the enumeration")
    p_enum.add_argument("--json", action="store_true", help="machine-readable output")
    p_enum.set_defaults(func=_cmd_count_enumerate)
    p_table = count_sub.add_parser("table", help="region-count recurrence table")
    p_table.add_argument("--m-max", type=int, required=True)
    p_table.add_argument("--n-max", type=int, required=True)
    p_table.add_argument("--format", choices=("csv", "json"), default="csv")
    p_table.add_argument("--out", default="-", help="output file (default stdout)")
    p_table.set_defaults(func=_cmd_count_table)

    p_exp = sub.add_parser("experiment", help="Monte Carlo experiment runs")
    exp_sub = p_exp.add_subparsers(dest="kind", required=True)
    for kind, help_text in (
        ("soundness", "network-generated inputs must all classify as McCulloch-Pitts"),
        ("completeness-single", "RANDOM rate on uniform streams"),
        ("completeness-multi", "RANDOM rate on uniform sample batches"),
        ("collision", "all-distinct rate against the birthday bound"),
        ("sweep", "completeness rate vs t or m, as CSV"),
    ):
        p_kind = exp_sub.add_parser(kind, help=help_text)
        p_kind.add_argument("--config", required=True, help="JSON config file, or -")
        p_kind.add_argument("--workers", type=int, help="worker process count")
        if kind == "sweep":
            p_kind.add_argument(
                "--values", required=True,
                help="comma-separated t (single mode) or m (multi mode) values",
            )
            p_kind.add_argument("--out", help="CSV output file (default stdout)")
        else:
            p_kind.add_argument("--json", action="store_true", help="JSON report")
        p_kind.set_defaults(func=_cmd_experiment)

    p_gen = sub.add_parser("generate", help="write one trajectory stream")
    p_gen.add_argument("--system", required=True, help="system descriptor JSON file")
    p_gen.add_argument("--seed-state", required=True, help="seed state bits, index 1 leftmost")
    p_gen.add_argument("--t", type=int, required=True, help="stream length in bits")
    p_gen.add_argument("--out", required=True, help="output stream file")
    p_gen.add_argument(
        "--format", choices=("ascii", "packed"), default="ascii",
        help="stream file format (default ascii)",
    )
    p_gen.set_defaults(func=_cmd_generate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
