"""Command-line front end.

Subcommands: ``scan`` (random or two-path-grid sweeps to CSV + manifest),
``enumerate-uniform`` (uniform scenarios as JSON lines), ``saturation``
(brute-force census CSV plus a summary line), ``example`` (worked six-path
regression values), ``povm`` (measurement dump as JSON), and ``verify``
(randomized property suites). Exit codes: 0 success, 1 property failure,
2 usage error, 3 I/O failure. Data goes to standard output, diagnostics to
standard error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from contextlib import contextmanager

from .duality import evaluate_point
from .ensemble import (
    SweepConfig,
    resolve_workers,
    run_sweep,
    two_path_grid_dataset,
    write_manifest,
    write_points_csv,
)
from .measurements import (
    Strategy,
    build_frio_concatenated,
    build_frio_standard,
    build_me_measurement,
    conditional_conclusive,
    measurement_to_json_dict,
)
from .saturation import (
    SCAN_MAX_PATHS,
    saturating_dimensions,
    saturation_scan,
    write_saturation_csv,
)
from .states import (
    ValidationError,
    enumerate_uniform_specs,
    spec_from_json_dict,
    spec_from_probabilities,
    spec_to_json_dict,
    uniform_spec,
)
from .verify import run_verification

EXIT_OK = 0
EXIT_PROPERTY_FAILURE = 1
EXIT_USAGE = 2
EXIT_IO = 3

STRATEGY_FLAGS = {
    "me": Strategy.ME,
    "frio": Strategy.FRIO_STANDARD,
    "conc": Strategy.FRIO_CONCATENATED,
}

EXAMPLES = {
    "six-path-equally-spaced": (0, 3),
    "six-path-adjacent": (0, 1),
    "six-path-nonadjacent": (0, 2),
}


@contextmanager
def _open_out(path: str | None):
    """Write target for a flag: a file when a path is given, stdout otherwise."""
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            yield handle


def _parse_xi_list(text: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise ValidationError(f"invalid separation-level list {text!r}") from exc
    if not values:
        raise ValidationError("separation-level list is empty")
    return values


def _parse_dim(text: str, n_paths: int) -> int | None:
    if text == "all":
        return None
    try:
        value = int(text)
    except ValueError as exc:
        raise ValidationError(f"subspace dimension must be an integer or 'all', got {text!r}") from exc
    if not 1 <= value <= n_paths:
        raise ValidationError(f"subspace dimension must satisfy 1 <= n <= {n_paths}, got {value}")
    return value


def _strategies(args) -> tuple[tuple[Strategy, float], ...]:
    tag = STRATEGY_FLAGS[args.strategy]
    if tag is Strategy.ME:
        return ((tag, 0.0),)
    return tuple((tag, xi) for xi in _parse_xi_list(args.xi))


def cmd_scan(args) -> int:
    strategies = _strategies(args)
    workers = resolve_workers(args.workers)
    started = time.perf_counter()
    if args.grid is not None:
        if args.N != 2:
            raise ValidationError("grid mode is only defined for two-path scans (--N 2)")
        dataset = two_path_grid_dataset(strategies, args.grid, envelope_bins=args.bins)
    else:
        cfg = SweepConfig(
            N=args.N,
            n=_parse_dim(args.n, args.N),
            samples=args.samples,
            strategies=strategies,
            seed=args.seed,
            include_uniform_enumeration=args.include_uniform,
        )
        dataset = run_sweep(cfg, workers=workers, envelope_bins=args.bins)
    wall_time = time.perf_counter() - started
    with _open_out(args.out) as handle:
        write_points_csv(dataset.points, handle)
    manifest_path = args.manifest
    if manifest_path is None and args.out not in (None, "-"):
        manifest_path = args.out + ".manifest.json"
    if manifest_path is not None:
        with _open_out(manifest_path) as handle:
            write_manifest(
                handle,
                config=dataset.config,
                wall_time=wall_time,
                point_count=len(dataset.points),
                envelope=dataset.envelope,
            )
    return EXIT_OK


def cmd_enumerate(args) -> int:
    dim = _parse_dim(args.n, args.N)
    dims = range(1, args.N + 1) if dim is None else (dim,)
    with _open_out(args.out) as handle:
        for n in dims:
            for spec in enumerate_uniform_specs(args.N, n):
                handle.write(json.dumps(spec_to_json_dict(spec)) + "\n")
    return EXIT_OK


def cmd_saturation(args) -> int:
    if args.N > SCAN_MAX_PATHS:
        raise ValidationError(
            f"census budget exceeded: N must be <= {SCAN_MAX_PATHS}, got {args.N}"
        )
    reports = saturation_scan(args.N)
    dims, count = saturating_dimensions(args.N)
    summary = (
        f"N={args.N} nontrivial saturating dimensions: "
        f"{','.join(map(str, dims)) if dims else 'none'} (eta-2 = {count})"
    )
    if args.out is None:
        write_saturation_csv(reports, sys.stdout)
        print(summary, file=sys.stderr)
    else:
        with _open_out(args.out) as handle:
            write_saturation_csv(reports, handle)
        print(summary)
    return EXIT_OK


def cmd_example(args) -> int:
    support = EXAMPLES[args.name]
    spec = uniform_spec(6, support)
    point = evaluate_point(spec, Strategy.ME)
    conditional = conditional_conclusive(spec, 0.0)
    print(f"example: {args.name} (N=6, support {{{', '.join(map(str, support))}}}, uniform)")
    print(f"C = {point.coherence:.3f}")
    print(f"K_me = {point.knowledge:.3f}")
    print(f"C+K = {point.duality_sum:.3f}")
    print("p(l|0) = [" + ", ".join(f"{p:.6f}" for p in conditional) + "]")
    return EXIT_OK


def cmd_povm(args) -> int:
    if args.spec is not None:
        with open(args.spec, "r", encoding="utf-8") as handle:
            spec = spec_from_json_dict(json.load(handle))
    elif args.N is not None and args.support is not None:
        indices = tuple(int(part) for part in args.support.split(","))
        if args.coeffs_sq is None:
            spec = uniform_spec(args.N, indices)
        else:
            probs = [float(part) for part in args.coeffs_sq.split(",")]
            spec = spec_from_probabilities(args.N, indices, probs)
    else:
        raise ValidationError("provide either --spec FILE or both --N and --support")
    tag = STRATEGY_FLAGS[args.strategy]
    if tag is Strategy.ME:
        measurement = build_me_measurement(spec)
    elif tag is Strategy.FRIO_STANDARD:
        measurement = build_frio_standard(spec, args.xi)
    else:
        measurement = build_frio_concatenated(spec, args.xi)
    with _open_out(args.out) as handle:
        json.dump(measurement_to_json_dict(measurement), handle, indent=2)
        handle.write("\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        lo_text, hi_text = args.N_range.split(":")
        n_range = (int(lo_text), int(hi_text))
    except ValueError as exc:
        raise ValidationError(
            f"path-count range must look like 'LO:HI', got {args.N_range!r}"
        ) from exc
    results = run_verification(
        samples=args.samples,
        seed=args.seed,
        n_range=n_range,
        fault=args.inject_fault,
    )
    failed = False
    for result in results:
        if result.passed:
            print(f"{result.name}: OK ({result.checks} checks)")
        else:
            failed = True
            print(f"{result.name}: FAIL ({len(result.violations)}/{result.checks} checks)")
            for violation in result.violations[:20]:
                print(f"  {violation}", file=sys.stderr)
    return EXIT_PROPERTY_FAILURE if failed else EXIT_OK


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="duality-lab",
        description="Wave-particle duality scans for uniform multipath interferometers",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    scan = sub.add_parser("scan", help="random or grid sweep to CSV (+ manifest)")
    scan.add_argument("--N", type=_positive_int, required=True, help="path count")
    scan.add_argument("--n", default="all", help="subspace dimension or 'all'")
    scan.add_argument("--samples", type=int, default=1000, help="random scenario count")
    scan.add_argument("--grid", type=_positive_int, default=None,
                      help="two-path deterministic grid with this many steps (N=2 only)")
    scan.add_argument("--strategy", choices=sorted(STRATEGY_FLAGS), default="me")
    scan.add_argument("--xi", default="0", help="comma-separated separation levels")
    scan.add_argument("--seed", type=int, default=0)
    scan.add_argument("--out", default=None, help="CSV path (default: stdout)")
    scan.add_argument("--manifest", default=None,
                      help="manifest path (default: <out>.manifest.json)")
    scan.add_argument("--bins", type=int, default=None, help="envelope bin count")
    scan.add_argument("--include-uniform", action="store_true",
                      help="append the full uniform enumeration")
    scan.add_argument("--workers", type=int, default=None,
                      help="worker threads (capped by DUALITY_LAB_THREADS)")
    scan.set_defaults(handler=cmd_scan)

    enum = sub.add_parser("enumerate-uniform", help="uniform scenarios as JSON lines")
    enum.add_argument("--N", type=_positive_int, required=True)
    enum.add_argument("--n", default="all")
    enum.add_argument("--out", default=None)
    enum.set_defaults(handler=cmd_enumerate)

    census = sub.add_parser("saturation", help="brute-force saturation census")
    census.add_argument("--N", type=_positive_int, required=True)
    census.add_argument("--out", default=None, help="CSV path (default: stdout)")
    census.set_defaults(handler=cmd_saturation)

    example = sub.add_parser("example", help="worked six-path regression values")
    example.add_argument("name", choices=sorted(EXAMPLES))
    example.set_defaults(handler=cmd_example)

    povm = sub.add_parser("povm", help="dump one measurement as JSON")
    povm.add_argument("--spec", default=None, help="scenario JSON file")
    povm.add_argument("--N", type=_positive_int, default=None)
    povm.add_argument("--support", default=None, help="comma-separated indices")
    povm.add_argument("--coeffs-sq", default=None,
                      help="comma-separated squared coefficients (default: uniform)")
    povm.add_argument("--strategy", choices=sorted(STRATEGY_FLAGS), default="me")
    povm.add_argument("--xi", type=float, default=0.0)
    povm.add_argument("--out", default=None)
    povm.set_defaults(handler=cmd_povm)

    verify = sub.add_parser("verify", help="run the randomized property suites")
    verify.add_argument("--samples", type=int, default=1000)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--N-range", default="2:8", help="path-count range 'LO:HI'")
    verify.add_argument("--inject-fault", choices=["gk-sign"], default=None,
                        help=argparse.SUPPRESS)
    verify.set_defaults(handler=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.handler(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


def entrypoint() -> None:
    sys.exit(main())
