"""CLI interface for lattice-floquet."""

import io
import sys
import csv
import json
import logging
import argparse
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from rich.console import Console
from rich.table import Table

from lattice_floquet import __version__
from lattice_floquet.core.config import (
    create_default_config,
    get_config_path,
    load_config,
    resolve_settings,
)
from lattice_floquet.core.errors import (
    LatticeFloquetError,
    ParameterRangeError,
    PeriodsError,
    PotentialError,
    describe_error,
)
from lattice_floquet.core.executor import with_status
from lattice_floquet.core.log import configure_logging, stderr_console
from lattice_floquet.lattice import LatticeKind, Periods, lattice_kind
from lattice_floquet.potentials import BUILTIN_NAMES, PeriodicPotential, builtin, from_source, scaled
from lattice_floquet.spectral.bands import (
    GridSpec,
    band_edges,
    default_grid,
    gap_report,
    gap_scan,
    sample_grid,
    scaling_exponent,
    spectrum,
    track_gap,
)
from lattice_floquet.verify import SUITES, run_suite

logger = logging.getLogger(__name__)

console = Console()

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

# Input problems are the caller's to fix; everything else is a numerical failure.
_USAGE_ERRORS = (PotentialError, PeriodsError, ParameterRangeError)

HELP_TEXT = f"""[bold]lattice-floquet[/bold] {__version__} - bands and gaps of periodic discrete Schrödinger operators

[bold]USAGE:[/bold]
  lattice-floquet [--verbose] COMMAND [OPTIONS]

[bold]COMMANDS:[/bold]
  spectrum   Spectrum of Δ + λQ as merged intervals, plus its gaps
  bands      Per-band edges (k, emin, emax); --samples PATH dumps the grid
  gap-scan   Gaps at tracked energies over a range of couplings
  verify     Run a verification suite ({", ".join(SUITES)})
  config     Show, locate or initialise the config file

[bold]COMMON OPTIONS:[/bold]
  --lattice {{square,triangular,hexagonal,ehm}}
  --periods P1 P2        Periods (taken from the builtin when omitted)
  --potential SRC        zero | builtin:NAME | file:PATH | random:SUP[:SEED]
  --seed N               Seed for random:SUP without its own (default 0)
  --lambda X             Coupling (default 1)
  --grid N1 N2           Sampling grid (default 64x64, scaled to the periods)
  --merge-tol X          Bands closer than 2X are merged (default 1e-7)
  --refine-tol X         Nelder-Mead edge refinement tolerance (default 1e-9)
  --format {{json,csv}}    Output format (default from config: json)
  --out PATH             Write data there instead of stdout
  --threads N            Worker threads (LATTICE_FLOQUET_THREADS caps this)

[bold]BUILTINS:[/bold]
  {", ".join(BUILTIN_NAMES)}

[bold]CSV COLUMNS:[/bold]
  spectrum   component,left,right
  bands      k,emin,emax,argmin_theta1,argmin_theta2,argmax_theta1,argmax_theta2
  samples    theta1,theta2,E1..EP
  gap-scan   lambda,components,energy,gap_left,gap_right,width
             followed by "# exponent,ENERGY,VALUE" rows

[bold]EXAMPLES:[/bold]
  lattice-floquet spectrum --potential builtin:tri-2x2 --lambda 0.1
  lattice-floquet bands --lattice hexagonal --periods 1 1 --potential zero --format csv
  lattice-floquet gap-scan --potential builtin:hex-2x2 --lambda-min 0.02 --lambda-max 0.2 --steps 8 --log
  lattice-floquet verify --suite lemmas
  lattice-floquet verify --suite tri --builtin-override tri-2x2=random:1:7

[bold]EXIT CODES:[/bold]
  0 success, 1 verification or numerical failure, 2 usage error

JSON output carries a top-level "schema": {SCHEMA_VERSION}. Data goes to stdout,
diagnostics to stderr.
"""


@dataclass(frozen=True)
class RunConfig:
    """Resolved inputs for one spectral command."""

    kind: LatticeKind
    periods: Periods
    source: str
    seed: int
    potential: PeriodicPotential
    lam: float
    grid: GridSpec
    merge_tol: float
    output: Optional[str]
    format: str
    threads: Optional[int]


def print_help() -> None:
    """Print the help message using rich formatting."""
    console.print(HELP_TEXT)


def print_version() -> None:
    """Print the version number."""
    console.print(f"lattice-floquet {__version__}")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--verbose', action='store_true', default=argparse.SUPPRESS, help='Log progress to stderr')
    parser.add_argument('--format', choices=('json', 'csv'), help='Output format')
    parser.add_argument('--out', type=str, help='Output file (default stdout)')
    parser.add_argument('--threads', type=int, help='Worker threads')


def _add_problem(parser: argparse.ArgumentParser, with_lambda: bool = True) -> None:
    parser.add_argument('--lattice', type=str, help='square, triangular, hexagonal or ehm')
    parser.add_argument('--periods', type=int, nargs=2, metavar=('P1', 'P2'), help='Periods')
    parser.add_argument('--potential', type=str, default='zero', help='zero | builtin:NAME | file:PATH | random:SUP[:SEED]')
    parser.add_argument('--seed', type=int, default=0, help='Seed for a random: potential without its own')
    if with_lambda:
        parser.add_argument('--lambda', dest='lam', type=float, default=1.0, help='Coupling')
    parser.add_argument('--grid', type=int, nargs=2, metavar=('N1', 'N2'), help='Sampling grid')
    parser.add_argument('--merge-tol', type=float, help='Merge tolerance')
    parser.add_argument('--refine-tol', type=float, help='Refinement tolerance')


def _parse_arguments(argv: Optional[Sequence[str]] = None):
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(
        prog='lattice-floquet',
        add_help=False,  # --help prints HELP_TEXT
        description="Bands and gaps of periodic discrete Schrödinger operators",
    )
    parser.add_argument('--help', '-h', action='store_true', help='Show help message')
    parser.add_argument('--version', '-v', action='store_true', help='Show version')
    parser.add_argument('--verbose', action='store_true', help='Log progress to stderr')

    sub = parser.add_subparsers(dest='command')

    p = sub.add_parser('spectrum', help='Spectrum intervals and gaps')
    _add_problem(p)
    _add_common(p)

    p = sub.add_parser('bands', help='Per-band edges')
    _add_problem(p)
    _add_common(p)
    p.add_argument('--samples', type=str, metavar='PATH', help='Also write the grid samples as CSV')

    p = sub.add_parser('gap-scan', help='Gaps over a range of couplings')
    _add_problem(p, with_lambda=False)
    _add_common(p)
    p.add_argument('--lambda-min', type=float, required=True)
    p.add_argument('--lambda-max', type=float, required=True)
    p.add_argument('--steps', type=int, default=10)
    p.add_argument('--log', action='store_true', help='Geometric spacing')
    p.add_argument('--energy', type=float, action='append', help='Tracked energy (repeatable)')

    p = sub.add_parser('verify', help='Run a verification suite')
    p.add_argument('--suite', choices=SUITES, default='all')
    p.add_argument('--seed', type=int, default=0, help='Base seed for randomized checks')
    p.add_argument(
        '--builtin-override', action='append', default=[], metavar='NAME=SRC',
        help='Replace a builtin potential (negative control)',
    )
    _add_common(p)

    p = sub.add_parser('config', help='Configuration file')
    p.add_argument('action', choices=('show', 'init', 'path'), nargs='?', default='show')
    p.add_argument('--verbose', action='store_true', default=argparse.SUPPRESS)

    return parser, parser.parse_args(argv)


def _settings(args) -> Dict[str, Any]:
    overrides = {
        "grid": {"refine_tol": getattr(args, "refine_tol", None)},
        "spectrum": {"merge_tol": getattr(args, "merge_tol", None)},
        "output": {"format": getattr(args, "format", None)},
        "runtime": {"threads": getattr(args, "threads", None)},
    }
    return resolve_settings(load_config(), overrides)


def _problem(args) -> Tuple[LatticeKind, Periods]:
    """Lattice and periods, filled in from a builtin potential when omitted."""
    scheme, _, name = args.potential.partition(":")
    reference = builtin(name) if scheme == "builtin" else None
    if args.lattice:
        kind = lattice_kind(args.lattice)
    elif reference is not None:
        kind = reference.kind
    else:
        raise PotentialError("--lattice is required unless --potential names a builtin", field="lattice")
    if args.periods:
        periods = Periods(*args.periods)
    elif reference is not None:
        periods = reference.periods
    else:
        periods = Periods(1, 1)
    return kind, periods


def _run_config(args, settings: Dict[str, Any]) -> RunConfig:
    kind, periods = _problem(args)
    grid = default_grid(periods, settings)
    if args.grid:
        grid = GridSpec(
            n1=args.grid[0],
            n2=args.grid[1],
            refine_tol=grid.refine_tol,
            max_refine_rounds=grid.max_refine_rounds,
            candidates=grid.candidates,
        )
    return RunConfig(
        kind=kind,
        periods=periods,
        source=args.potential,
        seed=args.seed,
        potential=from_source(kind, periods, args.potential, seed=args.seed),
        lam=getattr(args, "lam", 1.0),
        grid=grid,
        merge_tol=settings["spectrum"]["merge_tol"],
        output=args.out,
        format=settings["output"]["format"],
        threads=settings["runtime"]["threads"],
    )


def _json_default(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def _emit(text: str, output: Optional[str]) -> None:
    """Write data to --out or stdout; nothing else goes to stdout."""
    if output:
        with open(output, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def _to_json(payload: Dict[str, Any]) -> str:
    return json.dumps({"schema": SCHEMA_VERSION, **payload}, indent=2, default=_json_default) + "\n"


def _to_csv(header: Sequence[str], rows: List[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _describe(run: RunConfig) -> Dict[str, Any]:
    return {
        "lattice": run.kind.value,
        "periods": list(run.periods.as_tuple()),
        "potential": run.source,
        "seed": run.seed,
        "grid": [run.grid.n1, run.grid.n2],
        "merge_tol": run.merge_tol,
    }


def cmd_spectrum(run: RunConfig) -> int:
    """Print the merged spectrum of Δ + λQ and its gaps."""
    with with_status(f"Computing {run.kind.value} spectrum..."):
        table = band_edges(run.kind, run.periods, scaled(run.potential, run.lam), run.grid, run.threads)
    intervals = spectrum(table, run.merge_tol)
    report = gap_report(run.kind, run.lam, intervals)

    if run.format == "csv":
        text = _to_csv(
            ("component", "left", "right"),
            [(i, a, b) for i, (a, b) in enumerate(intervals.intervals)],
        )
    else:
        text = _to_json({
            "command": "spectrum",
            **_describe(run),
            "lambda": run.lam,
            "components": report.components,
            "intervals": [list(i) for i in intervals.intervals],
            "gaps": [
                {"left": g.left, "right": g.right, "width": g.width, "nearest_exceptional": g.nearest_exceptional}
                for g in report.gaps
            ],
        })
    _emit(text, run.output)
    return EXIT_OK


def cmd_bands(run: RunConfig, samples_path: Optional[str] = None) -> int:
    """Print per-band edges and optionally dump the grid samples."""
    potential = scaled(run.potential, run.lam)
    with with_status(f"Computing {run.periods.size(run.kind)} bands..."):
        table = band_edges(run.kind, run.periods, potential, run.grid, run.threads)

    if run.format == "csv":
        text = _to_csv(
            ("k", "emin", "emax", "argmin_theta1", "argmin_theta2", "argmax_theta1", "argmax_theta2"),
            [(b.index, b.emin, b.emax, *b.argmin, *b.argmax) for b in table.bands],
        )
    else:
        text = _to_json({
            "command": "bands",
            **_describe(run),
            "lambda": run.lam,
            "bands": [
                {"k": b.index, "emin": b.emin, "emax": b.emax, "argmin": list(b.argmin), "argmax": list(b.argmax)}
                for b in table.bands
            ],
        })
    _emit(text, run.output)

    if samples_path:
        size = table.samples.shape[1]
        header = ["theta1", "theta2"] + [f"E{k + 1}" for k in range(size)]
        rows = np.column_stack([table.thetas, table.samples]).tolist()
        with open(samples_path, "w", encoding="utf-8", newline="") as f:
            f.write(_to_csv(header, rows))
        logger.info("Wrote %d samples to %s", len(rows), samples_path)
    return EXIT_OK


def _lambdas(lo: float, hi: float, steps: int, geometric: bool) -> List[float]:
    if steps < 1:
        raise ParameterRangeError("steps", steps, ">= 1")
    if not 0 <= lo <= hi:
        raise ParameterRangeError("lambda range", (lo, hi), "0 <= lambda-min <= lambda-max")
    if geometric:
        if lo <= 0:
            raise ParameterRangeError("lambda-min", lo, "> 0 with --log")
        return np.geomspace(lo, hi, steps).tolist()
    return np.linspace(lo, hi, steps).tolist()


def cmd_gap_scan(run: RunConfig, lambdas: Sequence[float], energies: Optional[Sequence[float]] = None) -> int:
    """Track the gaps at chosen energies over a coupling range."""
    energies = list(energies) if energies else list(run.kind.exceptional_energies)
    with with_status(f"Scanning {len(lambdas)} couplings..."):
        reports = gap_scan(
            run.kind, run.periods, run.potential, lambdas, run.grid, run.merge_tol, run.threads
        )

    rows = []
    for report in reports:
        if not energies:
            rows.append({"lambda": report.lam, "components": report.components,
                         "energy": None, "gap_left": None, "gap_right": None, "width": None})
        for energy in energies:
            gap = track_gap(report.intervals, energy)
            rows.append({
                "lambda": report.lam,
                "components": report.components,
                "energy": energy,
                "gap_left": None if gap is None else gap[0],
                "gap_right": None if gap is None else gap[1],
                "width": None if gap is None else gap[1] - gap[0],
            })

    exponents: Dict[str, Optional[float]] = {}
    for energy in energies:
        points = [(r["lambda"], r["width"]) for r in rows
                  if r["energy"] == energy and r["width"] and r["lambda"] > 0]
        exponents[f"{energy:g}"] = (
            scaling_exponent(*zip(*points)) if len(points) >= 2 else None
        )

    if run.format == "csv":
        columns = ("lambda", "components", "energy", "gap_left", "gap_right", "width")
        text = _to_csv(columns, [["" if r[c] is None else r[c] for c in columns] for r in rows])
        for energy, value in exponents.items():
            text += f"# exponent,{energy},{'' if value is None else value}\n"
    else:
        text = _to_json({
            "command": "gap-scan",
            **_describe(run),
            "rows": rows,
            "exponents": exponents,
        })
    _emit(text, run.output)
    return EXIT_OK


def _parse_overrides(entries: Sequence[str], seed: int = 0) -> Dict[str, PeriodicPotential]:
    overrides = {}
    for entry in entries:
        name, sep, source = entry.partition("=")
        if not sep or not source:
            raise PotentialError(f"expected NAME=SRC, got '{entry}'", field="builtin-override")
        original = builtin(name)
        overrides[name] = from_source(original.kind, original.periods, source, seed=seed)
    return overrides


def _print_report_table(results) -> None:
    table = Table(title="Verification", show_lines=False)
    table.add_column("check")
    table.add_column("status")
    colours = {"pass": "green", "fail": "red", "error": "yellow"}
    for result in results:
        table.add_row(result.check_id, f"[{colours[result.status]}]{result.status}[/{colours[result.status]}]")
    stderr_console.print(table)


def cmd_verify(
    suite: str,
    overrides: Dict[str, PeriodicPotential],
    seed: int,
    output: Optional[str],
    threads: Optional[int],
    verbose: bool = False,
) -> int:
    """Run a suite; exit 0 iff every check passes."""
    with with_status(f"Running suite '{suite}'..."):
        results = run_suite(suite, overrides=overrides, threads=threads, seed=seed)
    passed = all(r.passed for r in results)
    if verbose:
        _print_report_table(results)
    failed = [r.check_id for r in results if not r.passed]
    if failed:
        stderr_console.print(f"[red]✗[/red] {len(failed)} of {len(results)} checks failed: {', '.join(failed)}")
    else:
        stderr_console.print(f"[green]✓[/green] {len(results)} checks passed")

    _emit(_to_json({
        "command": "verify",
        "suite": suite,
        "seed": seed,
        "overrides": sorted(overrides),
        "passed": passed,
        "checks": [r.to_dict() for r in results],
    }), output)
    return EXIT_OK if passed else EXIT_FAILURE


def cmd_config(action: str) -> int:
    """show prints the merged settings, init writes defaults, path prints the location."""
    if action == "init":
        path = create_default_config()
        stderr_console.print(f"[green]✓[/green] Config at [cyan]{path}[/cyan]")
        return EXIT_OK
    if action == "path":
        _emit(f"{get_config_path()}\n", None)
        return EXIT_OK
    _emit(json.dumps(resolve_settings(load_config()), indent=2) + "\n", None)
    return EXIT_OK


def _dispatch(args) -> int:
    if args.command == "config":
        return cmd_config(args.action)

    settings = _settings(args)
    threads = settings["runtime"]["threads"]
    if args.command == "verify":
        return cmd_verify(
            args.suite,
            _parse_overrides(args.builtin_override, args.seed),
            args.seed,
            args.out,
            threads,
            verbose=getattr(args, "verbose", False),
        )

    run = _run_config(args, settings)
    if args.command == "spectrum":
        return cmd_spectrum(run)
    if args.command == "bands":
        return cmd_bands(run, args.samples)
    lambdas = _lambdas(args.lambda_min, args.lambda_max, args.steps, args.log)
    return cmd_gap_scan(run, lambdas, args.energy)


def main(argv: Optional[Sequence[str]] = None) -> None:
    """Main entry point for the lattice-floquet CLI."""
    parser, args = _parse_arguments(argv)

    if args.help:
        print_help()
        sys.exit(EXIT_OK)

    if args.version:
        print_version()
        sys.exit(EXIT_OK)

    if not args.command:
        stderr_console.print(HELP_TEXT)
        sys.exit(EXIT_USAGE)

    configure_logging(getattr(args, "verbose", False))

    try:
        code = _dispatch(args)
    except _USAGE_ERRORS as e:
        stderr_console.print(f"[red]Error:[/red] {describe_error(e)}")
        sys.exit(EXIT_USAGE)
    except LatticeFloquetError as e:
        stderr_console.print(f"[red]Error:[/red] {describe_error(e)}")
        sys.exit(EXIT_FAILURE)
    except json.JSONDecodeError as e:
        stderr_console.print(f"[red]Error loading config:[/red] {e}")
        stderr_console.print(f"Fix or remove [cyan]{get_config_path()}[/cyan].")
        sys.exit(EXIT_FAILURE)
    except OSError as e:
        stderr_console.print(f"[red]Error:[/red] {e}")
        sys.exit(EXIT_FAILURE)

    sys.exit(code)


if __name__ == "__main__":
    main()
