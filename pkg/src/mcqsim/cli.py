"""Command-line front end: ``run``, ``gen`` and ``sweep``.

Exit codes: 0 ok, 2 usage, 3 missing file, 4 parse/config error, 5 model
error (capacity, placement, missing gate delay), 6 sweep with failed points.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .circuit import Circuit, CircuitError, load_circuit, random_circuit, render_circuit
from .config import (ARCH_KEYS, PARAM_KEYS, ArchitectureConfig, ConfigError, PhysicalParams,
                     apply_overrides, load_architecture, load_parameters)
from .engine import dump_trace, simulate
from .placement import PlacementError, random_map, read_mapping
from .report import CSV_FIELDS, emit, summarize

EXIT_USAGE, EXIT_NOFILE, EXIT_PARSE, EXIT_MODEL, EXIT_PARTIAL = 2, 3, 4, 5, 6


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _fail(exc: Exception) -> CliError:
    if isinstance(exc, CliError):
        return exc
    if isinstance(exc, FileNotFoundError):
        return CliError(f"file not found: {exc.filename}", EXIT_NOFILE)
    if isinstance(exc, (CircuitError, ConfigError)):
        return CliError(f"parse error: {exc}", EXIT_PARSE)
    if isinstance(exc, PlacementError):
        return CliError(f"capacity error: {exc}", EXIT_MODEL)
    return CliError(f"error: {exc}", EXIT_MODEL)


def parse_assignment(text: str) -> tuple[str, str]:
    key, sep, value = text.partition("=")
    if not sep or not key.strip():
        raise argparse.ArgumentTypeError(f"expected KEY=VALUE, got {text!r}")
    return key.strip(), value.strip()


def parse_arity_dist(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad arity distribution {text!r}") from None


def _placement(mapping, circuit: Circuit, arch: ArchitectureConfig, seed: int):
    if mapping in (None, "vanilla"):
        return None
    if mapping == "random":
        return random_map(circuit.num_qubits, arch, seed)
    return read_mapping(mapping, arch)


def _load_configs(arch_path, params_path, overrides):
    arch = load_architecture(arch_path)
    params = load_parameters(params_path) if params_path else PhysicalParams()
    return apply_overrides(arch, params, overrides)


# ---- run --------------------------------------------------------------------

def cmd_run(args) -> int:
    circuit = load_circuit(args.circuit)
    arch, params = _load_configs(args.arch, args.params, args.set)
    try:
        placement = _placement(args.mapping, circuit, arch, args.seed)
        trace = simulate(circuit, arch, params, placement)
    except ConfigError as exc:
        # config parsed fine but cannot serve this circuit
        raise CliError(f"model error: {exc}", EXIT_MODEL) from None
    report = summarize(trace, arch, params, detailed=args.detailed)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write(dump_trace(trace))
    fmt = "csv_row" if args.format == "csv" else args.format
    sys.stdout.write(emit(report, fmt))
    return 0


# ---- gen --------------------------------------------------------------------

def cmd_gen(args) -> int:
    try:
        c = random_circuit(args.qubits, args.gates, args.arity_dist, args.seed)
    except ValueError as exc:
        raise CliError(f"infeasible generator settings: {exc}", EXIT_USAGE) from None
    text = render_circuit(c)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


# ---- sweep ------------------------------------------------------------------

@dataclass
class SweepSpec:
    """A parameter grid over one base configuration.

    ``vary`` holds ``(keys, values)`` pairs; a joined axis such as
    ``mesh_x/mesh_y`` moves several keys together, each value being a tuple.
    Rows come out in grid order (first axis slowest), repetitions innermost.
    """

    arch: str
    params: str | None = None
    circuit: str | None = None
    generate: dict | None = None
    mapping: str | None = None
    vary: list = field(default_factory=list)
    overrides: list = field(default_factory=list)
    repetitions: int = 1
    seed: int = 0

    def __post_init__(self):
        if (self.circuit is None) == (self.generate is None):
            raise CliError("sweep needs exactly one of a circuit file or generator settings", EXIT_USAGE)
        if self.repetitions < 1:
            raise CliError("repetitions must be >= 1", EXIT_USAGE)
        for keys, values in self.vary:
            for k in keys:
                if k not in ARCH_KEYS and k not in PARAM_KEYS:
                    raise CliError(f"invalid sweep key {k!r}", EXIT_PARSE)
            for v in values:
                if len(v) != len(keys):
                    raise CliError(f"value {'/'.join(v)!r} does not match keys {'/'.join(keys)!r}",
                                   EXIT_PARSE)

    @property
    def columns(self) -> list[str]:
        return [k for keys, _ in self.vary for k in keys]

    def points(self):
        """Grid points as lists of ``(key, value)`` pairs."""
        axes = [[list(zip(keys, v)) for v in values] for keys, values in self.vary]
        for combo in itertools.product(*axes):
            yield [kv for part in combo for kv in part]


def parse_vary(text: str):
    key, value = parse_assignment(text)
    keys = tuple(k.strip() for k in key.split("/"))
    values = []
    for item in value.split(","):
        parts = tuple(s.strip() for s in item.split("/"))
        values.append(parts)
    return keys, values


def _spec_from_file(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    vary = []
    for key, values in raw.get("vary", {}).items():
        keys = tuple(key.split("/"))
        vals = [tuple(str(x) for x in (v if isinstance(v, list) else str(v).split("/"))) for v in values]
        vary.append((keys, vals))
    raw["vary"] = vary
    raw["overrides"] = [(k, str(v)) for k, v in raw.pop("set", {}).items()]
    return raw


def _sweep_spec(args) -> SweepSpec:
    base = _spec_from_file(args.spec) if args.spec else {}
    for name in ("arch", "params", "circuit", "mapping", "repetitions", "seed"):
        value = getattr(args, name)
        if value is not None:
            base[name] = value
    if args.vary:
        base["vary"] = args.vary
    if args.set:
        base["overrides"] = base.get("overrides", []) + args.set
    if args.qubits is not None or args.gates is not None or args.arity_dist is not None:
        gen = dict(base.get("generate") or {})
        if args.qubits is not None:
            gen["qubits"] = args.qubits
        if args.gates is not None:
            gen["gates"] = args.gates
        if args.arity_dist is not None:
            gen["arity_dist"] = args.arity_dist
        base["generate"] = gen
    if "arch" not in base:
        raise CliError("sweep needs --arch (or 'arch' in the spec file)", EXIT_USAGE)
    return SweepSpec(**base)


def _run_point(job):
    """Worker: one grid point, one repetition. Returns (report fields, error)."""
    circuit, arch, params, overrides, mapping, seed = job
    try:
        arch, params = apply_overrides(arch, params, overrides)
        placement = _placement(mapping, circuit, arch, seed)
        report = summarize(simulate(circuit, arch, params, placement), arch, params)
    except (ValueError, KeyError, OSError) as exc:
        return None, f"{type(exc).__name__}: {exc}"
    return report, ""


def run_sweep(spec: SweepSpec, workers: int = 1) -> tuple[str, int]:
    """Evaluate the grid; returns the CSV text and the number of failed points."""
    arch, params = _load_configs(spec.arch, spec.params, spec.overrides)
    circuits = {}

    def circuit_for(seed):
        if spec.circuit is not None:
            if None not in circuits:
                circuits[None] = load_circuit(spec.circuit)
            return circuits[None]
        if seed not in circuits:
            g = spec.generate
            try:
                circuits[seed] = random_circuit(int(g["qubits"]), int(g["gates"]), g["arity_dist"], seed)
            except (KeyError, ValueError) as exc:
                raise CliError(f"infeasible generator settings: {exc}", EXIT_USAGE) from None
        return circuits[seed]

    points = list(spec.points())
    jobs, labels = [], []
    for point in points:
        for rep in range(spec.repetitions):
            seed = spec.seed + rep
            jobs.append((circuit_for(seed), arch, params, point, spec.mapping, seed))
            labels.append((point, rep, seed))

    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_point, jobs))
    else:
        results = [_run_point(j) for j in jobs]

    failed = sum(1 for _, err in results if err)
    header = list(spec.columns)
    if spec.repetitions > 1:
        header += ["repetition", "seed"]
    header += list(CSV_FIELDS)
    # error column only when something failed, so a clean sweep matches `run --format csv`
    if failed:
        header.append("error")

    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for (point, rep, seed), (report, err) in zip(labels, results):
        row = [v for _, v in point]
        if spec.repetitions > 1:
            row += [rep, seed]
        if report is None:
            row += [""] * len(CSV_FIELDS)
        else:
            row += [_cell(getattr(report, k)) for k in CSV_FIELDS]
        if failed:
            row.append(err)
        w.writerow(row)
    return out.getvalue(), failed


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def cmd_sweep(args) -> int:
    spec = _sweep_spec(args)
    text, failed = run_sweep(spec, workers=args.workers)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    if failed:
        print(f"{failed} sweep point(s) failed; see the error column", file=sys.stderr)
        return EXIT_PARTIAL
    return 0


# ---- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mcqsim", description="Multi-core quantum architecture simulator")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="simulate one circuit")
    run.add_argument("--circuit", required=True)
    run.add_argument("--arch", required=True)
    run.add_argument("--params", required=True)
    run.add_argument("--mapping", default=None, help="mapping file, 'vanilla' (default) or 'random'")
    run.add_argument("--seed", type=int, default=0, help="seed for --mapping random")
    run.add_argument("--detailed", action="store_true", help="per-qubit operation and teleport counts")
    run.add_argument("--format", choices=("text", "json", "csv"), default="text")
    run.add_argument("--trace", default=None, help="write a per-bundle timing trace here")
    run.add_argument("--set", type=parse_assignment, action="append", default=[], metavar="KEY=VALUE")
    run.set_defaults(func=cmd_run)

    gen = sub.add_parser("gen", help="generate a random circuit")
    gen.add_argument("--qubits", type=int, required=True)
    gen.add_argument("--gates", type=int, required=True)
    gen.add_argument("--arity-dist", type=parse_arity_dist, required=True,
                     help="comma-separated probabilities for arity 1, 2, ...")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("-o", "--output", default=None)
    gen.set_defaults(func=cmd_gen)

    sw = sub.add_parser("sweep", help="run a parameter grid and write CSV")
    sw.add_argument("--spec", default=None, help="JSON sweep spec; flags override its entries")
    sw.add_argument("--arch", default=None)
    sw.add_argument("--params", default=None)
    sw.add_argument("--circuit", default=None)
    sw.add_argument("--qubits", type=int, default=None)
    sw.add_argument("--gates", type=int, default=None)
    sw.add_argument("--arity-dist", type=parse_arity_dist, default=None)
    sw.add_argument("--mapping", default=None)
    sw.add_argument("--vary", type=parse_vary, action="append", default=[], metavar="KEY=V1,V2",
                    help="axis to sweep; join keys with '/' to move them together")
    sw.add_argument("--set", type=parse_assignment, action="append", default=[], metavar="KEY=VALUE")
    sw.add_argument("--repetitions", type=int, default=None)
    sw.add_argument("--seed", type=int, default=None, help="base seed; repetition i uses seed + i")
    sw.add_argument("--workers", type=int, default=1)
    sw.add_argument("-o", "--output", default=None)
    sw.set_defaults(func=cmd_sweep)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # noqa: BLE001 - mapped to exit codes
        err = _fail(exc)
        print(f"mcqsim: {err}", file=sys.stderr)
        return err.code


if __name__ == "__main__":
    sys.exit(main())
