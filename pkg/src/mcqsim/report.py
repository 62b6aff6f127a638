"""Execution statistics derived from a trace, and their text/JSON/CSV forms."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field, fields

from .config import ArchitectureConfig, PhysicalParams
from .engine import ExecutionTrace


def coherence(t: float, t1: float, t2: float) -> float:
    """Qubit coherence after ``t`` ns given relaxation ``t1`` and dephasing ``t2``."""
    return math.exp(-t / t1) * (0.5 * math.exp(-t / t2) + 0.5)


@dataclass
class ExecutionReport:
    executed_gates: int
    intercore_comms: int
    intercore_traffic: int
    comm_map: list
    throughput_avg_bps: float
    throughput_peak_bps: float
    util_min: int
    util_avg: float
    util_max: int
    t_fetch_ns: float
    t_decode_ns: float
    t_dispatch_ns: float
    t_epr_gen_ns: float
    t_epr_dist_ns: float
    t_pre_ns: float
    t_classical_ns: float
    t_post_ns: float
    t_gate_ns: float
    t_ack_ns: float
    t_overlap_ns: float
    t_comm_ns: float
    t_comp_ns: float
    t_control_ns: float
    t_total_ns: float
    coherence: float | None = None
    num_bundles: int = 0
    t_classical_comm_ns: float = 0.0
    classical_share: float = 0.0
    qubit_ops: list | None = field(default=None)
    qubit_teleports: list | None = field(default=None)


# scalar fields, in order, for CSV output
CSV_FIELDS = tuple(f.name for f in fields(ExecutionReport)
                   if f.name not in ("comm_map", "qubit_ops", "qubit_teleports"))


def summarize(trace: ExecutionTrace, arch: ArchitectureConfig, params: PhysicalParams,
              detailed: bool = False) -> ExecutionReport:
    tot = trace.totals
    comm = math.fsum((tot.dispatch, tot.epr_gen, tot.epr_dist, tot.pre_proc, tot.classical_transfer,
                      tot.post_proc, tot.ack)) - tot.overlap
    comp = tot.gate_exec
    control = tot.fetch + tot.decode
    total = trace.clock
    hidden = math.fsum(r.breakdown.hidden_dispatch for r in trace.records)
    classical = tot.dispatch - hidden + tot.classical_transfer + tot.ack

    bits = sum(e.bits for e in trace.events)
    avg = bits / (total * 1e-9) if total > 0 else 0.0
    peak = 0.0
    for r in trace.records:
        dur = r.end - r.start
        if dur > 0:
            peak = max(peak, r.classical_bits / (dur * 1e-9))

    coh = None
    if params.coherence_enabled:
        coh = coherence(total, params.t1, params.t2)

    return ExecutionReport(
        executed_gates=trace.executed_gates,
        intercore_comms=int(trace.comm_map.sum()),
        intercore_traffic=trace.qubit_moves,
        comm_map=trace.comm_map.tolist(),
        throughput_avg_bps=avg,
        throughput_peak_bps=peak,
        util_min=int(trace.util_min),
        util_avg=trace.util_sum / trace.util_samples if trace.util_samples else 0.0,
        util_max=int(trace.util_max),
        t_fetch_ns=tot.fetch,
        t_decode_ns=tot.decode,
        t_dispatch_ns=tot.dispatch,
        t_epr_gen_ns=tot.epr_gen,
        t_epr_dist_ns=tot.epr_dist,
        t_pre_ns=tot.pre_proc,
        t_classical_ns=tot.classical_transfer,
        t_post_ns=tot.post_proc,
        t_gate_ns=tot.gate_exec,
        t_ack_ns=tot.ack,
        t_overlap_ns=tot.overlap,
        t_comm_ns=comm,
        t_comp_ns=comp,
        t_control_ns=control,
        t_total_ns=total,
        coherence=coh,
        num_bundles=trace.num_bundles,
        t_classical_comm_ns=classical,
        classical_share=classical / total if total > 0 else 0.0,
        qubit_ops=trace.qubit_ops.tolist() if detailed else None,
        qubit_teleports=trace.qubit_teleports.tolist() if detailed else None,
    )


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def csv_header() -> str:
    return ",".join(CSV_FIELDS)


def _text(r: ExecutionReport) -> str:
    out = io.StringIO()
    w = out.write
    w(f"Executed gates        : {r.executed_gates}\n")
    w(f"Inter-core comms      : {r.intercore_comms}\n")
    w(f"Inter-core traffic    : {r.intercore_traffic} qubits\n")
    w("Inter-core comm-map   :\n")
    for row in r.comm_map:
        w("  " + " ".join(f"{v:4d}" for v in row) + "\n")
    w(f"Throughput            : avg {r.throughput_avg_bps:.6g} bps, peak {r.throughput_peak_bps:.6g} bps\n")
    w(f"Core utilization      : avg {r.util_avg:.3f}, min {r.util_min}, max {r.util_max} qubits\n")
    w(f"Communication time    : {r.t_comm_ns:.3f} ns\n")
    w(f"  EPR generation      : {r.t_epr_gen_ns:.3f} ns\n")
    w(f"  EPR distribution    : {r.t_epr_dist_ns:.3f} ns\n")
    w(f"  Pre-processing      : {r.t_pre_ns:.3f} ns\n")
    w(f"  Classical transfer  : {r.t_classical_ns:.3f} ns\n")
    w(f"  Post-processing     : {r.t_post_ns:.3f} ns\n")
    w(f"  Dispatch            : {r.t_dispatch_ns:.3f} ns\n")
    w(f"  Ack                 : {r.t_ack_ns:.3f} ns\n")
    w(f"  Overlap (hidden)    : -{r.t_overlap_ns:.3f} ns\n")
    w(f"Computation time      : {r.t_comp_ns:.3f} ns\n")
    w(f"Control time          : {r.t_control_ns:.3f} ns (fetch {r.t_fetch_ns:.3f}, decode {r.t_decode_ns:.3f})\n")
    w(f"Execution time        : {r.t_total_ns:.3f} ns (communication + computation + control)\n")
    w(f"Classical share       : {100 * r.classical_share:.2f} % ({r.t_classical_comm_ns:.3f} ns)\n")
    w(f"Bundles               : {r.num_bundles}\n")
    if r.coherence is None:
        w("Coherence             : n/a (t1/t2 not set)\n")
    else:
        w(f"Coherence             : {r.coherence:.6f}\n")
    if r.qubit_ops is not None:
        w("Per-qubit ops/teleports:\n")
        for q, (o, t) in enumerate(zip(r.qubit_ops, r.qubit_teleports)):
            w(f"  q{q}: {o} ops, {t} teleports\n")
    return out.getvalue()


def emit(report: ExecutionReport, format: str = "text", header: bool = True) -> str:
    if format == "text":
        return _text(report)
    if format == "json":
        d = asdict(report)
        if report.qubit_ops is None:
            d.pop("qubit_ops")
            d.pop("qubit_teleports")
        return json.dumps(d, indent=2) + "\n"
    if format == "csv_row":
        out = io.StringIO()
        wr = csv.writer(out, lineterminator="\n")
        if header:
            wr.writerow(CSV_FIELDS)
        wr.writerow([_fmt(getattr(report, k)) for k in CSV_FIELDS])
        return out.getvalue()
    raise ValueError(f"unknown report format {format!r}")


def report_from_json(text: str) -> ExecutionReport:
    return ExecutionReport(**json.loads(text))
