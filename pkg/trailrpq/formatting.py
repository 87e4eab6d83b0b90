"""
Rendering of classification reports, trails and query results.
"""
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence

from .automata import MinimalDfa, to_dot
from .classify import ClassificationReport
from .gadget import Gadget
from .graphdb import LabeledGraph, SolverStats, Trail
from .trailquery import Engine, QueryResult

REPORT_FLAGS = ("finite", "downward_closed", "aperiodic", "sptract", "ttract")
WITNESS_FIELDS = ("q", "a", "w_ell", "w_m", "w_r", "w_1", "w_2")


class OutputFormat(str, Enum):
    TEXT = "text"
    KV = "kv"


def _value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Enum):
        return v.value
    return str(v)


def report_items(report: ClassificationReport) -> Dict[str, str]:
    """Report fields as strings, in output order."""
    items = {name: _value(getattr(report, name)) for name in REPORT_FLAGS}
    items["trichotomy"] = report.trichotomy.value
    items["N"] = str(report.N)
    items["K"] = str(report.K)
    items["memoryless"] = _value(report.memoryless)
    if report.sore is not None:
        items["sore"] = _value(report.sore)
    if report.star_single_occurrence is not None:
        items["star_single_occurrence"] = _value(report.star_single_occurrence)
    if report.witness is not None:
        for name in WITNESS_FIELDS:
            items[f"witness.{name}"] = str(getattr(report.witness, name))
    return items


def _format_report_text(report: ClassificationReport) -> str:
    output = [f"# Classification: {report.trichotomy.value}\n"]
    output.append(f"**Minimal DFA:** N={report.N}, K={report.K}")
    for name, value in report_items(report).items():
        if name in ("trichotomy", "N", "K") or name.startswith("witness."):
            continue
        output.append(f"- {name}: {value}")
    if report.witness is not None:
        output.append("\n## Hardness witness")
        for name in WITNESS_FIELDS:
            output.append(f"- {name}: {getattr(report.witness, name)!r}")
    return "\n".join(output)


def format_report(report: ClassificationReport, fmt: OutputFormat = OutputFormat.TEXT) -> str:
    if fmt is OutputFormat.KV:
        return "\n".join(f"{k}={v}" for k, v in report_items(report).items())
    return _format_report_text(report)


def format_trail(g: LabeledGraph, trail: Trail) -> str:
    """Header `length=<n> word=<w>`, then one `source label target` line per edge."""
    lines = [f"length={len(trail)} word={trail.word}"]
    for e in trail.edges:
        edge = g.edges[e]
        lines.append(f"{g.name(edge.source)} {edge.label} {g.name(edge.target)}")
    return "\n".join(lines)


def format_trails(g: LabeledGraph, trails: Iterable[Trail]) -> str:
    return "\n\n".join(format_trail(g, trail) for trail in trails)


def format_stats(stats: SolverStats) -> List[str]:
    return [f"stat.{k}={v}" for k, v in stats.as_dict().items()]


def format_engine(engine: Engine, fmt: OutputFormat = OutputFormat.TEXT) -> str:
    return f"engine={engine.value}" if fmt is OutputFormat.KV else f"engine: {engine.value}"


def format_query(g: LabeledGraph, result: QueryResult, fmt: OutputFormat = OutputFormat.TEXT,
                 stats: bool = False) -> str:
    """Engine line, then the trail block or `no trail`, then optional statistics."""
    lines = [format_engine(result.engine, fmt)]
    lines.append(format_trail(g, result.trail) if result.found else "no trail")
    if stats:
        lines.extend(format_stats(result.stats))
    return "\n".join(lines)


def format_enumeration(g: LabeledGraph, engine: Engine, trails: Sequence[Trail],
                       fmt: OutputFormat = OutputFormat.TEXT, stats: Optional[SolverStats] = None) -> str:
    """Engine line, then the trail blocks or `no trail`; the first block matches `query` output."""
    lines = [format_engine(engine, fmt), format_trails(g, trails) if trails else "no trail"]
    if stats is not None:
        lines.extend(format_stats(stats))
    return "\n".join(lines)


def format_gadget(gadget: Gadget) -> str:
    """Graph file of the gadget, ending with a comment line that names its endpoints.

    The comment keeps the output loadable as a graph file.
    """
    lines = [f"{source} {label} {target}" for source, label, target in gadget.graph.triples()]
    lines.append(f"# endpoints {gadget.source} {gadget.target}")
    return "\n".join(lines)


def dfa_to_dot(dfa: MinimalDfa, report: Optional[ClassificationReport] = None) -> str:
    """DOT source of the DFA, annotated with the report's flags when given."""
    annotation = None
    if report is not None:
        annotation = " ".join(f"{k}={v}" for k, v in report_items(report).items() if not k.startswith("witness."))
    return to_dot(dfa, annotation)
