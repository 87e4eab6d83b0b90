"""
Command-line front end.

Subcommands: classify, query, enumerate, reduce, oracle and dfa-dump. Exit codes:
0 on success (query and oracle: a trail was found), 1 when query or oracle find
no trail (or the random harness finds a disagreement), 2 on any error.
"""
import argparse
import logging
import random
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple, Type

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .automata import compile_language, load_automaton
from .classify import CheckMethod, classify, extract_witness
from .config import LOG_LEVELS, get_settings, override_settings
from .enumeration import enumerate_trails
from .errors import TrailRpqError
from .formatting import OutputFormat, dfa_to_dot, format_enumeration, format_gadget, format_query, format_report
from .gadget import build_hardness_gadget, load_edp
from .generators import random_graph
from .graphdb import SolverStats, load_graph
from .regex import parse_regex
from .trailquery import Engine, QueryResult, brute_force_trail, select_engine, solve

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


# =============================================================================
# Command inputs
# =============================================================================
class CommandInput(BaseModel):
    """Flags shared by every subcommand."""

    model_config = ConfigDict(str_strip_whitespace=True, extra="ignore")

    format: OutputFormat = Field(default=OutputFormat.TEXT, description="Output format: 'text' or 'kv'")
    stats: bool = Field(default=False, description="Print solver statistics")


class LanguageInput(CommandInput):
    """A language given either as a regex or as an automaton file."""

    regex: Optional[str] = Field(default=None, description="Regular expression, e.g. (ab)*")
    dfa: Optional[Path] = Field(default=None, description="Automaton file")

    @model_validator(mode="after")
    def check_one_source(self) -> "LanguageInput":
        if (self.regex is None) == (self.dfa is None):
            raise ValueError("give exactly one of --regex and --dfa")
        return self

    def language(self):
        if self.regex is not None:
            return parse_regex(self.regex)
        return load_automaton(self.dfa.read_text(encoding="utf-8"))


class ClassifyInput(LanguageInput):
    method: CheckMethod = Field(default=CheckMethod.ALGEBRA, description="Containment decision procedure")


class DfaDumpInput(LanguageInput):
    annotate: bool = Field(default=False, description="Attach the classification report as graph label")


class QueryInput(CommandInput):
    graph: Path
    regex: str
    source: str = Field(alias="from_node")
    target: str = Field(alias="to_node")
    engine: Engine = Engine.AUTO


class EnumerateInput(QueryInput):
    limit: Optional[int] = Field(default=None, ge=0, description="Maximum number of trails")


class ReduceInput(CommandInput):
    regex: str
    edp: Path


class OracleInput(CommandInput):
    regex: str
    graph: Optional[Path] = None
    source: Optional[str] = Field(default=None, alias="from_node")
    target: Optional[str] = Field(default=None, alias="to_node")
    random: Optional[int] = Field(default=None, ge=1, description="Number of random instances to compare")
    seed: int

    @model_validator(mode="after")
    def check_mode(self) -> "OracleInput":
        if self.random is None and (self.graph is None or self.source is None or self.target is None):
            raise ValueError("oracle needs --graph, --from and --to, or --random N")
        return self


# =============================================================================
# Commands
# =============================================================================
def cmd_classify(params: ClassifyInput) -> int:
    report = classify(params.language(), params.method)
    print(format_report(report, params.format))
    return 0


def cmd_query(params: QueryInput) -> int:
    g = load_graph(params.graph.read_text(encoding="utf-8"))
    result = solve(g, params.source, params.target, params.regex, params.engine)
    print(format_query(g, result, params.format, params.stats))
    return 0 if result.found else 1


def cmd_enumerate(params: EnumerateInput) -> int:
    g = load_graph(params.graph.read_text(encoding="utf-8"))
    dfa = compile_language(params.regex)
    engine = select_engine(dfa, params.engine)
    stats = SolverStats()
    trails = list(enumerate_trails(g, params.source, params.target, dfa, params.limit, params.engine, stats))
    print(format_enumeration(g, engine, trails, params.format, stats if params.stats else None))
    return 0


def cmd_reduce(params: ReduceInput) -> int:
    dfa = compile_language(params.regex)
    witness = extract_witness(dfa)
    edp = load_edp(params.edp.read_text(encoding="utf-8"))
    print(format_gadget(build_hardness_gadget(dfa, witness, edp)))
    return 0


def _random_harness(params: OracleInput) -> int:
    """Compare the dispatching solver with brute force on random graphs."""
    rng = random.Random(params.seed)
    dfa = compile_language(params.regex)
    alphabet = dfa.alphabet or ("a",)
    disagreements = 0
    for i in range(params.random):
        g = random_graph(rng, rng.randint(2, 10), rng.randint(1, 14), alphabet)
        s, t = rng.randrange(g.num_nodes), rng.randrange(g.num_nodes)
        fast = solve(g, s, t, dfa).trail
        exact = brute_force_trail(g, s, dfa, t)
        if (fast is None) != (exact is None) or (fast is not None and len(fast) != len(exact)):
            disagreements += 1
            logger.warning("instance %d: solver %s, brute force %s", i, fast, exact)
    print(f"instances={params.random}\ndisagreements={disagreements}")
    return 0 if disagreements == 0 else 1


def cmd_oracle(params: OracleInput) -> int:
    if params.random is not None:
        return _random_harness(params)
    g = load_graph(params.graph.read_text(encoding="utf-8"))
    stats = SolverStats()
    trail = brute_force_trail(g, params.source, compile_language(params.regex), params.target, stats=stats)
    result = QueryResult(found=trail is not None, trail=trail, engine=Engine.BRUTE, stats=stats)
    print(format_query(g, result, params.format, params.stats))
    return 0 if result.found else 1


def cmd_dfa_dump(params: DfaDumpInput) -> int:
    language = params.language()
    report = classify(language) if params.annotate else None
    print(dfa_to_dot(compile_language(language), report))
    return 0


COMMANDS: Dict[str, Tuple[Type[CommandInput], Callable[..., int]]] = {
    "classify": (ClassifyInput, cmd_classify),
    "query": (QueryInput, cmd_query),
    "enumerate": (EnumerateInput, cmd_enumerate),
    "reduce": (ReduceInput, cmd_reduce),
    "oracle": (OracleInput, cmd_oracle),
    "dfa-dump": (DfaDumpInput, cmd_dfa_dump),
}


# =============================================================================
# Parser
# =============================================================================
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.TEXT.value)
    common.add_argument("--seed", type=int, default=None, help="Seed of randomized generation")
    common.add_argument("--jobs", type=int, default=None, help="Worker processes for classification checks")
    common.add_argument("--state-cap", type=int, default=None, help="Override TRAILRPQ_STATE_CAP")
    common.add_argument("--log-level", choices=LOG_LEVELS, default=None)
    common.add_argument("--stats", action="store_true", help="Print solver statistics")

    parser = argparse.ArgumentParser(prog="trailrpq", description="Regular trail queries: classification, "
                                     "evaluation, enumeration and hardness reductions.")
    sub = parser.add_subparsers(dest="command", required=True)

    def language_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--regex")
        p.add_argument("--dfa", help="Automaton file (lines `initial q`, `final q ...`, `p a q`)")

    def query_flags(p: argparse.ArgumentParser, required: bool = True) -> None:
        p.add_argument("--graph", required=required, help="Graph file (lines `source label target`)")
        p.add_argument("--regex", required=True)
        p.add_argument("--from", dest="from_node", required=required)
        p.add_argument("--to", dest="to_node", required=required)

    p = sub.add_parser("classify", parents=[common], help="Classify a language")
    language_flags(p)
    p.add_argument("--method", choices=[m.value for m in CheckMethod], default=CheckMethod.ALGEBRA.value)

    p = sub.add_parser("query", parents=[common], help="Shortest matching trail")
    query_flags(p)
    p.add_argument("--engine", choices=[e.value for e in Engine], default=Engine.AUTO.value)

    p = sub.add_parser("enumerate", parents=[common], help="All matching trails, shortest first")
    query_flags(p)
    p.add_argument("--engine", choices=[e.value for e in Engine], default=Engine.AUTO.value)
    p.add_argument("--limit", type=int, default=None)

    p = sub.add_parser("reduce", parents=[common], help="Hardness gadget for an edge-disjoint paths instance")
    p.add_argument("--regex", required=True)
    p.add_argument("--edp", required=True, help="Instance file: `pairs s1 t1 s2 t2` header and edge lines")

    p = sub.add_parser("oracle", parents=[common], help="Brute-force trail search")
    query_flags(p, required=False)
    p.add_argument("--random", type=int, default=None, help="Compare solver and brute force on N random graphs")

    p = sub.add_parser("dfa-dump", parents=[common], help="Minimal DFA as DOT source")
    language_flags(p)
    p.add_argument("--annotate", action="store_true")
    return parser


def _configure(args: argparse.Namespace) -> None:
    changes = {}
    if args.state_cap is not None:
        changes["state_cap"] = args.state_cap
    if args.jobs is not None:
        changes["jobs"] = args.jobs
    if args.log_level is not None:
        changes["log_level"] = args.log_level
    if args.seed is not None:
        changes["seed"] = args.seed
    settings = override_settings(**changes) if changes else get_settings()
    logging.basicConfig(level=settings.log_level, format=LOG_FORMAT, stream=sys.stderr)
    logging.getLogger("trailrpq").setLevel(settings.log_level)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    model, handler = COMMANDS[args.command]
    try:
        _configure(args)
        values = {k: v for k, v in vars(args).items() if v is not None}
        values.setdefault("seed", get_settings().seed)
        params = model(**values)
        return handler(params)
    except (TrailRpqError, ValidationError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return 2