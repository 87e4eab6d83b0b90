"""
Tests for report, trail and query rendering.
"""
from .automata import compile_language
from .classify import classify, extract_witness
from .formatting import (
    OutputFormat,
    dfa_to_dot,
    format_enumeration,
    format_gadget,
    format_query,
    format_report,
    format_stats,
    format_trail,
    format_trails,
    report_items,
)
from .gadget import build_hardness_gadget, load_edp
from .graphdb import SolverStats, load_graph, trail_check
from .trailquery import Engine, QueryResult, solve


def test_report_items_order():
    items = report_items(classify("(ab)*"))
    assert list(items) == [
        "finite",
        "downward_closed",
        "aperiodic",
        "sptract",
        "ttract",
        "trichotomy",
        "N",
        "K",
        "memoryless",
        "sore",
        "star_single_occurrence",
    ]
    assert items["ttract"] == "true"
    assert items["trichotomy"] == "NL_COMPLETE"
    assert (items["N"], items["K"]) == ("3", "9")


def test_report_kv():
    lines = format_report(classify("a*ba*"), OutputFormat.KV).splitlines()
    assert "ttract=false" in lines
    assert "trichotomy=NP_COMPLETE" in lines
    assert "witness.w_m=b" in lines
    assert "witness.w_r=" in lines
    assert all("=" in line for line in lines)


def test_report_text():
    text = format_report(classify("ab"))
    assert text.startswith("# Classification: AC0")
    assert "- finite: true" in text
    assert "Hardness witness" not in text
    assert "## Hardness witness" in format_report(classify("a*ba*"))


def test_trail_block(sample_graphs):
    g = sample_graphs["g1"]
    trail = trail_check(g, [0, 3], anchor="s")
    assert format_trail(g, trail) == "length=2 word=ab\ns a v1\nv1 b t"
    empty = trail_check(g, [], anchor="s")
    assert format_trail(g, empty) == "length=0 word="


def test_trail_blocks_are_separated_by_blank_lines(sample_graphs):
    g = sample_graphs["g1"]
    trails = [trail_check(g, [0, 3], anchor="s"), trail_check(g, [0, 1, 2, 3], anchor="s")]
    blocks = format_trails(g, trails).split("\n\n")
    assert [block.splitlines()[0] for block in blocks] == ["length=2 word=ab", "length=4 word=abab"]
    assert format_trails(g, []) == ""


def test_query_output(sample_graphs):
    g = sample_graphs["g1"]
    result = solve(g, "s", "t", "(ab)*")
    text = format_query(g, result)
    assert text.splitlines()[:2] == ["engine: summary", "length=2 word=ab"]
    kv = format_query(g, result, OutputFormat.KV, stats=True)
    assert kv.splitlines()[0] == "engine=summary"
    assert any(line.startswith("stat.expanded=") for line in kv.splitlines())


def test_query_output_without_trail():
    g = load_graph("s a t\n")
    result = QueryResult(found=False, trail=None, engine=Engine.BRUTE)
    assert format_query(g, result, OutputFormat.KV) == "engine=brute\nno trail"


def test_enumeration_output(sample_graphs):
    g = sample_graphs["g1"]
    trails = [trail_check(g, [0, 3], anchor="s")]
    assert format_enumeration(g, Engine.SUMMARY, trails) == "engine: summary\nlength=2 word=ab\ns a v1\nv1 b t"
    kv = format_enumeration(g, Engine.BRUTE, [], OutputFormat.KV, SolverStats(expanded=2))
    assert kv.splitlines()[:3] == ["engine=brute", "no trail", "stat.expanded=2"]


def test_stats_lines():
    assert format_stats(SolverStats(expanded=3)) == ["stat.expanded=3", "stat.summaries=0", "stat.completions=0"]


def test_gadget_file():
    dfa = compile_language("a*ba*")
    edp = load_edp("pairs s1 t1 s2 t2\n")
    lines = format_gadget(build_hardness_gadget(dfa, extract_witness(dfa), edp)).splitlines()
    assert lines == ["t1 b s2", "# endpoints s1 t2"]
    assert load_graph("\n".join(lines)).triples() == [("t1", "b", "s2")]


def test_dot_annotation():
    dfa = compile_language("(ab)*")
    source = dfa_to_dot(dfa, classify(dfa))
    assert "ttract=true" in source
    assert "doublecircle" in source
    assert "ttract" not in dfa_to_dot(dfa)
