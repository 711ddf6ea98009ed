"""Command-line front end for graph analysis, route queries, and corpus stats.

Output is deterministic for a fixed invocation: tables mirror the
class/count presentation of the analysis reports, and ``--json``
switches every verb to the machine-readable schema.
"""

from __future__ import annotations

import functools
import json
import os
import sys
from typing import Optional

import click

from . import analysis, corpus
from .graph import (
    PRESET_NAMES,
    PivotGraph,
    build_pivot_graph,
    circulant_signature,
    families_from_json,
    graph_to_dot,
    graph_to_json,
    preset_graph,
)
from .pitch import PitchError, format_key, format_triads

CORPUS_ENV = "MODUGRAPH_CORPUS"

EXIT_USAGE = 2
EXIT_INTERNAL = 3


def _guard(fn):
    """Map user errors to exit 2 and internal breaches to exit 3."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except click.ClickException:
            raise
        except BrokenPipeError:
            sys.exit(0)  # reader went away (e.g. piping into head)
        except (PitchError, corpus.CorpusError, ValueError, KeyError, OSError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_USAGE)
        except Exception as exc:  # pragma: no cover - defensive
            click.echo(f"internal error: {exc!r}", err=True)
            sys.exit(EXIT_INTERNAL)

    return wrapper


def _load_graph(preset: Optional[str], graph_file: Optional[str]) -> PivotGraph:
    if preset and graph_file:
        raise click.UsageError("use either --preset or --graph-file, not both")
    if graph_file:
        with open(graph_file, encoding="utf-8") as fh:
            return build_pivot_graph(families_from_json(json.load(fh)))
    return preset_graph(preset or "combined24")


def _graph_options(fn):
    fn = click.option(
        "--preset",
        type=click.Choice(PRESET_NAMES),
        default=None,
        help="Built-in vertex set (default combined24).",
    )(fn)
    fn = click.option(
        "--graph-file",
        type=click.Path(exists=True, dir_okay=False),
        default=None,
        help="Custom families as JSON instead of a preset.",
    )(fn)
    return fn


def _echo_json(payload) -> None:
    click.echo(json.dumps(payload, indent=2))


def _class_table(title: str, entries: list[dict]) -> None:
    click.echo(title)
    width = max([len(e["representative"]) for e in entries] + [len("Class of Set")])
    click.echo(f"  {'Class of Set'.ljust(width)} | Count")
    click.echo(f"  {'-' * width}-+------")
    for e in entries:
        click.echo(f"  {e['representative'].ljust(width)} | {e['count']}")


@click.group()
@click.version_option(package_name="modugraph")
def main() -> None:
    """Pivot-modulation graphs: exact structure and corpus statistics."""


@main.command()
@_graph_options
@click.option("--json", "as_json", is_flag=True, help="Machine-readable report.")
@_guard
def analyze(preset: Optional[str], graph_file: Optional[str], as_json: bool) -> None:
    """Full structural report: diameter, omega/alpha, classes, automorphisms."""
    graph = _load_graph(preset, graph_file)
    report = analysis.analysis_report(graph)
    signature = circulant_signature(graph)
    report["circulant"] = sorted(signature) if signature is not None else None
    if as_json:
        _echo_json(report)
        return
    click.echo(f"vertices: {report['vertex_count']}   edges: {report['edge_count']}")
    diam = report["diameter"]
    click.echo(f"diameter: {diam if diam is not None else 'unbounded'}")
    click.echo(f"clique number (omega): {report['omega']}")
    click.echo(f"independence number (alpha): {report['alpha']}")
    circ = report["circulant"]
    click.echo(f"circulant connection set: {'{' + ', '.join(map(str, circ)) + '}' if circ else 'none'}")
    _class_table("maximal cliques:", report["clique_classes"])
    _class_table("maximal independent sets:", report["independent_set_classes"])
    click.echo(f"automorphism group order: {report['automorphism']['order']}")


@main.command()
@_graph_options
@click.option("--json", "as_json", is_flag=True)
@_guard
def cliques(preset: Optional[str], graph_file: Optional[str], as_json: bool) -> None:
    """Enumerate maximal cliques, grouped into transposition classes."""
    graph = _load_graph(preset, graph_file)
    found = analysis.maximal_cliques(graph)
    classes = analysis.transposition_classes(found, graph)
    if as_json:
        _echo_json(
            {
                "total": len(found),
                "classes": [{"representative": c.display, "count": c.count} for c in classes],
            }
        )
        return
    _class_table(f"maximal cliques ({len(found)} total):", [
        {"representative": c.display, "count": c.count} for c in classes
    ])


@main.command()
@_graph_options
@click.option("--json", "as_json", is_flag=True)
@_guard
def indepsets(preset: Optional[str], graph_file: Optional[str], as_json: bool) -> None:
    """Enumerate maximal independent sets, grouped into transposition classes."""
    graph = _load_graph(preset, graph_file)
    found = analysis.maximal_independent_sets(graph)
    classes = analysis.transposition_classes(found, graph)
    if as_json:
        _echo_json(
            {
                "total": len(found),
                "classes": [{"representative": c.display, "count": c.count} for c in classes],
            }
        )
        return
    _class_table(f"maximal independent sets ({len(found)} total):", [
        {"representative": c.display, "count": c.count} for c in classes
    ])


@main.command()
@_graph_options
@click.option("--json", "as_json", is_flag=True)
@_guard
def automorphisms(preset: Optional[str], graph_file: Optional[str], as_json: bool) -> None:
    """Automorphism group order and generators (cycle notation)."""
    graph = _load_graph(preset, graph_file)
    group = analysis.automorphism_group(graph)
    names = graph.vertex_names
    generators = [analysis.cycle_notation(g, names) for g in group.generators]
    if as_json:
        _echo_json({"order": group.order, "generators": generators})
        return
    click.echo(f"order: {group.order}")
    for g in generators:
        click.echo(f"  {g}")


@main.command()
@_graph_options
@click.option("--from", "from_key", required=True, help="Starting key, e.g. a:min.")
@click.option("--to", "to_key", required=True, help="Target key, e.g. G:maj.")
@click.option("--json", "as_json", is_flag=True)
@_guard
def pivots(
    preset: Optional[str], graph_file: Optional[str], from_key: str, to_key: str, as_json: bool
) -> None:
    """Pivot triads shared by two keys (empty means direct-only)."""
    graph = _load_graph(preset, graph_file)
    i, j = graph.index_of(from_key), graph.index_of(to_key)
    if i == j:
        raise click.UsageError("modulation requires two distinct keys")
    shared = format_triads(graph.edge_pivots(i, j))
    if as_json:
        _echo_json({"from": from_key, "to": to_key, "pivots": shared})
        return
    if shared:
        click.echo("\n".join(shared))
    else:
        click.echo("(no pivot: only direct modulation possible)")


@main.command()
@_graph_options
@click.option("--from", "from_key", required=True)
@click.option("--to", "to_key", required=True)
@click.option("--steps", type=int, required=True, help="Exact number of modulations.")
@click.option("--no-backtrack", is_flag=True, help="Forbid immediate returns.")
@click.option("--with-pivots", is_flag=True, help="One walk per pivot-triad choice.")
@click.option("--json", "as_json", is_flag=True)
@_guard
def walks(
    preset: Optional[str],
    graph_file: Optional[str],
    from_key: str,
    to_key: str,
    steps: int,
    no_backtrack: bool,
    with_pivots: bool,
    as_json: bool,
) -> None:
    """Enumerate key routes of an exact length between two keys."""
    graph = _load_graph(preset, graph_file)
    start, end = graph.index_of(from_key), graph.index_of(to_key)
    found = analysis.walks(
        graph, start, end, steps, no_backtrack=no_backtrack, with_pivots=with_pivots
    )
    labels = [format_key(f.label) for f in graph.vertices]
    items = []
    for w in found:
        item = {"keys": [labels[v] for v in w.vertices]}
        if w.pivot_choices is not None:
            item["pivots"] = format_triads(w.pivot_choices)
        items.append(item)
    if as_json:
        _echo_json({"count": len(items), "walks": items})
        return
    for item in items:
        route = " -> ".join(item["keys"])
        if "pivots" in item:
            route += "   via " + ", ".join(item["pivots"])
        click.echo(route)
    click.echo(f"{len(items)} walks")


@main.command(name="corpus")
@click.argument("csv_path", required=False, type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True)
@click.option("--dot", "dot_path", type=click.Path(dir_okay=False), default=None,
              help="Also write the observed-modulation DOT graph here.")
@_guard
def corpus_cmd(csv_path: Optional[str], as_json: bool, dot_path: Optional[str]) -> None:
    """Statistics for an annotated modulation CSV (or $MODUGRAPH_CORPUS)."""
    path = csv_path or os.environ.get(CORPUS_ENV)
    if not path:
        raise click.UsageError(f"give a CSV path or set {CORPUS_ENV}")
    with open(path, encoding="utf-8") as fh:
        records = corpus.load_corpus(fh)
    stats = corpus.corpus_stats(records)
    if dot_path:
        dot = corpus.corpus_to_dot(corpus.build_directed_graph(records))
        with open(dot_path, "w", encoding="utf-8") as fh:
            fh.write(dot)
    if as_json:
        _echo_json(stats)
        return
    click.echo(f"songs: {stats['songs']}   records: {stats['records']}")
    click.echo(f"distinct modulation classes: {stats['distinct_classes']}")
    click.echo(f"unique song graphs: {stats['unique_song_graphs']}")
    totals = stats["edge_totals"]
    click.echo(
        f"directed edges: {totals['edges']} "
        f"(pivot-only {totals['pivot_only']}, direct-only {totals['direct_only']}, both {totals['both']})"
    )
    click.echo("class histogram (songs per class):")
    for e in stats["histogram"]:
        click.echo(f"  {e['display'].ljust(14)} {e['songs']}")
    if stats["isolated"]:
        click.echo("isolated keys: " + ", ".join(stats["isolated"]))


@main.command()
@_graph_options
@click.option("--format", "fmt", type=click.Choice(["dot", "json"]), required=True)
@click.option("--output", "output", required=True, type=click.Path(dir_okay=False))
@click.option("--corpus", "corpus_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Export this corpus instead of the graph.")
@_guard
def export(
    preset: Optional[str],
    graph_file: Optional[str],
    fmt: str,
    output: str,
    corpus_path: Optional[str],
) -> None:
    """Write a graph (DOT/JSON) or a corpus (Fig-style DOT / stats JSON)."""
    if corpus_path:
        with open(corpus_path, encoding="utf-8") as fh:
            records = corpus.load_corpus(fh)
        if fmt == "dot":
            text = corpus.corpus_to_dot(corpus.build_directed_graph(records))
        else:
            text = json.dumps(corpus.corpus_stats(records), indent=2) + "\n"
    else:
        graph = _load_graph(preset, graph_file)
        if fmt == "dot":
            text = graph_to_dot(graph)
        else:
            text = json.dumps(graph_to_json(graph), indent=2) + "\n"
    try:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        click.echo(f"error: cannot write {output}: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    click.echo(f"wrote {output}")


@main.command()
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@_graph_options
@click.option("--corpus", "corpus_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Preload a corpus snapshot.")
@_guard
def serve(
    port: int,
    host: str,
    preset: Optional[str],
    graph_file: Optional[str],
    corpus_path: Optional[str],
) -> None:
    """Run the read-only HTTP/JSON API (used by the route explorer UI)."""
    import uvicorn

    from .service import create_app

    graph = _load_graph(preset, graph_file)
    records = None
    if corpus_path:
        with open(corpus_path, encoding="utf-8") as fh:
            records = corpus.load_corpus(fh)
    uvicorn.run(create_app(graph, records), host=host, port=port)


if __name__ == "__main__":
    main()
