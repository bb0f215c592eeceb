"""clauseplan command line: pipeline stages, ad-hoc planning/generation,
evaluation reports, and the HTTP service."""

from __future__ import annotations

import json
import sys
import time

import click

from . import corpus as corpus_mod
from . import generator as gen_mod
from . import keywords as kw_mod
from . import metrics as metrics_mod
from . import plangraph as graph_mod

DEFAULT_M1 = 200
DEFAULT_N = 10
DEFAULT_MIN_TOPIC_FREQ = 100


def _summary(command: str, started: float, **fields) -> None:
    payload = {"command": command, **fields,
               "duration_s": round(time.monotonic() - started, 3)}
    click.echo(json.dumps(payload))


def _fail(message: str, code: int = 1) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _parse_csv(value: str | None) -> list[str]:
    return [v.strip() for v in value.split(",") if v.strip()] if value else []


@click.group()
def main():
    """Graph-based content planning and retrieval generation for legal clauses."""


@main.command()
@click.option("--input", "input_path", required=True)
@click.option("--out-dir", required=True)
@click.option("--ratios", default="85:5:10", show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--format", "fmt", default="canonical", show_default=True,
              type=click.Choice(["canonical", "ledgar-raw"]))
def split(input_path, out_dir, ratios, seed, fmt):
    """Split a corpus into contract-disjoint train/dev/test files."""
    started = time.monotonic()
    try:
        parts = tuple(int(r) for r in ratios.split(":"))
        if len(parts) != 3:
            raise ValueError("ratios must be A:B:C")
        spec = corpus_mod.SplitSpec(parts, seed)
        loaded = corpus_mod.load_ledgar(input_path, fmt)
        splits = corpus_mod.split_by_contract(loaded, spec)
        manifest = corpus_mod.save_splits(splits, spec, out_dir)
    except (corpus_mod.CorpusError, ValueError) as e:
        _fail(str(e))
    _summary("split", started, contracts=manifest["contracts"],
             clauses={name: len(part) for name, part in zip(("train", "dev", "test"), splits)},
             dropped=loaded.counters)


@main.command()
@click.option("--input", "input_path", required=True)
@click.option("--out", required=True)
@click.option("--per-topic", "m1", default=DEFAULT_M1, show_default=True)
@click.option("--min-topic-freq", default=DEFAULT_MIN_TOPIC_FREQ, show_default=True)
def keywords(input_path, out, m1, min_topic_freq):
    """Extract ranked per-topic keyword lists from a training corpus."""
    started = time.monotonic()
    try:
        loaded = corpus_mod.load_ledgar(input_path)
        filtered, stats = corpus_mod.filter_topics(loaded, min_topic_freq)
        by_topic: dict[str, list] = {}
        for clause in filtered:
            by_topic.setdefault(clause.topic, []).append(clause)
        lists = {t: kw_mod.extract_topic_keywords(by_topic[t], m1)
                 for t in sorted(by_topic)}
        kw_mod.save_keywords(lists, m1, out)
    except (corpus_mod.CorpusError, ValueError) as e:
        _fail(str(e))
    _summary("keywords", started, topics=stats.total_topics,
             clauses=stats.total_clauses, m1=m1)


@main.command()
@click.option("--input", "input_path", required=True)
@click.option("--keywords", "keywords_path", default=None,
              help="keywords.json; required for --mode topic, used as a topic allowlist otherwise")
@click.option("--out", required=True)
@click.option("--mode", default="topic", show_default=True,
              type=click.Choice(["topic", "sequential"]))
@click.option("--max-per-clause", "n", default=DEFAULT_N, show_default=True)
def plans(input_path, keywords_path, out, mode, n):
    """Build one reference plan per clause."""
    started = time.monotonic()
    plan_mode = "topic-ranked" if mode == "topic" else "sequential"
    try:
        loaded = corpus_mod.load_ledgar(input_path)
        lists = None
        if keywords_path:
            lists, _ = kw_mod.load_keywords(keywords_path)
            loaded, _ = corpus_mod.filter_topics(loaded, allowlist=set(lists))
        elif plan_mode == "topic-ranked":
            raise ValueError("--keywords is required for --mode topic")
        dataset = kw_mod.build_plan_dataset(loaded, lists, plan_mode, n)
        kw_mod.save_plans(dataset, out)
    except (corpus_mod.CorpusError, ValueError) as e:
        _fail(str(e))
    empty = sum(1 for p in dataset.all_plans() if not p.keywords)
    _summary("plans", started, plans=len(dataset), topics=len(dataset.by_topic),
             empty_plans=empty, mode=plan_mode)


@main.command()
@click.option("--input", "input_path", required=True, help="plans.jsonl")
@click.option("--out", required=True)
@click.option("--max-per-clause", "n", default=DEFAULT_N, show_default=True)
@click.option("--per-topic", "m1", default=DEFAULT_M1, show_default=True)
def graph(input_path, out, n, m1):
    """Build the plan graph from reference plans."""
    started = time.monotonic()
    try:
        dataset = kw_mod.load_plans(input_path)
        mode = next(dataset.all_plans()).mode if len(dataset) else "topic-ranked"
        built = graph_mod.build_graph(dataset, {"n": n, "m1": m1, "mode": mode})
        graph_mod.save_graph(built, out)
    except (OSError, graph_mod.GraphError, StopIteration) as e:
        _fail(str(e))
    _summary("graph", started, nodes=len(built.nodes), edges=built.edge_count())


@main.command()
@click.option("--input", "input_path", required=True, help="train corpus JSONL")
@click.option("--out", required=True)
def index(input_path, out):
    """Build the TF-IDF retrieval index over training clauses."""
    started = time.monotonic()
    try:
        loaded = corpus_mod.load_ledgar(input_path)
        built = gen_mod.build_index(loaded)
        gen_mod.save_index(built, out)
    except (corpus_mod.CorpusError, gen_mod.IndexError_) as e:
        _fail(str(e))
    _summary("index", started, docs=built.n_docs, vocab=len(built.vocab))


@main.command()
@click.option("--input", "graph_path", required=True, help="graph.json")
@click.option("--topic", required=True)
@click.option("--keywords", "custom_csv", default=None, help="custom keywords, CSV")
@click.option("--max-per-clause", "n", default=None, type=int,
              help="plan length; defaults to the graph's configured n")
@click.option("--thresholds", default=None, help="per-stage window sizes, CSV")
@click.option("--seed", default=0, show_default=True)
def plan(graph_path, topic, custom_csv, n, thresholds, seed):
    """Generate a keyword plan by graph walk."""
    try:
        loaded = graph_mod.load_graph(graph_path)
    except graph_mod.GraphError as e:
        _fail(str(e))
    if not loaded.has_topic(topic):
        suggestions = [t for t in loaded.topic_labels() if t.startswith(topic[:3])][:5]
        click.echo(f"error: unknown topic {topic!r}; near matches: {suggestions}", err=True)
        sys.exit(2)
    n = n if n is not None else int(loaded.config.get("n", DEFAULT_N))
    th = tuple(int(t) for t in _parse_csv(thresholds)) or \
        (graph_mod.DEFAULT_THRESHOLD,) * n
    try:
        config = graph_mod.WalkConfig(n, th, seed)
        customs = [kw_mod.lemmatize(k.lower()) for k in _parse_csv(custom_csv)]
        generated = graph_mod.generate_plan(loaded, topic, customs, config)
    except (ValueError, graph_mod.GraphError) as e:
        _fail(str(e))
    click.echo(json.dumps({
        "topic": topic,
        "plan": [{"keyword": kw, "source": src, "score": score}
                 for kw, src, score in generated.stages],
        "truncated": generated.truncated,
        "seed": seed,
    }))


@main.command()
@click.option("--input", "index_path", required=True, help="index.json")
@click.option("--topic", required=True)
@click.option("--keywords", "plan_csv", required=True, help="plan keywords, CSV")
@click.option("--k", default=1, show_default=True)
@click.option("--topic-filter", is_flag=True)
def generate(index_path, topic, plan_csv, k, topic_filter):
    """Retrieve the clause(s) realizing a plan."""
    try:
        loaded = gen_mod.load_index(index_path)
        result = gen_mod.generate(loaded, topic, _parse_csv(plan_csv), k=k,
                                  topic_filter=topic_filter)
    except (gen_mod.IndexError_, ValueError) as e:
        _fail(str(e))
    click.echo(json.dumps({
        "candidates": [{"clause_id": cid, "topic": t, "text": text, "score": score}
                       for cid, t, text, score in result.hits],
        "empty_query": result.empty_query,
    }))


@main.command(name="eval-plans")
@click.option("--input", "plans_path", required=True, help="plans.jsonl")
@click.option("--graph", "graph_path", required=True)
@click.option("--out", required=True, help="rank-report.json")
def eval_plans(plans_path, graph_path, out):
    """Rank reference plans against the graph (teacher-forced walk)."""
    started = time.monotonic()
    try:
        dataset = kw_mod.load_plans(plans_path)
        loaded = graph_mod.load_graph(graph_path)
        cap = int(loaded.config.get("n", DEFAULT_N))
        if any(len(p.keywords) > cap for p in dataset.all_plans()):
            click.echo(f"warning: plans longer than graph n={cap}; truncating", err=True)
        traces = [
            graph_mod.rank_reference_plan(loaded, p.topic, p.keywords[:cap])
            for p in dataset.all_plans() if p.keywords
        ]
        report = graph_mod.aggregate_ranks(traces, by_stage=True)
        with open(out, "w", encoding="utf-8") as f:
            json.dump(report, f, indent=2, sort_keys=True)
            f.write("\n")
    except (OSError, ValueError, graph_mod.GraphError) as e:
        _fail(str(e))
    _summary("eval-plans", started, traces=len(traces), **report["overall"])


@main.command(name="eval-gen")
@click.option("--input", "plans_path", required=True, help="plans.jsonl")
@click.option("--index", "index_path", required=True)
@click.option("--refs", required=True, help="reference clauses, canonical JSONL")
@click.option("--out", required=True, help="metrics.json")
@click.option("--bins", is_flag=True, help="add frequency-bin slices")
@click.option("--stats", "stats_path", default=None,
              help="corpus whose topic counts define the bins (default: --refs)")
def eval_gen(plans_path, index_path, refs, out, bins, stats_path):
    """Generate clauses from plans via retrieval and score against references."""
    started = time.monotonic()
    try:
        dataset = kw_mod.load_plans(plans_path)
        loaded = gen_mod.load_index(index_path)
        ref_corpus = corpus_mod.load_ledgar(refs)
        ref_by_id = {c.clause_id: c for c in ref_corpus}
        pairs = []
        skipped = 0
        for p in dataset.all_plans():
            ref = ref_by_id.get(p.clause_id)
            if ref is None:
                skipped += 1
                continue
            result = gen_mod.generate(loaded, p.topic, p.keywords)
            candidate = result.hits[0][2] if result.hits else ""
            pairs.append(metrics_mod.EvalPair(p.clause_id, p.topic, candidate, ref.text))
        stats = None
        if bins:
            stats_corpus = corpus_mod.load_ledgar(stats_path) if stats_path else ref_corpus
            stats = corpus_mod.TopicStats(stats_corpus.topic_counts())
        report = metrics_mod.evaluate_generation(pairs, stats)
        with open(out, "w", encoding="utf-8") as f:
            json.dump(report, f, indent=2, sort_keys=True)
            f.write("\n")
    except (OSError, ValueError, corpus_mod.CorpusError, gen_mod.IndexError_) as e:
        _fail(str(e))
    _summary("eval-gen", started, pairs=len(pairs), skipped=skipped, bleu=report["bleu"])


@main.command()
@click.option("--graph", "graph_path", required=True)
@click.option("--index", "index_path", required=True)
@click.option("--keywords", "keywords_path", default=None)
@click.option("--port", default=8080, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
def serve(graph_path, index_path, keywords_path, port, host):
    """Serve planning and generation over HTTP."""
    import uvicorn

    from .service import create_app

    try:
        loaded_graph = graph_mod.load_graph(graph_path)
        loaded_index = gen_mod.load_index(index_path)
        lists = kw_mod.load_keywords(keywords_path)[0] if keywords_path else None
    except (graph_mod.GraphError, gen_mod.IndexError_, OSError) as e:
        _fail(str(e))
    app = create_app(loaded_graph, loaded_index, lists)
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
