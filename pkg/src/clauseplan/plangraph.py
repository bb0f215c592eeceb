"""Directed weighted plan graph: construction from reference plans,
plan generation by scored walk, and reference-guided rank evaluation."""

from __future__ import annotations

import json
import random
import statistics
from dataclasses import dataclass, field

from .keywords import PlanDataset

GRAPH_FORMAT_VERSION = 1
DEFAULT_THRESHOLD = 5


class GraphError(Exception):
    pass


@dataclass(frozen=True)
class NodeId:
    kind: str  # "topic" | "keyword"
    label: str


def topic_node(label: str) -> NodeId:
    return NodeId("topic", label)


def keyword_node(label: str) -> NodeId:
    return NodeId("keyword", label)


@dataclass
class PlanGraph:
    """Immutable-after-build weighted digraph over topic and keyword nodes.

    Topic nodes have only outgoing edges; keyword->topic edges never exist.
    Adjacency values are accumulated occurrence weights 1/(stage * topic_freq).
    """

    nodes: set[NodeId] = field(default_factory=set)
    adjacency: dict[NodeId, dict[NodeId, float]] = field(default_factory=dict)
    config: dict = field(default_factory=dict)

    def out_neighbors(self, node: NodeId) -> list[NodeId]:
        return sorted(self.adjacency.get(node, {}), key=lambda n: n.label)

    def edge_score(self, a: NodeId, b: NodeId) -> float:
        """Stored weight of edge a->b; absent edges score 0.0."""
        return self.adjacency.get(a, {}).get(b, 0.0)

    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency.values())

    def topic_labels(self) -> list[str]:
        return sorted(n.label for n in self.nodes if n.kind == "topic")

    def has_topic(self, label: str) -> bool:
        return topic_node(label) in self.nodes


@dataclass(frozen=True)
class WalkConfig:
    n: int
    thresholds: tuple[int, ...]
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("walk length n must be >= 1")
        if len(self.thresholds) != self.n:
            raise ValueError("need one threshold per stage")
        if any(th < 1 for th in self.thresholds):
            raise ValueError("thresholds must be >= 1")

    @classmethod
    def default(cls, n: int, seed: int = 0) -> "WalkConfig":
        return cls(n, (DEFAULT_THRESHOLD,) * n, seed)


@dataclass
class GeneratedPlan:
    topic: str
    stages: list[tuple[str, str, float]]  # (keyword, "custom"|"walk", score)
    truncated: bool

    def keywords(self) -> list[str]:
        return [kw for kw, _, _ in self.stages]


@dataclass
class RankTrace:
    # per stage: (expected keyword, rank or l+1 sentinel, neighbor count l)
    stages: list[tuple[str, int, int]]


def build_graph(dataset: PlanDataset, config: dict | None = None) -> PlanGraph:
    """Accumulate edge weights from reference plans.

    For a topic with frequency f and a plan r, stage s contributes
    v = 1/(s*f) to the topic->r_s edge, and for s >= 2 also to the
    r_{s-1}->r_s edge. The stage-1 predecessor edge is skipped. Plans
    are processed in dataset order so float accumulation is reproducible.
    """
    if len(dataset) == 0:
        raise GraphError("empty plan dataset")
    graph = PlanGraph(config=dict(config or {}))

    def add(src: NodeId, dst: NodeId, v: float):
        graph.nodes.add(src)
        graph.nodes.add(dst)
        row = graph.adjacency.setdefault(src, {})
        row[dst] = row.get(dst, 0.0) + v

    for topic, plans in dataset.by_topic.items():
        f = len(plans)
        t_node = topic_node(topic)
        graph.nodes.add(t_node)
        for plan in plans:
            if len(set(plan.keywords)) != len(plan.keywords):
                raise GraphError(f"plan {plan.clause_id} has duplicate keywords")
            prev = None
            for s, kw in enumerate(plan.keywords, start=1):
                v = 1.0 / (s * f)
                node = keyword_node(kw)
                add(t_node, node, v)
                if prev is not None:
                    add(prev, node, v)
                prev = node
    return graph


def score_neighbors(graph: PlanGraph, topic: str, cn: NodeId,
                    exclude: set[str] | None = None) -> list[tuple[str, float]]:
    """Rank cn's out-neighbors by edge_score(topic->cand) + edge_score(cn->cand),
    descending, ties broken by ascending label."""
    if cn not in graph.nodes:
        return []
    t_node = topic_node(topic)
    scored = []
    for cand in graph.adjacency.get(cn, {}):
        if exclude and cand.label in exclude:
            continue
        score = graph.edge_score(t_node, cand) + graph.edge_score(cn, cand)
        scored.append((cand.label, score))
    scored.sort(key=lambda pair: (-pair[1], pair[0]))
    return scored


def generate_plan(graph: PlanGraph, topic: str, custom_keywords: list[str],
                  config: WalkConfig) -> GeneratedPlan:
    """Walk the graph from a topic node for n stages.

    At each stage the current node's unused neighbors are ranked; if a
    custom keyword falls inside the top-TH window the highest-scored one
    is selected (source "custom"), otherwise a seeded uniform pick from
    the window (source "walk"). Dead ends fall back to the topic node's
    unused neighbors; if that is also empty the plan stops early with
    truncated=True.
    """
    t_node = topic_node(topic)
    if t_node not in graph.nodes:
        raise GraphError(f"unknown topic: {topic!r}")
    rng = random.Random(config.seed)
    pending = list(dict.fromkeys(custom_keywords))
    used: set[str] = set()
    stages: list[tuple[str, str, float]] = []
    cn = t_node
    truncated = False

    for s in range(config.n):
        ranked = score_neighbors(graph, topic, cn, exclude=used)
        if not ranked and cn != t_node:
            ranked = score_neighbors(graph, topic, t_node, exclude=used)
        if not ranked:
            truncated = True
            break
        window = ranked[: config.thresholds[s]]
        in_window = [(kw, score) for kw, score in window if kw in pending]
        if in_window:
            kw, score = in_window[0]
            pending.remove(kw)
            source = "custom"
        else:
            kw, score = window[rng.randrange(len(window))]
            source = "walk"
        stages.append((kw, source, score))
        used.add(kw)
        cn = keyword_node(kw)
    return GeneratedPlan(topic, stages, truncated)


def rank_reference_plan(graph: PlanGraph, topic: str, reference: list[str]) -> RankTrace:
    """Teacher-forced walk along a reference plan, recording the rank the
    scorer gives each expected keyword (sentinel l+1 when absent)."""
    t_node = topic_node(topic)
    if t_node not in graph.nodes:
        raise GraphError(f"unknown topic: {topic!r}")
    if not reference:
        raise GraphError("reference plan is empty")
    stages = []
    cn = t_node
    for expected in reference:
        ranked = score_neighbors(graph, topic, cn)
        l = len(ranked)
        rank = l + 1
        for i, (kw, _) in enumerate(ranked, start=1):
            if kw == expected:
                rank = i
                break
        stages.append((expected, rank, l))
        cn = keyword_node(expected)
    return RankTrace(stages)


def aggregate_ranks(traces: list[RankTrace], by_stage: bool = False) -> dict:
    """Mean/median rank and neighbor count over all stages of all traces.

    Sentinel ranks (expected keyword absent) are included in the
    aggregates and counted separately.
    """
    if not traces:
        raise ValueError("no traces to aggregate")
    ranks, neighbors, sentinels = [], [], 0
    per_stage: dict[int, tuple[list[int], list[int]]] = {}
    for trace in traces:
        for stage_idx, (_, rank, l) in enumerate(trace.stages, start=1):
            ranks.append(rank)
            neighbors.append(l)
            if rank == l + 1:
                sentinels += 1
            if by_stage:
                r, nb = per_stage.setdefault(stage_idx, ([], []))
                r.append(rank)
                nb.append(l)
    report = {
        "overall": {
            "mean_rank": statistics.fmean(ranks),
            "median_rank": float(statistics.median(ranks)),
            "mean_neighbors": statistics.fmean(neighbors),
            "median_neighbors": float(statistics.median(neighbors)),
            "sentinel_count": sentinels,
        }
    }
    if by_stage:
        report["by_stage"] = [
            {"stage": s,
             "median_rank": float(statistics.median(r)),
             "median_neighbors": float(statistics.median(nb))}
            for s, (r, nb) in sorted(per_stage.items())
        ]
    return report


def save_graph(graph: PlanGraph, path) -> None:
    """Serialize to versioned JSON; float weights keep full precision."""
    node_list = sorted(graph.nodes, key=lambda n: (n.kind, n.label))
    ids = {node: i for i, node in enumerate(node_list)}
    edges = sorted(
        (ids[src], ids[dst], w)
        for src, row in graph.adjacency.items()
        for dst, w in row.items()
    )
    payload = {
        "version": GRAPH_FORMAT_VERSION,
        "config": graph.config,
        "nodes": [{"id": ids[n], "kind": n.kind, "label": n.label} for n in node_list],
        "edges": [[s, d, w] for s, d, w in edges],
    }
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, ensure_ascii=False)
        f.write("\n")


def load_graph(path) -> PlanGraph:
    try:
        with open(path, encoding="utf-8") as f:
            payload = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise GraphError(f"cannot load graph from {path}: {e}") from e
    if payload.get("version") != GRAPH_FORMAT_VERSION:
        raise GraphError(f"unsupported graph version: {payload.get('version')!r}")
    try:
        by_id = {n["id"]: NodeId(n["kind"], n["label"]) for n in payload["nodes"]}
        graph = PlanGraph(nodes=set(by_id.values()), config=payload.get("config", {}))
        for src, dst, w in payload["edges"]:
            graph.adjacency.setdefault(by_id[src], {})[by_id[dst]] = w
    except (KeyError, TypeError) as e:
        raise GraphError(f"corrupt graph file {path}: {e}") from e
    return graph
