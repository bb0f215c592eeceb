"""Shared fixtures and independent oracles."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from clauseplan.corpus import ClauseRecord, Corpus
from clauseplan.keywords import PlanDataset, ReferencePlan
from clauseplan.plangraph import build_graph

TOY_TOPIC = "severability"
TOY_PLANS = [
    ["provision", "invalid", "unenforceable"],
    ["provision", "unenforceable"],
]


def make_plan_dataset(by_topic: dict[str, list[list[str]]]) -> PlanDataset:
    return PlanDataset({
        topic: [ReferencePlan(f"{topic}#{i}", topic, kws, "topic-ranked")
                for i, kws in enumerate(plans)]
        for topic, plans in by_topic.items()
    })


@pytest.fixture
def toy_dataset():
    return make_plan_dataset({TOY_TOPIC: TOY_PLANS})


@pytest.fixture
def toy_graph(toy_dataset):
    return build_graph(toy_dataset)


def oracle_graph_edges(by_topic: dict[str, list[list[str]]]) -> dict:
    """Exact-fraction accumulator for the graph construction rule; kept
    independent of the production accumulation path."""
    edges: dict[tuple, Fraction] = {}

    def bump(src, dst, v):
        edges[(src, dst)] = edges.get((src, dst), Fraction(0)) + v

    for topic, plans in by_topic.items():
        f = len(plans)
        for plan in plans:
            for s, kw in enumerate(plan, start=1):
                v = Fraction(1, s * f)
                bump(("topic", topic), ("keyword", kw), v)
                if s >= 2:
                    bump(("keyword", plan[s - 2]), ("keyword", kw), v)
    return edges


def oracle_total_mass(by_topic: dict[str, list[list[str]]]) -> Fraction:
    total = Fraction(0)
    for plans in by_topic.values():
        f = len(plans)
        for plan in plans:
            length = len(plan)
            total += Fraction(1, f) * (
                sum(Fraction(1, s) for s in range(1, length + 1))
                + sum(Fraction(1, s) for s in range(2, length + 1))
            )
    return total


def random_plan_topics(rng: random.Random, vocab_size: int = 30) -> dict[str, list[list[str]]]:
    """Tiny randomized plan dataset: <= 10 topics, <= 20 plans total,
    plan length <= 5, duplicate-free plans."""
    vocab = [f"kw{i:02d}" for i in range(vocab_size)]
    n_topics = rng.randint(1, 10)
    by_topic = {}
    budget = rng.randint(n_topics, 20)
    for i in range(n_topics):
        n_plans = max(1, budget // n_topics)
        plans = []
        for _ in range(n_plans):
            length = rng.randint(1, 5)
            plans.append(rng.sample(vocab, length))
        by_topic[f"topic{i}"] = plans
    return by_topic


def synthetic_corpus(n_contracts: int, clauses_per_contract: int = 1,
                     topic: str = "general") -> Corpus:
    clauses = []
    for c in range(n_contracts):
        for j in range(clauses_per_contract):
            clauses.append(ClauseRecord(
                clause_id=f"c{c}#{j}", contract_id=f"c{c}", topic=topic,
                text=f"clause text number {c} item {j}.",
            ))
    return Corpus(clauses)


def _alpha_id(i: int) -> str:
    digits = "abcdefghijklmnoprty"  # no q (separator), no s (plural rule)
    base = len(digits)
    out = digits[i % base]
    while i >= base:
        i //= base
        out = digits[i % base] + out
    return out


def distinct_vocab_corpus(rng: random.Random, n_docs: int,
                          words_per_doc: int = 6) -> Corpus:
    """Corpus of clauses with pairwise-disjoint vocabularies built from
    lemma-stable nonsense words (no plural/participle suffixes)."""
    clauses = []
    for d in range(n_docs):
        words = [
            f"x{_alpha_id(d)}q{_alpha_id(w)}"
            + "".join(rng.choice("bcdfgkmnpqrtwx") for _ in range(3))
            for w in range(words_per_doc)
        ]
        clauses.append(ClauseRecord(
            clause_id=f"d{d}", contract_id=f"k{d}", topic=f"zz{_alpha_id(d)}",
            text=" ".join(words) + ".",
        ))
    return Corpus(clauses)


LEGAL_TEXTS = {
    "severability": [
        "In case any provision herein shall be invalid, illegal, or unenforceable, "
        "the validity of the remaining provisions shall not be affected.",
        "If any provision of this agreement is held invalid, the remainder shall "
        "continue in full force; any unenforceable provision shall be reformed.",
        "Any provision found unenforceable shall be severed. The remaining "
        "provisions remain valid and enforceable.",
        "Should any provision be declared invalid by a court, such invalidity "
        "shall not impair the other provisions.",
    ],
    "data privacy": [
        "The grantee consents to the collection, use and transfer of personal "
        "data for the purpose of administering and managing participation in the plan.",
        "Personal data shall be transferred only with consent; the company shall "
        "manage such data under the plan.",
        "The company collects personal data to administer the plan. Transfer of "
        "data requires explicit consent.",
        "Participation requires consent to the transfer of personal data by the "
        "company administering the plan.",
    ],
    "brokers": [
        "No broker, finder or investment banker is entitled to any brokerage or "
        "finder fee in connection with the transactions contemplated by this agreement.",
        "Each party represents that no broker is entitled to a commission in "
        "connection with the contemplated transaction.",
        "No brokerage fee or commission shall be payable to any finder in "
        "connection with this agreement.",
        "The company has not engaged any broker or finder entitled to any fee or "
        "commission in connection with the transactions.",
    ],
}


def legal_corpus() -> Corpus:
    clauses = []
    i = 0
    for topic, texts in LEGAL_TEXTS.items():
        for text in texts:
            clauses.append(ClauseRecord(f"k{i}#0", f"k{i}", topic, text))
            i += 1
    return Corpus(clauses)


def write_corpus_jsonl(corpus: Corpus, path) -> None:
    from clauseplan.corpus import save_corpus
    save_corpus(corpus, path)


def build_toy_artifacts(out_dir):
    """End-to-end toy artifacts (keywords, plans, graph, index) for the
    service/CLI tests; returns a dict of paths."""
    from pathlib import Path

    from clauseplan.generator import build_index, save_index
    from clauseplan.keywords import (build_plan_dataset, extract_topic_keywords,
                                     save_keywords, save_plans)
    from clauseplan.plangraph import build_graph, save_graph

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    corpus = legal_corpus()
    write_corpus_jsonl(corpus, out / "train.jsonl")
    by_topic = {}
    for c in corpus:
        by_topic.setdefault(c.topic, []).append(c)
    lists = {t: extract_topic_keywords(cs, 50) for t, cs in sorted(by_topic.items())}
    save_keywords(lists, 50, out / "keywords.json")
    dataset = build_plan_dataset(corpus, lists, "topic-ranked", n=10)
    save_plans(dataset, out / "plans.jsonl")
    graph = build_graph(dataset, {"n": 10, "m1": 50, "mode": "topic-ranked"})
    save_graph(graph, out / "graph.json")
    index = build_index(corpus)
    save_index(index, out / "index.json")
    return {name: out / f"{name}" for name in
            ("train.jsonl", "keywords.json", "plans.jsonl", "graph.json", "index.json")}
