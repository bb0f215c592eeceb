"""Clause corpus ingestion, contract-level splitting, and topic filtering."""

from __future__ import annotations

import json
import math
import random
import statistics
from dataclasses import dataclass, field
from pathlib import Path

DEFAULT_BIN_EDGES = (100, 150, 250, 500, 1000, 5000)


class CorpusError(Exception):
    """Raised for unreadable files or malformed corpus records."""


@dataclass(frozen=True)
class ClauseRecord:
    clause_id: str
    contract_id: str
    topic: str
    text: str


@dataclass
class Corpus:
    """Immutable, insertion-ordered collection of clauses."""

    clauses: tuple[ClauseRecord, ...]
    counters: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        self.clauses = tuple(self.clauses)
        seen = set()
        for c in self.clauses:
            if c.clause_id in seen:
                raise CorpusError(f"duplicate clause_id: {c.clause_id!r}")
            seen.add(c.clause_id)
            if not c.topic:
                raise CorpusError(f"clause {c.clause_id!r} has empty topic")
            if not c.text:
                raise CorpusError(f"clause {c.clause_id!r} has empty text")

    def __len__(self):
        return len(self.clauses)

    def __iter__(self):
        return iter(self.clauses)

    @property
    def topics(self) -> set[str]:
        return {c.topic for c in self.clauses}

    @property
    def contract_ids(self) -> set[str]:
        return {c.contract_id for c in self.clauses}

    def topic_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for c in self.clauses:
            counts[c.topic] = counts.get(c.topic, 0) + 1
        return counts


@dataclass
class TopicStats:
    per_topic: dict[str, int]

    def __post_init__(self):
        if any(v < 0 for v in self.per_topic.values()):
            raise ValueError("negative topic count")

    @property
    def total_topics(self) -> int:
        return len(self.per_topic)

    @property
    def total_clauses(self) -> int:
        return sum(self.per_topic.values())


@dataclass(frozen=True)
class SplitSpec:
    ratios: tuple[int, int, int] = (85, 5, 10)
    seed: int = 0

    def __post_init__(self):
        if any(r < 0 for r in self.ratios):
            raise ValueError("split ratios must be non-negative")
        if sum(self.ratios) != 100:
            raise ValueError(f"split ratios must sum to 100, got {self.ratios}")


def _normalize_topic(label: str) -> str:
    return " ".join(label.lower().split())


def _parse_jsonl(path) -> list[tuple[int, dict]]:
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise CorpusError(f"cannot read {path}: {e}") from e
    records = []
    for lineno, line in enumerate(raw.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as e:
            raise CorpusError(f"{path}:{lineno}: invalid JSON: {e}") from e
        if not isinstance(obj, dict):
            raise CorpusError(f"{path}:{lineno}: record is not an object")
        records.append((lineno, obj))
    return records


def load_ledgar(path, format: str = "canonical") -> Corpus:
    """Load a clause corpus from JSON Lines.

    format "canonical" expects {clause_id, contract_id, topic, text};
    format "ledgar-raw" expects {provision, label: [...], source} and drops
    records carrying more than one label.
    """
    if format not in ("canonical", "ledgar-raw"):
        raise ValueError(f"unknown corpus format: {format!r}")
    records = _parse_jsonl(path)
    clauses: list[ClauseRecord] = []
    counters = {"multi_label_dropped": 0, "no_label_dropped": 0}
    per_contract_ordinal: dict[str, int] = {}

    for lineno, obj in records:
        if format == "canonical":
            try:
                clauses.append(ClauseRecord(
                    clause_id=str(obj["clause_id"]),
                    contract_id=str(obj["contract_id"]),
                    topic=_normalize_topic(str(obj["topic"])),
                    text=str(obj["text"]),
                ))
            except KeyError as e:
                raise CorpusError(f"{path}:{lineno}: missing field {e}") from e
        else:
            try:
                text = obj["provision"]
                labels = obj["label"]
                contract_id = str(obj["source"])
            except KeyError as e:
                raise CorpusError(f"{path}:{lineno}: missing field {e}") from e
            if not isinstance(labels, list):
                labels = [labels]
            if len(labels) > 1:
                counters["multi_label_dropped"] += 1
                continue
            if not labels:
                counters["no_label_dropped"] += 1
                continue
            ordinal = per_contract_ordinal.get(contract_id, 0)
            per_contract_ordinal[contract_id] = ordinal + 1
            clauses.append(ClauseRecord(
                clause_id=f"{contract_id}#{ordinal}",
                contract_id=contract_id,
                topic=_normalize_topic(str(labels[0])),
                text=str(text),
            ))
    try:
        return Corpus(clauses, counters=counters)
    except CorpusError as e:
        raise CorpusError(f"{path}: {e}") from e


def split_by_contract(corpus: Corpus, spec: SplitSpec) -> tuple[Corpus, Corpus, Corpus]:
    """Split a corpus into contract-disjoint train/dev/test corpora.

    Contracts are sorted lexicographically, then shuffled by a seeded
    generator; dev and test take floor(ratio% of contracts), remainder
    goes to train. Every clause follows its contract.
    """
    if len(corpus) == 0:
        raise CorpusError("cannot split an empty corpus")
    contracts = sorted(corpus.contract_ids)
    rng = random.Random(spec.seed)
    rng.shuffle(contracts)

    n = len(contracts)
    n_dev = math.floor(spec.ratios[1] * n / 100)
    n_test = math.floor(spec.ratios[2] * n / 100)
    dev_ids = set(contracts[:n_dev])
    test_ids = set(contracts[n_dev:n_dev + n_test])

    train, dev, test = [], [], []
    for c in corpus:
        if c.contract_id in dev_ids:
            dev.append(c)
        elif c.contract_id in test_ids:
            test.append(c)
        else:
            train.append(c)
    return Corpus(train), Corpus(dev), Corpus(test)


def filter_topics(corpus: Corpus, min_freq: int | None = None, *,
                  allowlist: set[str] | None = None) -> tuple[Corpus, TopicStats]:
    """Retain clauses whose topic meets a frequency floor in this corpus,
    or whose topic is in an explicit allowlist (dev/test filtering)."""
    if allowlist is not None:
        keep = set(allowlist)
    else:
        if min_freq is None or min_freq < 1:
            raise ValueError("min_freq must be >= 1")
        counts = corpus.topic_counts()
        keep = {t for t, n in counts.items() if n >= min_freq}
    kept = [c for c in corpus if c.topic in keep]
    filtered = Corpus(kept)
    return filtered, TopicStats(filtered.topic_counts())


def _bin_label(lo: int, hi: float) -> str:
    def fmt(x):
        if x >= 1000 and x % 1000 == 0:
            return f"{x // 1000}k"
        return str(x)
    if math.isinf(hi):
        return f">{fmt(lo)}"
    return f"{fmt(lo)}-{fmt(int(hi))}"


def topic_frequency_bins(stats: TopicStats, bin_edges=DEFAULT_BIN_EDGES) -> dict:
    """Bin topics by clause count; report count/mean/std/median per bin.

    Edges define half-open ranges [e_i, e_{i+1}) with a final open bin;
    std is the population standard deviation.
    """
    edges = list(bin_edges)
    if edges != sorted(set(edges)) or not edges:
        raise ValueError("bin_edges must be strictly increasing")
    bounds = list(zip(edges, edges[1:] + [math.inf]))

    def summarize(values):
        return {
            "topics": len(values),
            "mean": statistics.fmean(values) if values else 0.0,
            "std": statistics.pstdev(values) if values else 0.0,
            "median": statistics.median(values) if values else 0.0,
        }

    report = {"bins": {}, "overall": summarize(sorted(stats.per_topic.values()))}
    for lo, hi in bounds:
        values = sorted(v for v in stats.per_topic.values() if lo <= v < hi)
        report["bins"][_bin_label(lo, hi)] = summarize(values)
    return report


def bin_label_for_count(count: int, bin_edges=DEFAULT_BIN_EDGES) -> str | None:
    """Label of the frequency bin a per-topic clause count falls in."""
    edges = list(bin_edges)
    for lo, hi in zip(edges, edges[1:] + [math.inf]):
        if lo <= count < hi:
            return _bin_label(lo, hi)
    return None


def save_corpus(corpus: Corpus, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for c in corpus:
            f.write(json.dumps({
                "clause_id": c.clause_id, "contract_id": c.contract_id,
                "topic": c.topic, "text": c.text,
            }, ensure_ascii=False) + "\n")


def save_splits(splits: tuple[Corpus, Corpus, Corpus], spec: SplitSpec, out_dir) -> dict:
    """Write train/dev/test JSONL plus a manifest; returns the manifest."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    names = ("train", "dev", "test")
    for name, part in zip(names, splits):
        save_corpus(part, out / f"{name}.jsonl")
    manifest = {
        "seed": spec.seed,
        "ratios": list(spec.ratios),
        "contracts": {name: len(part.contract_ids) for name, part in zip(names, splits)},
    }
    (out / "splits-manifest.json").write_text(json.dumps(manifest, indent=2) + "\n",
                                              encoding="utf-8")
    return manifest
