"""TF-IDF retrieval generator: realize a clause for a (topic, plan) pair
by returning the most similar training clause."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .corpus import Corpus
from .keywords import lemmatize, tokenize

INDEX_FORMAT_VERSION = 1


class IndexError_(Exception):
    pass


@dataclass
class RetrievalIndex:
    vocab: list[str]                      # lexicographic
    df: list[int]
    n_docs: int
    docs: list[dict]                      # {clause_id, topic, text, vec: [(dim, w)]}
    postings: dict[int, list[tuple[int, float]]] = field(default_factory=dict)

    def __post_init__(self):
        if not self.postings:
            for doc_idx, doc in enumerate(self.docs):
                for dim, w in doc["vec"]:
                    self.postings.setdefault(dim, []).append((doc_idx, w))

    def idf(self, dim: int) -> float:
        return math.log((1 + self.n_docs) / (1 + self.df[dim])) + 1.0


@dataclass
class RetrievalResult:
    hits: list[tuple[str, str, str, float]]  # (clause_id, topic, text, score)
    empty_query: bool = False


def _doc_terms(text: str) -> list[str]:
    return [tok.lemma for tok in tokenize(text)]


def build_index(train_corpus: Corpus) -> RetrievalIndex:
    """Index training clauses as L2-normalized TF-IDF vectors.

    tf is the raw lemma count; idf(w) = ln((1+N)/(1+df(w))) + 1. The
    vocabulary is lexicographic so identical inputs serialize identically.
    """
    if len(train_corpus) == 0:
        raise IndexError_("cannot index an empty corpus")
    doc_counts = [_count(_doc_terms(c.text)) for c in train_corpus]
    df_map: dict[str, int] = {}
    for counts in doc_counts:
        for term in counts:
            df_map[term] = df_map.get(term, 0) + 1
    vocab = sorted(df_map)
    dims = {term: i for i, term in enumerate(vocab)}
    df = [df_map[term] for term in vocab]
    n_docs = len(train_corpus)
    idf = [math.log((1 + n_docs) / (1 + d)) + 1.0 for d in df]

    docs = []
    for clause, counts in zip(train_corpus, doc_counts):
        vec = [(dims[t], tf * idf[dims[t]]) for t, tf in sorted(counts.items())]
        norm = math.sqrt(sum(w * w for _, w in vec))
        if norm > 0:
            vec = [(dim, w / norm) for dim, w in vec]
        docs.append({
            "clause_id": clause.clause_id, "topic": clause.topic,
            "text": clause.text, "vec": vec,
        })
    return RetrievalIndex(vocab, df, n_docs, docs)


def _count(terms) -> dict[str, int]:
    counts: dict[str, int] = {}
    for t in terms:
        counts[t] = counts.get(t, 0) + 1
    return counts


def retrieve_clause(index: RetrievalIndex, topic: str, plan_keywords: list[str],
                    k: int = 1, topic_filter: bool = False) -> RetrievalResult:
    """Top-k clauses by cosine similarity to the plan-plus-topic query.

    The query counts each plan keyword per occurrence and adds the
    lemmatized topic tokens; ties break by ascending clause_id. Documents
    with zero vectors never appear in results.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    query_terms = [lemmatize(kw.lower()) for kw in plan_keywords]
    query_terms += _doc_terms(topic)
    dims = {term: i for i, term in enumerate(index.vocab)}
    counts = _count(t for t in query_terms if t in dims)
    if not counts:
        return RetrievalResult([], empty_query=True)
    qvec = {dims[t]: tf * index.idf(dims[t]) for t, tf in counts.items()}
    qnorm = math.sqrt(sum(w * w for w in qvec.values()))
    scores: dict[int, float] = {}
    for dim, qw in qvec.items():
        for doc_idx, dw in index.postings.get(dim, []):
            scores[doc_idx] = scores.get(doc_idx, 0.0) + qw * dw
    hits = []
    for doc_idx, dot in scores.items():
        doc = index.docs[doc_idx]
        if topic_filter and doc["topic"] != topic:
            continue
        hits.append((doc["clause_id"], doc["topic"], doc["text"], dot / qnorm))
    hits.sort(key=lambda h: (-h[3], h[0]))
    return RetrievalResult(hits[:k])


def generate(index: RetrievalIndex, topic: str, plan: list[str], k: int = 1,
             topic_filter: bool = False) -> RetrievalResult:
    """The retrieval generator: the top hit's text is the "generated" clause."""
    return retrieve_clause(index, topic, plan, k=k, topic_filter=topic_filter)


def save_index(index: RetrievalIndex, path) -> None:
    payload = {
        "version": INDEX_FORMAT_VERSION,
        "n_docs": index.n_docs,
        "vocab": index.vocab,
        "df": index.df,
        "docs": [
            {"clause_id": d["clause_id"], "topic": d["topic"], "text": d["text"],
             "vec": [[dim, w] for dim, w in d["vec"]]}
            for d in index.docs
        ],
    }
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, ensure_ascii=False)
        f.write("\n")


def load_index(path) -> RetrievalIndex:
    try:
        with open(path, encoding="utf-8") as f:
            payload = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise IndexError_(f"cannot load index from {path}: {e}") from e
    if payload.get("version") != INDEX_FORMAT_VERSION:
        raise IndexError_(f"unsupported index version: {payload.get('version')!r}")
    docs = [
        {"clause_id": d["clause_id"], "topic": d["topic"], "text": d["text"],
         "vec": [(dim, w) for dim, w in d["vec"]]}
        for d in payload["docs"]
    ]
    return RetrievalIndex(payload["vocab"], payload["df"], payload["n_docs"], docs)
