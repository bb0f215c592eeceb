"""Tokenization, rule-based lemmatization, salience-ranked keyword
extraction, and per-clause reference plan construction."""

from __future__ import annotations

import json
import logging
import math
import re
import statistics
from dataclasses import dataclass

from .corpus import ClauseRecord, Corpus
from .stopwords import STOPWORDS

logger = logging.getLogger(__name__)

MIN_TOKEN_LEN = 2
MIN_KEYWORD_LEN = 3

_SENTENCE_SPLIT = re.compile(r"[.;!?]+(?:\s+|$)")
_ALPHA_RUN = re.compile(r"[a-z]+")

VOWELS = set("aeiou")

# Irregular forms and words the suffix rules would mangle.
LEMMA_EXCEPTIONS = {
    "made": "make", "paid": "pay", "said": "say", "held": "hold",
    "given": "give", "taken": "take", "brought": "bring", "sought": "seek",
    "sold": "sell", "bought": "buy", "found": "find", "kept": "keep",
    "left": "leave", "lost": "lose", "met": "meet", "sent": "send",
    "set": "set", "put": "put", "became": "become", "began": "begin",
    "went": "go", "gone": "go", "done": "do", "chosen": "choose",
    "chose": "choose", "arisen": "arise", "arose": "arise",
    "written": "write", "wrote": "write", "withheld": "withhold",
    "using": "use", "used": "use", "being": "be", "having": "have",
    "paying": "pay", "agreed": "agree", "agreeing": "agree",
    "guaranteed": "guarantee", "guaranteeing": "guarantee",
    "determined": "determine", "determining": "determine",
    "fixed": "fix", "taxed": "tax", "owed": "owe", "owing": "owe",
    # -ing adjectives/gerunds that are lexical items of their own
    "outstanding": "outstanding", "notwithstanding": "notwithstanding",
    "foregoing": "foregoing", "pending": "pending", "during": "during",
    "underlying": "underlying", "willing": "willing",
    "controlled": "control", "controlling": "control",
    "cancelled": "cancel", "cancelling": "cancel",
    "labelled": "label", "labelling": "label",
    "men": "man", "women": "woman", "children": "child",
    "parties": "party", "monies": "money", "series": "series",
    "premises": "premises", "proceedings": "proceeding",
    "securities": "security", "liabilities": "liability",
    "indices": "index", "analyses": "analysis", "bases": "basis",
}

_ES_FULL_STRIP = ("ches", "shes", "sses", "xes", "zes", "oes")
_E_RESTORE_ENDS = ("at", "iz", "ag", "id", "ud", "ir", "iv", "ib", "os", "uc", "ut")


@dataclass(frozen=True)
class Token:
    surface: str
    lemma: str
    sentence_index: int
    position: int


@dataclass
class TopicKeywordList:
    """Ranked keywords for one topic, most generic (lowest score) first."""

    topic: str
    keywords: list[tuple[str, float, int]]  # (lemma, salience, 1-based rank)

    def lemmas(self) -> list[str]:
        return [kw for kw, _, _ in self.keywords]


@dataclass
class ReferencePlan:
    clause_id: str
    topic: str
    keywords: list[str]
    mode: str  # "topic-ranked" | "sequential"


@dataclass
class PlanDataset:
    by_topic: dict[str, list[ReferencePlan]]

    @property
    def frequencies(self) -> dict[str, int]:
        return {t: len(plans) for t, plans in self.by_topic.items()}

    def all_plans(self):
        for plans in self.by_topic.values():
            yield from plans

    def __len__(self):
        return sum(len(p) for p in self.by_topic.values())


def tokenize(text: str) -> list[Token]:
    """Lowercase, split sentences on terminal punctuation, and keep
    maximal alphabetic runs of length >= 2 (apostrophes dropped)."""
    tokens: list[Token] = []
    position = 0
    lowered = text.lower().replace("'", "").replace("’", "")
    for sent_idx, sentence in enumerate(s for s in _SENTENCE_SPLIT.split(lowered) if s.strip()):
        for m in _ALPHA_RUN.finditer(sentence):
            surface = m.group()
            if len(surface) < MIN_TOKEN_LEN:
                continue
            tokens.append(Token(surface, lemmatize(surface), sent_idx, position))
            position += 1
    return tokens


def _strip_plural(word: str) -> str:
    if word.endswith("ies") and len(word) > 4:
        return word[:-3] + "y"
    if word.endswith(_ES_FULL_STRIP):
        return word[:-2]
    if word.endswith("s") and not word.endswith(("ss", "us", "is")):
        return word[:-1]
    return word


def _strip_participle(word: str) -> str:
    if word.endswith("ied") and len(word) > 4:
        return word[:-3] + "y"  # denied -> deny
    for suffix in ("ing", "ed"):
        if not word.endswith(suffix):
            continue
        stem = word[: -len(suffix)]
        # keep very short stems and -e verbs (agreed, seeing) intact
        if len(stem) < 4 or stem[-1] == "e":
            continue
        if stem[-1] == stem[-2] and stem[-1] not in VOWELS and stem[-1] not in "lsz":
            return stem[:-1]  # doubled consonant: planned -> plan
        if stem.endswith(_E_RESTORE_ENDS) or stem[-1] in "cuvz":
            return stem + "e"  # e-restoration: manag -> manage, issu -> issue
        if stem[-1] == "l" and stem[-2] not in VOWELS and stem[-2] != "l":
            return stem + "e"  # entitl -> entitle
        return stem
    return word


def lemmatize(surface: str) -> str:
    """Deterministic rule-based lemma for a lowercase alphabetic word.

    Exception table first, then plural stripping, then -ing/-ed stripping
    with consonant undoubling and e-restoration. Idempotent.
    """
    if surface in LEMMA_EXCEPTIONS:
        return LEMMA_EXCEPTIONS[surface]
    word = _strip_plural(surface)
    if word in LEMMA_EXCEPTIONS:
        return LEMMA_EXCEPTIONS[word]
    return _strip_participle(word)


def _candidate_tokens(tokens: list[Token]):
    for tok in tokens:
        if len(tok.lemma) >= MIN_KEYWORD_LEN and tok.lemma not in STOPWORDS:
            yield tok


def extract_topic_keywords(clauses: list[ClauseRecord], m1: int) -> TopicKeywordList:
    """Extract up to m1 salience-ranked keywords from a topic's clauses.

    Salience S(w) = Pos(w) / (TFnorm(w) * (1 + SentDisp(w))), ascending:
    lower scores mark words more generic to the topic. TFnorm normalizes
    term frequency by mean+std over candidates, SentDisp is the fraction
    of sentences containing w, and Pos = log2(log2(3 + median per-clause
    sentence index)) rewards words appearing early in clauses.
    """
    if m1 < 1:
        raise ValueError("m1 must be >= 1")
    topics = {c.topic for c in clauses}
    if len(topics) != 1:
        raise ValueError(f"clauses must share one topic, got {sorted(topics)}")
    topic = topics.pop()

    tf: dict[str, int] = {}
    sent_indices: dict[str, list[int]] = {}
    sents_containing: dict[str, set[tuple[int, int]]] = {}
    total_sentences = 0
    for clause_idx, clause in enumerate(clauses):
        tokens = tokenize(clause.text)
        if tokens:
            total_sentences += tokens[-1].sentence_index + 1
        for tok in _candidate_tokens(tokens):
            w = tok.lemma
            tf[w] = tf.get(w, 0) + 1
            sent_indices.setdefault(w, []).append(tok.sentence_index)
            sents_containing.setdefault(w, set()).add((clause_idx, tok.sentence_index))

    if not tf:
        logger.warning("topic %r has no candidate keywords", topic)
        return TopicKeywordList(topic, [])

    counts = list(tf.values())
    norm = statistics.fmean(counts) + statistics.pstdev(counts)
    scored = []
    for w, count in tf.items():
        tf_norm = count / norm
        disp = len(sents_containing[w]) / total_sentences
        pos = math.log2(math.log2(3 + statistics.median(sent_indices[w])))
        scored.append((pos / (tf_norm * (1 + disp)), w))
    scored.sort()
    return TopicKeywordList(
        topic,
        [(w, score, rank) for rank, (score, w) in enumerate(scored[:m1], start=1)],
    )


def build_reference_plan(clause: ClauseRecord, topic_keywords: TopicKeywordList,
                         n: int) -> ReferencePlan:
    """Filter a topic's ranked keywords down to those present in the
    clause's lemma set, keeping rank order, capped at n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if clause.topic != topic_keywords.topic:
        raise ValueError(f"topic mismatch: {clause.topic!r} vs {topic_keywords.topic!r}")
    lemma_set = {tok.lemma for tok in tokenize(clause.text)}
    plan = []
    for kw in topic_keywords.lemmas():
        if kw in lemma_set:
            plan.append(kw)
            if len(plan) == n:
                break
    return ReferencePlan(clause.clause_id, clause.topic, plan, "topic-ranked")


def build_sequential_plan(clause: ClauseRecord, n: int) -> ReferencePlan:
    """Plan a single clause in text order: keep the top-2n lemmas by
    clause-local salience, ordered by first occurrence, truncated to n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    kept = set(extract_topic_keywords([clause], m1=2 * n).lemmas())
    plan: list[str] = []
    for tok in tokenize(clause.text):
        if tok.lemma in kept and tok.lemma not in plan:
            plan.append(tok.lemma)
            if len(plan) == n:
                break
    return ReferencePlan(clause.clause_id, clause.topic, plan, "sequential")


def build_plan_dataset(corpus: Corpus, keyword_lists: dict[str, TopicKeywordList] | None,
                       mode: str, n: int) -> PlanDataset:
    """One reference plan per clause; empty plans are retained and counted."""
    if mode not in ("topic-ranked", "sequential"):
        raise ValueError(f"unknown plan mode: {mode!r}")
    if mode == "topic-ranked":
        missing = corpus.topics - set(keyword_lists or {})
        if missing:
            raise ValueError(f"keyword lists missing for topics: {sorted(missing)}")
    by_topic: dict[str, list[ReferencePlan]] = {}
    empty = 0
    for clause in corpus:
        if mode == "topic-ranked":
            plan = build_reference_plan(clause, keyword_lists[clause.topic], n)
        else:
            plan = build_sequential_plan(clause, n)
        if not plan.keywords:
            empty += 1
        by_topic.setdefault(clause.topic, []).append(plan)
    if empty:
        logger.info("%d of %d plans are empty", empty, len(corpus))
    return PlanDataset(by_topic)


def save_keywords(lists: dict[str, TopicKeywordList], m1: int, path) -> None:
    payload = {
        "m1": m1,
        "topics": {
            topic: [{"kw": kw, "score": score, "rank": rank}
                    for kw, score, rank in lists[topic].keywords]
            for topic in sorted(lists)
        },
    }
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, ensure_ascii=False, indent=2)
        f.write("\n")


def load_keywords(path) -> tuple[dict[str, TopicKeywordList], int]:
    with open(path, encoding="utf-8") as f:
        payload = json.load(f)
    lists = {
        topic: TopicKeywordList(topic, [(e["kw"], e["score"], e["rank"]) for e in entries])
        for topic, entries in payload["topics"].items()
    }
    return lists, payload["m1"]


def save_plans(dataset: PlanDataset, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for plan in dataset.all_plans():
            f.write(json.dumps({
                "clause_id": plan.clause_id, "topic": plan.topic,
                "mode": plan.mode, "plan": plan.keywords,
            }, ensure_ascii=False) + "\n")


def load_plans(path) -> PlanDataset:
    by_topic: dict[str, list[ReferencePlan]] = {}
    with open(path, encoding="utf-8") as f:
        for line in f:
            if not line.strip():
                continue
            obj = json.loads(line)
            plan = ReferencePlan(obj["clause_id"], obj["topic"],
                                 list(obj["plan"]), obj["mode"])
            by_topic.setdefault(plan.topic, []).append(plan)
    return PlanDataset(by_topic)
