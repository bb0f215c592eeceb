"""Corpus-level BLEU and per-pair ROUGE-1/2/L for generated clauses."""

from __future__ import annotations

import logging
import math
import re
from collections import Counter
from dataclasses import dataclass

from .corpus import DEFAULT_BIN_EDGES, TopicStats, bin_label_for_count

logger = logging.getLogger(__name__)

_EVAL_TOKEN = re.compile(r"\w+|[^\w\s]")


@dataclass(frozen=True)
class EvalPair:
    clause_id: str
    topic: str
    candidate: str
    reference: str


def eval_tokenize(text: str) -> list[str]:
    """Lowercase, split punctuation from words, split on whitespace."""
    return _EVAL_TOKEN.findall(text.lower())


def _ngrams(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def bleu(pairs: list[EvalPair], max_order: int = 4) -> float:
    """Corpus BLEU with clipped n-gram precisions pooled over all pairs.

    Zero numerators of orders >= 2 get add-1 smoothing; the brevity
    penalty uses pooled lengths. Scaled to [0, 100].
    """
    if not pairs:
        raise ValueError("bleu needs at least one pair")
    matches = [0] * max_order
    totals = [0] * max_order
    cand_len = ref_len = 0
    for pair in pairs:
        cand = eval_tokenize(pair.candidate)
        ref = eval_tokenize(pair.reference)
        cand_len += len(cand)
        ref_len += len(ref)
        for n in range(1, max_order + 1):
            cand_ngrams = _ngrams(cand, n)
            ref_ngrams = _ngrams(ref, n)
            matches[n - 1] += sum(min(c, ref_ngrams[g]) for g, c in cand_ngrams.items())
            totals[n - 1] += sum(cand_ngrams.values())
    if cand_len == 0:
        return 0.0

    log_sum = 0.0
    for n in range(1, max_order + 1):
        num, den = matches[n - 1], totals[n - 1]
        if num == 0:
            if n == 1:
                return 0.0
            num, den = num + 1, den + 1
        log_sum += math.log(num / den)
    bp = 1.0 if cand_len >= ref_len else math.exp(1.0 - ref_len / cand_len)
    return 100.0 * bp * math.exp(log_sum / max_order)


def _f1(p: float, r: float) -> float:
    return 2 * p * r / (p + r) if p + r > 0 else 0.0


def _mean_prf(per_pair: list[tuple[float, float, float]]) -> tuple[float, float, float]:
    n = len(per_pair)
    return (
        100.0 * sum(p for p, _, _ in per_pair) / n,
        100.0 * sum(r for _, r, _ in per_pair) / n,
        100.0 * sum(f for _, _, f in per_pair) / n,
    )


def rouge_n(pairs: list[EvalPair], n: int) -> tuple[float, float, float]:
    """Mean per-pair clipped n-gram precision/recall/F1, scaled to [0, 100]."""
    if n not in (1, 2):
        raise ValueError("rouge_n supports n in {1, 2}")
    if not pairs:
        raise ValueError("rouge_n needs at least one pair")
    per_pair = []
    for pair in pairs:
        cand = _ngrams(eval_tokenize(pair.candidate), n)
        ref = _ngrams(eval_tokenize(pair.reference), n)
        overlap = sum(min(c, ref[g]) for g, c in cand.items())
        cand_total, ref_total = sum(cand.values()), sum(ref.values())
        p = overlap / cand_total if cand_total else 0.0
        r = overlap / ref_total if ref_total else 0.0
        per_pair.append((p, r, _f1(p, r)))
    return _mean_prf(per_pair)


def _lcs_len(a: list[str], b: list[str]) -> int:
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        curr = [0]
        for j, y in enumerate(b, start=1):
            curr.append(prev[j - 1] + 1 if x == y else max(prev[j], curr[j - 1]))
        prev = curr
    return prev[-1]


def rouge_l(pairs: list[EvalPair]) -> tuple[float, float, float]:
    """Mean per-pair LCS-based precision/recall/F1, scaled to [0, 100]."""
    if not pairs:
        raise ValueError("rouge_l needs at least one pair")
    per_pair = []
    for pair in pairs:
        cand = eval_tokenize(pair.candidate)
        ref = eval_tokenize(pair.reference)
        lcs = _lcs_len(cand, ref)
        p = lcs / len(cand) if cand else 0.0
        r = lcs / len(ref) if ref else 0.0
        per_pair.append((p, r, _f1(p, r)))
    return _mean_prf(per_pair)


def _report(pairs: list[EvalPair]) -> dict:
    r1, r2, rl = rouge_n(pairs, 1), rouge_n(pairs, 2), rouge_l(pairs)
    return {
        "bleu": bleu(pairs),
        "rouge1": dict(zip(("p", "r", "f1"), r1)),
        "rouge2": dict(zip(("p", "r", "f1"), r2)),
        "rougeL": dict(zip(("p", "r", "f1"), rl)),
        "n_pairs": len(pairs),
    }


def evaluate_generation(pairs: list[EvalPair], stats: TopicStats | None = None,
                        bin_edges=DEFAULT_BIN_EDGES) -> dict:
    """Overall metrics report, plus per-frequency-bin slices when topic
    stats are supplied. Pairs with topics missing from the stats land in
    an "unbinned" slice."""
    report = _report(pairs)
    if stats is None:
        return report
    by_bin: dict[str, list[EvalPair]] = {}
    for pair in pairs:
        count = stats.per_topic.get(pair.topic)
        label = bin_label_for_count(count, bin_edges) if count is not None else None
        if label is None:
            logger.warning("pair %s: topic %r not binnable", pair.clause_id, pair.topic)
            label = "unbinned"
        by_bin.setdefault(label, []).append(pair)
    report["by_bin"] = {label: _report(subset) for label, subset in sorted(by_bin.items())}
    return report
