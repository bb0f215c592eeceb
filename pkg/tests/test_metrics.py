import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clauseplan.corpus import TopicStats
from clauseplan.metrics import (
    EvalPair,
    bleu,
    eval_tokenize,
    evaluate_generation,
    rouge_l,
    rouge_n,
)


def pair(cand, ref, topic="general", clause_id="c0"):
    return EvalPair(clause_id, topic, cand, ref)


class TestEvalTokenize:
    def test_punctuation_split(self):
        assert eval_tokenize("Section 2.3(b) applies.") == \
            ["section", "2", ".", "3", "(", "b", ")", "applies", "."]

    def test_lowercase(self):
        assert eval_tokenize("The Agreement") == ["the", "agreement"]


class TestBleu:
    def test_identity_is_100(self):
        pairs = [pair("the provision shall remain in effect.",
                      "the provision shall remain in effect."),
                 pair("notice must be given.", "notice must be given.")]
        assert bleu(pairs) == pytest.approx(100.0)

    def test_brevity_penalty_case(self):
        score = bleu([pair("a b c d", "a b c d e")])
        assert score == pytest.approx(100 * math.exp(1 - 5 / 4))
        assert round(score, 2) == 77.88

    def test_zero_token_candidate_not_an_error(self):
        score = bleu([pair("", "a b c"), pair("a b c", "a b c")])
        assert 0.0 <= score <= 100.0

    def test_all_empty_candidates(self):
        assert bleu([pair("", "a b")]) == 0.0

    def test_disjoint_is_zero(self):
        assert bleu([pair("x y z w", "a b c d")]) == 0.0

    def test_bounded(self):
        assert 0.0 <= bleu([pair("a b", "a b c d e f")]) <= 100.0

    def test_pooling_consistency(self):
        pairs = [pair("the provision shall remain valid here",
                      "the provision shall remain valid there"),
                 pair("all notices must be in writing",
                      "all notices must be in writing always")]
        assert bleu(pairs + pairs) == pytest.approx(bleu(pairs))

    def test_permutation_invariant(self):
        pairs = [pair("a b c d e", "a b c e d"), pair("x y z w v", "x y w z v")]
        assert bleu(pairs) == pytest.approx(bleu(list(reversed(pairs))))

    def test_needs_pairs(self):
        with pytest.raises(ValueError):
            bleu([])


class TestRougeN:
    def test_identity(self):
        assert rouge_n([pair("a b c", "a b c")], 1) == (100.0, 100.0, 100.0)

    def test_bigram_half_overlap(self):
        p, r, f1 = rouge_n([pair("a b c", "a b d")], 2)
        assert (p, r, f1) == (50.0, 50.0, 50.0)

    def test_clipping(self):
        p, r, f1 = rouge_n([pair("a a a", "a")], 1)
        assert p == pytest.approx(100 / 3)
        assert r == 100.0
        assert f1 == pytest.approx(50.0)

    def test_too_short_for_ngrams_scores_zero(self):
        p, r, f1 = rouge_n([pair("a", "a")], 2)
        assert (p, r, f1) == (0.0, 0.0, 0.0)

    def test_subsequence_recall(self):
        # candidate containing the reference: unigram recall 100
        _, r, _ = rouge_n([pair("x a b c y", "a b c")], 1)
        assert r == 100.0

    def test_n_validation(self):
        with pytest.raises(ValueError):
            rouge_n([pair("a", "a")], 3)


class TestRougeL:
    def test_identity(self):
        assert rouge_l([pair("a b c", "a b c")]) == (100.0, 100.0, 100.0)

    def test_lcs_two_of_three(self):
        p, r, f1 = rouge_l([pair("a c b", "a b c")])
        assert p == r == f1 == pytest.approx(200 / 3)

    def test_disjoint_zero(self):
        assert rouge_l([pair("x y", "a b")]) == (0.0, 0.0, 0.0)

    @given(st.lists(st.tuples(
        st.lists(st.sampled_from("abcde"), min_size=1, max_size=8),
        st.lists(st.sampled_from("abcde"), min_size=1, max_size=8)),
        min_size=1, max_size=5))
    @settings(max_examples=100, deadline=None)
    def test_rouge_l_f1_never_exceeds_rouge_1_f1(self, token_pairs):
        pairs = [pair(" ".join(c), " ".join(r)) for c, r in token_pairs]
        assert rouge_l(pairs)[2] <= rouge_n(pairs, 1)[2] + 1e-9


class TestEvaluateGeneration:
    def mixed_pairs(self):
        return [
            pair("the provision remains valid", "the provision remains valid",
                 topic="low", clause_id="a"),
            pair("notice was sent by mail", "notice was sent by courier",
                 topic="high", clause_id="b"),
            pair("all taxes shall be withheld", "all taxes shall be withheld",
                 topic="high", clause_id="c"),
        ]

    def test_single_bin_equals_overall(self):
        stats = TopicStats({"low": 120, "high": 120})
        report = evaluate_generation(self.mixed_pairs(), stats)
        sub = report["by_bin"]["100-150"]
        assert sub["bleu"] == pytest.approx(report["bleu"])
        assert sub["n_pairs"] == 3

    def test_per_bin_matches_subset_recomputation(self):
        stats = TopicStats({"low": 120, "high": 600})
        pairs = self.mixed_pairs()
        report = evaluate_generation(pairs, stats)
        low = [p for p in pairs if p.topic == "low"]
        high = [p for p in pairs if p.topic == "high"]
        assert report["by_bin"]["100-150"]["bleu"] == pytest.approx(bleu(low))
        assert report["by_bin"]["500-1k"]["bleu"] == pytest.approx(bleu(high))

    def test_empty_bin_omitted(self):
        stats = TopicStats({"low": 120, "high": 130})
        report = evaluate_generation(self.mixed_pairs(), stats)
        assert set(report["by_bin"]) == {"100-150"}

    def test_unknown_topic_goes_unbinned(self):
        stats = TopicStats({"low": 120})
        report = evaluate_generation(self.mixed_pairs(), stats)
        assert report["by_bin"]["unbinned"]["n_pairs"] == 2

    def test_no_stats_no_bins(self):
        report = evaluate_generation(self.mixed_pairs())
        assert "by_bin" not in report
        assert report["n_pairs"] == 3
        assert report["rouge1"]["f1"] >= report["rougeL"]["f1"]

    def test_f1_is_harmonic_mean_per_pair(self):
        p, r, f1 = rouge_n([pair("a b", "a c")], 1)
        assert f1 == pytest.approx(2 * 50 * 50 / 100)


def test_permuting_pairs_leaves_scores_unchanged():
    rng = random.Random(4)
    words = "aa bb cc dd ee ff".split()
    pairs = [pair(" ".join(rng.choices(words, k=6)), " ".join(rng.choices(words, k=6)),
                  clause_id=f"c{i}") for i in range(8)]
    shuffled = pairs[::-1]
    assert bleu(pairs) == pytest.approx(bleu(shuffled))
    assert rouge_n(pairs, 1) == pytest.approx(rouge_n(shuffled, 1))
    assert rouge_l(pairs) == pytest.approx(rouge_l(shuffled))
