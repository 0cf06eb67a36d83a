"""Both scoring engines, the Naive Bayes classifier, and distributions."""

from __future__ import annotations

import csv
import io
import math
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from electionpulse.sentiment import (
    NBCModel,
    PatternEntry,
    PolarityDistribution,
    SenseEntry,
    SentimentScore,
    compare_classifiers,
    distribution,
    load_pattern_lexicon,
    load_sense_lexicon,
    nbc_classify,
    nbc_train,
    pattern_score,
    polarity_class,
    score_all,
    subjectivity_class,
    swn_polarity,
    swn_subjectivity,
    swn_word_sentiment,
)

NEGATORS = frozenset({"not", "no", "never"})

PATTERN = {
    "great": PatternEntry("great", 0.8, 0.75),
    "good": PatternEntry("good", 0.7, 0.6),
    "bad": PatternEntry("bad", -0.7, 0.6),
    "vote": PatternEntry("vote", 0.0, 0.1),
}


def sense_line(pos_tag: str, synset: str, pos: float, neg: float, terms: str) -> str:
    return f"{pos_tag}\t{synset}\t{pos}\t{neg}\t{terms}\tgloss text"


class TestScoreTypes:
    def test_valid_score(self) -> None:
        score = SentimentScore(-1.0, 1.0)
        assert (score.polarity, score.subjectivity) == (-1.0, 1.0)

    @pytest.mark.parametrize("polarity,subjectivity", [(1.5, 0.5), (-1.01, 0.0), (0.0, -0.1), (0.0, 1.2)])
    def test_out_of_range_rejected(self, polarity: float, subjectivity: float) -> None:
        with pytest.raises(ValueError):
            SentimentScore(polarity, subjectivity)

    def test_sense_entry_sum_invariant(self) -> None:
        with pytest.raises(ValueError):
            SenseEntry("word", "a", 1, 0.9, 0.3, 0.1)

    def test_sense_entry_tag_and_rank(self) -> None:
        with pytest.raises(ValueError):
            SenseEntry("word", "x", 1, 0.5, 0.0, 0.5)
        with pytest.raises(ValueError):
            SenseEntry("word", "a", 0, 0.5, 0.0, 0.5)


class TestSenseLexicon:
    def test_fixture_loads_cleanly(self, sense_lexicon) -> None:
        assert sense_lexicon.rows_read == 50
        assert sense_lexicon.rows_rejected == 0
        assert len(sense_lexicon) == 52  # multi-term rows fan out

    def test_estimable_rows_are_exact(self, sense_lexicon) -> None:
        senses = {s.sense_rank: s for s in sense_lexicon.senses("estimable")}
        assert (senses[1].pos_score, senses[1].neg_score, senses[1].obj_score) == (0.75, 0.0, 0.25)
        assert (senses[3].pos_score, senses[3].neg_score, senses[3].obj_score) == (0.0, 0.0, 1.0)

    def test_bad_rows_are_counted_not_fatal(self) -> None:
        lines = [
            "# comment",
            sense_line("a", "00000001", 0.5, 0.25, "fine#1"),
            sense_line("a", "00000002", 0.9, 0.3, "broken#1"),  # sums past 1
            "a\t00000003\tnot_a_number\t0\tbad#1\tgloss",
            "too\tfew",
            sense_line("v", "00000004", 0.0, 0.0, "plain#2"),
        ]
        lexicon = load_sense_lexicon(lines)
        assert lexicon.rows_read == 5
        assert lexicon.rows_rejected == 3
        assert "fine" in lexicon and "plain" in lexicon
        assert "broken" not in lexicon

    def test_multi_term_row_fans_out(self) -> None:
        lexicon = load_sense_lexicon([sense_line("a", "00000001", 0.5, 0.0, "happy#1 glad#2")])
        assert len(lexicon.senses("happy")) == 1
        assert lexicon.senses("glad")[0].sense_rank == 2

    def test_lookup_is_case_insensitive(self) -> None:
        lexicon = load_sense_lexicon([sense_line("a", "00000001", 0.5, 0.0, "happy#1")])
        assert lexicon.senses("HAPPY")[0].pos_score == 0.5


class TestSwnScoring:
    def test_single_sense_is_identity(self) -> None:
        lexicon = load_sense_lexicon([sense_line("a", "00000001", 0.75, 0.0, "fine#1")])
        assert swn_word_sentiment(lexicon, "fine") == (0.75, 0.0)

    def test_rank_weighted_average(self) -> None:
        lexicon = load_sense_lexicon([
            sense_line("a", "00000001", 0.5, 0.0, "mixed#1"),
            sense_line("a", "00000002", 0.0, 0.5, "mixed#2"),
        ])
        pos, neg = swn_word_sentiment(lexicon, "mixed")
        # weights 1 and 1/2: pos = 0.5/1.5, neg = 0.25/1.5
        assert pos == pytest.approx(1 / 3, abs=1e-12)
        assert neg == pytest.approx(1 / 6, abs=1e-12)

    def test_unknown_word_is_none(self, sense_lexicon) -> None:
        assert swn_word_sentiment(sense_lexicon, "zzqqx") is None

    def test_fixture_good_aggregate(self, sense_lexicon) -> None:
        pos, neg = swn_word_sentiment(sense_lexicon, "good")
        assert pos == pytest.approx(2 / 3, abs=1e-12)
        assert neg == pytest.approx(1 / 24, abs=1e-12)

    def test_polarity_means_over_matched_tokens(self) -> None:
        lexicon = load_sense_lexicon([
            sense_line("a", "00000001", 0.8, 0.0, "fine#1"),
            sense_line("a", "00000002", 0.0, 0.6, "awful#1"),
        ])
        assert swn_polarity(["fine"], lexicon) == pytest.approx(0.8)
        assert swn_polarity(["fine", "awful"], lexicon) == pytest.approx((0.8 - 0.6) / 2)
        assert swn_polarity(["fine", "zzz"], lexicon) == pytest.approx(0.8)

    def test_no_match_scores_zero(self, sense_lexicon) -> None:
        assert swn_polarity(["zzqqx"], sense_lexicon) == 0.0
        assert swn_subjectivity(["zzqqx"], sense_lexicon) == 0.0

    def test_subjectivity_is_one_minus_mean_objectivity(self) -> None:
        lexicon = load_sense_lexicon([
            sense_line("a", "00000001", 0.6, 0.2, "loaded#1"),  # obj 0.2
            sense_line("a", "00000002", 0.0, 0.0, "plain#1"),   # obj 1.0
        ])
        assert swn_subjectivity(["loaded"], lexicon) == pytest.approx(0.8)
        assert swn_subjectivity(["loaded", "plain"], lexicon) == pytest.approx(0.4)


class TestPatternLexicon:
    def test_fixture_header_and_size(self, pattern_lexicon) -> None:
        assert len(pattern_lexicon) == 80
        assert "lemma" not in pattern_lexicon
        entry = pattern_lexicon["great"]
        assert entry.polarity > 0

    def test_duplicate_lemmas_average(self) -> None:
        lexicon = load_pattern_lexicon(io.StringIO("fine,0.4,0.6\nfine,0.8,0.2\n"))
        assert lexicon["fine"].polarity == pytest.approx(0.6)
        assert lexicon["fine"].subjectivity == pytest.approx(0.4)

    def test_out_of_range_row_raises(self) -> None:
        with pytest.raises(ValueError):
            load_pattern_lexicon(io.StringIO("fine,1.4,0.6\n"))

    def test_non_numeric_row_raises(self) -> None:
        with pytest.raises(ValueError):
            load_pattern_lexicon(io.StringIO("fine,huge,0.6\n"))


class TestPatternScoring:
    def test_single_match(self) -> None:
        score = pattern_score(["great"], PATTERN, NEGATORS)
        assert (score.polarity, score.subjectivity) == (0.8, 0.75)

    def test_mean_over_matches(self) -> None:
        score = pattern_score(["good", "bad"], PATTERN, NEGATORS)
        assert score.polarity == pytest.approx(0.0)
        assert score.subjectivity == pytest.approx(0.6)

    def test_no_match_is_zero_zero(self) -> None:
        score = pattern_score(["the", "crowd"], PATTERN, NEGATORS)
        assert (score.polarity, score.subjectivity) == (0.0, 0.0)

    def test_empty_tokens(self) -> None:
        assert pattern_score([], PATTERN, NEGATORS) == SentimentScore(0.0, 0.0)

    def test_negation_flips_and_halves(self) -> None:
        score = pattern_score(["not", "great"], PATTERN, NEGATORS)
        assert score.polarity == pytest.approx(-0.4)
        assert score.subjectivity == pytest.approx(0.75)

    def test_negation_window_is_two_tokens(self) -> None:
        near = pattern_score(["not", "so", "great"], PATTERN, NEGATORS)
        assert near.polarity == pytest.approx(-0.4)
        far = pattern_score(["not", "so", "very", "great"], PATTERN, NEGATORS)
        assert far.polarity == pytest.approx(0.8)

    def test_negation_never_touches_subjectivity(self, pattern_lexicon, negators) -> None:
        for lemma, entry in pattern_lexicon.items():
            negated = pattern_score(["not", lemma], pattern_lexicon, negators)
            assert negated.subjectivity == pytest.approx(entry.subjectivity)

    def test_negation_property_over_fixture_lexicon(self, pattern_lexicon, negators) -> None:
        for lemma, entry in pattern_lexicon.items():
            plain = pattern_score([lemma], pattern_lexicon, negators)
            negated = pattern_score(["no", lemma], pattern_lexicon, negators)
            assert plain.polarity == pytest.approx(entry.polarity)
            assert negated.polarity == pytest.approx(-entry.polarity / 2)

    def test_without_negators_order_never_matters(self) -> None:
        tokens = ["good", "bad", "vote", "crowd"]
        base = pattern_score(tokens, PATTERN)
        for permuted in permutations(tokens):
            score = pattern_score(list(permuted), PATTERN)
            # equal up to float summation order
            assert score.polarity == pytest.approx(base.polarity, abs=1e-12)
            assert score.subjectivity == pytest.approx(base.subjectivity, abs=1e-12)

    def test_negator_itself_can_be_scored(self) -> None:
        # A lexicon word that is also a negator still gets its own score.
        lexicon = dict(PATTERN)
        lexicon["never"] = PatternEntry("never", -0.2, 0.5)
        score = pattern_score(["never", "great"], lexicon, NEGATORS)
        assert score.polarity == pytest.approx((-0.2 + -0.4) / 2)

    @given(st.lists(st.sampled_from(["good", "bad", "vote", "great", "xx"]), max_size=8))
    def test_scores_stay_in_range(self, tokens: list[str]) -> None:
        score = pattern_score(tokens, PATTERN, NEGATORS)
        assert -1.0 <= score.polarity <= 1.0
        assert 0.0 <= score.subjectivity <= 1.0


class TestClasses:
    def test_polarity_classes(self) -> None:
        assert polarity_class(0.3) == "positive"
        assert polarity_class(0.0) == "neutral"
        assert polarity_class(-0.0001) == "negative"
        assert polarity_class(1e-9) == "positive"
        assert polarity_class(-1e-9) == "negative"

    def test_polarity_range_check(self) -> None:
        with pytest.raises(ValueError):
            polarity_class(1.2)

    def test_subjectivity_classes(self) -> None:
        assert subjectivity_class(0.9) == "subjective"
        assert subjectivity_class(0.5) == "objective"  # threshold not exceeded
        assert subjectivity_class(0.0) == "objective"
        assert subjectivity_class(0.5, threshold=0.4) == "subjective"

    def test_subjectivity_range_checks(self) -> None:
        with pytest.raises(ValueError):
            subjectivity_class(1.2)
        with pytest.raises(ValueError):
            subjectivity_class(0.5, threshold=-0.1)


class TestScoreAll:
    def test_alignment_and_ranges(self, kept, pattern_lexicon, negators, sense_lexicon) -> None:
        for engine in ("pattern", "swn"):
            polarity, subjectivity = score_all(
                kept,
                engine,
                pattern_lexicon=pattern_lexicon,
                negators=negators,
                sense_lexicon=sense_lexicon,
            )
            assert len(polarity) == len(subjectivity) == len(kept)
            assert all(-1.0 <= value <= 1.0 for value in polarity)
            assert all(0.0 <= value <= 1.0 for value in subjectivity)

    def test_empty_population(self, pattern_lexicon) -> None:
        assert score_all([], "pattern", pattern_lexicon=pattern_lexicon) == ([], [])

    def test_unknown_engine(self, kept, pattern_lexicon) -> None:
        with pytest.raises(ValueError):
            score_all(kept, "vader", pattern_lexicon=pattern_lexicon)

    def test_missing_lexicon(self, kept) -> None:
        with pytest.raises(ValueError):
            score_all(kept, "pattern")
        with pytest.raises(ValueError):
            score_all(kept, "swn")


def load_micro(path) -> list[tuple[list[str], str]]:
    docs = []
    with open(path, encoding="utf-8", newline="") as handle:
        for row in csv.reader(handle):
            if not row or row[0] == "label":
                continue
            docs.append((row[1].split(), row[0]))
    return docs


def brute_force_classify(model: NBCModel, tokens: list[str]) -> tuple[str, float]:
    """Direct probability products, no logs; ties to the smallest label."""
    raw = {}
    for label in model.labels:
        probability = model.class_priors[label]
        for token in tokens:
            if token in model.vocabulary:
                probability *= model.word_likelihoods[label][token]
        raw[label] = probability
    total = sum(raw.values())
    best = max(model.labels, key=lambda label: (raw[label], ))
    # max() keeps the first (lexicographically smallest) label on ties
    return best, raw[best] / total


class TestNaiveBayes:
    def test_two_doc_corpus_numbers(self, fixtures_dir) -> None:
        model = nbc_train(load_micro(fixtures_dir / "nbc_micro_1.csv"))
        assert model.class_priors == {"pos": 0.5, "neg": 0.5}
        # (1 + 1) / (2 + 1 * 4): one "good" in pos, two pos tokens, V = 4
        assert model.word_likelihoods["pos"]["good"] == pytest.approx(1 / 3, abs=1e-12)
        assert model.word_likelihoods["pos"]["bad"] == pytest.approx(1 / 6, abs=1e-12)

    def test_prior_from_doc_counts(self, fixtures_dir) -> None:
        model = nbc_train(load_micro(fixtures_dir / "nbc_micro_2.csv"))
        assert model.class_priors["pos"] == pytest.approx(0.75)

    def test_likelihoods_sum_to_one_per_label(self, fixtures_dir) -> None:
        for name in ("nbc_micro_1.csv", "nbc_micro_2.csv", "nbc_micro_3.csv"):
            model = nbc_train(load_micro(fixtures_dir / name))
            for label in model.labels:
                assert sum(model.word_likelihoods[label].values()) == pytest.approx(1.0, abs=1e-9)

    def test_training_validation(self) -> None:
        with pytest.raises(ValueError):
            nbc_train([])
        with pytest.raises(ValueError):
            nbc_train([(["a"], "pos"), (["b"], "pos")])
        with pytest.raises(ValueError):
            nbc_train([(["a"], "pos"), (["b"], "neg")], alpha=0.0)

    def test_classify_matches_brute_force(self, fixtures_dir) -> None:
        queries = [
            [],
            ["zzz"],
            ["good"],
            ["bad", "loss"],
            ["good", "win", "win"],
            ["good", "bad"],
            ["vote", "count"],
            ["great", "fail", "vote"],
        ]
        for name in ("nbc_micro_1.csv", "nbc_micro_2.csv", "nbc_micro_3.csv"):
            model = nbc_train(load_micro(fixtures_dir / name))
            for tokens in queries:
                label, posterior = nbc_classify(model, tokens)
                expect_label, expect_posterior = brute_force_classify(model, tokens)
                assert label == expect_label, (name, tokens)
                assert posterior == pytest.approx(expect_posterior, abs=1e-9)

    def test_empty_and_oov_reduce_to_prior(self, fixtures_dir) -> None:
        model = nbc_train(load_micro(fixtures_dir / "nbc_micro_2.csv"))
        assert nbc_classify(model, [])[0] == "pos"
        assert nbc_classify(model, [])[1] == pytest.approx(0.75)
        assert nbc_classify(model, ["zzz", "qqq"]) == nbc_classify(model, [])

    def test_exact_tie_goes_to_smallest_label(self) -> None:
        model = nbc_train([(["same"], "b_label"), (["same"], "a_label")])
        label, posterior = nbc_classify(model, ["same"])
        assert label == "a_label"
        assert posterior == pytest.approx(0.5)


class TestDistribution:
    def test_published_row_shape(self) -> None:
        labels = ["positive"] * 2447 + ["neutral"] * 3971 + ["negative"] * 1012
        dist = distribution(labels)
        assert dist.counts == (2447, 3971, 1012)
        assert dist.percentages == (32.93, 53.45, 13.62)
        assert dist.total == 7430

    def test_second_row_shape(self) -> None:
        labels = ["positive"] * 2916 + ["neutral"] * 3085 + ["negative"] * 1429
        dist = distribution(labels)
        assert dist.percentages == (39.25, 41.52, 19.23)

    def test_half_up_rounding(self) -> None:
        # 1/8 = 12.5%, which must round up, not to even.
        dist = distribution(["positive"] + ["neutral"] * 7)
        assert dist.percentages[0] == 12.5
        dist = distribution(["positive"] * 5 + ["neutral"] * 3995)
        assert dist.percentages[0] == 0.13  # 0.125 rounds half-up

    def test_empty_is_all_zero(self) -> None:
        dist = distribution([])
        assert dist.counts == (0, 0, 0)
        assert dist.percentages == (0.0, 0.0, 0.0)

    def test_unknown_label_raises(self) -> None:
        with pytest.raises(ValueError):
            distribution(["positive", "meh"])

    @given(st.tuples(st.integers(0, 10000), st.integers(0, 10000), st.integers(0, 10000)))
    def test_percentages_sum_near_100(self, counts: tuple[int, int, int]) -> None:
        positive, neutral, negative = counts
        if positive + neutral + negative == 0:
            return
        labels = ["positive"] * positive + ["neutral"] * neutral + ["negative"] * negative
        dist = distribution(labels)
        assert sum(dist.percentages) == pytest.approx(100.0, abs=0.03)


class TestCompare:
    def test_both_engines_cover_everyone(self, kept, pattern_lexicon, negators, sense_lexicon) -> None:
        table = compare_classifiers(
            kept,
            pattern_lexicon=pattern_lexicon,
            negators=negators,
            sense_lexicon=sense_lexicon,
        )
        assert set(table) == {"pattern", "swn"}
        assert table["pattern"].total == len(kept)
        assert table["swn"].total == len(kept)

    def test_fixture_pattern_distribution(self, kept, pattern_lexicon, negators, sense_lexicon) -> None:
        table = compare_classifiers(
            kept,
            pattern_lexicon=pattern_lexicon,
            negators=negators,
            sense_lexicon=sense_lexicon,
        )
        assert table["pattern"].counts == (26, 7, 10)
