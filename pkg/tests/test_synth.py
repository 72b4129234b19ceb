import pytest

from someany.annotation import GoldLabel
from someany.classifier import CoarseClass, classify_usage
from someany.corpus import Family
from someany.synth import synth_corpus, synth_sentences


class TestSynthCorpus:
    def test_zero_corruption_all_felicitous(self):
        _, gold = synth_corpus(seed=1, size=50, corruption_rate=0.0)
        assert set(gold.values()) == {GoldLabel.FELICITOUS}

    def test_exact_corruption_count(self):
        _, gold = synth_corpus(seed=2, size=200, corruption_rate=0.2)
        assert sum(1 for g in gold.values() if g is GoldLabel.INFELICITOUS) == 40

    def test_full_corruption(self):
        _, gold = synth_corpus(seed=3, size=30, corruption_rate=1.0)
        assert set(gold.values()) == {GoldLabel.INFELICITOUS}

    def test_same_seed_same_corpus(self):
        a, gold_a = synth_corpus(seed=9, size=80, corruption_rate=0.25)
        b, gold_b = synth_corpus(seed=9, size=80, corruption_rate=0.25)
        assert gold_a == gold_b
        assert [r.raw_text for r in a.records] == [r.raw_text for r in b.records]

    def test_different_seed_differs(self):
        a, _ = synth_corpus(seed=9, size=80, corruption_rate=0.25)
        b, _ = synth_corpus(seed=10, size=80, corruption_rate=0.25)
        assert [r.raw_text for r in a.records] != [r.raw_text for r in b.records]

    def test_records_carry_gold_extras(self):
        corpus, gold = synth_corpus(seed=4, size=20, corruption_rate=0.5)
        extras = corpus.source_meta["extra_fields"]
        for record in corpus.records:
            assert extras[record.id]["gold"] == gold[record.id].value
            assert extras[record.id]["confidence"] == 1.0

    def test_context_determines_felicitous_family(self):
        corpus, gold = synth_corpus(seed=5, size=300, corruption_rate=0.0)
        for record in corpus.records:
            cls = classify_usage(record)
            if cls in (CoarseClass.DN, CoarseClass.QU):
                assert record.original.family is Family.ANY, record.raw_text
            else:
                assert record.original.family is Family.SOME, record.raw_text

    def test_corruption_flips_family(self):
        clean, _ = synth_corpus(seed=6, size=100, corruption_rate=0.0)
        dirty, gold = synth_corpus(seed=6, size=100, corruption_rate=0.3)
        for before, after in zip(clean.records, dirty.records):
            if gold[after.id] is GoldLabel.INFELICITOUS:
                assert after.original is before.original.alternate()
            else:
                assert after.original is before.original

    def test_size_validation(self):
        with pytest.raises(ValueError):
            synth_corpus(seed=1, size=0, corruption_rate=0.0)
        with pytest.raises(ValueError):
            synth_corpus(seed=1, size=10, corruption_rate=1.5)


class TestSynthSentences:
    def test_deterministic(self):
        assert synth_sentences(7, 40) == synth_sentences(7, 40)

    def test_size(self):
        assert len(synth_sentences(7, 123)) == 123
