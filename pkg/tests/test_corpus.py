import random

import pytest

from someany.corpus import (
    Corpus,
    CorpusFormatError,
    Family,
    Population,
    Pronoun,
    SentenceRecord,
    load_corpus,
    locate_ips,
    save_corpus,
    substitute,
    tokenize,
)


class TestPronoun:
    def test_alternate_is_involution(self):
        for p in Pronoun:
            assert p.alternate().alternate() is p

    def test_alternate_flips_family(self):
        for p in Pronoun:
            assert p.alternate().family is not p.family
        assert Pronoun.SOMEONE.family is Family.SOME
        assert Pronoun.ANYTHING.family is Family.ANY

    def test_alternate_preserves_person_thing(self):
        assert Pronoun.SOMEONE.alternate() is Pronoun.ANYONE
        assert Pronoun.SOMETHING.alternate() is Pronoun.ANYTHING


class TestTokenize:
    def test_clitic_and_terminal_punct(self):
        assert tokenize("They didn't stole something.") == [
            "They", "did", "n't", "stole", "something", "."]

    def test_question(self):
        assert tokenize("Anyone know what the issue might be?") == [
            "Anyone", "know", "what", "the", "issue", "might", "be", "?"]

    def test_empty(self):
        assert tokenize("") == []
        assert tokenize("   \t\n") == []

    def test_repeated_terminal_punct(self):
        assert tokenize("wait...") == ["wait", ".", ".", "."]
        assert tokenize("really?!") == ["really", "?", "!"]

    def test_casing_preserved(self):
        assert tokenize("DIDN'T WE?") == ["DID", "N'T", "WE", "?"]

    def test_bare_clitic_and_punct_left_alone(self):
        assert tokenize("n't . ,") == ["n't", ".", ","]

    def test_deterministic(self):
        text = "If you can't say anything nice, don't say anything at all."
        assert tokenize(text) == tokenize(text)


class TestLocateIps:
    def test_sentence_initial(self):
        assert locate_ips(["Someone", "called"]) == [(0, Pronoun.SOMEONE)]

    def test_non_target_indefinites(self):
        assert locate_ips(["nothing", "here"]) == []

    def test_body_forms_excluded(self):
        assert locate_ips(["anybody", "home"]) == []
        assert locate_ips(["somebody", "called"]) == []

    def test_multiple_in_order(self):
        tokens = ["someone", "told", "anyone", "about", "anything"]
        assert locate_ips(tokens) == [
            (0, Pronoun.SOMEONE), (2, Pronoun.ANYONE), (4, Pronoun.ANYTHING)]

    def test_indices_in_bounds_on_random_text(self):
        rng = random.Random(7)
        words = ["someone", "anything", "the", "dog", "ANYONE", "ran.", "fast,"]
        for _ in range(200):
            text = " ".join(rng.choices(words, k=rng.randint(0, 12)))
            tokens = tokenize(text)
            for index, pron in locate_ips(tokens):
                assert 0 <= index < len(tokens)
                assert tokens[index].lower() == pron.lemma


def _record(tokens, ip_index, rec_id="r1", population=Population.NATIVE):
    return SentenceRecord(
        id=rec_id,
        tokens=tuple(tokens),
        ip_index=ip_index,
        original=Pronoun.from_lemma(tokens[ip_index]),
        population=population,
        raw_text=" ".join(tokens),
    )


class TestSubstitute:
    def test_mid_sentence(self):
        rec = _record(["They", "did", "n't", "stole", "something", "."], 4)
        assert substitute(rec) == ("They", "did", "n't", "stole", "anything", ".")

    def test_capitalization_preserved(self):
        rec = _record(["Someone", "told", "me"], 0)
        assert substitute(rec) == ("Anyone", "told", "me")

    def test_all_caps_preserved(self):
        rec = SentenceRecord(id="x", tokens=("I", "saw", "SOMETHING"), ip_index=2,
                             original=Pronoun.SOMETHING, population=Population.NATIVE,
                             raw_text="I saw SOMETHING")
        assert substitute(rec) == ("I", "saw", "ANYTHING")

    def test_involution(self):
        rec = _record(["Anyone", "seen", "something", "?"], 0)
        once = substitute(rec)
        twice = substitute(SentenceRecord(
            id=rec.id, tokens=once, ip_index=rec.ip_index,
            original=rec.original.alternate(), population=rec.population,
            raw_text=rec.raw_text))
        assert twice == rec.tokens

    def test_other_occurrences_untouched(self):
        rec = _record(["someone", "told", "someone", "else"], 0)
        assert substitute(rec) == ("anyone", "told", "someone", "else")


class TestRecordInvariants:
    def test_ip_index_out_of_range(self):
        with pytest.raises(ValueError, match="out of range"):
            SentenceRecord(id="x", tokens=("someone",), ip_index=3,
                           original=Pronoun.SOMEONE,
                           population=Population.NATIVE, raw_text="someone")

    def test_token_mismatch(self):
        with pytest.raises(ValueError, match="does not match"):
            SentenceRecord(id="x", tokens=("hello", "there"), ip_index=0,
                           original=Pronoun.SOMEONE,
                           population=Population.NATIVE, raw_text="hello there")


def _random_records(rng, n):
    filler = ["the", "dog", "ran", "home", "very", "fast", "today", "and",
              "then", "slept"]
    records = []
    for i in range(n):
        length = rng.randint(1, 10)
        words = rng.choices(filler, k=length)
        lemma = rng.choice(list(Pronoun)).lemma
        word = rng.choice([lemma, lemma.capitalize(), lemma.upper()])
        pos = rng.randrange(length + 1)
        words.insert(pos, word)
        records.append(SentenceRecord(
            id=f"rec-{i:04d}",
            tokens=tuple(words),
            ip_index=pos,
            original=Pronoun.from_lemma(lemma),
            population=rng.choice(list(Population)),
            raw_text=" ".join(words),
        ))
    return records


class TestCorpusIO:
    def test_single_line(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text('{"id": "a", "text": "Someone called.", "ip_index": 0, '
                        '"original": "someone", "population": "NATIVE"}\n')
        got = load_corpus(path)
        assert len(got) == 1
        assert got.records[0].tokens == ("Someone", "called", ".")

    def test_missing_field_reports_line(self, tmp_path):
        path = tmp_path / "c.jsonl"
        good = ('{"id": "a", "text": "Someone called.", "ip_index": 0, '
                '"original": "someone", "population": "NATIVE"}')
        bad = '{"id": "b", "text": "Anyone here?", "original": "anyone", "population": "NATIVE"}'
        path.write_text(good + "\n" + bad + "\n")
        with pytest.raises(CorpusFormatError, match="line 2") as info:
            load_corpus(path)
        assert info.value.line_number == 2

    def test_invalid_json_reports_line(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text("{not json}\n")
        with pytest.raises(CorpusFormatError, match="line 1"):
            load_corpus(path)

    def test_duplicate_id(self, tmp_path):
        path = tmp_path / "c.jsonl"
        line = ('{"id": "a", "text": "Someone called.", "ip_index": 0, '
                '"original": "someone", "population": "NATIVE"}')
        path.write_text(line + "\n" + line + "\n")
        with pytest.raises(CorpusFormatError, match="duplicate"):
            load_corpus(path)

    def test_loader_enforces_record_invariants(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text('{"id": "a", "text": "Someone called.", "ip_index": 1, '
                        '"original": "someone", "population": "NATIVE"}\n')
        with pytest.raises(CorpusFormatError, match="line 1"):
            load_corpus(path)

    def test_round_trip_random_records(self, tmp_path):
        rng = random.Random(42)
        records = _random_records(rng, 100)
        path = tmp_path / "c.jsonl"
        save_corpus(Corpus(records=records), path)
        loaded = load_corpus(path)
        assert len(loaded) == len(records)
        for orig, got in zip(records, loaded.records):
            assert got.id == orig.id
            assert got.tokens == orig.tokens
            assert got.ip_index == orig.ip_index
            assert got.original is orig.original
            assert got.population is orig.population
            assert got.raw_text == orig.raw_text

    def test_unknown_fields_survive_round_trip(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text('{"id": "a", "text": "Someone called.", "ip_index": 0, '
                        '"original": "someone", "population": "NATIVE", '
                        '"gold": "FELICITOUS", "note": 3}\n')
        loaded = load_corpus(path)
        assert loaded.source_meta["extra_fields"]["a"] == {"gold": "FELICITOUS", "note": 3}
        out = tmp_path / "o.jsonl"
        save_corpus(loaded, out)
        reloaded = load_corpus(out)
        assert reloaded.source_meta["extra_fields"]["a"] == {"gold": "FELICITOUS", "note": 3}

    def test_corpus_rejects_duplicate_ids(self):
        rec = _record(["someone", "waved"], 0, rec_id="dup")
        with pytest.raises(ValueError, match="duplicate"):
            Corpus(records=[rec, rec])
