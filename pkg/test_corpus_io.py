import json

import pytest
from hypothesis import HealthCheck, given, settings

from institute_credit import BylineEntry, Corpus, Publication, Role, mfc_institute
from testing_utils import corpora, identifiers
from utils.corpus_io import detect_format, dump_corpus, ingest, loads, serialize
from utils.errors import CorpusIOError, CorpusParseError, CorpusValidationError


@pytest.mark.parametrize("name", ["mixed_corpus.json", "mixed_corpus.csv"])
def test_mixed_corpus_files(data_dir, mixed_corpus, name):
    corpus = ingest(data_dir / name)
    assert corpus == mixed_corpus
    assert mfc_institute(corpus, "S", 1) == mfc_institute(mixed_corpus, "S", 1)


def test_both_formats_agree(data_dir):
    assert ingest(data_dir / "mixed_corpus.json") == ingest(data_dir / "mixed_corpus.csv")


def test_detect_format():
    assert detect_format("corpus.JSON") == "structured"
    assert detect_format("corpus.tsv") == "delimited"
    with pytest.raises(CorpusParseError):
        detect_format("corpus.xlsx")


def test_missing_file(tmp_path):
    with pytest.raises(CorpusIOError):
        ingest(tmp_path / "absent.json")


class TestStructured:
    @pytest.mark.parametrize("text", ["", "   \n"])
    def test_empty_file(self, text):
        with pytest.raises(CorpusParseError):
            loads(text, "structured")

    def test_broken_json_reports_line(self):
        with pytest.raises(CorpusParseError) as excinfo:
            loads('{"publications": [\n  {"id": "p1",,}\n]}', "structured")
        assert excinfo.value.line == 2

    def test_no_publications(self):
        with pytest.raises(CorpusValidationError):
            loads('{"publications": []}', "structured")

    def test_publication_without_authors(self):
        text = json.dumps({"publications": [{"id": "p9", "byline": []}]})
        with pytest.raises(CorpusValidationError) as excinfo:
            loads(text, "structured")
        assert excinfo.value.publication_id == "p9"
        assert "p9" in str(excinfo.value)

    def test_missing_id(self):
        text = json.dumps({"publications": [{"byline": [{"author": "a", "institute": "S"}]}]})
        with pytest.raises(CorpusValidationError):
            loads(text, "structured")

    def test_duplicate_pair(self):
        byline = [{"author": "a", "institute": "S"}, {"author": "a", "institute": "S"}]
        with pytest.raises(CorpusValidationError) as excinfo:
            loads(json.dumps({"publications": [{"id": "p1", "byline": byline}]}), "structured")
        assert excinfo.value.position == "entry 2"

    def test_duplicate_publication_id(self):
        record = {"id": "p1", "byline": [{"author": "a", "institute": "S"}]}
        with pytest.raises(CorpusValidationError):
            loads(json.dumps({"publications": [record, record]}), "structured")

    def test_unknown_role_names_position(self):
        byline = [{"author": "a", "institute": "S", "role": "senior"}]
        with pytest.raises(CorpusValidationError) as excinfo:
            loads(json.dumps({"publications": [{"id": "p1", "byline": byline}]}), "structured")
        assert excinfo.value.position == "publications[0].byline[0]"

    def test_roles_are_kept(self):
        byline = [{"author": "a", "institute": "S"}, {"author": "b", "institute": "T", "role": "Corresponding"}]
        corpus = loads(json.dumps([{"id": "p1", "byline": byline}]), "structured")
        assert corpus.get("p1").byline[1].role is Role.CORRESPONDING


class TestDelimited:
    def test_missing_column(self):
        with pytest.raises(CorpusParseError):
            loads("publication_id,author_id\np1,a\n", "delimited")

    def test_role_column_optional(self):
        corpus = loads("publication_id,author_id,institute_id\np1,a,S\np1,b,T\n", "delimited")
        assert corpus.get("p1").counts() == {"S": 1, "T": 1}

    def test_non_contiguous_rows(self):
        text = "publication_id,author_id,institute_id,role\np1,a,S,\np2,b,S,\np1,c,T,\n"
        with pytest.raises(CorpusValidationError) as excinfo:
            loads(text, "delimited")
        assert excinfo.value.publication_id == "p1"
        assert excinfo.value.position == "line 4"

    def test_blank_institute(self):
        with pytest.raises(CorpusValidationError):
            loads("publication_id,author_id,institute_id,role\np1,a,,\n", "delimited")

    def test_duplicate_author(self):
        text = "publication_id,author_id,institute_id,role\np1,a,S,\np1,a,T,\n"
        with pytest.raises(CorpusValidationError):
            loads(text, "delimited")

    def test_tab_separated(self, tmp_path):
        path = tmp_path / "corpus.tsv"
        path.write_text("publication_id\tauthor_id\tinstitute_id\trole\np1\ta\tS\tfirst\n", encoding="utf-8")
        assert ingest(path).get("p1").byline[0].role is Role.FIRST


class TestRoundTrip:
    @settings(max_examples=100, suppress_health_check=[HealthCheck.too_slow])
    @given(corpora(roles=True))
    def test_structured(self, corpus):
        assert loads(serialize(corpus, "structured"), "structured") == corpus

    @settings(max_examples=100, suppress_health_check=[HealthCheck.too_slow])
    @given(corpora(roles=True))
    def test_delimited(self, corpus):
        assert loads(serialize(corpus, "delimited"), "delimited") == corpus

    @settings(max_examples=100, suppress_health_check=[HealthCheck.too_slow])
    @given(corpora(institutes=identifiers, roles=True))
    def test_free_text_ids_survive_both_formats(self, corpus):
        for fmt in ("structured", "delimited"):
            assert loads(serialize(corpus, fmt), fmt) == corpus

    def test_padded_ids_agree_across_formats(self):
        padded = Corpus((Publication(" p1", (BylineEntry(" q1", "S"), BylineEntry("q2, jr", 'T "x" '))),))
        assert padded.get("p1").byline[1].institute == 'T "x"'
        for fmt in ("structured", "delimited"):
            assert loads(serialize(padded, fmt), fmt) == padded

    def test_blank_id_rejected(self):
        with pytest.raises(CorpusValidationError):
            BylineEntry("  ", "S")

    def test_dump_and_ingest(self, tmp_path, mixed_corpus):
        for name in ("out.json", "out.csv"):
            dump_corpus(mixed_corpus, tmp_path / name)
            assert ingest(tmp_path / name) == mixed_corpus

    def test_serialize_is_stable(self, mixed_corpus):
        assert serialize(mixed_corpus, "delimited") == serialize(mixed_corpus, "delimited")
        with pytest.raises(ValueError):
            serialize(mixed_corpus, "yaml")
