"""Read and write corpora.

Two formats:

* structured (JSON, canonical)::

    {"publications": [{"id": "p1", "byline": [
        {"author": "q1", "institute": "S", "role": "first"}, ...]}]}

* delimited (CSV), one byline entry per row, byline order = row order::

    publication_id,author_id,institute_id,role
    p1,q1,S,first
"""
import io
import json
import logging
from pathlib import Path

import pandas as pd

from institute_credit import BylineEntry, Corpus, Publication
from utils.errors import CorpusIOError, CorpusParseError, CorpusValidationError

logger = logging.getLogger(__name__)

DELIMITED_COLUMNS = ["publication_id", "author_id", "institute_id", "role"]
REQUIRED_COLUMNS = DELIMITED_COLUMNS[:3]
SUFFIXES = {".json": "structured", ".csv": "delimited", ".tsv": "delimited", ".txt": "delimited"}


def detect_format(path):
    fmt = SUFFIXES.get(Path(path).suffix.lower())
    if fmt is None:
        raise CorpusParseError("cannot infer corpus format from file suffix, pass --corpus-format", path=str(path))
    return fmt


def read_text(path):
    try:
        with open(path, "r", encoding="utf-8") as file:
            return file.read()
    except (OSError, UnicodeDecodeError) as e:
        raise CorpusIOError(f"cannot read {path}: {e}") from e


def ingest(path, fmt=None):
    """Load and validate a corpus file."""
    fmt = fmt or detect_format(path)
    text = read_text(path)
    corpus = loads(text, fmt, source=str(path))
    logger.info("✓ Loaded %d publications from %s", len(corpus), path)
    return corpus


def loads(text, fmt="structured", source=None):
    if fmt == "structured":
        corpus = _parse_structured(text, source)
    elif fmt == "delimited":
        corpus = _parse_delimited(text, source)
    else:
        raise CorpusParseError(f"unknown corpus format {fmt!r}", path=source)
    if not corpus.publications:
        raise CorpusValidationError("corpus has no publications")
    return corpus


def _line_of(text, needle, default=None):
    for number, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return number
    return default


def _parse_structured(text, source):
    if not text.strip():
        raise CorpusParseError("empty corpus file", line=1, path=source)
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise CorpusParseError(e.msg, line=e.lineno, path=source) from e

    if isinstance(document, dict):
        records = document.get("publications")
    else:
        records = document
    if not isinstance(records, list):
        raise CorpusParseError("expected a 'publications' list", line=1, path=source)

    publications = []
    for index, record in enumerate(records):
        position = f"publications[{index}]"
        if not isinstance(record, dict):
            raise CorpusParseError(f"{position} must be an object", path=source)
        publication_id = record.get("id")
        if publication_id is None or str(publication_id).strip() == "":
            raise CorpusValidationError("publication has no id", position=position)
        publication_id = str(publication_id)
        byline = record.get("byline")
        if not isinstance(byline, list):
            raise CorpusParseError(
                f"{position}.byline must be a list",
                line=_line_of(text, f'"{publication_id}"'),
                path=source,
            )
        entries = []
        for entry_index, entry in enumerate(byline):
            where = f"{position}.byline[{entry_index}]"
            if not isinstance(entry, dict):
                raise CorpusParseError(f"{where} must be an object", path=source)
            author, institute = entry.get("author"), entry.get("institute")
            if author in (None, "") or institute in (None, ""):
                raise CorpusValidationError(
                    "byline entry needs an author and an institute",
                    publication_id=publication_id,
                    position=where,
                )
            try:
                entries.append(BylineEntry(str(author), str(institute), entry.get("role")))
            except CorpusValidationError as e:
                raise CorpusValidationError(e.message, publication_id=publication_id, position=where) from e
        _check_pairs(publication_id, entries)
        publications.append(Publication(publication_id, tuple(entries)))
    return Corpus(tuple(publications))


def _check_pairs(publication_id, entries):
    seen = set()
    for position, entry in enumerate(entries, start=1):
        pair = (entry.author, entry.institute)
        if pair in seen:
            raise CorpusValidationError(
                f"duplicate (author, institute) pair {pair}",
                publication_id=publication_id,
                position=f"entry {position}",
            )
        seen.add(pair)


def _parse_delimited(text, source):
    if not text.strip():
        raise CorpusParseError("empty corpus file", line=1, path=source)
    sep = "\t" if source and source.endswith(".tsv") else ","
    try:
        frame = pd.read_csv(io.StringIO(text), sep=sep, dtype=str, keep_default_na=False, skip_blank_lines=True)
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise CorpusParseError(str(e), path=source) from e

    frame.columns = [str(column).strip() for column in frame.columns]
    missing = [column for column in REQUIRED_COLUMNS if column not in frame.columns]
    if missing:
        raise CorpusParseError(f"missing column(s): {', '.join(missing)}", line=1, path=source)
    if "role" not in frame.columns:
        frame["role"] = ""

    grouped = {}
    previous_id = None
    for row_number, row in enumerate(frame.itertuples(index=False), start=2):
        publication_id = row.publication_id.strip()
        author, institute = row.author_id.strip(), row.institute_id.strip()
        if not publication_id or not author or not institute:
            raise CorpusValidationError(
                "row needs publication_id, author_id and institute_id",
                publication_id=publication_id or None,
                position=f"line {row_number}",
            )
        # a byline is one contiguous block of rows
        if publication_id in grouped and publication_id != previous_id:
            raise CorpusValidationError(
                "duplicate publication id (rows are not contiguous)",
                publication_id=publication_id,
                position=f"line {row_number}",
            )
        previous_id = publication_id
        role = row.role.strip() or None
        try:
            entry = BylineEntry(author, institute, role)
        except CorpusValidationError as e:
            raise CorpusValidationError(e.message, publication_id=publication_id, position=f"line {row_number}") from e
        grouped.setdefault(publication_id, []).append((row_number, entry))

    publications = []
    for publication_id, rows in grouped.items():
        entries = [entry for _, entry in rows]
        try:
            _check_pairs(publication_id, entries)
            publications.append(Publication(publication_id, tuple(entries)))
        except CorpusValidationError as e:
            raise CorpusValidationError(
                e.message, publication_id=publication_id, position=e.position or f"line {rows[0][0]}"
            ) from e
    return Corpus(tuple(publications))


def serialize(corpus, fmt="structured"):
    if fmt == "structured":
        document = {
            "publications": [
                {
                    "id": publication.id,
                    "byline": [_entry_record(entry) for entry in publication.byline],
                }
                for publication in corpus.publications
            ]
        }
        return json.dumps(document, indent=2, ensure_ascii=False) + "\n"
    if fmt == "delimited":
        rows = [
            {
                "publication_id": publication.id,
                "author_id": entry.author,
                "institute_id": entry.institute,
                "role": entry.role.value if entry.role else "",
            }
            for publication in corpus.publications
            for entry in publication.byline
        ]
        frame = pd.DataFrame(rows, columns=DELIMITED_COLUMNS)
        return frame.to_csv(index=False, lineterminator="\n")
    raise ValueError(f"unknown corpus format {fmt!r}")


def _entry_record(entry):
    record = {"author": entry.author, "institute": entry.institute}
    if entry.role:
        record["role"] = entry.role.value
    return record


def dump_corpus(corpus, path, fmt=None):
    fmt = fmt or detect_format(path)
    try:
        with open(path, "w", encoding="utf-8") as file:
            file.write(serialize(corpus, fmt))
    except OSError as e:
        raise CorpusIOError(f"cannot write {path}: {e}") from e
