"""Institute-level scores over a set of publications.

For a target institute S and publication p_j, Y_j is the number of S authors,
N_j the number of authors and M_j the number of distinct institutes in the
byline. Three parametric families interpolate between the classical counting
methods:

    CMFC_k(S) = sum_j Y_j / N_j^(1/k)      complete-fractionalized .. complete
    MFC_k(S)  = sum_j (Y_j / N_j)^(1/k)    complete-fractionalized .. whole
    PMFC_k(S) = sum_j (delta_j / M_j)^(1/k) whole-fractionalized .. whole

Scores are exact Fractions at k = 1 and k = inf and floats otherwise.
"""
import logging
import numbers
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np
import pandas as pd

from credit_core import as_k, exact_root
from utils.errors import CorpusValidationError, DomainError

logger = logging.getLogger(__name__)


class Role(str, Enum):
    FIRST = "first"
    SECOND = "second"
    MIDDLE = "middle"
    CORRESPONDING = "corresponding"

    @classmethod
    def parse(cls, value):
        if value is None or isinstance(value, Role):
            return value
        token = str(value).strip().lower()
        if not token:
            return None
        try:
            return cls(token)
        except ValueError:
            allowed = ", ".join(role.value for role in cls)
            raise CorpusValidationError(f"unknown role {value!r}, expected one of: {allowed}") from None


def derive_roles(n_authors):
    """Positional roles: first, second (only when N >= 3), middle..., corresponding last."""
    if n_authors == 1:
        return [Role.FIRST]
    roles = [Role.MIDDLE] * n_authors
    roles[0] = Role.FIRST
    roles[-1] = Role.CORRESPONDING
    if n_authors >= 3:
        roles[1] = Role.SECOND
    return roles


def _identifier(value, what):
    """Ids compare on their text with surrounding whitespace removed."""
    if isinstance(value, str):
        value = value.strip()
        if not value:
            raise CorpusValidationError(f"{what} id is blank")
    return value


@dataclass(frozen=True)
class BylineEntry:
    author: str
    institute: str
    role: Role = None

    def __post_init__(self):
        object.__setattr__(self, "author", _identifier(self.author, "author"))
        object.__setattr__(self, "institute", _identifier(self.institute, "institute"))
        object.__setattr__(self, "role", Role.parse(self.role))


@dataclass(frozen=True)
class Publication:
    id: str
    byline: tuple

    def __post_init__(self):
        object.__setattr__(self, "id", _identifier(self.id, "publication"))
        byline = tuple(
            entry if isinstance(entry, BylineEntry) else BylineEntry(*entry) for entry in self.byline
        )
        if not byline:
            raise CorpusValidationError("byline has no authors", publication_id=self.id)
        seen = {}
        for position, entry in enumerate(byline, start=1):
            if entry.author in seen:
                raise CorpusValidationError(
                    f"author {entry.author!r} appears twice (first at entry {seen[entry.author]})",
                    publication_id=self.id,
                    position=f"entry {position}",
                )
            seen[entry.author] = position
        object.__setattr__(self, "byline", byline)

    @property
    def n_authors(self):
        return len(self.byline)

    @property
    def institutes(self):
        return sorted({entry.institute for entry in self.byline})

    @property
    def n_institutes(self):
        return len(self.institutes)

    @property
    def authors(self):
        return [entry.author for entry in self.byline]

    def count(self, institute):
        """Y: number of authors of ``institute`` in the byline."""
        return sum(1 for entry in self.byline if entry.institute == institute)

    def counts(self):
        """Author count per institute, institutes sorted by id."""
        return {institute: self.count(institute) for institute in self.institutes}

    def roles(self):
        """Effective role per entry; explicit tags override positional derivation."""
        positional = derive_roles(self.n_authors)
        return [entry.role or derived for entry, derived in zip(self.byline, positional)]


@dataclass(frozen=True)
class Corpus:
    publications: tuple = field(default_factory=tuple)

    def __post_init__(self):
        publications = tuple(self.publications)
        seen = set()
        for position, publication in enumerate(publications, start=1):
            if publication.id in seen:
                raise CorpusValidationError(
                    "duplicate publication id", publication_id=publication.id, position=f"publication {position}"
                )
            seen.add(publication.id)
        object.__setattr__(self, "publications", publications)

    def __iter__(self):
        return iter(self.publications)

    def __len__(self):
        return len(self.publications)

    def get(self, publication_id):
        for publication in self.publications:
            if publication.id == publication_id:
                return publication
        raise KeyError(publication_id)

    @property
    def institutes(self):
        return sorted({entry.institute for p in self.publications for entry in p.byline})

    @property
    def authors(self):
        return sorted({entry.author for p in self.publications for entry in p.byline})


def as_corpus(data):
    if isinstance(data, Corpus):
        return data
    if isinstance(data, Publication):
        return Corpus((data,))
    return Corpus(tuple(data))


@dataclass(frozen=True)
class RoleWeightScheme:
    weights: dict

    def __post_init__(self):
        given = {
            (key.value if isinstance(key, Role) else str(key).strip().lower()): raw
            for key, raw in self.weights.items()
        }
        unknown = set(given) - {role.value for role in Role}
        if unknown:
            raise DomainError(f"unknown role tags in scheme: {', '.join(sorted(unknown))}")
        weights = {}
        for role in Role:
            raw = given.get(role.value, 1)
            try:
                weight = Fraction(str(raw))
            except (ValueError, ZeroDivisionError):
                raise DomainError(f"weight for role {role.value!r} must be a number, got {raw!r}") from None
            if weight <= 0:
                raise DomainError(f"weight for role {role.value!r} must be positive, got {raw!r}")
            weights[role] = weight
        object.__setattr__(self, "weights", weights)

    def weight(self, role):
        return self.weights[Role.parse(role)]

    @classmethod
    def uniform(cls):
        return cls({})


def as_scheme(scheme):
    if scheme is None or isinstance(scheme, RoleWeightScheme):
        return scheme
    return RoleWeightScheme(dict(scheme))


@dataclass(frozen=True)
class ClassicalScores:
    complete: int
    fractionalized_complete: Fraction
    whole: int
    fractionalized_whole: Fraction

    def as_tuple(self):
        return (self.complete, self.fractionalized_complete, self.whole, self.fractionalized_whole)


CLASSICAL_METHODS = ("complete", "fractionalized_complete", "whole", "fractionalized_whole")


@dataclass(frozen=True)
class IncidenceMatrix:
    """a_ij = 1 iff author q_i of the institute is in the byline of p_j."""

    institute: str
    rows: tuple
    cols: tuple
    entries: np.ndarray
    n_authors: np.ndarray
    n_institutes: np.ndarray

    @property
    def shape(self):
        return self.entries.shape

    @property
    def column_sums(self):
        """Y_j."""
        return self.entries.sum(axis=0).astype(int)

    @property
    def participation(self):
        """delta_j = 1 iff Y_j >= 1."""
        return (self.column_sums >= 1).astype(int)

    def to_frame(self):
        return pd.DataFrame(self.entries, index=list(self.rows), columns=list(self.cols))

    def stats(self):
        return pd.DataFrame(
            {
                "N": self.n_authors,
                "M": self.n_institutes,
                "Y": self.column_sums,
                "delta": self.participation,
            },
            index=list(self.cols),
        )


def incidence_matrix(corpus, institute):
    corpus = as_corpus(corpus)
    if not corpus.publications:
        raise DomainError("corpus has no publications")
    rows = sorted(
        {entry.author for p in corpus.publications for entry in p.byline if entry.institute == institute}
    )
    cols = [p.id for p in corpus.publications]
    row_index = {author: i for i, author in enumerate(rows)}
    entries = np.zeros((len(rows), len(cols)), dtype=int)
    for j, publication in enumerate(corpus.publications):
        for entry in publication.byline:
            if entry.institute == institute:
                entries[row_index[entry.author], j] = 1
    return IncidenceMatrix(
        institute=institute,
        rows=tuple(rows),
        cols=tuple(cols),
        entries=entries,
        n_authors=np.array([p.n_authors for p in corpus.publications], dtype=int),
        n_institutes=np.array([p.n_institutes for p in corpus.publications], dtype=int),
    )


def classical_scores(publication):
    """The four classical scores of every institute in the byline."""
    n = publication.n_authors
    m = publication.n_institutes
    return {
        institute: ClassicalScores(
            complete=y,
            fractionalized_complete=Fraction(y, n),
            whole=1,
            fractionalized_whole=Fraction(1, m),
        )
        for institute, y in publication.counts().items()
    }


def weighted_b_values(publication, institute, scheme=None):
    """Share of the byline weight held by ``institute``; Y/N under the all-ones scheme."""
    own, total = _weighted_counts(publication, institute, as_scheme(scheme))
    return own / total


def institute_shares(publication, scheme=None):
    """b-value of every institute in the byline."""
    return {
        institute: weighted_b_values(publication, institute, scheme)
        for institute in publication.institutes
    }


def adapted_weight_scores(publication, k, scheme=None):
    """(b)^(1/k) per institute; the total runs from 1 at k = 1 to M at k = inf."""
    return {institute: exact_root(b, k) for institute, b in institute_shares(publication, scheme).items()}


def _weighted_counts(publication, institute, scheme):
    if scheme is None:
        return Fraction(publication.count(institute)), Fraction(publication.n_authors)
    own = Fraction(0)
    total = Fraction(0)
    for entry, role in zip(publication.byline, publication.roles()):
        weight = scheme.weight(role)
        total += weight
        if entry.institute == institute:
            own += weight
    return own, total


def cmfc_term(y, n, k):
    """Y / N^(1/k)."""
    k = as_k(k)
    if y == 0:
        return Fraction(0)
    if k.is_infinite:
        return Fraction(y)
    if k.is_fractional:
        return Fraction(y) / Fraction(n)
    return float(y) * (1.0 / float(n)) ** (1.0 / k.value)


def mfc_term(y, n, k):
    """(Y / N)^(1/k)."""
    return exact_root(Fraction(y) / Fraction(n), k)


def pmfc_term(participates, m, k):
    """(delta / M)^(1/k)."""
    return exact_root(Fraction(int(participates), m), k)


def publication_scores(corpus, institute, method, k, scheme=None):
    """Per-publication terms of one family; their sum is the corpus score."""
    corpus = as_corpus(corpus)
    scheme = as_scheme(scheme)
    k = as_k(k)
    terms = []
    for publication in corpus.publications:
        if method == "pmfc":
            terms.append(pmfc_term(publication.count(institute) > 0, publication.n_institutes, k))
            continue
        y, n = _weighted_counts(publication, institute, scheme)
        if method == "cmfc":
            terms.append(cmfc_term(y, n, k))
        elif method == "mfc":
            terms.append(mfc_term(y, n, k))
        else:
            raise DomainError(f"unknown method {method!r}, expected cmfc, mfc or pmfc")
    return terms


def _total(terms):
    return sum(terms, Fraction(0))


def cmfc(corpus, institute, k, scheme=None):
    return _total(publication_scores(corpus, institute, "cmfc", k, scheme))


def mfc_institute(corpus, institute, k, scheme=None):
    return _total(publication_scores(corpus, institute, "mfc", k, scheme))


def pmfc(corpus, institute, k):
    return _total(publication_scores(corpus, institute, "pmfc", k))


FAMILIES = {"cmfc": cmfc, "mfc": mfc_institute, "pmfc": pmfc}


def replicate(publication, c):
    """Scale every participation count by c, with fresh author ids for the copies."""
    if isinstance(c, bool) or not isinstance(c, (numbers.Integral, np.integer)) or c < 1:
        raise DomainError(f"replication factor must be a positive integer, got {c!r}")
    byline = list(publication.byline)
    taken = set(publication.authors)
    for copy in range(1, int(c)):
        for entry in publication.byline:
            author = _fresh_author_id(entry.author, copy, taken)
            taken.add(author)
            byline.append(BylineEntry(author=author, institute=entry.institute, role=entry.role))
    return Publication(id=publication.id, byline=tuple(byline))


def _fresh_author_id(author, copy, taken):
    candidate = f"{author}~{copy}"
    while candidate in taken:
        candidate += "'"
    return candidate
