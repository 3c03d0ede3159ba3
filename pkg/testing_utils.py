"""Hypothesis strategies shared by the test modules."""
from hypothesis import strategies as st

from institute_credit import BylineEntry, Corpus, Publication, Role

INSTITUTES = ["S", "T", "U", "V", "W"]

# Printable text of any script, commas and quotes included; ids are stored stripped.
identifiers = (
    st.text(alphabet=st.characters(exclude_categories=("Cs", "Cc", "Zl", "Zp")), min_size=1, max_size=8)
    .map(str.strip)
    .filter(bool)
)


@st.composite
def publications(draw, publication_id="p", max_authors=12, institutes=INSTITUTES, roles=False):
    """One publication; ``institutes`` is a list to sample from or a strategy."""
    if isinstance(publication_id, st.SearchStrategy):
        publication_id = draw(publication_id)
    if not isinstance(institutes, st.SearchStrategy):
        institutes = st.sampled_from(institutes)
    authors = draw(st.lists(identifiers, min_size=1, max_size=max_authors, unique=True))
    entries = []
    for author in authors:
        role = draw(st.none() | st.sampled_from(list(Role))) if roles else None
        entries.append(BylineEntry(author, draw(institutes), role))
    return Publication(publication_id, tuple(entries))


@st.composite
def corpora(draw, max_publications=10, max_authors=12, institutes=INSTITUTES, roles=False):
    ids = draw(st.lists(identifiers, min_size=1, max_size=max_publications, unique=True))
    return Corpus(
        tuple(
            draw(publications(publication_id, max_authors=max_authors, institutes=institutes, roles=roles))
            for publication_id in ids
        )
    )


def participation_arrays(max_size=8, max_count=20):
    return st.lists(st.integers(min_value=1, max_value=max_count), min_size=1, max_size=max_size)


k_values = st.floats(min_value=1.0, max_value=10.0, allow_nan=False)


def publication(publication_id, *pairs):
    """Publication from (author, institute) or (author, institute, role) tuples."""
    return Publication(publication_id, tuple(BylineEntry(*pair) for pair in pairs))


def counts_publication(publication_id, **counts):
    """Publication with ``counts[institute]`` anonymous authors per institute."""
    byline = [
        (f"{publication_id}-{institute}-{i}", institute)
        for institute, count in counts.items()
        for i in range(count)
    ]
    return publication(publication_id, *byline)
