from pathlib import Path

import pytest

from institute_credit import Corpus
from testing_utils import counts_publication, publication
from utils.config import load_config

DATA_DIR = Path(__file__).resolve().parent / "data"


@pytest.fixture
def data_dir():
    return DATA_DIR


@pytest.fixture
def config():
    return load_config()


@pytest.fixture
def mixed_corpus():
    return Corpus(
        (
            publication("p1", ("q1", "S"), ("q3", "S"), ("r1", "R1")),
            publication("p2", ("q2", "S"), ("r2", "R2")),
            publication("p3", ("q1", "S"), ("q3", "S"), ("q4", "S"), ("r3", "R3"), ("r4", "R4")),
        )
    )


@pytest.fixture
def table2_publication():
    return counts_publication("t2", A=4, B=2, C=1)


@pytest.fixture
def nine_author_corpus():
    """Nine authors: two from S, seven from T."""
    return Corpus((counts_publication("x1", S=2, T=7),))
