import sys
from pathlib import Path

import pytest

REPO = Path(__file__).resolve().parent.parent
CORPUS = REPO / "corpus"

sys.path.insert(0, str(REPO / "src"))


@pytest.fixture(scope="session")
def corpus_dir():
    return CORPUS


@pytest.fixture(scope="session")
def corpus():
    from qschemes.corpus import corpus_quivers

    return corpus_quivers()
