from __future__ import annotations

from pathlib import Path

import pytest

from gitloci.cli import LoadedSpec, load_spec

REPO_ROOT = Path(__file__).resolve().parent.parent
CORPUS = REPO_ROOT / "corpus"


@pytest.fixture(scope="session")
def ex1_7() -> LoadedSpec:
    return load_spec(str(CORPUS / "ex1_7.json"))


@pytest.fixture(scope="session")
def sec7_1() -> LoadedSpec:
    return load_spec(str(CORPUS / "sec7_1.json"))


@pytest.fixture(scope="session")
def external_toy() -> LoadedSpec:
    return load_spec(str(CORPUS / "external_toy.json"))
