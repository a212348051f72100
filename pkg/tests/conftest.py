import os
from pathlib import Path

import numpy as np
import pytest

from vcm.config import get_settings
from vcm.models.decision import DecisionRule
from vcm.models.profile import (
    Alternative,
    Committee,
    DeterministicInstance,
    ProfileKind,
    ScoreProfile,
)
from vcm.utils.file_handler import FileHandler

ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = ROOT / "data"
FIXTURES = Path(__file__).resolve().parent / "fixtures"


@pytest.fixture(autouse=True)
def clean_settings(monkeypatch):
    """Tests run with default settings whatever the developer's environment holds"""
    for name in list(os.environ):
        if name.startswith("VCM_"):
            monkeypatch.delenv(name)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def table1a() -> DeterministicInstance:
    return FileHandler.read_instance(DATA_DIR / "table1a.csv")


@pytest.fixture
def table1b() -> DeterministicInstance:
    return FileHandler.read_instance(DATA_DIR / "table1b.csv")


@pytest.fixture
def spatial() -> ScoreProfile:
    """Left, centrist and right voter over candidates L, C1, C2, C3, R"""
    return FileHandler.read_profile(FIXTURES / "spatial.csv")


@pytest.fixture
def committee_s() -> Committee:
    return Committee.of(0, 1, 4)


@pytest.fixture
def committee_q() -> Committee:
    return Committee.of(1, 2, 3)


@pytest.fixture
def two_voter_split() -> ScoreProfile:
    """Voter 1 approves c1 and c2, voter 2 approves c3"""
    return ScoreProfile.from_rows([[1, 1, 0], [0, 0, 1]], kind=ProfileKind.APPROVAL)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)


@pytest.fixture
def random_approvals(rng):
    """Factory: approval profile with at least one approval per voter"""

    def make(n: int, m: int, density: float = 0.4) -> ScoreProfile:
        scores = (rng.random((n, m)) < density).astype(float)
        empty = scores.sum(axis=1) == 0
        scores[empty, rng.integers(0, m, size=int(empty.sum()))] = 1.0
        return ScoreProfile(scores=scores, kind=ProfileKind.APPROVAL)

    return make


@pytest.fixture
def random_instance(rng, random_approvals):
    """Factory: deterministic instance with random preferred alternatives"""

    def make(n: int, m: int, density: float = 0.4) -> DeterministicInstance:
        approvals = random_approvals(n, m, density)
        preferred = tuple(
            Alternative.ACCEPT if flip else Alternative.REJECT for flip in rng.random(n) < 0.5
        )
        return DeterministicInstance(approvals=approvals, preferred=preferred)

    return make


@pytest.fixture
def random_symmetric_rule(rng):
    """Factory: random symmetric (not necessarily monotone) decision rule"""

    def make(k: int) -> DecisionRule:
        probs = np.zeros(k + 1)
        for a in range(k // 2 + 1, k + 1):
            probs[a] = rng.random()
            probs[k - a] = 1.0 - probs[a]
        if k % 2 == 0:
            probs[k // 2] = 0.5
        return DecisionRule(k=k, probs=tuple(probs), symmetric=True, name="random")

    return make
