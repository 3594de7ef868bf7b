import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from entroglyph import build_scale, glyph_ranking_table


@pytest.fixture(scope="session")
def ranking_table():
    return glyph_ranking_table()


@pytest.fixture(scope="session")
def default_scale():
    return build_scale()


@pytest.fixture(scope="session")
def artifacts_dir():
    path = Path(__file__).parent / "artifacts"
    path.mkdir(exist_ok=True)
    return path
