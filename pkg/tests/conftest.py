from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import settings

from quintic_orbifold.cyclo import root_of_unity
from quintic_orbifold.linalg import diag
from quintic_orbifold.mckay import OrbifoldAnalysis
from quintic_orbifold.pgroup import close
from quintic_orbifold.pipeline import analyze, bundled_corpus, parse_input

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

FIXTURES = Path(__file__).parent / "fixtures"
CORPUS = bundled_corpus()


def fixture_path(name: str) -> Path:
    return FIXTURES / f"{name}.json"


def corpus_path(name: str) -> Path:
    return CORPUS / f"{name}.json"


def z(n: int, k: int = 1):
    return root_of_unity(n, k)


def d(*entries):
    return diag(entries)


_analyses: dict = {}
_outputs: dict = {}


def analysis_for(path: Path) -> OrbifoldAnalysis:
    """Shared, cached OrbifoldAnalysis for an input file."""
    key = str(path)
    if key not in _analyses:
        inp = parse_input(path)
        _analyses[key] = OrbifoldAnalysis(inp.quintic, close(inp.generators))
    return _analyses[key]


def output_for(path: Path):
    key = str(path)
    if key not in _outputs:
        _outputs[key] = analyze(parse_input(path))
    return _outputs[key]


@pytest.fixture(scope="session")
def d20():
    return analysis_for(corpus_path("d20"))


@pytest.fixture(scope="session")
def heis():
    return analysis_for(corpus_path("fermat_heisenberg125"))


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    RESULTS = getattr(module, "RESULTS", None)
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(RESULTS):
            ok, title = RESULTS[num]
            terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'} - {title}")
