import pytest

from zforcing import Digraph

FIG1_ARCS = [(1, 2), (2, 3), (3, 4), (4, 3), (5, 4), (5, 6), (5, 1), (5, 2), (6, 1)]

FIG1_TEXT = """# forcing example, 6 vertices
1 2
2 3
3 4
4 3
5 4
5 6
5 1
5 2
6 1
"""


@pytest.fixture
def fig1():
    return Digraph(6, frozenset(FIG1_ARCS))


@pytest.fixture
def fig1_file(tmp_path):
    path = tmp_path / "fig1.txt"
    path.write_text(FIG1_TEXT)
    return path


_CRITERIA = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_CRITERIA] = []


@pytest.fixture
def criterion(request):
    """Record one pass/fail line per acceptance criterion for the summary."""
    lines = request.config.stash[_CRITERIA]

    def record(label, ok, detail=""):
        lines.append(f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else ""))
        assert ok, f"{label}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_CRITERIA, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
