import pytest

from glossnet.model import MeaningId, Triple
from glossnet.pipeline import PipelineConfig, data_path, run


@pytest.fixture(scope="session")
def fixture_run():
    """One full pipeline run over the bundled fixture lexicon."""
    return run(PipelineConfig())


@pytest.fixture(scope="session")
def bundled():
    return {name: data_path(name) for name in ("lexicon.tsv", "lexicon.parses", "rules.txt", "goldens.txt")}


def tr(text, **kw):
    return Triple.parse_short(text, **kw)


def mid(text):
    return MeaningId.parse(text)


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES

    if LINES:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in sorted(LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
