import pytest

from logkn.corpus import random_corpus, semistable_corpus

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def ss_corpus():
    return semistable_corpus(20)


@pytest.fixture(scope="session")
def random_graphs():
    return random_corpus(20, seed=0)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep
