import functools

import pytest

from quiverhh.corpus import NAMES, corpus_algebra


@functools.lru_cache(maxsize=None)
def algebra(name):
    return corpus_algebra(name)


@pytest.fixture
def load():
    return algebra


@pytest.fixture(params=NAMES)
def corpus_alg(request):
    return algebra(request.param)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
