import functools

import pytest

from heisenberg_sft.generate import generate

ACCEPTANCE = []


@functools.lru_cache(maxsize=None)
def window(box, variant="Omega", parity="even", **kw):
    return generate(box, variant, parity, **kw)


@pytest.fixture
def gen():
    def f(box, variant="Omega", parity="even", **kw):
        return window(tuple(box), variant, parity, **kw).copy()
    return f


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
