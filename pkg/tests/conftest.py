import functools

import pytest

from refcenter import transmutation as tm
from refcenter import zoo


@functools.lru_cache(maxsize=None)
def entry(name):
    return zoo.manifest_entry(name)


@functools.lru_cache(maxsize=None)
def transmuted(name, i=0):
    e = entry(name)
    return tm.transmute(e.hopf, e.rforms[i])


@functools.lru_cache(maxsize=None)
def probes(name, i=0):
    t = transmuted(name, i)
    return tuple(zoo.probe_set(t.base, t.coad_comodule))


def probe(name, pname, i=0):
    return next(V for V in probes(name, i) if V.name == pname)


@pytest.fixture
def z2():
    return transmuted("z2-sign")


@pytest.fixture
def h4():
    return transmuted("sweedler", 1)


_ACCEPTANCE = []


@pytest.fixture
def acceptance_line():
    """Collects one summary line per acceptance criterion."""
    return _ACCEPTANCE.append


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE):
            terminalreporter.write_line(line)
