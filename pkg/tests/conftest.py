import os

import hypothesis
import numpy as np
import pytest

from flasque.groups import build_group, parse_family

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=400, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

np.seterr(all="raise")


@pytest.fixture(scope="session")
def group():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = build_group(parse_family(name))
        return cache[name]
    return get


ACCEPTANCE_LINES = []


@pytest.fixture
def report_line():
    return ACCEPTANCE_LINES.append


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
