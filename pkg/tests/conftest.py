from functools import lru_cache

from hypothesis import settings

from ltswan.algebra import parse_ring_spec
from ltswan.context import ring_context

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# the desk-scale rings every module is checked on
SMALL_RINGS = ["2:1:1:mixed", "2:1:2:mixed", "3:1:1:mixed", "2:2:1:equal", "2:1:2:equal"]
ALL_RINGS = SMALL_RINGS + ["2:1:3:mixed", "3:1:2:mixed"]


@lru_cache(maxsize=None)
def ctx_for(spec: str):
    return ring_context(parse_ring_spec(spec))


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
