import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from csetkit import library
from csetkit.search import random_cset

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("fast", max_examples=10, deadline=None)
settings.load_profile("default")

BASES = {
    "arrow": library.arrow_category,
    "path": library.path_category,
    "idempotent-loop": library.idempotent_loop_category,
    "loop": lambda: library.loop_category(1, 2),
    "c2": lambda: library.cyclic_group(2),
    "c3": lambda: library.cyclic_group(3),
    "klein": library.klein_group,
    "s3": library.symmetric_group,
}
_CACHE = {k: f() for k, f in BASES.items()}
GROUPOID_BASES = ["c2", "c3", "klein", "s3"]


def base(name):
    return _CACHE[name]


@st.composite
def csets(draw, names=tuple(BASES), max_per_object=4):
    C = base(draw(st.sampled_from(names)))
    sizes = {x: draw(st.integers(0, max_per_object)) for x in C.objects}
    seed = draw(st.integers(0, 2**32 - 1))
    O = random_cset(C, sizes, random.Random(seed))
    if O is None:
        # some size vectors admit no functor (e.g. an arrow into an empty carrier)
        sizes = {x: max(sizes.values()) for x in C.objects}
        O = random_cset(C, sizes, random.Random(seed))
    assert O is not None
    return O


@pytest.fixture
def arrow():
    return base("arrow")


@pytest.fixture
def path():
    return base("path")


@pytest.fixture
def c2():
    return base("c2")


@pytest.fixture
def c3():
    return base("c3")


@pytest.fixture
def s3():
    return base("s3")


# acceptance criteria report lines, printed once at the end of the run
ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
