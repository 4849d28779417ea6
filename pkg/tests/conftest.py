import pytest

# 13-row binary page and its run-length matrix (zero padding stripped).
SAMPLE_BITS = [
    "00000000000000",
    "00110000111110",
    "01111000111110",
    "01111000111110",
    "01111000111110",
    "00110000000000",
    "10000000000000",
    "10000000000000",
    "00100001111100",
    "01110001111100",
    "01111001111100",
    "01111100000000",
    "00000000000000",
]
SAMPLE_RUNS = [
    (14,),
    (2, 2, 4, 5, 1),
    (1, 4, 3, 5, 1),
    (1, 4, 3, 5, 1),
    (1, 4, 3, 5, 1),
    (2, 2, 10),
    (0, 1, 13),
    (0, 1, 13),
    (2, 1, 4, 5, 2),
    (1, 3, 3, 5, 2),
    (1, 4, 2, 5, 2),
    (1, 5, 8),
    (14,),
]
SAMPLE_PADDED = [list(r) + [0] * (5 - len(r)) for r in SAMPLE_RUNS]


@pytest.fixture
def sample_bits():
    return list(SAMPLE_BITS)


@pytest.fixture
def sample_runs():
    return list(SAMPLE_RUNS)


# acceptance criteria report one line each at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
