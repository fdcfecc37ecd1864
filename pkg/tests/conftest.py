from fractions import Fraction as F

import pytest

from rankgames import RankingGame


def alternating_game() -> RankingGame:
    return RankingGame.from_lists([[0, F(1, 2)], [0, F(1, 2)]], [[3, 5], [2, 4]], [1, 0])


def shared_ladder_game() -> RankingGame:
    return RankingGame.from_lists(
        [[0, F(2, 3), F(4, 5)], [0, F(1, 3), F(2, 3)]],
        [[1, 2, 3], [1, 2, 3]],
        [1, 0],
    )


SHARED_LADDER_NE = ((F(2, 3), F(0), F(1, 3)), (F(2, 5), F(3, 5), F(0)))


@pytest.fixture
def alt() -> RankingGame:
    return alternating_game()


@pytest.fixture
def ladder() -> RankingGame:
    return shared_ladder_game()


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
