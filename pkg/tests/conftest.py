import pytest

from src.tools.layouts import row_alternating_layout
from src.tools.torus import CheckerboardTorus, build_code
from src.tools.word import parse_word


@pytest.fixture(scope="session")
def case_word():
    return parse_word("NE2NE2N")


@pytest.fixture(scope="session")
def case_code_12x6(case_word):
    t = CheckerboardTorus(12, 6)
    return build_code(case_word, t, row_alternating_layout(t))


@pytest.fixture(scope="session")
def case_code_24x12(case_word):
    t = CheckerboardTorus(24, 12)
    return build_code(case_word, t, row_alternating_layout(t))
