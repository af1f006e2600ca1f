import copy

import pytest

from coins.conference import CONFERENCE_SCENARIO
from coins.session import Session, session_from_doc


@pytest.fixture
def conference_doc() -> dict:
    return copy.deepcopy(CONFERENCE_SCENARIO)


@pytest.fixture
def conference_session(conference_doc) -> Session:
    return session_from_doc(conference_doc)
