import pytest

import qsym.backforth


@pytest.fixture(autouse=True)
def audit_backforth():
    qsym.backforth.AUDIT = True
    yield
    qsym.backforth.AUDIT = False
