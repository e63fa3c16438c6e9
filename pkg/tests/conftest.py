import pytest

from sboxlab import enumerate_strong


@pytest.fixture(scope="session")
def full_enumeration():
    """The complete search with emitted tables, shared across the session."""
    return enumerate_strong(emit_tables=True)
