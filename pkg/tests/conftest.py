import pytest

from triquant.artifact import BUNDLED, compile_input


@pytest.fixture(scope="session")
def compiled():
    """All bundled sets compiled once (both forms, auto W expansion)."""
    return {name: compile_input(spec) for name, spec in BUNDLED.items()}


@pytest.fixture(scope="session")
def even(compiled):
    return compiled["even"]


@pytest.fixture(scope="session")
def squares(compiled):
    return compiled["squares"]


@pytest.fixture(scope="session")
def composites(compiled):
    return compiled["composites"]


@pytest.fixture(scope="session")
def full(compiled):
    return compiled["full"]


@pytest.fixture(scope="session")
def corrupted_composites():
    """Composites compiled with the deliberately faulty spacing divisor."""
    return compile_input(BUNDLED["composites"], spacing_variant="printed")
