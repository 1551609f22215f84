import pathlib

import pytest

DATA_DIR = pathlib.Path(__file__).parent / "data"


@pytest.fixture
def records_csv() -> pathlib.Path:
    return DATA_DIR / "example_records.csv"
