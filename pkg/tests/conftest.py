import pathlib

import pytest

from diracxp import zeta

DATA = pathlib.Path(__file__).resolve().parent.parent / "src" / "diracxp" / "data"


@pytest.fixture(scope="session")
def zeros_path() -> pathlib.Path:
    return DATA / "zeros100.txt"


@pytest.fixture(scope="session")
def zero_table(zeros_path) -> zeta.ZeroTable:
    with open(zeros_path, "r", encoding="utf-8") as handle:
        return zeta.load_zero_table(handle, source=str(zeros_path))
