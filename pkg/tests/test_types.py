from __future__ import annotations

import numpy as np
import pytest
from sawgyro.exceptions import SweepError
from sawgyro.types import SweepSpec, SweepVariable


def test_parse_linear_sweep():
    sweep = SweepSpec.parse("omega:990:1010:5")
    assert sweep == SweepSpec(
        variable=SweepVariable.OMEGA, start=990.0, stop=1010.0, points=5
    )
    np.testing.assert_allclose(sweep.grid(), [990, 995, 1000, 1005, 1010])


def test_parse_log_sweep():
    sweep = SweepSpec.parse("co:0.01:100:5:log")
    assert sweep.variable == SweepVariable.CO
    np.testing.assert_allclose(sweep.grid(), [0.01, 0.1, 1, 10, 100])


@pytest.mark.parametrize(
    "text, match",
    [
        ("omega:1:2", "expected"),
        ("omega:1:2:3:cubic", "unknown sweep scale"),
        ("phase:1:2:3", "malformed"),
        ("omega:1:x:3", "malformed"),
        ("omega:2:1:3", "must be below"),
        ("omega:1:2:1", "at least 2 points"),
        ("omega:0:2:3:log", "positive start"),
    ],
)
def test_parse_rejects(text: str, match: str):
    with pytest.raises(SweepError, match=match):
        SweepSpec.parse(text)
