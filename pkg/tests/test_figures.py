from __future__ import annotations

import io
from pathlib import Path
import numpy as np
import pandas as pd
import pytest
from sawgyro import figures
from sawgyro.config import Figures


@pytest.fixture
def options() -> Figures:
    return Figures(points=5)


@pytest.mark.parametrize("name", list(figures.FIGURES))
def test_every_figure_builds(name: str, options: Figures):
    curves = figures.build(name, options)
    assert curves
    for frame in curves.values():
        assert len(frame) == 5
        assert np.all(np.isfinite(frame.to_numpy()))


def test_range_curves(options: Figures):
    curves = figures.build("range-vs-squeezing", options)
    vacuum = curves["vacuum_co=1"]
    squeezed = curves["squeezed_co=1"]
    np.testing.assert_allclose(vacuum.omega_sq_ub, 2.75)
    assert squeezed.omega_sq_ub.iloc[0] == pytest.approx(2.75)
    assert squeezed.omega_sq_ub.iloc[-1] == pytest.approx(6.93, abs=0.01)


def test_ratio_curve_stays_under_bound(options: Figures):
    curves = figures.build("sensitivity-ratio", options)
    for frame in curves.values():
        assert frame.ratio.iloc[0] == pytest.approx(1.0)
        assert np.all(frame.ratio <= frame.bound * (1 + 1e-12))


@pytest.mark.parametrize(
    "alias, name", [("fig2", "range-vs-squeezing"), ("fig4c", "sensitivity-ratio")]
)
def test_short_ids_resolve(alias: str, name: str, options: Figures):
    assert figures.ALIASES[alias] == name
    assert figures.build(alias, options).keys() == figures.build(name, options).keys()


def test_unknown_figure():
    with pytest.raises(KeyError, match="unknown figure 'nope'"):
        figures.build("nope")


def test_write_csv_format():
    frame = pd.DataFrame({"r": [0.0, 0.1], "omega_sq_ub": [2.75, 1 / 3]})
    fp = io.StringIO()
    figures.write_csv(frame, fp, {"figure": "demo", "co": 1.0})
    assert fp.getvalue().split("\n") == [
        "# figure: demo",
        "# co: 1.0",
        "r,omega_sq_ub",
        "0,2.75",
        "0.10000000000000001,0.33333333333333331",
        "",
    ]


def test_write_figure(tmp_path: Path, options: Figures):
    curves = figures.build("snr-vs-squeezing", options)
    paths = figures.write_figure(
        "snr-vs-squeezing", curves, tmp_path / "out", {"version": "test"}
    )
    assert [path.name for path in paths] == [
        f"snr-vs-squeezing__{label}.csv" for label in curves
    ]
    lines = paths[0].read_text().splitlines()
    assert lines[:3] == [
        "# figure: snr-vs-squeezing",
        "# curve: co=0.25",
        "# version: test",
    ]
    assert lines[3] == "r,snr_per_photon"
