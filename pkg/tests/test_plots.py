import numpy as np
import pytest

from pairfield import EvolveConfig, PotentialSpec, evolve
from pairfield.plots import render_report

from .conftest import make_gaussian


@pytest.fixture(scope="module")
def sample_records(grid_small):
    state = make_gaussian(grid_small, k=1.0)
    config = EvolveConfig(t_final=0.2, dt=1e-2, scheme="spectral_free", record_every=4)
    _, records = evolve(state, PotentialSpec.free(), config)
    return records


def test_writes_three_figures(sample_records, tmp_path):
    paths = render_report(sample_records, tmp_path / "figs")
    assert [p.name for p in paths] == ["invariants.png", "center.png", "energy.png"]
    for path in paths:
        assert path.exists()
        assert path.stat().st_size > 1000


def test_creates_output_directory(sample_records, tmp_path):
    nested = tmp_path / "a" / "b"
    render_report(sample_records, nested)
    assert (nested / "center.png").exists()


def test_rejects_empty_records(tmp_path):
    with pytest.raises(ValueError, match="zero records"):
        render_report([], tmp_path)


def test_handles_nan_centers(sample_records, tmp_path):
    records = [r for r in sample_records]
    records[1].center = np.nan
    paths = render_report(records, tmp_path / "figs")
    assert all(p.exists() for p in paths)
