import pytest

from _csvdata import write_csv


@pytest.fixture
def alpha_csv(tmp_path):
    """Three-curve rapidity sweep, rows deliberately unsorted in phi."""
    rows = []
    for alpha, scale in [(0.0, 1.0), (1.0, 0.8), (2.0, 0.5)]:
        for phi, shape in [(0.0, 2.0), (1.047, 2.5), (2.094, 1.5), (0.524, 2.3)]:
            rows.append((phi, scale * shape, alpha, 0.01, 4.0, (1.0 - scale) / 2))
    return write_csv(tmp_path / "alpha_sweep.csv", rows)


@pytest.fixture
def width_csv(tmp_path):
    """Width-grouped sweep with peaks shrinking as w grows."""
    rows = []
    for w, peak in [(0.5, 2.4), (1.0, 2.1), (2.0, 1.6)]:
        for phi in (0.0, 0.5, 1.047, 1.6, 2.094):
            f = peak * (1.0 - abs(phi - 1.047) / 2.5)
            rows.append((phi, f, float("inf"), 0.01, w, 0.1))
    return write_csv(tmp_path / "width_sweep.csv", rows)
