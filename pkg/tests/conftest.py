import numpy as np
import pytest

from framelab import gallery
from framelab.frames import strip_and_normalize


def property_frames(count=200, max_d=4, max_N=8):
    """Seeded zero-stripped unit-norm frames, alternating generic and structured draws."""
    frames = []
    for seed in range(count):
        rng = np.random.default_rng(10_000 + seed)
        d = int(rng.integers(1, max_d + 1))
        N = int(rng.integers(d, max_N + 1))
        if seed % 2:
            frame = gallery.random_frame(d, N, seed)
        else:
            frame = gallery.random_structured_frame(d, N, seed)
        frames.append(strip_and_normalize(frame)[0])
    return frames


@pytest.fixture(scope="session")
def random_frames():
    return property_frames()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def unit_points(rng, d, count, complex_field=False):
    X = rng.standard_normal((count, d))
    if complex_field:
        X = X + 1j * rng.standard_normal((count, d))
    return X / np.linalg.norm(X, axis=1, keepdims=True)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
