from __future__ import annotations

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("pkg", deadline=None, max_examples=60)
settings.load_profile("pkg")


def pooled_se(a: np.ndarray, b: np.ndarray) -> float:
    """Standard error of the difference of two sample means."""
    va = a.var(ddof=1) / a.size if a.size > 1 else 0.0
    vb = b.var(ddof=1) / b.size if b.size > 1 else 0.0
    return float(np.sqrt(va + vb))


def assert_means_close(a: np.ndarray, b: np.ndarray, n_se: float = 3.0, floor: float = 1e-9):
    se = max(pooled_se(a, b), floor)
    diff = abs(float(a.mean()) - float(b.mean()))
    assert diff <= n_se * se, f"means differ by {diff:.4g} > {n_se} * se ({se:.4g})"


@pytest.fixture(scope="session")
def fixture_graphs():
    from pushpull import graph

    return {
        "k2": graph.complete_graph(2),
        "path3": graph.path_graph(3),
        "cycle6": graph.cycle_graph(6),
        "star8": graph.star(8),
        "diamonds_2_3_0": graph.string_of_diamonds(2, 3, 0),
        "diamonds_3_4_5": graph.string_of_diamonds(3, 4, 5),
    }
