import sys
from pathlib import Path

import pytest

from nccalc import GF, preset

sys.path.insert(0, str(Path(__file__).parent))

# (id, builder, truncation used for the heavier checks)
CORPUS = {
    "Q": (lambda: preset("ground_field"), 5),
    "F7": (lambda: preset("ground_field", field=GF(7)), 5),
    "dual": (lambda: preset("truncated_polynomial", 2), 5),
    "x3": (lambda: preset("truncated_polynomial", 3), 5),
    "QZ3": (lambda: preset("group_algebra_cyclic", 3), 5),
    "M2": (lambda: preset("matrix", 2), 4),
    "T2": (lambda: preset("upper_triangular", 2), 5),
}


@pytest.fixture(params=sorted(CORPUS))
def corpus_algebra(request):
    build, N = CORPUS[request.param]
    return request.param, build(), N


@pytest.fixture
def dual():
    return preset("truncated_polynomial", 2)
