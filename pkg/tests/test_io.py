import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from tubalforms.io import HTJFormatError, from_htj, read_htj, to_htj, write_htj

floats = st.floats(allow_nan=False, allow_infinity=False, width=64)


@settings(max_examples=50, deadline=None)
@given(hnp.arrays(np.float64, hnp.array_shapes(min_dims=1, max_dims=4, max_side=3), elements=floats),
       hnp.arrays(np.float64, hnp.array_shapes(min_dims=1, max_dims=4, max_side=3), elements=floats))
def test_roundtrip_exact(re, im):
    if re.shape != im.shape:
        im = np.resize(im, re.shape)
    A = re + 1j * im
    back = from_htj(json.loads(json.dumps(to_htj(A))))
    np.testing.assert_array_equal(back, A)


def test_layout_is_column_major():
    A = np.array([[1 + 2j, 3 + 4j], [5 + 6j, 7 + 8j]])
    doc = to_htj(A)
    assert doc["format"] == "htj-v1" and doc["order"] == 2 and doc["shape"] == [2, 2]
    assert doc["data"] == [1, 2, 5, 6, 3, 4, 7, 8]


def test_file_roundtrip(tmp_path, rng):
    A = rng.standard_normal((2, 3, 4)) + 1j * rng.standard_normal((2, 3, 4))
    write_htj(tmp_path / "a.htj", A)
    np.testing.assert_array_equal(read_htj(tmp_path / "a.htj"), A)


@pytest.mark.parametrize("doc", [
    {"format": "other", "order": 1, "shape": [1], "data": [0, 0]},
    {"format": "htj-v1", "order": 2, "shape": [1], "data": [0, 0]},
    {"format": "htj-v1", "order": 1, "shape": [2], "data": [0, 0]},
    {"format": "htj-v1", "order": 1, "shape": [1]},
    [1, 2, 3],
])
def test_malformed(doc):
    with pytest.raises(HTJFormatError):
        from_htj(doc)


def test_not_json(tmp_path):
    p = tmp_path / "bad.htj"
    p.write_text("{not json")
    with pytest.raises(HTJFormatError):
        read_htj(p)
