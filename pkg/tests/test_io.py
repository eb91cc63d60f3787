import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from specrep.errors import ParseError
from specrep.io import dumps, load_matrix, loads_matrix, matrix_from_dict, matrix_to_dict, save_matrix

SWAP_JSON = '{"rows":2,"cols":2,"data":[[0,0],[2,0],[1,0],[0,0]]}'


def test_format_definition():
    np.testing.assert_array_equal(loads_matrix(SWAP_JSON), [[0, 2], [1, 0]])


def test_rectangular_matrix_loads():
    M = loads_matrix('{"rows":1,"cols":2,"data":[[1,0],[0,1]]}')
    np.testing.assert_array_equal(M, [[1, 1j]])


@pytest.mark.parametrize(
    "text, fragment",
    [
        ('{"rows":2,"cols":2,"data":[[0,0]]}', "expected rows*cols"),
        ('{"rows":2,"cols":2}', "missing 'data'"),
        ('{"rows":0,"cols":2,"data":[]}', "positive integer"),
        ('{"rows":1,"cols":1,"data":[[1]]}', "[re, im] pair"),
        ('{"rows":1,"cols":1,"data":[["a",0]]}', "[re, im] pair"),
        ('{"rows":1,"cols":1,"data":[[NaN,0]]}', "not finite"),
        ('[1, 2]', "must be an object"),
        ('{"rows":1,\n "cols":1,\n "data": [[1,0],]}', "line 3"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError, match=None) as info:
        loads_matrix(text)
    assert fragment in str(info.value)


def test_load_matrix_reports_path(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    with pytest.raises(ParseError, match="bad.json"):
        load_matrix(bad)
    with pytest.raises(ParseError, match="cannot read"):
        load_matrix(tmp_path / "missing.json")


finite = st.floats(-1e6, 1e6, allow_nan=False)


@settings(max_examples=50, deadline=None)
@given(arrays(np.complex128, st.tuples(st.integers(1, 5), st.integers(1, 5)),
              elements=st.builds(complex, finite, finite)))
def test_roundtrip_is_exact(M):
    np.testing.assert_array_equal(matrix_from_dict(json.loads(json.dumps(matrix_to_dict(M)))), M)


def test_save_and_load(tmp_path):
    M = np.array([[1 + 2j, -0.5], [0, 3j]])
    path = tmp_path / "m.json"
    save_matrix(M, path)
    np.testing.assert_array_equal(load_matrix(path), M)


def test_dumps_handles_numpy_values():
    out = json.loads(dumps({"a": np.float64(1.5), "b": np.arange(3), "c": 1 + 2j, "d": np.bool_(True)}))
    assert out == {"a": 1.5, "b": [0, 1, 2], "c": [1.0, 2.0], "d": True}
