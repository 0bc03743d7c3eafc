import struct

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from flowmask.errors import (
    MagicMismatch,
    MagnitudeBoundExceeded,
    NonFiniteVector,
    NonPositiveDimensions,
    TruncatedFile,
)
from flowmask.flow_io import FLO_HEADER_BYTES, FlowField, parse_flo, write_flo


def field(vals):
    return FlowField(np.asarray(vals, dtype=np.float32))


finite_fields = hnp.arrays(
    np.float32,
    st.tuples(st.integers(1, 6), st.integers(1, 6), st.just(2)),
    elements=st.floats(-1e6, 1e6, width=32),
).map(FlowField)


def test_parse_hand_assembled_1x1():
    data = struct.pack("<fii", 202021.25, 1, 1) + struct.pack("<ff", 1.0, 2.0)
    assert len(data) == 20
    f = parse_flo(data)
    assert (f.width, f.height) == (1, 1)
    assert f.vectors[0, 0, 0] == 1.0 and f.vectors[0, 0, 1] == 2.0
    # confirm via the write/parse round trip
    assert write_flo(f) == data


def test_parse_2x2_zero_field():
    data = struct.pack("<fii", 202021.25, 2, 2) + b"\x00" * 32
    f = parse_flo(data)
    assert (f.width, f.height) == (2, 2)
    assert not f.vectors.any()


def test_zero_magic_rejected():
    data = struct.pack("<fii", 0.0, 1, 1) + struct.pack("<ff", 0.0, 0.0)
    with pytest.raises(MagicMismatch):
        parse_flo(data)


def test_write_1x1_starts_with_magic_and_is_20_bytes():
    data = write_flo(field([[(0.0, 0.0)]]))
    assert len(data) == 20
    assert struct.unpack("<f", data[:4])[0] == 202021.25


def test_write_2x1_is_28_bytes():
    assert len(write_flo(field([[(1.0, 0.0), (0.0, 1.0)]]))) == 28


@given(finite_fields)
@settings(max_examples=60)
def test_round_trip_bitwise(f):
    g = parse_flo(write_flo(f))
    assert g.vectors.tobytes() == f.vectors.tobytes()
    assert (g.width, g.height) == (f.width, f.height)


@given(finite_fields)
@settings(max_examples=30)
def test_length_law(f):
    assert len(write_flo(f)) == FLO_HEADER_BYTES + 8 * f.width * f.height


def test_mutated_magic_rejected():
    data = bytearray(write_flo(field([[(1.0, 2.0)]])))
    data[0] ^= 0xFF
    with pytest.raises(MagicMismatch):
        parse_flo(bytes(data))


@pytest.mark.parametrize("cut", [1, 4, 11, 19])
def test_truncation_rejected(cut):
    data = write_flo(field([[(1.0, 2.0)]]))
    with pytest.raises(TruncatedFile):
        parse_flo(data[:-cut])


def test_trailing_bytes_rejected():
    data = write_flo(field([[(1.0, 2.0)]]))
    with pytest.raises(TruncatedFile):
        parse_flo(data + b"\x00")


def test_non_positive_dimensions():
    data = struct.pack("<fii", 202021.25, 0, 1)
    with pytest.raises(NonPositiveDimensions):
        parse_flo(data)
    data = struct.pack("<fii", 202021.25, 2, -3)
    with pytest.raises(NonPositiveDimensions):
        parse_flo(data)


def test_non_finite_rejected_and_sanitized():
    data = struct.pack("<fii", 202021.25, 2, 1) + struct.pack("<ffff", np.nan, 1.0, 3.0, 4.0)
    with pytest.raises(NonFiniteVector):
        parse_flo(data)
    f = parse_flo(data, sanitize_nonfinite=True)
    # the whole offending vector goes to (0, 0); others are untouched
    assert tuple(f.vectors[0, 0]) == (0.0, 0.0)
    assert tuple(f.vectors[0, 1]) == (3.0, 4.0)


def test_magnitude_bound_enforced():
    with pytest.raises(MagnitudeBoundExceeded):
        field([[(1e9, 0.0)]])
    # just below the bound is fine
    field([[(9.9e8, 0.0)]])


def test_vectors_are_immutable():
    f = field([[(1.0, 2.0)]])
    with pytest.raises(ValueError):
        f.vectors[0, 0, 0] = 5.0
