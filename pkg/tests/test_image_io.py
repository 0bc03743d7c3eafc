import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp
from PIL import Image

from flowmask.errors import (
    BadHeader,
    TruncatedPixels,
    UnsupportedMaxval,
    UnsupportedPngVariant,
)
from flowmask.image_io import (
    mask_from_image,
    mask_to_image,
    read_pgm,
    read_png_gray,
    write_pgm,
    write_png_gray,
)

gray_images = hnp.arrays(
    np.uint8, st.tuples(st.integers(1, 12), st.integers(1, 12)),
    elements=st.integers(0, 255),
)


def test_minimal_p5():
    img = read_pgm(b"P5 1 1 255 \x00")
    assert img.shape == (1, 1) and img[0, 0] == 0


def test_comments_skipped():
    img = read_pgm(b"P5\n# a comment\n2 # inline\n1\n255\n\x01\x02")
    assert img.tolist() == [[1, 2]]


def test_truncated_pixels():
    with pytest.raises(TruncatedPixels):
        read_pgm(b"P5\n2 2\n255\n\x00\x00\x00")


def test_bad_header():
    with pytest.raises(BadHeader):
        read_pgm(b"P6\n1 1\n255\n\x00")
    with pytest.raises(BadHeader):
        read_pgm(b"P5\nx 1\n255\n\x00")


def test_unsupported_maxval():
    with pytest.raises(UnsupportedMaxval):
        read_pgm(b"P5\n1 1\n65535\n\x00\x00")


def test_write_pgm_layout():
    # header is "P5\n<w> <h>\n255\n": 11 bytes for 1x1, then the payload
    data = write_pgm(np.zeros((1, 1), np.uint8))
    assert data == b"P5\n1 1\n255\n\x00"
    assert len(data) == 12
    data = write_pgm(np.full((2, 2), 255, np.uint8))
    assert data.endswith(b"\xff" * 4)


@given(gray_images)
@settings(max_examples=60)
def test_pgm_round_trip(img):
    assert np.array_equal(read_pgm(write_pgm(img)), img)


@given(gray_images)
@settings(max_examples=40)
def test_png_round_trip(img):
    assert np.array_equal(read_png_gray(write_png_gray(img)), img)


def test_png_1x1_black():
    img = read_png_gray(write_png_gray(np.zeros((1, 1), np.uint8)))
    assert img.shape == (1, 1) and img[0, 0] == 0


def test_png_rgb_flattened_by_integer_mean():
    rgb = np.zeros((1, 2, 3), np.uint8)
    rgb[0, 0] = (10, 20, 31)   # mean 61/3 -> 20
    rgb[0, 1] = (255, 0, 0)    # 255/3 -> 85
    buf = io.BytesIO()
    Image.fromarray(rgb, mode="RGB").save(buf, format="PNG")
    img = read_png_gray(buf.getvalue())
    assert img.tolist() == [[20, 85]]


def test_png_16bit_rejected():
    buf = io.BytesIO()
    Image.new("I;16", (2, 2)).save(buf, format="PNG")
    with pytest.raises(UnsupportedPngVariant):
        read_png_gray(buf.getvalue())


def test_png_garbage_rejected():
    with pytest.raises(BadHeader):
        read_png_gray(b"not a png at all")


def test_mask_from_image_examples():
    assert mask_from_image(np.array([[0, 255]], np.uint8), 127).tolist() == [[False, True]]
    assert not mask_from_image(np.zeros((3, 3), np.uint8), 200).any()
    assert mask_from_image(np.array([[100, 200]], np.uint8), 99).all()


@given(gray_images, st.integers(0, 254), st.integers(0, 254))
@settings(max_examples=40)
def test_mask_cutoff_monotone(img, c1, c2):
    lo, hi = sorted((c1, c2))
    m_lo = mask_from_image(img, lo)
    m_hi = mask_from_image(img, hi)
    assert not (m_hi & ~m_lo).any()  # raising the cutoff never adds members


def test_mask_image_round_trip(rng):
    m = rng.random((9, 7)) < 0.4
    img = mask_to_image(m)
    assert set(np.unique(img)) <= {0, 255}
    for cutoff in (0, 127, 254):
        assert np.array_equal(mask_from_image(img, cutoff), m)


def test_mask_to_image_extremes():
    assert not mask_to_image(np.zeros((2, 2), bool)).any()
    assert (mask_to_image(np.ones((2, 2), bool)) == 255).all()
