import struct
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from emgcodec.codec import (CompressedImage, TransientVolume, compressed_nbytes,
                            compression_ratio, decode, encode, read_volume, reconstruct,
                            volume_nbytes, write_volume)
from emgcodec.emg import EmgParams, emg_eval
from emgcodec.errors import DataError, FormatError, LengthError, ShapeError

FIXTURES = Path(__file__).parent / "fixtures"


def image_strategy():
    @st.composite
    def build(draw):
        W = draw(st.integers(1, 3))
        H = draw(st.integers(1, 3))
        T = draw(st.integers(1, 20))
        K = draw(st.integers(1, 3))
        t_start = draw(arrays(np.uint32, (W, H), elements=st.integers(0, T - 1)))
        pos = st.floats(2.0 ** -10, 2.0 ** 10, width=32)
        unit = st.floats(2.0 ** -10, 1 - 2.0 ** -10, width=32)
        h = draw(arrays(np.float32, (W, H, K), elements=pos))
        mu = draw(arrays(np.float32, (W, H, K), elements=unit))
        sigma = draw(arrays(np.float32, (W, H, K), elements=pos))
        tau = draw(arrays(np.float32, (W, H, K), elements=pos))
        params = np.stack([h, mu, sigma, tau], axis=2).astype(np.float64)
        flags = draw(arrays(np.uint8, (W, H), elements=st.integers(0, 3)))
        return CompressedImage(W, H, T, K, draw(st.sampled_from([1, 3, 5])),
                               draw(st.sampled_from(["kld", "mse"])), draw(st.integers(0, 3)),
                               t_start, (T - t_start).astype(np.uint32), params, flags)
    return build()


def test_volume_fixture():
    blob = (FIXTURES / "volume_2x2x4.triv").read_bytes()
    vol = read_volume(blob)
    assert vol.shape == (2, 2, 4)
    assert vol.data[1, 0, 3] == 1.75
    assert vol.data[0, 1, 2] == 10.5
    assert vol.data[1, 1, 0] == 11.0
    assert write_volume(vol) == blob
    assert len(blob) == volume_nbytes(2, 2, 4) == 20 + 4 * 16


def test_image_fixture():
    blob = (FIXTURES / "pixel_k2.emgc").read_bytes()
    img = decode(blob)
    assert (img.W, img.H, img.T, img.K, img.N, img.loss_kind) == (1, 1, 6, 2, 1, "kld")
    assert img.t_start[0, 0] == 2 and img.t_len[0, 0] == 4
    assert img.params[0, 0, :, 0].tolist() == [1.0, 0.25, 0.0625, 0.125]
    assert encode(img) == blob
    assert len(blob) == compressed_nbytes(1, 1, 2) == 32 + 4 * 8 + 8 + 1


def test_fixture_reconstructs_to_golden_volume():
    img = decode((FIXTURES / "pixel_k2.emgc").read_bytes())
    golden = read_volume((FIXTURES / "pixel_k2.triv").read_bytes())
    assert np.allclose(reconstruct(img).data, golden.data, rtol=2e-7, atol=0)


def test_single_component_reconstruction_matches_emg_eval():
    params = np.array([0.8, 0.4, 0.05, 0.1]).reshape(1, 1, 4, 1)
    img = CompressedImage(1, 1, 10, 1, 1, "kld", 0, np.array([[3]], np.uint32),
                          np.array([[7]], np.uint32), params, np.zeros((1, 1), np.uint8))
    rec = reconstruct(img).data[0, 0]
    p = EmgParams(0.8, 0.4, 0.05, 0.1)
    expected = [0.0] * 3 + [emg_eval((b + 0.5) / 7, p) for b in range(7)]
    assert np.array_equal(rec, np.float32(expected))


def test_header_errors():
    blob = (FIXTURES / "volume_2x2x4.triv").read_bytes()
    with pytest.raises(FormatError):
        read_volume(b"XRIV" + blob[4:])
    with pytest.raises(FormatError):
        read_volume(blob[:4] + struct.pack("<I", 2) + blob[8:])
    with pytest.raises(LengthError):
        read_volume(blob[:-1])
    with pytest.raises(LengthError):
        read_volume(blob + b"\0")
    with pytest.raises(LengthError):
        read_volume(struct.pack("<4sIIII", b"TRIV", 1, 0, 0, 0))
    with pytest.raises(LengthError):
        read_volume(blob[:10])
    img = (FIXTURES / "pixel_k2.emgc").read_bytes()
    with pytest.raises(FormatError):
        decode(b"EMGX" + img[4:])
    with pytest.raises(LengthError):
        decode(img[:-2])


def test_invalid_samples_report_index():
    blob = bytearray((FIXTURES / "volume_2x2x4.triv").read_bytes())
    struct.pack_into("<f", blob, 20 + 4 * 5, -1.0)
    with pytest.raises(DataError) as exc:
        read_volume(bytes(blob))
    assert exc.value.index == 5
    struct.pack_into("<f", blob, 20 + 4 * 5, float("nan"))
    with pytest.raises(DataError) as exc:
        read_volume(bytes(blob))
    assert exc.value.index == 5


@pytest.mark.parametrize("offset,value", [(8 + 4 * 4, -0.5), (8 + 4 * 2, 1.5), (8, 0.0)])
def test_invalid_parameters_rejected(offset, value):
    blob = bytearray((FIXTURES / "pixel_k2.emgc").read_bytes())
    # offsets within the record: sigma_1, mu_1, h_1
    struct.pack_into("<f", blob, 32 + offset, value)
    with pytest.raises(DataError):
        decode(bytes(blob))


def test_inconsistent_remap_rejected():
    blob = bytearray((FIXTURES / "pixel_k2.emgc").read_bytes())
    struct.pack_into("<I", blob, 32, 3)
    with pytest.raises(DataError):
        decode(bytes(blob))


def test_encode_shape_mismatch():
    img = decode((FIXTURES / "pixel_k2.emgc").read_bytes())
    img.params = img.params[..., :1]
    with pytest.raises(ShapeError):
        encode(img)


def test_degenerate_pixel_reconstructs_to_zero():
    params = np.tile(np.array([np.exp(-80.0), 0.5, 0.1, 0.1]).reshape(1, 1, 4, 1), (1, 1, 1, 2))
    img = CompressedImage(1, 1, 8, 2, 1, "kld", 0, np.array([[7]], np.uint32),
                          np.array([[1]], np.uint32), params, np.full((1, 1), 3, np.uint8))
    assert np.all(reconstruct(decode(encode(img))).data <= 1e-30)


def test_compression_ratios():
    assert compression_ratio(4096, 16) == pytest.approx(4096 / 66)
    assert round(compression_ratio(4096, 16)) == 62
    assert compression_ratio(1024, 16) == pytest.approx(15.515, abs=1e-3)
    assert compression_ratio(4096, 16, N=5) == pytest.approx(63.93, abs=1e-2)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 12), st.data())
def test_volume_roundtrip(W, H, T, data):
    vals = data.draw(arrays(np.float32, (W, H, T),
                            elements=st.floats(0.0, 2.0 ** 127, width=32)))
    vol = TransientVolume(vals)
    blob = write_volume(vol)
    assert len(blob) == volume_nbytes(W, H, T)
    assert read_volume(blob) == vol
    assert write_volume(read_volume(blob)) == blob


@settings(max_examples=150, deadline=None)
@given(image_strategy())
def test_image_roundtrip_and_size(img):
    blob = encode(img)
    assert len(blob) == compressed_nbytes(img.W, img.H, img.K)
    assert len(blob) == 32 + img.W * img.H * (16 * img.K + 9)
    back = decode(blob)
    assert encode(back) == blob
    assert back == img


@settings(max_examples=100, deadline=None)
@given(image_strategy())
def test_reconstruct_deterministic(img):
    a = reconstruct(img)
    b = reconstruct(decode(encode(img)))
    assert write_volume(a) == write_volume(b)
