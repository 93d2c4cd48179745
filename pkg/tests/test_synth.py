import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from emgcodec.codec import FLAG_GROUND_TRUTH, TransientVolume, decode, encode, reconstruct
from emgcodec.errors import DomainError
from emgcodec.fit import FitConfig
from emgcodec.preprocess import first_nonzero
from emgcodec.synth import SceneSpec, add_exposure_noise, generate_scene, parameter_ranges


@pytest.fixture(scope="module")
def scene():
    return generate_scene(SceneSpec(W=8, H=6, T=64, seed=3))


def test_signal_is_mixture_of_truth(scene):
    assert reconstruct(scene.truth) == scene.volume
    assert scene.truth.flags & FLAG_GROUND_TRUTH
    assert decode(encode(scene.truth)).K == 4


def test_onsets_match_first_nonzero(scene):
    data = scene.volume.data
    for i in range(data.shape[0]):
        for j in range(data.shape[1]):
            assert first_nonzero(data[i, j]) == scene.onset[i, j]
    assert np.all(np.isfinite(data)) and np.all(data >= 0)


def test_neighbour_mu_difference_bounded(scene):
    mu = scene.truth.params[:, :, 1, :]
    dmax = max(np.abs(np.diff(mu, axis=0)).max(), np.abs(np.diff(mu, axis=1)).max())
    assert dmax <= scene.mu_bound


def test_truth_inside_init_ranges():
    cfg = FitConfig()
    for k in range(4):
        _, mu, sigma, tau = parameter_ranges(k, 4)
        assert cfg.mu_range[0] <= mu[0] and mu[1] <= cfg.mu_range[1]
        assert cfg.sigma_range[0] <= sigma[0] and sigma[1] <= cfg.sigma_range[1]
        assert cfg.tau_range[0] <= tau[0] and tau[1] <= cfg.tau_range[1]


def test_invalid_scene_parameters():
    with pytest.raises(DomainError):
        SceneSpec(W=0)
    with pytest.raises(DomainError):
        SceneSpec(spatial_smoothness=0.0)
    with pytest.raises(DomainError):
        add_exposure_noise(TransientVolume(np.ones((1, 1, 2))), 0.5, np.random.default_rng(0))


def test_noise_converges_at_high_intensity(scene):
    noisy = add_exposure_noise(scene.volume, 1.0, np.random.default_rng(1), intensity_scale=1e6)
    clean = scene.volume.data.astype(np.float64)
    rel = np.linalg.norm(noisy.data - clean) / np.linalg.norm(clean)
    assert rel < 1e-2


def test_noise_unbiased_and_variance_scales():
    value = 0.37
    vol = TransientVolume(np.full((100, 100, 1), value, np.float32))
    rng = np.random.default_rng(7)
    a = add_exposure_noise(vol, 1.0, rng, intensity_scale=100.0).data.ravel().astype(np.float64)
    b = add_exposure_noise(vol, 200.0, rng, intensity_scale=100.0).data.ravel().astype(np.float64)
    v32 = float(np.float32(value))
    for x in (a, b):
        assert abs(x.mean() - v32) <= 3 * x.std(ddof=1) / np.sqrt(x.size)
    assert b.var(ddof=1) / a.var(ddof=1) == pytest.approx(200.0, rel=0.1)
    assert a.var(ddof=1) == pytest.approx(v32 / 100.0, rel=0.1)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 5), st.integers(1, 5), st.integers(2, 40),
       st.integers(1, 4), st.floats(1.0, 20.0))
def test_generation_properties(seed, W, H, T, K, smooth):
    spec = SceneSpec(W=W, H=H, T=T, K_true=K, spatial_smoothness=smooth, seed=seed)
    a = generate_scene(spec)
    b = generate_scene(spec)
    assert a.volume == b.volume
    data = a.volume.data
    assert np.all(np.isfinite(data)) and np.all(data >= 0)
    mu = a.truth.params[:, :, 1, :]
    if W > 1:
        assert np.abs(np.diff(mu, axis=0)).max() <= a.mu_bound
    if H > 1:
        assert np.abs(np.diff(mu, axis=1)).max() <= a.mu_bound
    assert reconstruct(a.truth) == a.volume


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(1.0, 1000.0))
def test_noise_preserves_zeros(seed, divisor):
    rng = np.random.default_rng(seed)
    data = rng.uniform(0, 1, (3, 3, 8)).astype(np.float32)
    data[data < 0.4] = 0.0
    noisy = add_exposure_noise(TransientVolume(data), divisor, rng).data
    assert np.all(noisy[data == 0] == 0)
    assert np.all(noisy >= 0)
