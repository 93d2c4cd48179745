import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from emgcodec.errors import ShapeError
from emgcodec.losses import (gradient_loss, gradient_loss_and_grad, image_loss, kld_directed,
                             mse_loss, mse_loss_and_grad, pixel_loss, pixel_loss_and_grad,
                             spatial_gradients)


def positive(n):
    return arrays(np.float64, n, elements=st.floats(1e-3, 1e3))


def nonneg(shape):
    return arrays(np.float64, shape, elements=st.floats(0.0, 1e3))


def brute_gradient_loss(a, b):
    """Direct double loop over pixels and bins, zero padding outside the window."""
    n, m, T = a.shape

    def at(x, i, j, t):
        return x[i, j, t] if 0 <= i < n and 0 <= j < m else 0.0

    total = 0.0
    for t in range(T):
        for di, dj in [(0, -1), (0, 1), (-1, 0), (1, 0)]:
            acc = 0.0
            for i in range(n):
                for j in range(m):
                    ga = at(a, i + di, j + dj, t) - a[i, j, t]
                    gb = at(b, i + di, j + dj, t) - b[i, j, t]
                    acc += (ga - gb) ** 2
            total += math.sqrt(acc)
    return total


def test_kld_two_bin_values():
    p = np.array([0.5, 0.5])
    q = np.array([0.25, 0.75])
    assert kld_directed(p, q) == pytest.approx(0.5 * math.log(4 / 3), rel=1e-14)
    assert kld_directed(p, q) == pytest.approx(0.14384, abs=1e-5)
    # swapped direction: 0.25 ln(1/2) + 0.75 ln(3/2)
    assert kld_directed(q, p) == pytest.approx(0.25 * math.log(0.5) + 0.75 * math.log(1.5),
                                               rel=1e-14)
    assert kld_directed(q, p) == pytest.approx(0.13081, abs=1e-5)
    assert kld_directed(p, p) == 0.0


def test_pixel_loss_equals_directed_sum_on_equal_totals():
    rng = np.random.default_rng(5)
    p = rng.uniform(0.1, 1, 8)
    q = rng.uniform(0.1, 1, 8)
    q *= p.sum() / q.sum()
    assert pixel_loss(p, q) == pytest.approx(kld_directed(p, q) + kld_directed(q, p), abs=1e-12)


def test_mse_values():
    assert mse_loss([1.0, 0.0], [0.0, 1.0]) == 1.0
    rng = np.random.default_rng(2)
    a, b = rng.normal(size=(2, 17))
    assert mse_loss(a, b) == pytest.approx(sum((x - y) ** 2 for x, y in zip(a, b)) / 17, rel=1e-14)


@pytest.mark.parametrize("fn", [kld_directed, pixel_loss, mse_loss])
def test_length_mismatch(fn):
    with pytest.raises(ShapeError):
        fn(np.ones(3), np.ones(4))


def test_shape_mismatch_window_and_image():
    with pytest.raises(ShapeError):
        gradient_loss(np.ones((2, 2, 3)), np.ones((2, 2, 4)))
    with pytest.raises(ShapeError):
        image_loss(np.ones((2, 2, 3)), np.ones((2, 3, 3)))


def test_spatial_gradients_constant_window():
    w = np.full((3, 3, 2), 4.0)
    g = spatial_gradients(w, 1)
    assert g["up"][1, 1] == g["down"][1, 1] == g["left"][1, 1] == g["right"][1, 1] == 0.0
    assert np.all(g["up"][:, 0] == -4.0) and np.all(g["down"][:, -1] == -4.0)
    assert np.all(g["left"][0] == -4.0) and np.all(g["right"][-1] == -4.0)


def test_spatial_gradients_single_pixel():
    g = spatial_gradients(np.array([[[2.5]]]), 0)
    assert all(g[d][0, 0] == -2.5 for d in ("up", "down", "left", "right"))


def test_spatial_gradients_ramp():
    i = np.arange(3, dtype=float)[:, None, None] * np.ones((3, 3, 1))
    g = spatial_gradients(i, 0)
    assert np.all(g["left"][1:] == -1.0)
    assert np.all(g["right"][:-1] == 1.0)


def test_spatial_gradients_out_of_range():
    with pytest.raises(IndexError):
        spatial_gradients(np.ones((3, 3, 4)), 4)


def test_gradient_loss_hand_example():
    a = np.array([[[1.0], [2.0]], [[3.0], [5.0]]])
    b = np.zeros_like(a)
    # residual r = a; zero padding
    # up:    [[-1, 1-2], [-3, 3-5]] -> [-1,-1,-3,-2]
    # down:  [[2-1, -2], [5-3, -5]] -> [1,-2,2,-5]
    # left:  [[-1,-2],[1-3, 2-5]]   -> [-1,-2,-2,-3]
    # right: [[3-1, 5-2],[-3,-5]]   -> [2,3,-3,-5]
    expected = (math.sqrt(1 + 1 + 9 + 4) + math.sqrt(1 + 4 + 4 + 25)
                + math.sqrt(1 + 4 + 4 + 9) + math.sqrt(4 + 9 + 9 + 25))
    assert gradient_loss(a, b) == pytest.approx(expected, rel=1e-14)
    assert gradient_loss(a, a) == 0.0


def test_gradient_loss_constant_shift_interior():
    rng = np.random.default_rng(1)
    w = rng.uniform(0, 1, (5, 5, 6))
    assert gradient_loss(w, w + 0.3, interior=True) == pytest.approx(0.0, abs=1e-12)
    assert gradient_loss(w, w + 0.3) > 0.0


def test_image_loss_sums_pixels():
    rng = np.random.default_rng(4)
    a = rng.uniform(0, 1, (2, 2, 7))
    b = rng.uniform(0, 1, (2, 2, 7))
    assert image_loss(a, b) == pytest.approx(sum(pixel_loss(a[i, j], b[i, j])
                                                 for i in range(2) for j in range(2)), rel=1e-14)
    assert image_loss(a[:1, :1], b[:1, :1]) == pixel_loss(a[0, 0], b[0, 0])
    assert image_loss(a, a) == 0.0


def test_floor_handles_zero_bins():
    p = np.array([0.0, 1.0, 0.0])
    q = np.array([0.5, 0.5, 0.0])
    v = pixel_loss(p, q)
    assert math.isfinite(v) and v > 0
    assert pixel_loss(np.zeros(4), np.zeros(4)) == 0.0


def _numeric_grad(f, q, step=1e-7):
    g = np.empty_like(q)
    for k in range(q.size):
        d = np.zeros_like(q)
        d.flat[k] = step * max(1.0, abs(q.flat[k]))
        g.flat[k] = (f(q + d) - f(q - d)) / (2 * d.flat[k])
    return g


@pytest.mark.parametrize("normalize", [False, True])
def test_pixel_grad_matches_finite_differences(normalize):
    rng = np.random.default_rng(9)
    p = rng.uniform(0.05, 1, 12)
    q = rng.uniform(0.05, 1, 12)
    _, g = pixel_loss_and_grad(p, q, normalize=normalize)
    num = _numeric_grad(lambda x: pixel_loss(p, x, normalize=normalize), q)
    assert np.allclose(g, num, rtol=1e-6, atol=1e-8)


@pytest.mark.parametrize("normalize", [False, True])
def test_mse_grad_matches_finite_differences(normalize):
    rng = np.random.default_rng(10)
    p = rng.uniform(0.05, 1, 12)
    q = rng.uniform(0.05, 1, 12)
    _, g = mse_loss_and_grad(p, q, normalize=normalize)
    num = _numeric_grad(lambda x: mse_loss(p, x, normalize=normalize), q)
    assert np.allclose(g, num, rtol=1e-6, atol=1e-9)


@pytest.mark.parametrize("interior", [False, True])
def test_gradient_loss_grad_matches_finite_differences(interior):
    rng = np.random.default_rng(12)
    w = rng.uniform(0, 1, (3, 4, 5))
    r = rng.uniform(0, 1, (3, 4, 5))
    _, g = gradient_loss_and_grad(w, r, interior=interior)
    num = _numeric_grad(lambda x: gradient_loss(w, x, interior=interior), r)
    assert np.allclose(g, num, rtol=1e-5, atol=1e-7)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 16).flatmap(lambda n: st.tuples(nonneg(n), nonneg(n))))
def test_pixel_loss_nonnegative_and_symmetric(pq):
    p, q = pq
    a = pixel_loss(p, q)
    assert a >= 0.0
    assert a == pixel_loss(q, p)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 16).flatmap(nonneg))
def test_pixel_loss_zero_on_identical(p):
    assert pixel_loss(p, p) == 0.0


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 16).flatmap(lambda n: st.tuples(positive(n), positive(n))))
def test_directed_identity_on_equal_totals(pq):
    p, q = pq
    q = q * (p.sum() / q.sum())
    # floors inactive: every value is within 1e6 of the maximum
    expected = kld_directed(p, q) + kld_directed(q, p)
    assert pixel_loss(p, q) == pytest.approx(expected, abs=1e-12 * max(1.0, p.sum()))


@settings(max_examples=150, deadline=None)
@given(arrays(np.float64, (3, 3, 4), elements=st.floats(-10, 10)),
       arrays(np.float64, (3, 3, 4), elements=st.floats(-10, 10)))
def test_gradient_loss_matches_brute_force_and_is_symmetric(a, b):
    got = gradient_loss(a, b)
    assert got == pytest.approx(brute_gradient_loss(a, b), abs=1e-12 * max(1.0, got))
    assert got == pytest.approx(gradient_loss(b, a), abs=1e-12 * max(1.0, got))
