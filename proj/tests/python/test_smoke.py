"""Smoke tests for the python bindings (built extension on PYTHONPATH)."""

import math

import numpy as np
import pytest

import rrvqa


def test_version():
    assert rrvqa.__version__


def test_ssim_identity():
    rng = np.random.default_rng(1)
    plane = rng.integers(0, 256, size=(48, 48)).astype(np.float64)
    assert rrvqa.ssim(plane, plane) == pytest.approx(1.0, abs=1e-9)


def test_ssim_constant_closed_form():
    a = np.full((32, 32), 100.0)
    b = np.full((32, 32), 110.0)
    expected = (2 * 100 * 110 + 6.5025) / (100**2 + 110**2 + 6.5025)
    assert rrvqa.ssim(a, b) == pytest.approx(expected, abs=1e-9)


def test_dct_parseval_and_energy():
    rng = np.random.default_rng(2)
    block = rng.uniform(0, 255, size=(32, 32))
    coeffs = rrvqa.dct2d(block)
    assert np.sum(coeffs**2) == pytest.approx(np.sum(block**2), rel=1e-12)

    flat = np.zeros((32, 32))
    flat[0, 0] = 99.0  # DC only
    assert rrvqa.block_texture_energy(flat) == 0.0


def test_train_predict_roundtrip(tmp_path):
    rng = np.random.default_rng(3)
    x = rng.uniform(-1, 1, size=(60, 8))
    y = 3.0 + 1.5 * x[:, 7] - 0.5 * x[:, 0]

    model, rmse_history = rrvqa.train(x, y, n_estimators=40, seed=9)
    assert len(rmse_history) == 40
    assert rmse_history[-1] <= rmse_history[0]

    pred = model.predict(x)
    assert rrvqa.plcc(list(pred), list(y)) > 0.95

    path = tmp_path / "model.json"
    model.save(str(path))
    loaded = rrvqa.load_model(str(path))
    assert np.array_equal(loaded.predict(x), pred)
    assert loaded.feature_names[7] == "mu_ssim"

    share = loaded.gain_importance()
    assert len(share) == 8
    assert share[7] == max(share)


def test_metrics_match_scipy():
    scipy_stats = pytest.importorskip("scipy.stats")
    rng = np.random.default_rng(4)
    for trial in range(20):
        n = int(rng.integers(4, 12))
        if trial % 2 == 0:
            a = rng.integers(0, 4, size=n).astype(float)
            b = rng.integers(0, 4, size=n).astype(float)
        else:
            a = rng.uniform(0, 10, size=n)
            b = rng.uniform(0, 10, size=n)
        if np.all(a == a[0]) or np.all(b == b[0]):
            continue
        assert rrvqa.plcc(list(a), list(b)) == pytest.approx(
            scipy_stats.pearsonr(a, b).statistic, abs=1e-10
        )
        assert rrvqa.srocc(list(a), list(b)) == pytest.approx(
            scipy_stats.spearmanr(a, b).statistic, abs=1e-10
        )
        assert rrvqa.krocc(list(a), list(b)) == pytest.approx(
            scipy_stats.kendalltau(a, b).statistic, abs=1e-10
        )


def test_dct_matches_scipy():
    scipy_fft = pytest.importorskip("scipy.fft")
    rng = np.random.default_rng(7)
    for w in (4, 16, 32):
        block = rng.uniform(0, 255, (w, w))
        reference = scipy_fft.dctn(block, type=2, norm="ortho")
        assert np.max(np.abs(rrvqa.dct2d(block) - reference)) <= 1e-9


def test_ssim_matches_skimage():
    skimage_metrics = pytest.importorskip("skimage.metrics")
    rng = np.random.default_rng(8)
    for _ in range(5):
        a = rng.integers(0, 256, (64, 64)).astype(np.float64)
        b = np.clip(a + rng.normal(0, 10, a.shape), 0, 255)
        reference = skimage_metrics.structural_similarity(
            a, b, win_size=11, gaussian_weights=True, sigma=1.5,
            use_sample_covariance=False, data_range=255.0,
        )
        assert rrvqa.ssim(a, b) == pytest.approx(reference, abs=1e-8)


def test_metric_errors():
    with pytest.raises(rrvqa.RrvqaError):
        rrvqa.plcc([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])


def test_compare_on_synth_corpus(tmp_path):
    entries = rrvqa.generate_corpus(
        str(tmp_path), contents=1, levels=3, width=32, height=32, frames=4, seed=5
    )
    assert len(entries) == 3
    assert entries[0]["mos"] == 5.0
    assert entries[-1]["mos"] == 1.0

    ref = str(tmp_path / entries[0]["ref"])
    identity = rrvqa.compare(ref, str(tmp_path / entries[0]["test"]))
    assert identity["mu_ssim"] == pytest.approx(1.0, abs=1e-6)
    assert np.max(np.abs(identity["fused"][:7])) <= 1e-6
    assert identity["kl_proxy"] <= 1e-12

    degraded = rrvqa.compare(ref, str(tmp_path / entries[-1]["test"]), threads=2)
    assert degraded["mu_ssim"] < 1.0
    assert degraded["frames_used"] == 4
    assert not degraded["truncated"]


def test_compare_missing_file(tmp_path):
    with pytest.raises(rrvqa.RrvqaError):
        rrvqa.compare(str(tmp_path / "nope.y4m"), str(tmp_path / "also_nope.y4m"))
