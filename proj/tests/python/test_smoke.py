import math
import os
import tempfile

import numpy as np
import pytest

import _penme


def noise(seed, h=128, w=128):
    rng = np.random.default_rng(seed)
    return rng.random((h, w))


def test_link_math():
    assert _penme.qfunc(0.0) == pytest.approx(0.5)
    assert _penme.mqam_ber(16, 10.0) == pytest.approx(2.3388674905236327e-3, rel=1e-9)
    assert _penme.select_modulation(15.0) == 64
    assert _penme.shannon_capacity(2e6, 10.0, 1.0) == pytest.approx(6918863.237274595)


def test_resample_and_warp():
    f = noise(1, 64, 96)
    w = _penme.to_working_domain(f)
    assert w.shape == (128, 128)
    up = _penme.upscale(w, 96, 64)
    assert up.shape == (64, 96)
    const = np.full((50, 70), 0.25)
    assert np.allclose(_penme.to_working_domain(const), 0.25)
    shifted = _penme.warp(w, 0.0, 0.0)
    assert np.array_equal(shifted, w)


def test_phase_correlation_and_signals():
    a = noise(2)
    b = np.roll(a, (3, 5), axis=(0, 1))  # rows then cols
    r = _penme.phase_correlate(a, b)
    assert r["shift"] == (5, 3)  # (dx, dy)
    assert r["sharpness"] > 0.9

    s = _penme.analyze_pair(a, a)
    assert s["strength"] == 0.0
    assert s["consistency"] == 1.0
    assert s["block_field"].shape == (8, 8, 2)


def test_selection_and_codec():
    a = noise(3)
    sel = _penme.fuse_and_select(a, a)
    assert sel["modality"] == "CNN"

    rt = _penme.codec_roundtrip(a, a)
    assert rt["skipped"]
    assert rt["payload_bits"] == 48

    b = noise(4)
    rt2 = _penme.codec_roundtrip(a, b)
    assert not rt2["skipped"]
    assert rt2["decoded"].shape == (128, 128)
    assert rt2["decoded"].min() >= 0.0 and rt2["decoded"].max() <= 1.0


def test_metrics():
    a = noise(5, 256, 448)
    assert _penme.mse(a, a) == 0.0
    assert _penme.psnr(0.01) == pytest.approx(20.0)
    assert _penme.ms_ssim(a, a) == pytest.approx(1.0, abs=1e-9)


def test_allocate():
    r = _penme.allocate(payload_bits=4144, channel_gain=1e-12)
    assert r["feasible"]
    assert 1 <= r["rbs_used"] <= 10
    assert r["power_w"] <= 1.0


def test_end_to_end_experiment():
    with tempfile.TemporaryDirectory() as tmp:
        corpus = os.path.join(tmp, "corpus")
        manifests = _penme.synth_corpus(7, corpus)
        assert len(manifests) == 9
        out = _penme.run_experiment(corpus, method="penme", snr=[20.0], seed=7,
                                    out_dir=os.path.join(tmp, "out"))
        assert os.path.exists(out["csv_path"])
        assert out["total_payload_bytes"] > 0
        assert len(out["summary"]) == 1
        assert out["summary"][0]["mean_psnr_db"] > 0
