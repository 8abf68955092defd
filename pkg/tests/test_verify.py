from mllp_goi.goi import Mode
from mllp_goi.verify import (
    SUITES,
    closure_suite,
    codec_suite,
    converse_suite,
    focus_suite,
    intrel_suite,
    invariance_suite,
    laws_suite,
)


def test_laws_small_seeded():
    a = laws_suite(seed=3, samples=40)
    b = laws_suite(seed=3, samples=40)
    assert a.passed and a.total == b.total
    assert a.failures == b.failures == []


def test_invariance_suite_small():
    res = invariance_suite(5, ["X", "Y"])
    assert res.passed and res.total == 176
    assert res.detail["longest_normalization"] >= 1


def test_invariance_suite_stride_partition():
    full = invariance_suite(5, ["X"])
    parts = [invariance_suite(5, ["X"], stride=2, offset=k) for k in (0, 1)]
    assert sum(p.total for p in parts) == full.total
    assert all(p.passed for p in parts)


def test_focus_suite_small():
    res = focus_suite(5, ["X", "Y"])
    assert res.passed
    assert res.total == 106  # focused proofs at this budget


def test_converse_suite_small():
    res = converse_suite(5, ["X", "Y"])
    assert res.passed and res.total > 0


def test_closure_suite_small():
    res = closure_suite(5, ["X", "Y"], window_size=8)
    assert res.passed and res.total == 176


def test_codec_suite_small():
    res = codec_suite(4, ["X", "Y"])
    assert res.passed


def test_intrel_suite_small():
    res = intrel_suite(seed=5, samples=40)
    assert res.passed
    assert "witness" in res.detail


def test_degenerate_mode_invariance():
    res = invariance_suite(5, ["X"], mode=Mode.PINJ_DEGENERATE)
    assert res.passed


def test_suite_registry():
    assert set(SUITES) == {"laws", "invariance", "focus", "converse",
                           "closure", "codec", "intrel"}


def test_laws_hold_for_other_distinguished_points():
    assert laws_suite(seed=9, samples=60, window_size=8, n_alpha=3).passed
    assert laws_suite(seed=10, samples=40, window_size=5, n_alpha=4).passed


def test_closure_and_codec_other_windows():
    assert closure_suite(5, ["X", "Y"], window_size=9, n_alpha=2).passed
    assert codec_suite(4, ["X", "Y"], window_size=12, n_alpha=1).passed
