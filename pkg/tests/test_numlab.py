import cmath
import math

import numpy as np
import pytest

from hmsbench.cover import build_cover, lift_cycle
from hmsbench.numlab import (
    BACKEND,
    RootTrackConfig,
    branch_points,
    compare_monodromy,
    cp1_vanishing,
    critical_values_line,
    critical_values_plane,
    f0_critical_values,
    f0_expected,
    hirzebruch_degeneration,
    hirzebruch_isotopy,
    merge_pair,
    track_monodromy,
)
from hmsbench.numlab import _track_py, lab

try:
    from hmsbench.numlab import _track as _track_c
except ImportError:  # the compiled kernel is optional
    _track_c = None


def test_config_validation():
    with pytest.raises(ValueError):
        RootTrackConfig(newton_tol=1e-5, collision_threshold=1e-6)
    with pytest.raises(ValueError):
        RootTrackConfig(step=0)


def test_critical_values():
    lam = critical_values_plane(1, 1, 1)
    assert np.allclose(sorted(abs(lam)), [3, 3, 3])
    assert abs(lam[0] - 3) < 1e-12
    # lam_0^n = n^n / (a^a b^b c^c)
    lam0 = critical_values_plane(4, 2, 1)[0].real
    assert math.isclose(lam0 ** 7, 7 ** 7 / (4 ** 4 * 2 ** 2), rel_tol=1e-12)
    assert np.allclose(critical_values_line(1, 1), [2, -2])


def test_branch_points_limits():
    bp = branch_points(1, 2, 3, 0)
    assert not bp.double_root and bp.residual < 1e-12
    bp = branch_points(1, 2, 3, critical_values_plane(1, 2, 3)[2])
    assert bp.double_root
    far = sorted(abs(branch_points(1, 2, 3, 1e3).roots))
    assert far[0] < 1e-6 and all(abs(r - 1e3) < 2 for r in far[1:])


@pytest.mark.parametrize("w", [(1, 1, 1), (4, 2, 1), (1, 2, 3)])
def test_monodromy_matches_cover(w):
    rep = compare_monodromy(*w)
    assert rep.passed, rep.mismatches
    assert rep.max_residual < 1e-9
    assert rep.calibrated is not None and rep.calibrated <= rep.offset


def test_monodromy_stable_under_refinement():
    base = track_monodromy(4, 2, 1, ("branch", 3)).permutation
    for step in (0.01, 0.005):
        assert track_monodromy(4, 2, 1, ("branch", 3), RootTrackConfig(step=step)).permutation == base
    assert track_monodromy(4, 2, 1, "contractible").permutation == (0, 1, 2)


def test_sheet_labels_follow_origin_loop():
    perm = track_monodromy(1, 2, 3, "origin").permutation
    assert perm == tuple((q - 1) % 5 for q in range(5))


def test_merges_are_cover_endpoints():
    assert merge_pair(4, 2, 1, 0) == (1, 5)
    for w in [(1, 1, 1), (1, 2, 3), (3, 2, 2)]:
        d = build_cover(*w)
        for j in range(d.n):
            assert merge_pair(*w, j) == tuple(sorted(lift_cycle(d, j).endpoints))


def test_merge_angles():
    # for (4,2,1) the colliding branch points start at angles +-3 pi / 7
    d = build_cover(4, 2, 1)
    angles = sorted(((2 * m + d.eps0) * math.pi / 7 + math.pi) % (2 * math.pi) - math.pi for m in merge_pair(4, 2, 1, 0))
    assert np.allclose(angles, [-3 * math.pi / 7, 3 * math.pi / 7])


@pytest.mark.parametrize("a,b", [(1, 1), (1, 2), (2, 3), (3, 2), (4, 3)])
def test_cp1_vanishing(a, b):
    assert cp1_vanishing(a, b) == (0, b)


def test_backends_agree():
    if _track_c is None:
        pytest.skip("compiled kernel not built")
    x0, y0 = lab.fiber_at_base(1, 2, 3)
    xs = lab.loop_nodes(1, 2, 3, ("branch", 2), 0.02)
    xs[0] = xs[-1] = x0
    s, K = np.ascontiguousarray(-xs), np.ascontiguousarray(xs ** (-1))
    y1, y2 = y0.copy(), y0.copy()
    r1 = _track_py.track_path(y1, s, K, 2, 3, 1e-12, 1e-6, 40)
    r2 = _track_c.track_path(y2, s, K, 2, 3, 1e-12, 1e-6, 40)
    assert r1[2] == r2[2] == 0
    assert np.allclose(y1, y2, atol=1e-9)
    assert BACKEND in ("cython", "python")


def test_collision_is_reported():
    # drive two roots of x (lam - x) = 1 into each other at lam = 2
    x = np.array([1 - 1j, 1 + 1j], dtype=complex) / 1.0
    lab.kernel.polish(x, 0j, 1 + 0j, 1, 1, 1e-12)
    lam = np.linspace(0, 2, 50).astype(complex)
    res, sep, status = _track_py.track_path(x, lam, np.ones_like(lam), 1, 1, 1e-12, 1e-6, 20)
    assert status in (1, 2)


@pytest.mark.parametrize("n", range(3, 9))
def test_hirzebruch_isotopy(n):
    rep = hirzebruch_isotopy(n, samples=100)
    assert rep.passed, (rep.min_modulus, rep.max_modulus)


@pytest.mark.parametrize("n", range(3, 9))
def test_hirzebruch_escape_count(n):
    rep = hirzebruch_degeneration(n)
    assert rep.shape_ok
    assert len(rep.escaping) == n - 2


def test_hirzebruch_rate():
    # the bounded values approach +-2 like 2 sqrt(b)
    for b in (1e-6, 1e-8, 1e-10):
        dev = hirzebruch_degeneration(3, b_final=b).deviation
        assert 0.9 < dev / (2 * math.sqrt(b)) < 1.1
    assert hirzebruch_degeneration(3, b_final=1e-14).passed


def test_f0():
    for a, b in [(1, 1), (2, 3), (0.5, 7)]:
        assert np.allclose(f0_critical_values(a, b), f0_expected(a, b))
