import numpy as np
import pytest

from jamloc.sigsim import DEFAULT_HEIGHTS, gen_trajectory


def test_circle_pose_count():
    poses = gen_trajectory("circles", {"radii": (1, 2, 3, 4, 5), "points_per_circle": 100},
                           heights=DEFAULT_HEIGHTS)
    assert poses.shape == (5 * 4 * 100, 3)


def test_default_heights():
    assert DEFAULT_HEIGHTS == (3.9, 4.4, 4.9, 5.4)
    poses = gen_trajectory("circles", {"radii": (2.0,), "points_per_circle": 8})
    assert set(np.unique(poses[:, 2])) == set(DEFAULT_HEIGHTS)


def test_grid_circles_count():
    poses = gen_trajectory("grid_circles",
                           {"centers": ((-3, 12), (3, 12), (-3, 17), (3, 17)),
                            "radii": (1.0, 1.5), "points_per_circle": 10},
                           heights=(4.0, 5.0))
    assert poses.shape == (4 * 2 * 2 * 10, 3)


def test_meander_rows_monotone_in_x():
    poses = gen_trajectory("meander", {"x_range": (-5, 5), "y_range": (10, 20),
                                       "rows": 4, "points_per_row": 12}, heights=(4.4,))
    assert poses.shape == (4 * 12, 3)
    for r in range(4):
        xs = poses[r * 12:(r + 1) * 12, 0]
        diffs = np.diff(xs)
        assert np.all(diffs > 0) or np.all(diffs < 0)


def test_nonpositive_radius_rejected():
    with pytest.raises(ValueError):
        gen_trajectory("circles", {"radii": (1.0, -2.0), "points_per_circle": 4})


def test_empty_heights_rejected():
    with pytest.raises(ValueError):
        gen_trajectory("circles", {"radii": (1.0,)}, heights=())


def test_unknown_kind_rejected():
    with pytest.raises(ValueError):
        gen_trajectory("spiral", {})
