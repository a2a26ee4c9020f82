import numpy as np
import pytest

from jamloc.nn import CheckpointError, Tensor, load_checkpoint, save_checkpoint


def test_round_trip_with_metadata(tmp_path):
    rng = np.random.default_rng(5)
    params = [Tensor(rng.normal(size=(3, 4)).astype(np.float32), requires_grad=True),
              Tensor(rng.normal(size=(7,)).astype(np.float32), requires_grad=True)]
    meta = {"model": "MCAFF", "norm": {"iq_mean": [0.0] * 8}}
    path = tmp_path / "w.gjw"
    save_checkpoint(path, params, meta)
    arrays, loaded_meta = load_checkpoint(path)
    assert loaded_meta == meta
    for p, a in zip(params, arrays):
        np.testing.assert_array_equal(p.data, a)


def test_round_trip_without_metadata(tmp_path):
    path = tmp_path / "w.gjw"
    save_checkpoint(path, [Tensor(np.ones((2, 2), dtype=np.float32))])
    arrays, meta = load_checkpoint(path)
    assert meta is None
    assert arrays[0].shape == (2, 2)


def test_bad_magic(tmp_path):
    path = tmp_path / "junk.gjw"
    path.write_bytes(b"NOPE" + b"\x00" * 16)
    with pytest.raises(CheckpointError):
        load_checkpoint(path)


def test_truncation_detected(tmp_path):
    path = tmp_path / "w.gjw"
    save_checkpoint(path, [Tensor(np.ones(10, dtype=np.float32))])
    blob = path.read_bytes()
    path.write_bytes(blob[:-8])
    with pytest.raises(CheckpointError):
        load_checkpoint(path)


def test_float64_params_stored_as_f32(tmp_path):
    path = tmp_path / "w.gjw"
    save_checkpoint(path, [Tensor(np.array([1.0, 2.0]))])
    arrays, _ = load_checkpoint(path)
    assert arrays[0].dtype == np.float32
