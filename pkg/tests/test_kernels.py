import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import dense_cnot, dense_op, haar_state
from qadv import _pykernels, kernels

try:
    from qadv import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = [pytest.param(_pykernels, id="python"),
            pytest.param(_ckernels, id="cython",
                         marks=pytest.mark.skipif(_ckernels is None, reason="extension not built"))]


def random_unitary(d, rng):
    q, r = np.linalg.qr(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def batch(m, rng, b=3):
    return np.ascontiguousarray(np.stack([haar_state(m, rng) for _ in range(b)]))


def test_backend_flag():
    assert kernels.BACKEND in ("cython", "python")
    if _ckernels is not None:
        assert kernels.BACKEND == "cython"


@pytest.mark.parametrize("impl", BACKENDS)
class TestAgainstDense:
    def test_1q(self, impl, rng):
        for m in (1, 3, 5):
            for q in range(m):
                s, u = batch(m, rng), random_unitary(2, rng)
                expect = s @ dense_op(u, (q,), m).T
                impl.apply_1q(s, u, q)
                assert np.allclose(s, expect, atol=1e-12)

    def test_cnot(self, impl, rng):
        m = 4
        for c in range(m):
            for t in range(m):
                if c == t:
                    continue
                s = batch(m, rng)
                expect = s @ dense_cnot(c, t, m).T
                impl.apply_cnot(s, c, t)
                assert np.allclose(s, expect, atol=1e-14)

    def test_2q(self, impl, rng):
        m = 4
        for q1 in range(m):
            for q2 in range(m):
                if q1 == q2:
                    continue
                s, u = batch(m, rng), random_unitary(4, rng)
                expect = s @ dense_op(u, (q1, q2), m).T
                impl.apply_2q(s, u, q1, q2)
                assert np.allclose(s, expect, atol=1e-12)


@pytest.mark.skipif(_ckernels is None, reason="extension not built")
class TestBackendsAgree:
    @given(st.integers(2, 7), st.integers(0, 2**32 - 1))
    @settings(max_examples=40, deadline=None)
    def test_random_sequence(self, m, seed):
        rng = np.random.default_rng(seed)
        a = batch(m, rng, b=2)
        b = a.copy()
        for _ in range(10):
            kind = int(rng.integers(3))
            q1, q2 = (int(x) for x in rng.choice(m, size=2, replace=False))
            if kind == 0:
                u = random_unitary(2, rng)
                _pykernels.apply_1q(a, u, q1)
                _ckernels.apply_1q(b, u, q1)
            elif kind == 1:
                _pykernels.apply_cnot(a, q1, q2)
                _ckernels.apply_cnot(b, q1, q2)
            else:
                u = random_unitary(4, rng)
                _pykernels.apply_2q(a, u, q1, q2)
                _ckernels.apply_2q(b, u, q1, q2)
        assert np.allclose(a, b, atol=1e-12)

    def test_unitarity_preserved(self, rng):
        s = batch(6, rng, b=4)
        for q in range(6):
            _ckernels.apply_1q(s, random_unitary(2, rng), q)
        assert np.allclose(np.linalg.norm(s, axis=1), 1.0)


def test_fallback_forced_by_env(monkeypatch):
    import importlib

    monkeypatch.setenv("QADV_KERNELS", "python")
    reloaded = importlib.reload(kernels)
    try:
        assert reloaded.BACKEND == "python"
        assert reloaded.apply_1q is _pykernels.apply_1q
    finally:
        monkeypatch.delenv("QADV_KERNELS")
        importlib.reload(kernels)
