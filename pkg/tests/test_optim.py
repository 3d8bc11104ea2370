"""Adam updates: hand-computed first step, zero-grad no-op, determinism."""
import numpy as np
import pytest

from multisense import autodiff as ad
from multisense.autodiff import Tensor
from multisense.optim import Adam


def test_zero_gradient_leaves_params_unchanged():
    p = Tensor([1.0, -2.0], requires_grad=True)
    p.grad = np.zeros(2)
    opt = Adam({"p": p})
    opt.step()
    np.testing.assert_allclose(p.data, [1.0, -2.0])


def test_first_step_with_unit_gradient_moves_by_lr():
    # hand computation: m-hat = 1, v-hat = 1 -> delta = lr / (1 + eps)
    p = Tensor([1.0], requires_grad=True)
    p.grad = np.ones(1)
    opt = Adam({"p": p}, lr=0.1)
    opt.step()
    assert p.data[0] == pytest.approx(1.0 - 0.1, abs=1e-6)


def test_missing_grad_raises():
    p = Tensor([1.0], requires_grad=True)
    opt = Adam({"p": p})
    with pytest.raises(RuntimeError, match="'p'"):
        opt.step()


def test_two_runs_are_bitwise_identical():
    def run():
        rng = np.random.default_rng(42)
        p = Tensor(rng.normal(size=4), requires_grad=True)
        opt = Adam({"p": p}, lr=0.05)
        for _ in range(2):
            opt.zero_grad()
            loss = (p * p).sum()
            ad.backward(loss)
            opt.step()
        return p.data.copy()

    first, second = run(), run()
    assert first.tobytes() == second.tobytes()
