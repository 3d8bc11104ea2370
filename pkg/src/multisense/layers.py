"""Neural layers assembled from the autodiff primitives.

Provides the pieces shared by the word and sense models: linear maps,
embeddings, a gated recurrent cell/stack, layer norm and a causal
self-attention transformer block. All parameters are float64 tensors
registered under dotted names for checkpointing.
"""
from __future__ import annotations

import numpy as np

from . import autodiff as ad
from .autodiff import Tensor


def uniform_param(rng: np.random.Generator, shape, scale: float) -> Tensor:
    return Tensor(rng.uniform(-scale, scale, size=shape), requires_grad=True)


class Module:
    """Minimal parameter container with dotted-name introspection."""

    def parameters(self) -> dict[str, Tensor]:
        out: dict[str, Tensor] = {}
        for attr, value in vars(self).items():
            if isinstance(value, Tensor) and value.requires_grad:
                out[attr] = value
            elif isinstance(value, Module):
                for sub, t in value.parameters().items():
                    out[f"{attr}.{sub}"] = t
            elif isinstance(value, (list, tuple)):
                for i, item in enumerate(value):
                    if isinstance(item, Module):
                        for sub, t in item.parameters().items():
                            out[f"{attr}.{i}.{sub}"] = t
        return out


class Linear(Module):
    """Affine map y = x W^T + b with weight shaped (out_dim, in_dim)."""

    def __init__(self, in_dim: int, out_dim: int, rng: np.random.Generator, zero_init: bool = False):
        if zero_init:
            self.weight = Tensor(np.zeros((out_dim, in_dim)), requires_grad=True)
            self.bias = Tensor(np.zeros(out_dim), requires_grad=True)
        else:
            scale = 1.0 / np.sqrt(in_dim)
            self.weight = uniform_param(rng, (out_dim, in_dim), scale)
            self.bias = uniform_param(rng, (out_dim,), scale)

    def __call__(self, x: Tensor) -> Tensor:
        return ad.matmul(x, ad.transpose(self.weight)) + self.bias


class Embedding(Module):
    """Lookup table; rows may be frozen (pretrained) or trainable."""

    def __init__(self, table: np.ndarray, trainable: bool):
        self.weight = Tensor(np.asarray(table, dtype=np.float64), requires_grad=trainable)

    @classmethod
    def random(cls, rng: np.random.Generator, vocab_size: int, dim: int, trainable: bool = True):
        return cls(rng.normal(0.0, 0.1, size=(vocab_size, dim)), trainable)

    @property
    def dim(self) -> int:
        return self.weight.data.shape[1]

    def __call__(self, ids) -> Tensor:
        return ad.gather_rows(self.weight, ids)

    def parameters(self) -> dict[str, Tensor]:
        return {"weight": self.weight} if self.weight.requires_grad else {}


class GruCell(Module):
    """Gated recurrent cell, gates ordered (reset, update, candidate)."""

    def __init__(self, in_dim: int, hidden_dim: int, rng: np.random.Generator):
        self.hidden_dim = hidden_dim
        scale = 1.0 / np.sqrt(hidden_dim)
        self.w_ih = uniform_param(rng, (3 * hidden_dim, in_dim), scale)
        self.b_ih = uniform_param(rng, (3 * hidden_dim,), scale)
        self.w_hh = uniform_param(rng, (3 * hidden_dim, hidden_dim), scale)
        self.b_hh = uniform_param(rng, (3 * hidden_dim,), scale)

    def __call__(self, x: Tensor, h: Tensor) -> Tensor:
        H = self.hidden_dim
        xi = ad.matmul(x, ad.transpose(self.w_ih)) + self.b_ih
        hi = ad.matmul(h, ad.transpose(self.w_hh)) + self.b_hh
        r = ad.sigmoid(ad.slice_cols(xi, 0, H) + ad.slice_cols(hi, 0, H))
        z = ad.sigmoid(ad.slice_cols(xi, H, 2 * H) + ad.slice_cols(hi, H, 2 * H))
        n = ad.tanh(ad.slice_cols(xi, 2 * H, 3 * H) + r * ad.slice_cols(hi, 2 * H, 3 * H))
        return (1.0 - z) * n + z * h


class GruStack(Module):
    """Stack of GRU cells stepped jointly through time."""

    def __init__(self, in_dim: int, hidden_dim: int, num_layers: int, rng: np.random.Generator):
        self.cells = [
            GruCell(in_dim if i == 0 else hidden_dim, hidden_dim, rng) for i in range(num_layers)
        ]
        self.hidden_dim = hidden_dim

    def init_state(self, batch: int) -> list[Tensor]:
        return [Tensor(np.zeros((batch, self.hidden_dim))) for _ in self.cells]

    def step(self, x: Tensor, state: list[Tensor]) -> tuple[Tensor, list[Tensor]]:
        new_state = []
        for cell, h in zip(self.cells, state):
            x = cell(x, h)
            new_state.append(x)
        return x, new_state


class LayerNorm(Module):
    def __init__(self, dim: int, eps: float = 1e-5):
        self.gamma = Tensor(np.ones(dim), requires_grad=True)
        self.beta = Tensor(np.zeros(dim), requires_grad=True)
        self.eps = eps

    def __call__(self, x: Tensor) -> Tensor:
        mu = x.mean(axis=-1, keepdims=True)
        centered = x - mu
        var = (centered * centered).mean(axis=-1, keepdims=True)
        return centered / ad.power(var + self.eps, 0.5) * self.gamma + self.beta


def causal_mask(length: int) -> Tensor:
    """Additive mask: 0 on and below the diagonal, -1e30 above."""
    m = np.triu(np.full((length, length), -1e30), k=1)
    return Tensor(m)


class CausalSelfAttention(Module):
    """Multi-head scaled dot-product attention over a (T, d) window."""

    def __init__(self, dim: int, num_heads: int, rng: np.random.Generator):
        if dim % num_heads:
            raise ValueError(f"model dim {dim} not divisible by {num_heads} heads")
        self.num_heads = num_heads
        self.head_dim = dim // num_heads
        self.wq = Linear(dim, dim, rng)
        self.wk = Linear(dim, dim, rng)
        self.wv = Linear(dim, dim, rng)
        self.wo = Linear(dim, dim, rng)

    def __call__(self, x: Tensor, mask: Tensor) -> Tensor:
        q, k, v = self.wq(x), self.wk(x), self.wv(x)
        hd = self.head_dim
        outs = []
        for h in range(self.num_heads):
            qh = ad.slice_cols(q, h * hd, (h + 1) * hd)
            kh = ad.slice_cols(k, h * hd, (h + 1) * hd)
            vh = ad.slice_cols(v, h * hd, (h + 1) * hd)
            scores = ad.matmul(qh, ad.transpose(kh)) * (1.0 / np.sqrt(hd)) + mask
            attn = ad.softmax(scores, axis=-1)
            outs.append(ad.matmul(attn, vh))
        return self.wo(ad.concat(outs, axis=1))


class TransformerBlock(Module):
    """Pre-norm block: attention and feed-forward with residuals."""

    def __init__(self, dim: int, num_heads: int, ff_mult: int, rng: np.random.Generator):
        self.ln1 = LayerNorm(dim)
        self.attn = CausalSelfAttention(dim, num_heads, rng)
        self.ln2 = LayerNorm(dim)
        self.ff1 = Linear(dim, ff_mult * dim, rng)
        self.ff2 = Linear(ff_mult * dim, dim, rng)

    def __call__(self, x: Tensor, mask: Tensor) -> Tensor:
        x = x + self.attn(self.ln1(x), mask)
        return x + self.ff2(ad.relu(self.ff1(self.ln2(x))))
