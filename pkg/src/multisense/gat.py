"""Graph attention over bounded graph areas.

A single attention layer updates every node vector as a weighted sum of its
neighbours' linearly-mapped states: the non-normalised coefficient between
nodes i and j is ``LeakyReLU(Aᵀ [W h_i, W h_j])``, coefficients softmax over
each neighbourhood, and the aggregated state passes through ELU.  Two heads
run in parallel on half the input width each and concatenate, so the output
width equals the input width and the updated global node can be concatenated
onto a word embedding without an extra projection.

Self-loops are always added: a node attends to itself, which also keeps the
neighbourhood softmax well-defined for isolated nodes.  The implementation is
dense — scores for non-edges are pushed to -1e30 before the softmax — which is
exact at graph-area sizes (≤ 32 nodes).
"""
from __future__ import annotations

import numpy as np

from . import autodiff as ad
from .autodiff import Tensor
from .graph import GraphArea
from .layers import Module, uniform_param

MASK_VALUE = -1e30


class GatHead(Module):
    """One attention head: shared map W (d_out × d_in) and attention vector A."""

    def __init__(self, d_in: int, d_out: int, rng: np.random.Generator):
        scale = 1.0 / np.sqrt(d_in)
        self.weight = uniform_param(rng, (d_out, d_in), scale)
        self.attn = uniform_param(rng, (2 * d_out,), scale)
        self.d_out = d_out

    def __call__(self, states: Tensor, mask: Tensor) -> tuple[Tensor, Tensor]:
        n = states.data.shape[0]
        wh = ad.matmul(states, ad.transpose(self.weight))  # (n, d_out)
        src = ad.matmul(wh, ad.slice_cols(self.attn.reshape((1, -1)), 0, self.d_out).reshape((-1,)))
        dst = ad.matmul(wh, ad.slice_cols(self.attn.reshape((1, -1)), self.d_out, 2 * self.d_out).reshape((-1,)))
        scores = ad.leaky_relu(src.reshape((n, 1)) + dst.reshape((1, n)), negative_slope=0.2)
        alpha = ad.softmax(scores + mask, axis=-1)
        return ad.matmul(alpha, wh), alpha


class GatLayer(Module):
    """Multi-head graph attention preserving the input width."""

    def __init__(self, d_in: int, rng: np.random.Generator, heads: int = 2):
        if d_in % heads:
            raise ValueError(f"input width {d_in} not divisible by {heads} heads")
        self.heads = [GatHead(d_in, d_in // heads, rng) for _ in range(heads)]
        self.d_in = d_in

    def __call__(self, states: Tensor, adjacency: np.ndarray, self_loops: bool = True) -> Tensor:
        out, _ = self.forward_with_attention(states, adjacency, self_loops)
        return out

    def forward_with_attention(
        self, states: Tensor, adjacency: np.ndarray, self_loops: bool = True
    ) -> tuple[Tensor, list[np.ndarray]]:
        """Updated states plus each head's attention matrix (rows softmaxed)."""
        n = states.data.shape[0]
        adj = np.asarray(adjacency, dtype=bool)
        if adj.shape != (n, n):
            raise ValueError(f"adjacency shape {adj.shape} does not match {n} nodes")
        if self_loops:
            adj = adj | np.eye(n, dtype=bool)
        elif not adj.any(axis=1).all():
            raise ValueError("node with empty neighborhood and self-loops disabled")
        mask = Tensor(np.where(adj, 0.0, MASK_VALUE))
        outputs, alphas = [], []
        for head in self.heads:
            out, alpha = head(states, mask)
            outputs.append(out)
            alphas.append(alpha.data)
        return ad.elu(ad.concat(outputs, axis=1)), alphas


def area_adjacency(area: GraphArea) -> np.ndarray:
    """Symmetric adjacency (no self-loops) over the area's member positions."""
    index = {nid: k for k, nid in enumerate(area.node_ids)}
    adj = np.zeros((len(area.node_ids), len(area.node_ids)), dtype=bool)
    for e in area.edges:
        i, j = index[e.src], index[e.dst]
        adj[i, j] = adj[j, i] = True
    np.fill_diagonal(adj, False)
    return adj


def gat_forward(
    area: GraphArea, states: Tensor, layer: GatLayer
) -> Tensor:
    """Run the attention layer over an extracted graph area."""
    return layer(states, area_adjacency(area))
