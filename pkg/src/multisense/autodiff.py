"""Dense float64 tensors with reverse-mode automatic differentiation.

Every operation the model layers need (matmul, concat, softmax, gated
recurrences, attention scores, cross-entropy) is expressed through the
primitives in this module, so a single finite-difference harness can
certify gradients for all of them. Ops are recorded on a global tape in
execution order; ``backward`` walks the tape in reverse and accumulates
gradients into every tracked leaf.
"""
from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

__all__ = [
    "Tensor",
    "Tape",
    "ShapeError",
    "no_grad",
    "backward",
    "forward_op",
    "add",
    "sub",
    "mul",
    "div",
    "neg",
    "matmul",
    "power",
    "concat",
    "gather_rows",
    "slice_cols",
    "reshape",
    "transpose",
    "softmax",
    "sigmoid",
    "tanh",
    "relu",
    "leaky_relu",
    "elu",
    "cross_entropy",
    "cosine_similarity",
    "zero_grads",
]


class ShapeError(ValueError):
    """Raised when operand shapes are incompatible; names the op and dims."""

    def __init__(self, op: str, detail: str):
        super().__init__(f"{op}: {detail}")
        self.op = op


class Tensor:
    """Dense float64 array in row-major order, optionally gradient-tracked."""

    __slots__ = ("data", "requires_grad", "grad", "is_leaf")

    def __init__(self, data, requires_grad: bool = False):
        self.data = np.ascontiguousarray(data, dtype=np.float64)
        self.requires_grad = bool(requires_grad)
        self.grad: np.ndarray | None = None
        self.is_leaf = True

    @property
    def shape(self) -> tuple[int, ...]:
        return self.data.shape

    @property
    def size(self) -> int:
        return self.data.size

    def numpy(self) -> np.ndarray:
        return self.data

    def item(self) -> float:
        return float(self.data.reshape(-1)[0])

    def __repr__(self) -> str:
        return f"Tensor(shape={self.shape}, requires_grad={self.requires_grad})"

    # arithmetic sugar; python scalars become constant tensors
    def __add__(self, other):
        return add(self, _as_tensor(other))

    def __radd__(self, other):
        return add(_as_tensor(other), self)

    def __sub__(self, other):
        return sub(self, _as_tensor(other))

    def __rsub__(self, other):
        return sub(_as_tensor(other), self)

    def __mul__(self, other):
        return mul(self, _as_tensor(other))

    def __rmul__(self, other):
        return mul(_as_tensor(other), self)

    def __truediv__(self, other):
        return div(self, _as_tensor(other))

    def __neg__(self):
        return neg(self)

    def __matmul__(self, other):
        return matmul(self, _as_tensor(other))

    def __pow__(self, exponent):
        return power(self, float(exponent))

    def sum(self, axis=None, keepdims: bool = False) -> "Tensor":
        return _reduce("sum", self, axis, keepdims)

    def mean(self, axis=None, keepdims: bool = False) -> "Tensor":
        return _reduce("mean", self, axis, keepdims)

    def reshape(self, shape) -> "Tensor":
        return reshape(self, shape)


def _as_tensor(value) -> Tensor:
    if isinstance(value, Tensor):
        return value
    return Tensor(np.asarray(value, dtype=np.float64))


class _Node:
    __slots__ = ("inputs", "output", "backward_fn")

    def __init__(self, inputs: tuple[Tensor, ...], output: Tensor, backward_fn: Callable):
        self.inputs = inputs
        self.output = output
        self.backward_fn = backward_fn


class Tape:
    """Ordered record of executed primitives; parents always precede children."""

    def __init__(self):
        self.nodes: list[_Node] = []
        self.enabled = True

    def __len__(self) -> int:
        return len(self.nodes)

    def clear(self) -> None:
        self.nodes.clear()


_TAPE = Tape()


def active_tape() -> Tape:
    return _TAPE


class no_grad:
    """Context manager disabling tape recording (inference paths)."""

    def __enter__(self):
        self._prev = _TAPE.enabled
        _TAPE.enabled = False
        return self

    def __exit__(self, *exc):
        _TAPE.enabled = self._prev
        return False


def _record(output: Tensor, inputs: tuple[Tensor, ...], backward_fn: Callable) -> Tensor:
    if _TAPE.enabled and any(t.requires_grad for t in inputs):
        output.requires_grad = True
        output.is_leaf = False
        _TAPE.nodes.append(_Node(inputs, output, backward_fn))
    return output


def _accum(t: Tensor, g: np.ndarray) -> None:
    if not t.requires_grad:
        return
    if t.grad is None:
        t.grad = np.zeros_like(t.data)
    t.grad += g


def _unbroadcast(g: np.ndarray, shape: tuple[int, ...]) -> np.ndarray:
    """Reduce a broadcast gradient back to the operand's shape."""
    while g.ndim > len(shape):
        g = g.sum(axis=0)
    for axis, dim in enumerate(shape):
        if dim == 1 and g.shape[axis] != 1:
            g = g.sum(axis=axis, keepdims=True)
    return g.reshape(shape)


def backward(loss: Tensor, tape: Tape | None = None) -> None:
    """Populate ``grad`` on every tracked leaf with d(loss)/d(leaf).

    ``loss`` must be a scalar. The tape is consumed: it is cleared after
    the walk, and intermediate gradient buffers are released. Gradients
    accumulate into leaves, so call :func:`zero_grads` between steps.
    """
    tape = tape if tape is not None else _TAPE
    if loss.size != 1:
        raise ShapeError("backward", f"loss must be scalar, got shape {loss.shape}")
    if not tape.nodes:
        raise RuntimeError("backward: tape is empty, nothing was recorded")

    # leaves touched by any op read as zeros if the loss ignores them
    for node in tape.nodes:
        for t in node.inputs:
            if t.requires_grad and t.is_leaf and t.grad is None:
                t.grad = np.zeros_like(t.data)

    loss.grad = np.ones_like(loss.data)
    for node in reversed(tape.nodes):
        g = node.output.grad
        if g is None:
            continue
        node.backward_fn(g)
        if not node.output.is_leaf:
            node.output.grad = None
    tape.clear()


def zero_grads(params) -> None:
    """Reset gradient buffers on an iterable (or dict) of tensors."""
    tensors = params.values() if isinstance(params, dict) else params
    for t in tensors:
        t.grad = None


# ---------------------------------------------------------------------------
# primitives


def add(a: Tensor, b: Tensor) -> Tensor:
    a, b = _as_tensor(a), _as_tensor(b)
    try:
        out = Tensor(a.data + b.data)
    except ValueError:
        raise ShapeError("add", f"cannot broadcast {a.shape} with {b.shape}") from None

    def bw(g):
        _accum(a, _unbroadcast(g, a.shape))
        _accum(b, _unbroadcast(g, b.shape))

    return _record(out, (a, b), bw)


def sub(a: Tensor, b: Tensor) -> Tensor:
    a, b = _as_tensor(a), _as_tensor(b)
    try:
        out = Tensor(a.data - b.data)
    except ValueError:
        raise ShapeError("sub", f"cannot broadcast {a.shape} with {b.shape}") from None

    def bw(g):
        _accum(a, _unbroadcast(g, a.shape))
        _accum(b, _unbroadcast(-g, b.shape))

    return _record(out, (a, b), bw)


def mul(a: Tensor, b: Tensor) -> Tensor:
    a, b = _as_tensor(a), _as_tensor(b)
    try:
        out = Tensor(a.data * b.data)
    except ValueError:
        raise ShapeError("mul", f"cannot broadcast {a.shape} with {b.shape}") from None

    def bw(g):
        _accum(a, _unbroadcast(g * b.data, a.shape))
        _accum(b, _unbroadcast(g * a.data, b.shape))

    return _record(out, (a, b), bw)


def div(a: Tensor, b: Tensor) -> Tensor:
    a, b = _as_tensor(a), _as_tensor(b)
    try:
        out = Tensor(a.data / b.data)
    except ValueError:
        raise ShapeError("div", f"cannot broadcast {a.shape} with {b.shape}") from None

    def bw(g):
        _accum(a, _unbroadcast(g / b.data, a.shape))
        _accum(b, _unbroadcast(-g * a.data / (b.data**2), b.shape))

    return _record(out, (a, b), bw)


def neg(a: Tensor) -> Tensor:
    a = _as_tensor(a)
    out = Tensor(-a.data)

    def bw(g):
        _accum(a, -g)

    return _record(out, (a,), bw)


def power(a: Tensor, exponent: float) -> Tensor:
    a = _as_tensor(a)
    out = Tensor(a.data**exponent)

    def bw(g):
        _accum(a, g * exponent * a.data ** (exponent - 1))

    return _record(out, (a,), bw)


def matmul(a: Tensor, b: Tensor) -> Tensor:
    a, b = _as_tensor(a), _as_tensor(b)
    if a.data.ndim == 0 or b.data.ndim == 0 or a.data.ndim > 2 or b.data.ndim > 2:
        raise ShapeError("matmul", f"expects 1-D or 2-D operands, got {a.shape} @ {b.shape}")
    if a.shape[-1] != b.shape[0]:
        raise ShapeError("matmul", f"inner dims differ: {a.shape} @ {b.shape}")
    out = Tensor(a.data @ b.data)

    def bw(g):
        ad, bd = a.data, b.data
        if ad.ndim == 1 and bd.ndim == 1:  # dot -> scalar
            _accum(a, g * bd)
            _accum(b, g * ad)
        elif ad.ndim == 2 and bd.ndim == 2:
            _accum(a, g @ bd.T)
            _accum(b, ad.T @ g)
        elif ad.ndim == 2 and bd.ndim == 1:  # (m,k)@(k,) -> (m,)
            _accum(a, np.outer(g, bd))
            _accum(b, ad.T @ g)
        else:  # (k,)@(k,n) -> (n,)
            _accum(a, bd @ g)
            _accum(b, np.outer(ad, g))

    return _record(out, (a, b), bw)


def concat(tensors: Sequence[Tensor], axis: int = 0) -> Tensor:
    ts = [_as_tensor(t) for t in tensors]
    if not ts:
        raise ShapeError("concat", "needs at least one input")
    try:
        out = Tensor(np.concatenate([t.data for t in ts], axis=axis))
    except ValueError:
        dims = ", ".join(str(t.shape) for t in ts)
        raise ShapeError("concat", f"incompatible shapes along axis {axis}: {dims}") from None
    sizes = [t.shape[axis] for t in ts]
    offsets = np.cumsum([0] + sizes)

    def bw(g):
        for t, lo, hi in zip(ts, offsets[:-1], offsets[1:]):
            idx = [slice(None)] * g.ndim
            idx[axis] = slice(lo, hi)
            _accum(t, g[tuple(idx)])

    return _record(out, tuple(ts), bw)


def gather_rows(a: Tensor, indices) -> Tensor:
    """Select rows of a 2-D tensor by integer index (embedding lookup)."""
    a = _as_tensor(a)
    idx = np.asarray(indices, dtype=np.intp)
    if a.data.ndim != 2:
        raise ShapeError("gather_rows", f"expects a 2-D table, got {a.shape}")
    if idx.size and (idx.min() < 0 or idx.max() >= a.shape[0]):
        raise ShapeError("gather_rows", f"index out of range for table with {a.shape[0]} rows")
    out = Tensor(a.data[idx])

    def bw(g):
        if a.requires_grad:
            buf = np.zeros_like(a.data)
            np.add.at(buf, idx, g)
            _accum(a, buf)

    return _record(out, (a,), bw)


def slice_cols(a: Tensor, start: int, stop: int) -> Tensor:
    a = _as_tensor(a)
    if a.data.ndim != 2 or not (0 <= start < stop <= a.shape[1]):
        raise ShapeError("slice_cols", f"bad column range [{start}:{stop}] for shape {a.shape}")
    out = Tensor(a.data[:, start:stop])

    def bw(g):
        if a.requires_grad:
            buf = np.zeros_like(a.data)
            buf[:, start:stop] = g
            _accum(a, buf)

    return _record(out, (a,), bw)


def reshape(a: Tensor, shape) -> Tensor:
    a = _as_tensor(a)
    try:
        out = Tensor(a.data.reshape(shape))
    except ValueError:
        raise ShapeError("reshape", f"cannot view {a.shape} as {tuple(shape)}") from None

    def bw(g):
        _accum(a, g.reshape(a.shape))

    return _record(out, (a,), bw)


def transpose(a: Tensor) -> Tensor:
    a = _as_tensor(a)
    if a.data.ndim != 2:
        raise ShapeError("transpose", f"expects a 2-D tensor, got {a.shape}")
    out = Tensor(a.data.T)

    def bw(g):
        _accum(a, g.T)

    return _record(out, (a,), bw)


def _reduce(kind: str, a: Tensor, axis, keepdims: bool) -> Tensor:
    a = _as_tensor(a)
    fn = np.sum if kind == "sum" else np.mean
    out = Tensor(fn(a.data, axis=axis, keepdims=keepdims))
    if axis is None:
        count = a.data.size
    else:
        count = a.data.shape[axis]

    def bw(g):
        g = np.asarray(g)
        if not keepdims and axis is not None:
            g = np.expand_dims(g, axis)
        grad = np.broadcast_to(g, a.shape).astype(np.float64)
        if kind == "mean":
            grad = grad / count
        _accum(a, grad.copy())

    return _record(out, (a,), bw)


def softmax(a: Tensor, axis: int = -1) -> Tensor:
    """Numerically stable softmax along ``axis``; rows sum to one."""
    a = _as_tensor(a)
    shifted = a.data - a.data.max(axis=axis, keepdims=True)
    e = np.exp(shifted)
    y = e / e.sum(axis=axis, keepdims=True)
    out = Tensor(y)

    def bw(g):
        dot = (g * y).sum(axis=axis, keepdims=True)
        _accum(a, y * (g - dot))

    return _record(out, (a,), bw)


def sigmoid(a: Tensor) -> Tensor:
    a = _as_tensor(a)
    y = 1.0 / (1.0 + np.exp(-a.data))
    out = Tensor(y)

    def bw(g):
        _accum(a, g * y * (1.0 - y))

    return _record(out, (a,), bw)


def tanh(a: Tensor) -> Tensor:
    a = _as_tensor(a)
    y = np.tanh(a.data)
    out = Tensor(y)

    def bw(g):
        _accum(a, g * (1.0 - y**2))

    return _record(out, (a,), bw)


def relu(a: Tensor) -> Tensor:
    a = _as_tensor(a)
    out = Tensor(np.maximum(a.data, 0.0))

    def bw(g):
        _accum(a, g * (a.data > 0))

    return _record(out, (a,), bw)


def leaky_relu(a: Tensor, negative_slope: float = 0.2) -> Tensor:
    a = _as_tensor(a)
    out = Tensor(np.where(a.data > 0, a.data, negative_slope * a.data))

    def bw(g):
        _accum(a, g * np.where(a.data > 0, 1.0, negative_slope))

    return _record(out, (a,), bw)


def elu(a: Tensor, alpha: float = 1.0) -> Tensor:
    a = _as_tensor(a)
    out = Tensor(np.where(a.data > 0, a.data, alpha * (np.exp(a.data) - 1.0)))

    def bw(g):
        _accum(a, g * np.where(a.data > 0, 1.0, alpha * np.exp(a.data)))

    return _record(out, (a,), bw)


def cross_entropy(logits: Tensor, targets, reduction: str = "mean") -> Tensor:
    """Mean (or summed) negative log-likelihood of integer targets, natural log."""
    logits = _as_tensor(logits)
    t = np.asarray(targets, dtype=np.intp)
    if logits.data.ndim != 2:
        raise ShapeError("cross_entropy", f"expects (n, classes) logits, got {logits.shape}")
    n, k = logits.shape
    if t.shape != (n,):
        raise ShapeError("cross_entropy", f"targets {t.shape} do not match {n} logit rows")
    if t.size and (t.min() < 0 or t.max() >= k):
        raise ShapeError("cross_entropy", f"target id out of range for {k} classes")
    shifted = logits.data - logits.data.max(axis=1, keepdims=True)
    lse = np.log(np.exp(shifted).sum(axis=1)) + logits.data.max(axis=1)
    nll = lse - logits.data[np.arange(n), t]
    value = nll.mean() if reduction == "mean" else nll.sum()
    out = Tensor(value)

    def bw(g):
        p = np.exp(shifted)
        p /= p.sum(axis=1, keepdims=True)
        p[np.arange(n), t] -= 1.0
        if reduction == "mean":
            p /= n
        _accum(logits, np.asarray(g).reshape(()) * p)

    return _record(out, (logits,), bw)


def cosine_similarity(a: Tensor, b: Tensor, eps: float = 1e-12) -> Tensor:
    """Row-wise cosine similarity; near-zero rows yield similarity 0."""
    a, b = _as_tensor(a), _as_tensor(b)
    ad = np.atleast_2d(a.data)
    bd = np.atleast_2d(b.data)
    if ad.shape != bd.shape:
        raise ShapeError("cosine_similarity", f"shapes differ: {a.shape} vs {b.shape}")
    na = np.linalg.norm(ad, axis=1)
    nb = np.linalg.norm(bd, axis=1)
    denom = na * nb
    safe = denom > eps
    cos = np.zeros(ad.shape[0])
    np.divide((ad * bd).sum(axis=1), denom, out=cos, where=safe)
    out = Tensor(cos if a.data.ndim > 1 else cos[0])

    def bw(g):
        g2 = np.atleast_1d(np.asarray(g, dtype=np.float64))[:, None]
        with np.errstate(divide="ignore", invalid="ignore"):
            ga = np.where(safe[:, None], bd / denom[:, None] - cos[:, None] * ad / (na**2)[:, None], 0.0)
            gb = np.where(safe[:, None], ad / denom[:, None] - cos[:, None] * bd / (nb**2)[:, None], 0.0)
        _accum(a, (g2 * ga).reshape(a.shape))
        _accum(b, (g2 * gb).reshape(b.shape))

    return _record(out, (a, b), bw)


_OPS: dict[str, Callable] = {
    "add": add,
    "sub": sub,
    "mul": mul,
    "div": div,
    "neg": neg,
    "matmul": matmul,
    "power": power,
    "concat": concat,
    "gather_rows": gather_rows,
    "slice_cols": slice_cols,
    "reshape": reshape,
    "transpose": transpose,
    "softmax": softmax,
    "sigmoid": sigmoid,
    "tanh": tanh,
    "relu": relu,
    "leaky_relu": leaky_relu,
    "elu": elu,
    "mean": lambda a, **kw: _as_tensor(a).mean(**kw),
    "sum": lambda a, **kw: _as_tensor(a).sum(**kw),
    "cross_entropy": cross_entropy,
    "cosine_similarity": cosine_similarity,
}


def forward_op(name: str, *inputs, **kwargs) -> Tensor:
    """Dispatch a primitive by name; unknown names raise KeyError."""
    if name not in _OPS:
        raise KeyError(f"unknown op {name!r}; available: {sorted(_OPS)}")
    return _OPS[name](*inputs, **kwargs)
