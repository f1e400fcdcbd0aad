"""Dense semantics: the ground truth everything else is checked against.

Every generator gets a closed-form matrix here, written out directly —
including the derived generators, which :mod:`zhdd.sugar` also defines by
expansion into the core set.  Keeping both routes genuinely independent is
the point: a bug in the expansions cannot hide if the closed forms are
authored separately, and vice versa.

Conventions (fixed throughout the package):

* a map with ``n`` inputs and ``m`` outputs is a ``(2**m, 2**n)`` matrix;
* basis order is binary counting with the **first wire as the most
  significant bit**, so ``par(a, b)`` is ``np.kron(A, B)``;
* ``seq(a, b)`` composes left-to-right: ``B @ A``.

Dense work is capped at ``settings.max_qubits`` wires; anything larger
raises :class:`ResourceLimitError` rather than silently thrashing.
"""
from __future__ import annotations

from typing import Any, Optional

import numpy as np

from ._json import complex_from_json, complex_to_json
from .config import DEFAULT, Settings
from .errors import ResourceLimitError, ShapeError
from .sqmdd import TERMINAL, Sqmdd
from .terms import (
    Cap,
    Cup,
    Gadget,
    Gen,
    GeneratorKind,
    HBox,
    Identity,
    KetOne,
    KetPlus,
    KetZero,
    BraPlus,
    MonoidN,
    NotXSpider,
    ParNode,
    SeqNode,
    Swap,
    WeightBox,
    XSpider,
    ZSpider,
    ZhTerm,
    describe,
    generator_arity,
)

_HAD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex)


def _kron_power(m: np.ndarray, k: int) -> np.ndarray:
    out = np.eye(1, dtype=complex)
    for _ in range(k):
        out = np.kron(out, m)
    return out


def _popcounts(k: int) -> np.ndarray:
    """popcount(x) for x in 0..2**k-1."""
    out = np.zeros(1, dtype=np.int64)
    for _ in range(k):
        out = np.concatenate([out, out + 1])
    return out


def _z_matrix(n: int, m: int, phase: complex = 1.0) -> np.ndarray:
    out = np.zeros((2**m, 2**n), dtype=complex)
    out[0, 0] += 1.0
    out[-1, -1] += phase
    return out


def generator_matrix(kind: GeneratorKind, settings: Settings = DEFAULT) -> np.ndarray:
    """Closed-form matrix of a single generator."""
    n, m = generator_arity(kind)
    if max(n, m) > settings.max_qubits:
        raise ResourceLimitError(
            f"generator {kind} needs {max(n, m)} dense wires "
            f"(cap is {settings.max_qubits})"
        )
    match kind:
        case ZSpider():
            return _z_matrix(n, m)
        case HBox(label=r):
            out = np.ones((2**m, 2**n), dtype=complex)
            out[-1, -1] = r
            return out
        case Identity():
            return np.eye(2, dtype=complex)
        case Swap():
            out = np.zeros((4, 4), dtype=complex)
            for a in range(2):
                for b in range(2):
                    out[(b << 1) | a, (a << 1) | b] = 1.0
            return out
        case Cap():
            return np.array([[1.0], [0.0], [0.0], [1.0]], dtype=complex)
        case Cup():
            return np.array([[1.0, 0.0, 0.0, 1.0]], dtype=complex)
        case XSpider() | NotXSpider():
            # Conjugating the Z form by Hadamards leaves a rank-2 matrix:
            # 1/2 (J + s P) with J all-ones, P[y, x] = (-1)^(|y| + |x|), and
            # s = -1 when the |1..1> component is negated before fusing.
            s = -1.0 if isinstance(kind, NotXSpider) else 1.0
            rows = (-1.0) ** _popcounts(m)
            cols = (-1.0) ** _popcounts(n)
            return 0.5 * (
                np.ones((2**m, 2**n), dtype=complex) + s * np.outer(rows, cols)
            )
        case MonoidN(inputs=k):
            out = np.zeros((2, 2**k), dtype=complex)
            for x in range(2**k):
                ones = x.bit_count()
                if ones <= 1:
                    out[ones, x] = 1.0
            return out
        case Gadget():
            # |c, d>  ->  |d and not c> (x) |d and c>
            out = np.zeros((4, 4), dtype=complex)
            for c in range(2):
                for d in range(2):
                    out[((d & (1 - c)) << 1) | (d & c), (c << 1) | d] = 1.0
            return out
        case WeightBox(weight=w):
            return np.array([[1.0, 0.0], [0.0, w]], dtype=complex)
        case KetZero():
            return np.array([[1.0], [0.0]], dtype=complex)
        case KetOne():
            return np.array([[0.0], [1.0]], dtype=complex)
        case KetPlus():
            return np.array([[1.0], [1.0]], dtype=complex)
        case BraPlus():
            return np.array([[1.0, 1.0]], dtype=complex)
    raise ShapeError(f"no matrix for generator kind {kind!r}")


# ---------------------------------------------------------------------------
# term interpretation: definitional matrix route


def _interpret_matrix(t: ZhTerm, settings: Settings) -> np.ndarray:
    if max(t.n_in, t.n_out) > settings.max_qubits:
        raise ResourceLimitError(
            f"sub-term {describe(t)} spans {max(t.n_in, t.n_out)} dense wires "
            f"(cap is {settings.max_qubits})"
        )
    if isinstance(t, Gen):
        return generator_matrix(t.kind, settings)
    if isinstance(t, SeqNode):
        return _interpret_matrix(t.then, settings) @ _interpret_matrix(t.first, settings)
    if isinstance(t, ParNode):
        return np.kron(
            _interpret_matrix(t.left, settings), _interpret_matrix(t.right, settings)
        )
    raise ShapeError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# term interpretation: state-tensor route (inputs-free terms)
#
# Keeps the working object a rank-k tensor instead of a 2^k x 2^k matrix,
# which is what makes wide state terms tractable.  Cross-checked against
# the matrix route in the test suite.


def _apply_to_state(t: ZhTerm, state: np.ndarray, start: int, settings: Settings) -> np.ndarray:
    if isinstance(t, SeqNode):
        mid = _apply_to_state(t.first, state, start, settings)
        return _apply_to_state(t.then, mid, start, settings)
    if isinstance(t, ParNode):
        mid = _apply_to_state(t.left, state, start, settings)
        return _apply_to_state(t.right, mid, start + t.left.n_out, settings)
    n, m = t.n_in, t.n_out
    new_rank = state.ndim - n + m
    if new_rank > settings.max_qubits:
        raise ResourceLimitError(
            f"state grows to {new_rank} wires at {describe(t)} "
            f"(cap is {settings.max_qubits})"
        )
    mat = generator_matrix(t.kind, settings)
    if n == 0 and m == 0:
        return state * mat[0, 0]
    if n == 0:
        res = np.tensordot(state, mat[:, 0].reshape((2,) * m), axes=0)
    else:
        ten = mat.reshape((2,) * (m + n))
        res = np.tensordot(
            state,
            ten,
            axes=(list(range(start, start + n)), list(range(m, m + n))),
        )
    if m == 0:
        # contracted axes vanished; the remaining axes are already in order
        return res
    return np.moveaxis(res, range(res.ndim - m, res.ndim), range(start, start + m))


def _interpret_state(t: ZhTerm, settings: Settings) -> np.ndarray:
    state = np.ones((), dtype=complex)
    out = _apply_to_state(t, state, 0, settings)
    return out.reshape(-1)


# ---------------------------------------------------------------------------
# public entry points


def interpret_zh(
    t: ZhTerm, settings: Settings = DEFAULT, method: str = "auto"
) -> np.ndarray:
    """Dense matrix of a term, shape ``(2**n_out, 2**n_in)``.

    ``method`` picks the evaluation route: "matrix" is the definitional
    recursion, "tensor" the state-tensor route (inputs-free terms only),
    "auto" uses the tensor route whenever it applies.
    """
    if method == "matrix":
        return _interpret_matrix(t, settings)
    if method == "tensor" or (method == "auto" and t.n_in == 0):
        if t.n_in != 0:
            raise ShapeError(
                f"tensor route needs an inputs-free term, got {describe(t)}"
            )
        if t.n_out > settings.max_qubits:
            raise ResourceLimitError(
                f"term has {t.n_out} outputs (cap is {settings.max_qubits})"
            )
        return _interpret_state(t, settings).reshape(-1, 1)
    if method == "auto":
        return _interpret_matrix(t, settings)
    raise ValueError(f"unknown interpretation method {method!r}")


def interpret_zh_state(t: ZhTerm, settings: Settings = DEFAULT) -> np.ndarray:
    """Dense vector of an inputs-free term, shape ``(2**n_out,)``."""
    if t.n_in != 0:
        raise ShapeError(f"term has {t.n_in} inputs, expected a state")
    return interpret_zh(t, settings).reshape(-1)


def interpret_sqmdd(d: Sqmdd, settings: Settings = DEFAULT) -> np.ndarray:
    """Dense vector denoted by a diagram, shape ``(2**height,)``.

    Follows the cofactor recursion directly; a child sitting more than one
    level down duplicates its vector across the skipped levels.
    """
    if d.height > settings.max_qubits:
        raise ResourceLimitError(
            f"diagram has height {d.height} (cap is {settings.max_qubits})"
        )
    memo: dict[int, np.ndarray] = {}

    def node_vec(c: int) -> np.ndarray:
        got = memo.get(c)
        if got is not None:
            return got
        n = d.nodes[c]
        v = np.concatenate(
            [n.w0 * at_height(n.c0, n.height - 1), n.w1 * at_height(n.c1, n.height - 1)]
        )
        memo[c] = v
        return v

    def at_height(c: int, h: int) -> np.ndarray:
        if c == TERMINAL:
            return np.ones(2**h, dtype=complex)
        base = node_vec(c)
        skip = h - d.nodes[c].height
        return np.tile(base, 2**skip) if skip else base

    return d.scalar * at_height(d.root, d.height)


# ---------------------------------------------------------------------------
# comparisons


def matrices_equal(a: np.ndarray, b: np.ndarray, settings: Settings = DEFAULT) -> bool:
    """Entrywise max-norm agreement within eps (shape mismatch is False)."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    if b.ndim == 1:
        b = b.reshape(-1, 1)
    if a.shape != b.shape:
        return False
    return bool(np.max(np.abs(a - b), initial=0.0) <= settings.eps)


def max_deviation(a: np.ndarray, b: np.ndarray) -> float:
    a = np.asarray(a, dtype=complex).reshape(-1)
    b = np.asarray(b, dtype=complex).reshape(-1)
    if a.shape != b.shape:
        return float("inf")
    return float(np.max(np.abs(a - b), initial=0.0))


def colinear(a: np.ndarray, b: np.ndarray, tol: float) -> Optional[complex]:
    """The factor lam with ``a = lam * b``, or None if there is none.

    Both (near-)zero counts as colinear with factor 1.
    """
    a = np.asarray(a, dtype=complex).reshape(-1)
    b = np.asarray(b, dtype=complex).reshape(-1)
    if a.shape != b.shape:
        return None
    if b.size == 0:
        return 1.0 + 0j
    j = int(np.argmax(np.abs(b)))
    if abs(b[j]) <= tol:
        return 1.0 + 0j if float(np.max(np.abs(a), initial=0.0)) <= tol else None
    lam = complex(a[j] / b[j])
    if float(np.max(np.abs(a - lam * b), initial=0.0)) <= tol * max(1.0, abs(lam)):
        return lam
    return None


# ---------------------------------------------------------------------------
# dense reference implementations of the diagram-level operations


def _as_tensor(v: np.ndarray, height: int) -> np.ndarray:
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.size != 2**height:
        raise ShapeError(f"vector of length {v.size} is not 2**{height}")
    return v.reshape((2,) * height)


def dense_merge_outputs(v: np.ndarray, height: int, i: int, j: int) -> np.ndarray:
    """Diagonal of wires i and j (i < j): keep entries where they agree,
    leaving the shared wire at position i."""
    t = _as_tensor(v, height)
    diag = np.diagonal(t, axis1=i, axis2=j)  # shared axis lands at the end
    return np.moveaxis(diag, -1, i).reshape(-1)


def dense_plug_plus(v: np.ndarray, height: int, i: int) -> np.ndarray:
    """Sum out wire i (plugging an all-ones effect)."""
    return _as_tensor(v, height).sum(axis=i).reshape(-1)


def dense_restrict(v: np.ndarray, height: int, i: int, bit: int) -> np.ndarray:
    return np.take(_as_tensor(v, height), bit, axis=i).reshape(-1)


def dense_permute(v: np.ndarray, height: int, perm: list[int]) -> np.ndarray:
    """Wire shuffle with ``result wire k = input wire perm[k]``."""
    return np.transpose(_as_tensor(v, height), axes=perm).reshape(-1)


# ---------------------------------------------------------------------------
# vector / matrix JSON


def vector_to_json(v: np.ndarray) -> list:
    return [complex_to_json(complex(x)) for x in np.asarray(v, dtype=complex).reshape(-1)]


def vector_from_json(obj: Any) -> np.ndarray:
    if not isinstance(obj, list) or not obj:
        raise ValueError("vector must be a non-empty list of [re, im] pairs")
    return np.array(
        [complex_from_json(x, f"vector entry {k}") for k, x in enumerate(obj)],
        dtype=complex,
    )


def matrix_to_json(m: np.ndarray) -> list:
    m = np.asarray(m, dtype=complex)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    return [[complex_to_json(complex(x)) for x in row] for row in m]


def matrix_from_json(obj: Any) -> np.ndarray:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise ValueError("matrix must be a non-empty list of rows")
    width = len(obj[0])
    rows = []
    for k, row in enumerate(obj):
        if len(row) != width:
            raise ValueError(f"matrix row {k} has length {len(row)}, expected {width}")
        rows.append([complex_from_json(x, f"matrix entry ({k})") for x in row])
    return np.array(rows, dtype=complex)
