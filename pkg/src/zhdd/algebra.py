"""Operations on diagrams: vector import, tensor, sum, wire surgery.

Everything here rebuilds its result through a fresh :class:`Builder`, so
the outputs are reduced by construction (given sanely-scaled weights —
see the grid caveats in :mod:`zhdd.sqmdd`).  Inputs do **not** have to be
reduced; the recursions only rely on validity.

All single-diagram operations are linear in edge weights, so they memoize
on ``(node id, level)`` and multiply incoming weights through — the cost
is proportional to the diagram, not to 2**H.

Wire indexing: output ``i`` counts from the top, so it lives at height
``H - i``; output 0 is the most significant bit of the denoted vector.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .config import DEFAULT, Settings
from .errors import ShapeError
from .sqmdd import (
    TERMINAL,
    Builder,
    Edge,
    Sqmdd,
    split_edge,
    weight_key,
    zero_form,
)


def canonical_from_vector(vec, settings: Settings = DEFAULT) -> Sqmdd:
    """The reduced diagram of a dense vector (length a power of two)."""
    v = np.asarray(vec, dtype=complex).reshape(-1)
    if v.size == 0 or (v.size & (v.size - 1)) != 0:
        raise ShapeError(f"vector length {v.size} is not a power of two")
    if not np.all(np.isfinite(v.view(float))):
        raise ShapeError("vector entries must be finite")
    height = v.size.bit_length() - 1
    bld = Builder(settings)

    def go(a: np.ndarray) -> Edge:
        if a.size == 1:
            return (complex(a[0]), TERMINAL)
        half = a.size // 2
        return bld.edge(a.size.bit_length() - 1, go(a[:half]), go(a[half:]))

    return bld.finish(go(v), height)


def scale(d: Sqmdd, factor: complex, settings: Settings = DEFAULT) -> Sqmdd:
    """Multiply the denoted vector by a scalar."""
    factor = complex(factor)
    if factor == 0j:
        return zero_form(d.height)
    out = Sqmdd(d.scalar * factor, d.height, d.root, dict(d.nodes))
    if out.root != TERMINAL and weight_key(out.scalar, settings) == (0, 0):
        return zero_form(d.height)
    return out


def add(a: Sqmdd, b: Sqmdd, settings: Settings = DEFAULT) -> Sqmdd:
    """Pointwise sum of two diagrams of equal height."""
    if a.height != b.height:
        raise ShapeError(f"cannot add heights {a.height} and {b.height}")
    bld = Builder(settings)
    imp_a: dict[int, Edge] = {}
    imp_b: dict[int, Edge] = {}
    memo: dict[tuple, Edge] = {}

    def go(ea: Edge, eb: Edge, h: int) -> Edge:
        (wa, ca), (wb, cb) = ea, eb
        if ca == TERMINAL and wa == 0j:
            return bld.import_edge(b, eb, imp_b)
        if cb == TERMINAL and wb == 0j:
            return bld.import_edge(a, ea, imp_a)
        if h == 0:
            return (wa + wb, TERMINAL)
        key = (h, ca, wa, cb, wb)
        hit = memo.get(key)
        if hit is None:
            hit = bld.edge(
                h,
                go(split_edge(a, ea, h, 0), split_edge(b, eb, h, 0), h - 1),
                go(split_edge(a, ea, h, 1), split_edge(b, eb, h, 1), h - 1),
            )
            memo[key] = hit
        return hit

    top = go((a.scalar, a.root), (b.scalar, b.root), a.height)
    return bld.finish(top, a.height)


def tensor(a: Sqmdd, b: Sqmdd, settings: Settings = DEFAULT) -> Sqmdd:
    """Kronecker product: ``a`` supplies the upper wires, ``b`` the lower.

    Purely structural — ``b`` keeps its nodes, ``a``'s nodes move on top
    with shifted heights, and ``a``'s non-zero terminal edges are rerouted
    to ``b``'s root.  Reduced inputs give a reduced output.
    """
    height = a.height + b.height
    if a.scalar == 0j or b.scalar == 0j:
        return zero_form(height)
    scalar = a.scalar * b.scalar
    if a.root == TERMINAL:
        return Sqmdd(scalar, height, b.root, dict(b.nodes))
    offset = max(b.nodes, default=0)
    nodes = dict(b.nodes)

    def relink(w: complex, c: int) -> tuple[complex, int]:
        if c != TERMINAL:
            return (w, c + offset)
        if w != 0j and weight_key(w, settings) != (0, 0):
            return (w, b.root)  # b.root may itself be the terminal
        return (w, TERMINAL)

    from .sqmdd import Node

    for i, n in a.nodes.items():
        w0, c0 = relink(n.w0, n.c0)
        w1, c1 = relink(n.w1, n.c1)
        nodes[i + offset] = Node(n.height + b.height, w0, c0, w1, c1)
    return Sqmdd(scalar, height, a.root + offset, nodes)


class _Rebuild:
    """Shared scaffolding for the weight-linear wire operations."""

    def __init__(self, d: Sqmdd, settings: Settings) -> None:
        self.d = d
        self.bld = Builder(settings)
        self.imp: dict[int, Edge] = {}
        self.memo: dict[tuple, Edge] = {}

    def split(self, c: int, h: int, side: int) -> Edge:
        return split_edge(self.d, (1.0 + 0j, c), h, side)

    def import_sub(self, e: Edge) -> Edge:
        return self.bld.import_edge(self.d, e, self.imp)

    # -- restriction: fix the variable at `target` to `bit` -----------------

    def restrict(self, c: int, h: int, target: int, bit: int) -> Edge:
        if h == target:
            return self.import_sub(self.split(c, h, bit))
        key = ("res", c, h, bit)
        hit = self.memo.get(key)
        if hit is None:
            (w0, c0), (w1, c1) = self.split(c, h, 0), self.split(c, h, 1)
            r0 = self.restrict(c0, h - 1, target, bit)
            r1 = self.restrict(c1, h - 1, target, bit)
            hit = self.bld.edge(h - 1, (w0 * r0[0], r0[1]), (w1 * r1[0], r1[1]))
            self.memo[key] = hit
        return hit

    # -- diagonal: identify the variables at `hi` and `hj` (hi > hj) --------

    def merge(self, c: int, h: int, hi: int, hj: int) -> Edge:
        if h == hi:
            (w0, c0), (w1, c1) = self.split(c, h, 0), self.split(c, h, 1)
            r0 = self.restrict(c0, h - 1, hj, 0)
            r1 = self.restrict(c1, h - 1, hj, 1)
            return self.bld.edge(h - 1, (w0 * r0[0], r0[1]), (w1 * r1[0], r1[1]))
        key = ("mrg", c, h)
        hit = self.memo.get(key)
        if hit is None:
            (w0, c0), (w1, c1) = self.split(c, h, 0), self.split(c, h, 1)
            r0 = self.merge(c0, h - 1, hi, hj)
            r1 = self.merge(c1, h - 1, hi, hj)
            hit = self.bld.edge(h - 1, (w0 * r0[0], r0[1]), (w1 * r1[0], r1[1]))
            self.memo[key] = hit
        return hit

    # -- summation: plug the all-ones effect into the variable at `target` --

    def add_pair(self, ea: Edge, eb: Edge, h: int) -> Edge:
        (wa, ca), (wb, cb) = ea, eb
        if ca == TERMINAL and wa == 0j:
            return self.import_sub(eb)
        if cb == TERMINAL and wb == 0j:
            return self.import_sub(ea)
        if h == 0:
            return (wa + wb, TERMINAL)
        key = ("sum", h, ca, wa, cb, wb)
        hit = self.memo.get(key)
        if hit is None:
            hit = self.bld.edge(
                h,
                self.add_pair(
                    split_edge(self.d, ea, h, 0), split_edge(self.d, eb, h, 0), h - 1
                ),
                self.add_pair(
                    split_edge(self.d, ea, h, 1), split_edge(self.d, eb, h, 1), h - 1
                ),
            )
            self.memo[key] = hit
        return hit

    def plug(self, c: int, h: int, target: int) -> Edge:
        if h == target:
            return self.add_pair(self.split(c, h, 0), self.split(c, h, 1), h - 1)
        key = ("plg", c, h)
        hit = self.memo.get(key)
        if hit is None:
            (w0, c0), (w1, c1) = self.split(c, h, 0), self.split(c, h, 1)
            r0 = self.plug(c0, h - 1, target)
            r1 = self.plug(c1, h - 1, target)
            hit = self.bld.edge(h - 1, (w0 * r0[0], r0[1]), (w1 * r1[0], r1[1]))
            self.memo[key] = hit
        return hit

    # -- exchange the adjacent variables at heights k+1 and k ---------------

    def swap(self, c: int, h: int, k: int) -> Edge:
        if h == k + 1:
            quads = []
            for a_bit in (0, 1):
                w_a, c_a = self.split(c, h, a_bit)
                for b_bit in (0, 1):
                    w_b, c_b = self.split(c_a, h - 1, b_bit)
                    quads.append((w_a * w_b, c_b))
            ll, lr, rl, rr = (self.import_sub(e) for e in quads)
            return self.bld.edge(
                k + 1,
                self.bld.edge(k, ll, rl),
                self.bld.edge(k, lr, rr),
            )
        key = ("swp", c, h)
        hit = self.memo.get(key)
        if hit is None:
            (w0, c0), (w1, c1) = self.split(c, h, 0), self.split(c, h, 1)
            r0 = self.swap(c0, h - 1, k)
            r1 = self.swap(c1, h - 1, k)
            hit = self.bld.edge(h, (w0 * r0[0], r0[1]), (w1 * r1[0], r1[1]))
            self.memo[key] = hit
        return hit


def restrict(d: Sqmdd, i: int, bit: int, settings: Settings = DEFAULT) -> Sqmdd:
    """Fix output wire ``i`` to ``bit``; the result has one wire fewer."""
    if not 0 <= i < d.height:
        raise ShapeError(f"wire {i} out of range for height {d.height}")
    if bit not in (0, 1):
        raise ShapeError(f"bit must be 0 or 1, got {bit!r}")
    rb = _Rebuild(d, settings)
    w, c = rb.restrict(d.root, d.height, d.height - i, bit)
    return rb.bld.finish((d.scalar * w, c), d.height - 1)


def z_merge_outputs(d: Sqmdd, i: int, j: int, settings: Settings = DEFAULT) -> Sqmdd:
    """Identify output wires ``i < j`` (a Z-spider joining them): keep the
    entries where the two bits agree.  The shared wire stays at position
    ``i``; position ``j`` disappears."""
    if not 0 <= i < j < d.height:
        raise ShapeError(
            f"need two distinct wires 0 <= i < j < {d.height}, got ({i}, {j})"
        )
    rb = _Rebuild(d, settings)
    w, c = rb.merge(d.root, d.height, d.height - i, d.height - j)
    return rb.bld.finish((d.scalar * w, c), d.height - 1)


def plug_bra_plus(d: Sqmdd, i: int, settings: Settings = DEFAULT) -> Sqmdd:
    """Contract output wire ``i`` with the all-ones effect (sum it out)."""
    if not 0 <= i < d.height:
        raise ShapeError(f"wire {i} out of range for height {d.height}")
    rb = _Rebuild(d, settings)
    w, c = rb.plug(d.root, d.height, d.height - i)
    return rb.bld.finish((d.scalar * w, c), d.height - 1)


def swap_adjacent_levels(d: Sqmdd, k: int, settings: Settings = DEFAULT) -> Sqmdd:
    """Exchange the variables at heights ``k+1`` and ``k`` (1 <= k < H)."""
    if not 1 <= k < d.height:
        raise ShapeError(f"level {k} out of range for height {d.height}")
    rb = _Rebuild(d, settings)
    w, c = rb.swap(d.root, d.height, k)
    return rb.bld.finish((d.scalar * w, c), d.height)


def permute_outputs(d: Sqmdd, perm: Sequence[int], settings: Settings = DEFAULT) -> Sqmdd:
    """Rearrange wires so that result wire ``i`` is input wire ``perm[i]``.

    Realized as a bubble of adjacent-level swaps, each of which is checked
    structure-preserving on its own.
    """
    perm = list(perm)
    if sorted(perm) != list(range(d.height)):
        raise ShapeError(f"{perm} is not a permutation of range({d.height})")
    cur = list(range(d.height))
    out = d
    for i in range(d.height):
        j = cur.index(perm[i])
        while j > i:
            # swap positions (j-1, j), i.e. heights (H-j+1, H-j)
            out = swap_adjacent_levels(out, d.height - j, settings)
            cur[j - 1], cur[j] = cur[j], cur[j - 1]
            j -= 1
    return out
