"""The rewrite system that drives diagrams to their unique reduced form.

Seven local rules, applied until none fires.  Each application strictly
decreases the lexicographic :func:`zhdd.sqmdd.measure`, so the loop
terminates; the reduced form is independent of application order, which
the test suite probes by re-running with randomized rule choices.

Rule guards compare weights on the eps grid (see
:func:`zhdd.sqmdd.weight_key`); snapping a grid-zero weight to an exact
zero is the only place interpretation can move, and it moves by at most
eps per entry factor.

The rules, in the deterministic priority order used by :func:`reduce`:

``zero``  the whole diagram denotes (grid-)zero: replace it by the
          terminal-only form with scalar exactly 0, height kept.
``r3``    an edge that contributes nothing — grid-zero weight, or a child
          whose both weights are grid-zero — becomes an exact zero edge
          to the terminal.
``r4``    a non-root node with no incoming edge is dropped.
``r2``    a node (0, b) with b outside {0, 1}: pull b out to the incoming
          edges (or the scalar, at the root), leaving (0, 1).
``r1``    a node (a, b) with a outside {0, 1}: pull a out, leaving
          (1, b/a).
``r5``    a node (1, 1) whose two edges share a child is a skipped level:
          reroute incoming edges to the child and delete the node.
``r6``    two nodes with identical keys merge into the first.

``r5`` and ``r6`` retarget and delete in one atomic step — done as two
separate steps, the intermediate diagram would not have a smaller
measure.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

import numpy as np

from .config import DEFAULT, Settings
from .sqmdd import (
    TERMINAL,
    Node,
    Sqmdd,
    is_one_weight,
    is_zero_weight,
    node_key,
    weight_key,
    zero_form,
)

RULE_ORDER = ("zero", "r3", "r4", "r2", "r1", "r5", "r6")


@dataclass(frozen=True)
class Step:
    rule: str
    node: Optional[int]
    detail: str

    def to_json(self) -> dict[str, Any]:
        return {"rule": self.rule, "node": self.node, "detail": self.detail}


Candidate = tuple[str, Any]


def _parent_edges(d: Sqmdd) -> dict[int, list[tuple[int, int]]]:
    out: dict[int, list[tuple[int, int]]] = {i: [] for i in d.nodes}
    for i, n in d.nodes.items():
        if n.c0 != TERMINAL:
            out[n.c0].append((i, 0))
        if n.c1 != TERMINAL:
            out[n.c1].append((i, 1))
    return out


def _denotes_zero_node(n: Node, settings: Settings) -> bool:
    return is_zero_weight(n.w0, settings) and is_zero_weight(n.w1, settings)


def find_candidates(d: Sqmdd, settings: Settings = DEFAULT) -> list[Candidate]:
    """Every applicable (rule, payload) pair, in deterministic order."""
    cands: list[Candidate] = []
    if d.root != TERMINAL:
        if is_zero_weight(d.scalar, settings) or _denotes_zero_node(
            d.nodes[d.root], settings
        ):
            cands.append(("zero", None))
    parents = _parent_edges(d)
    order = sorted(d.nodes)
    for i in order:
        n = d.nodes[i]
        for side in (0, 1):
            w, c = n.edge(side)
            if c != TERMINAL and (
                is_zero_weight(w, settings) or _denotes_zero_node(d.nodes[c], settings)
            ):
                cands.append(("r3", (i, side)))
    for i in order:
        if i != d.root and not parents[i]:
            cands.append(("r4", i))
    for i in order:
        n = d.nodes[i]
        if (
            is_zero_weight(n.w0, settings)
            and not is_zero_weight(n.w1, settings)
            and not is_one_weight(n.w1, settings)
        ):
            cands.append(("r2", i))
    for i in order:
        n = d.nodes[i]
        if not is_zero_weight(n.w0, settings) and not is_one_weight(n.w0, settings):
            cands.append(("r1", i))
    for i in order:
        n = d.nodes[i]
        if n.c0 == n.c1 and is_one_weight(n.w0, settings) and is_one_weight(n.w1, settings):
            cands.append(("r5", i))
    groups: dict[tuple, list[int]] = {}
    for i in order:
        groups.setdefault(node_key(d.nodes[i], settings), []).append(i)
    merge_pairs = []
    for ids in groups.values():
        merge_pairs.extend((ids[0], drop) for drop in ids[1:])
    for keep, drop in sorted(merge_pairs, key=lambda kd: kd[1]):
        cands.append(("r6", (keep, drop)))
    return cands


def _with_edge(n: Node, side: int, w: complex, c: int) -> Node:
    if side == 0:
        return Node(n.height, w, c, n.w1, n.c1)
    return Node(n.height, n.w0, n.c0, w, c)


def _retarget(nodes: dict[int, Node], parents: list[tuple[int, int]], to: int) -> None:
    for p, side in parents:
        n = nodes[p]
        w = n.w0 if side == 0 else n.w1
        nodes[p] = _with_edge(n, side, w, to)


def _pull_factor(
    d: Sqmdd, nodes: dict[int, Node], i: int, factor: complex
) -> complex:
    """Multiply the factor onto every incoming edge of i (or the scalar)."""
    if i == d.root:
        return d.scalar * factor
    for p, side in _parent_edges(d)[i]:
        n = nodes[p]
        w = (n.w0 if side == 0 else n.w1) * factor
        c = n.c0 if side == 0 else n.c1
        nodes[p] = _with_edge(n, side, w, c)
    return d.scalar


def apply_step(d: Sqmdd, cand: Candidate, settings: Settings = DEFAULT) -> tuple[Sqmdd, Step]:
    """One rewrite step; returns the new diagram and its trace entry."""
    rule, payload = cand
    nodes = dict(d.nodes)
    scalar, root = d.scalar, d.root
    if rule == "zero":
        return zero_form(d.height), Step("zero", None, "diagram denotes zero")
    if rule == "r3":
        i, side = payload
        n = nodes[i]
        nodes[i] = _with_edge(n, side, 0j, TERMINAL)
        step = Step("r3", i, f"edge {side} of node {i} redirected to an exact zero")
        return Sqmdd(scalar, d.height, root, nodes), step
    if rule == "r4":
        i = payload
        del nodes[i]
        return Sqmdd(scalar, d.height, root, nodes), Step(
            "r4", i, f"node {i} has no parents"
        )
    if rule == "r2":
        i = payload
        n = nodes[i]
        b = n.w1
        nodes[i] = Node(n.height, 0j, n.c0, 1.0 + 0j, n.c1)
        scalar = _pull_factor(d, nodes, i, b)
        return Sqmdd(scalar, d.height, root, nodes), Step(
            "r2", i, f"factor {b} pulled out of node {i}"
        )
    if rule == "r1":
        i = payload
        n = nodes[i]
        a = n.w0
        nodes[i] = Node(n.height, 1.0 + 0j, n.c0, n.w1 / a, n.c1)
        scalar = _pull_factor(d, nodes, i, a)
        return Sqmdd(scalar, d.height, root, nodes), Step(
            "r1", i, f"factor {a} pulled out of node {i}"
        )
    if rule == "r5":
        i = payload
        child = nodes[i].c0
        _retarget(nodes, _parent_edges(d)[i], child)
        del nodes[i]
        if root == i:
            root = child
        return Sqmdd(scalar, d.height, root, nodes), Step(
            "r5", i, f"skipped-level node {i} removed in favour of {child}"
        )
    if rule == "r6":
        keep, drop = payload
        _retarget(nodes, _parent_edges(d)[drop], keep)
        del nodes[drop]
        if root == drop:
            root = keep
        return Sqmdd(scalar, d.height, root, nodes), Step(
            "r6", drop, f"node {drop} merged into identical node {keep}"
        )
    raise ValueError(f"unknown rule {rule!r}")


def reduce_diagram(
    d: Sqmdd,
    settings: Settings = DEFAULT,
    rng: Optional[np.random.Generator] = None,
    max_steps: Optional[int] = None,
) -> tuple[Sqmdd, list[Step]]:
    """Rewrite to the fixpoint.

    Deterministic by default (first candidate in priority order); pass an
    ``rng`` to pick uniformly among all applicable candidates instead —
    the result must come out the same either way.
    """
    cur = d
    steps: list[Step] = []
    while True:
        cands = find_candidates(cur, settings)
        if not cands:
            return cur, steps
        if max_steps is not None and len(steps) >= max_steps:
            raise RuntimeError(f"reduction did not settle within {max_steps} steps")
        pick = cands[0] if rng is None else cands[int(rng.integers(len(cands)))]
        cur, step = apply_step(cur, pick, settings)
        steps.append(step)


def is_irreducible(d: Sqmdd, settings: Settings = DEFAULT) -> bool:
    return not find_candidates(d, settings)
