"""State-form decision diagrams over complex weights.

An :class:`Sqmdd` is a rooted DAG: every non-terminal node carries a height,
a pair of child references and a pair of complex weights; the diagram as a
whole carries an overall scalar and a height ``H``.  The denoted vector is
defined by cofactor recursion — the left/right child subtrees (scaled by
their weights) are the state with the top qubit fixed to 0/1 — with two
twists that make the format compact: node heights may skip levels (a child
more than one level down duplicates its cofactor across the gap), and the
root itself may sit below ``H``.

Node ids are arbitrary positive integers; the terminal is the reserved id
``TERMINAL`` (0).  The structure is deliberately lax: several distinct
diagrams can denote the same vector.  Canonicalization lives in
:mod:`zhdd.reduction` (the rewrite engine) and in :class:`Builder` (the
hash-consing constructor used by the algebraic operations).

Weight comparisons for structural purposes (unique table, rule guards)
round to an ``eps`` grid — see :func:`weight_key`.  This grid is the only
approximation anywhere in the package; all other arithmetic is plain
complex double precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterator

from ._json import complex_from_json, complex_to_json
from .config import DEFAULT, Settings
from .errors import ShapeError

TERMINAL = 0

Edge = tuple[complex, int]  # (weight, child id)


@dataclass(frozen=True)
class Node:
    height: int
    w0: complex
    c0: int
    w1: complex
    c1: int

    def edge(self, side: int) -> Edge:
        return (self.w0, self.c0) if side == 0 else (self.w1, self.c1)


@dataclass
class Sqmdd:
    scalar: complex
    height: int
    root: int
    nodes: dict[int, Node] = field(default_factory=dict)

    def node(self, i: int) -> Node:
        return self.nodes[i]


def terminal_only(scalar: complex, height: int) -> Sqmdd:
    return Sqmdd(scalar, height, TERMINAL, {})


def zero_form(height: int) -> Sqmdd:
    """The canonical all-zero state: scalar 0, terminal root, height kept."""
    return Sqmdd(0j, height, TERMINAL, {})


# ---------------------------------------------------------------------------
# weight grid


def weight_key(w: complex, settings: Settings = DEFAULT) -> tuple[int, int]:
    """Integer grid cell of a weight, at the settings' eps resolution.

    Two weights in the same cell are treated as structurally equal by the
    unique table and the rule guards.
    """
    return (round(w.real / settings.eps), round(w.imag / settings.eps))


def is_zero_weight(w: complex, settings: Settings = DEFAULT) -> bool:
    return weight_key(w, settings) == (0, 0)


def is_one_weight(w: complex, settings: Settings = DEFAULT) -> bool:
    return weight_key(w, settings) == weight_key(1.0 + 0j, settings)


def node_key(n: Node, settings: Settings = DEFAULT) -> tuple:
    return (n.height, n.c0, weight_key(n.w0, settings), n.c1, weight_key(n.w1, settings))


# ---------------------------------------------------------------------------
# validation and basic accessors


def reachable_ids(d: Sqmdd) -> set[int]:
    """Node ids reachable from the root (terminal excluded)."""
    seen: set[int] = set()
    stack = [d.root] if d.root != TERMINAL else []
    while stack:
        u = stack.pop()
        if u == TERMINAL or u in seen:
            continue
        seen.add(u)
        n = d.nodes.get(u)
        if n is None:
            continue
        stack.append(n.c0)
        stack.append(n.c1)
    return seen


def validate(d: Sqmdd, settings: Settings = DEFAULT) -> list[str]:
    """All invariant violations, as human-readable strings; empty = valid."""
    problems: list[str] = []
    if d.height < 0:
        problems.append(f"height must be non-negative, got {d.height}")
    if not all(
        math.isfinite(x)
        for x in (d.scalar.real, d.scalar.imag)
    ):
        problems.append("overall scalar must be finite")
    if d.root != TERMINAL and d.root not in d.nodes:
        problems.append(f"root {d.root} is not in the node table")
        return problems
    if d.root == TERMINAL and d.nodes:
        problems.append("terminal root with a non-empty node table")
    if d.root != TERMINAL and d.nodes[d.root].height > d.height:
        problems.append(
            f"root height {d.nodes[d.root].height} exceeds diagram height {d.height}"
        )
    for i, n in d.nodes.items():
        if i == TERMINAL:
            problems.append("node table may not contain the terminal id")
            continue
        if n.height < 1:
            problems.append(f"node {i}: height must be >= 1, got {n.height}")
        for w, c in (n.edge(0), n.edge(1)):
            if not (math.isfinite(w.real) and math.isfinite(w.imag)):
                problems.append(f"node {i}: non-finite weight")
            if c != TERMINAL:
                child = d.nodes.get(c)
                if child is None:
                    problems.append(f"node {i}: dangling child reference {c}")
                elif child.height >= n.height:
                    problems.append(
                        f"node {i}: edge must decrease height "
                        f"({n.height} -> {child.height})"
                    )
    if not problems:
        orphans = set(d.nodes) - reachable_ids(d)
        for i in sorted(orphans):
            problems.append(f"node {i}: all vertices need at least one parent (unreachable)")
    return problems


def require_valid(d: Sqmdd, settings: Settings = DEFAULT) -> None:
    problems = validate(d, settings)
    if problems:
        raise ValueError("invalid diagram: " + "; ".join(problems))


def terminal_degree(d: Sqmdd) -> int:
    """Occurrences of the terminal as a child of a non-terminal node."""
    return sum(
        (n.c0 == TERMINAL) + (n.c1 == TERMINAL) for n in d.nodes.values()
    )


def measure(d: Sqmdd, settings: Settings = DEFAULT) -> tuple[int, ...]:
    """Lexicographic termination measure of the reduction system.

    ``(|V|, 2|V| − deg(t), per-height counts of non-normalized nodes)``
    where |V| counts the terminal, deg(t) counts terminal child slots, and
    a node is normalized when its weight pair is (1, w) or (0, 0/1).
    Lower-height sums come first; the tuple length depends on H.
    """
    n_v = len(d.nodes) + 1
    per_height = [0] * d.height
    for n in d.nodes.values():
        if is_one_weight(n.w0, settings):
            delta = 0
        elif is_zero_weight(n.w0, settings) and (
            is_zero_weight(n.w1, settings) or is_one_weight(n.w1, settings)
        ):
            delta = 0
        else:
            delta = 1
        per_height[n.height - 1] += delta
    return (n_v, 2 * n_v - terminal_degree(d), *per_height)


# ---------------------------------------------------------------------------
# cofactors


def _cofactor(d: Sqmdd, side: int, settings: Settings) -> Sqmdd:
    if d.height < 1:
        raise ShapeError("cofactor of a height-0 diagram")
    if d.root != TERMINAL and d.nodes[d.root].height == d.height:
        root_node = d.nodes[d.root]
        w, c = root_node.edge(side)
        out = Sqmdd(d.scalar * w, d.height - 1, c, dict(d.nodes))
    else:
        # The root sits below the top level (or is the terminal): both
        # cofactors are the same diagram, one level shorter.
        out = Sqmdd(d.scalar, d.height - 1, d.root, dict(d.nodes))
    keep = reachable_ids(out)
    out.nodes = {i: n for i, n in out.nodes.items() if i in keep}
    return out


def left_cofactor(d: Sqmdd, settings: Settings = DEFAULT) -> Sqmdd:
    """The sub-diagram for the top qubit fixed to 0 (weight folded into s)."""
    return _cofactor(d, 0, settings)


def right_cofactor(d: Sqmdd, settings: Settings = DEFAULT) -> Sqmdd:
    """The sub-diagram for the top qubit fixed to 1."""
    return _cofactor(d, 1, settings)


# ---------------------------------------------------------------------------
# structural comparison


def structurally_same(a: Sqmdd, b: Sqmdd, settings: Settings = DEFAULT) -> bool:
    """Graph isomorphism with weights compared within eps.

    Makes no canonicity assumption — use :func:`iso_equal` for the
    Theorem-backed comparison of reduced diagrams.
    """
    if a.height != b.height:
        return False
    if abs(a.scalar - b.scalar) > settings.eps:
        return False
    pair_ab: dict[int, int] = {}
    pair_ba: dict[int, int] = {}

    def walk(x: int, y: int) -> bool:
        if x == TERMINAL or y == TERMINAL:
            return x == y
        if x in pair_ab or y in pair_ba:
            return pair_ab.get(x) == y and pair_ba.get(y) == x
        na, nb = a.nodes.get(x), b.nodes.get(y)
        if na is None or nb is None or na.height != nb.height:
            return False
        if abs(na.w0 - nb.w0) > settings.eps or abs(na.w1 - nb.w1) > settings.eps:
            return False
        pair_ab[x] = y
        pair_ba[y] = x
        return walk(na.c0, nb.c0) and walk(na.c1, nb.c1)

    return walk(a.root, b.root)


def iso_equal(a: Sqmdd, b: Sqmdd, settings: Settings = DEFAULT) -> bool:
    """Equality of reduced diagrams: same height, scalar and structure.

    Raises ValueError when either argument is not irreducible — uniqueness
    only makes the comparison meaningful on reduced forms.
    """
    from .reduction import is_irreducible

    for name, d in (("first", a), ("second", b)):
        if not is_irreducible(d, settings):
            raise ValueError(f"iso_equal: {name} argument is not reduced")
    return structurally_same(a, b, settings)


# ---------------------------------------------------------------------------
# serialization


def _child_to_json(c: int) -> Any:
    return "t" if c == TERMINAL else c


def _child_from_json(v: Any, what: str) -> int:
    if v == "t":
        return TERMINAL
    if isinstance(v, int) and not isinstance(v, bool) and v > 0:
        return v
    raise ValueError(f"{what} must be a positive node id or \"t\", got {v!r}")


def sqmdd_to_json(d: Sqmdd) -> dict[str, Any]:
    return {
        "scalar": complex_to_json(d.scalar),
        "height": d.height,
        "root": _child_to_json(d.root),
        "nodes": [
            {
                "id": i,
                "h": n.height,
                "c0": _child_to_json(n.c0),
                "w0": complex_to_json(n.w0),
                "c1": _child_to_json(n.c1),
                "w1": complex_to_json(n.w1),
            }
            for i, n in sorted(d.nodes.items())
        ],
    }


def sqmdd_from_json(obj: Any, settings: Settings = DEFAULT, check: bool = True) -> Sqmdd:
    if not isinstance(obj, dict):
        raise ValueError("diagram must be a JSON object")
    try:
        scalar = complex_from_json(obj["scalar"], "scalar")
        height = obj["height"]
        root = _child_from_json(obj["root"], "root")
        raw_nodes = obj["nodes"]
    except KeyError as e:
        raise ValueError(f"diagram is missing field {e.args[0]!r}") from None
    if not isinstance(height, int) or isinstance(height, bool) or height < 0:
        raise ValueError(f"height must be a non-negative integer, got {height!r}")
    if not isinstance(raw_nodes, list):
        raise ValueError("'nodes' must be a list")
    nodes: dict[int, Node] = {}
    for entry in raw_nodes:
        if not isinstance(entry, dict):
            raise ValueError("node entries must be JSON objects")
        try:
            i = entry["id"]
            n = Node(
                height=entry["h"],
                w0=complex_from_json(entry["w0"], "w0"),
                c0=_child_from_json(entry["c0"], "c0"),
                w1=complex_from_json(entry["w1"], "w1"),
                c1=_child_from_json(entry["c1"], "c1"),
            )
        except KeyError as e:
            raise ValueError(f"node entry is missing field {e.args[0]!r}") from None
        if not isinstance(i, int) or isinstance(i, bool) or i <= 0:
            raise ValueError(f"node id must be a positive integer, got {i!r}")
        if i in nodes:
            raise ValueError(f"duplicate node id {i}")
        if not isinstance(n.height, int) or isinstance(n.height, bool):
            raise ValueError(f"node {i}: height must be an integer")
        nodes[i] = n
    d = Sqmdd(scalar, height, root, nodes)
    if check:
        problems = validate(d, settings)
        if problems:
            raise ValueError("invalid diagram: " + "; ".join(problems))
    return d


def renumber(d: Sqmdd) -> Sqmdd:
    """Relabel node ids in depth-first preorder from the root (1, 2, …).

    Deterministic, so emitted files are stable for golden tests.
    """
    mapping: dict[int, int] = {}

    def walk(u: int) -> None:
        if u == TERMINAL or u in mapping:
            return
        mapping[u] = len(mapping) + 1
        n = d.nodes[u]
        walk(n.c0)
        walk(n.c1)

    walk(d.root)
    nodes = {
        mapping[i]: Node(
            n.height,
            n.w0,
            mapping.get(n.c0, TERMINAL),
            n.w1,
            mapping.get(n.c1, TERMINAL),
        )
        for i, n in d.nodes.items()
        if i in mapping
    }
    return Sqmdd(d.scalar, d.height, mapping.get(d.root, TERMINAL), nodes)


# ---------------------------------------------------------------------------
# DOT export


def _fmt_weight(w: complex) -> str:
    def fmt_real(x: float) -> str:
        if x == int(x) and abs(x) < 1e6:
            return str(int(x))
        return f"{x:.6g}"

    if w.imag == 0:
        return fmt_real(w.real)
    if w.real == 0:
        return fmt_real(w.imag) + "i"
    sign = "+" if w.imag > 0 else "-"
    return f"{fmt_real(w.real)}{sign}{fmt_real(abs(w.imag))}i"


def sqmdd_to_dot(d: Sqmdd) -> str:
    """Graphviz DOT: terminal as a box, weight-1 edge labels omitted,
    the scalar on the root's incoming edge, height annotated when the
    root skips levels."""
    lines = [
        "digraph sqmdd {",
        "  rankdir=TB;",
        '  node [fontname="sans-serif"];',
        '  start [shape=none, label=""];',
        '  t [shape=box, label="1"];',
    ]
    for i, n in sorted(d.nodes.items()):
        lines.append(f'  n{i} [shape=circle, label="h{n.height}"];')
    root_name = "t" if d.root == TERMINAL else f"n{d.root}"
    root_label = _fmt_weight(d.scalar)
    root_h = 0 if d.root == TERMINAL else d.nodes[d.root].height
    if root_h < d.height:
        root_label += f" (H={d.height})"
    lines.append(f'  start -> {root_name} [label="{root_label}"];')
    for i, n in sorted(d.nodes.items()):
        for side, (w, c) in enumerate((n.edge(0), n.edge(1))):
            target = "t" if c == TERMINAL else f"n{c}"
            style = "dashed" if side == 0 else "solid"
            label = "" if w == 1 else _fmt_weight(w)
            attr = f"style={style}"
            if label:
                attr += f', label="{label}"'
            lines.append(f"  n{i} -> {target} [{attr}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# hash-consing builder


class Builder:
    """Bottom-up constructor that only ever creates reduced structure.

    :meth:`edge` plays the role of the classic unique-table ``makeNode``:
    it snaps grid-zero weights to exact zero edges, skips nodes whose two
    edges agree, normalizes the weight pair to (1, w) or (0, 1) by pulling
    the leading factor into the returned edge weight, and hash-conses on
    :func:`node_key`.  Diagrams assembled exclusively through it are
    irreducible by construction.
    """

    def __init__(self, settings: Settings = DEFAULT) -> None:
        self.settings = settings
        self.nodes: dict[int, Node] = {}
        self._table: dict[tuple, int] = {}
        self._next_id = 1

    def edge(self, height: int, e0: Edge, e1: Edge) -> Edge:
        (w0, c0), (w1, c1) = e0, e1
        if is_zero_weight(w0, self.settings):
            w0, c0 = 0j, TERMINAL
        if is_zero_weight(w1, self.settings):
            w1, c1 = 0j, TERMINAL
        if c0 == TERMINAL and c1 == TERMINAL and w0 == 0j and w1 == 0j:
            return (0j, TERMINAL)
        if c0 == c1 and weight_key(w0, self.settings) == weight_key(w1, self.settings):
            return (w0, c0)  # both cofactors equal: skip this level
        if w0 != 0j:
            lam = w0
            w0, w1 = 1.0 + 0j, w1 / lam
        else:
            lam = w1
            w1 = 1.0 + 0j
        node = Node(height, w0, c0, w1, c1)
        key = node_key(node, self.settings)
        found = self._table.get(key)
        if found is None:
            found = self._next_id
            self._next_id += 1
            self._table[key] = found
            self.nodes[found] = node
        return (lam, found)

    def import_edge(self, d: Sqmdd, e: Edge, _memo: dict[int, Edge] | None = None) -> Edge:
        """Re-create a sub-diagram of ``d`` inside this builder.

        Returns the canonical edge denoting the same (weighted) subtree;
        heights are preserved.
        """
        memo = _memo if _memo is not None else {}

        def node_edge(c: int) -> Edge:
            if c == TERMINAL:
                return (1.0 + 0j, TERMINAL)
            hit = memo.get(c)
            if hit is not None:
                return hit
            n = d.nodes[c]
            result = self.edge(
                n.height,
                self._scaled(node_edge(n.c0), n.w0),
                self._scaled(node_edge(n.c1), n.w1),
            )
            memo[c] = result
            return result

        w, c = e
        if c == TERMINAL:
            return (w, TERMINAL)
        lam, c2 = node_edge(c)
        return (w * lam, c2)

    @staticmethod
    def _scaled(e: Edge, w: complex) -> Edge:
        return (e[0] * w, e[1])

    def finish(self, top: Edge, height: int) -> Sqmdd:
        """Package a top edge as a diagram, pruning builder garbage."""
        lam, root = top
        if root == TERMINAL and lam == 0j:
            return zero_form(height)
        if root != TERMINAL and is_zero_weight(lam, self.settings):
            # a grid-zero scalar over live structure denotes (grid-)zero
            return zero_form(height)
        d = Sqmdd(lam, height, root, dict(self.nodes))
        keep = reachable_ids(d)
        d.nodes = {i: n for i, n in d.nodes.items() if i in keep}
        return d


def split_edge(d: Sqmdd, e: Edge, height: int, side: int) -> Edge:
    """Cofactor of an edge viewed at ``height``: follow the node when it
    sits exactly at that level, otherwise the edge spans the level and
    both cofactors are the edge itself."""
    w, c = e
    if c != TERMINAL and d.nodes[c].height == height:
        n = d.nodes[c]
        ww, cc = n.edge(side)
        return (w * ww, cc)
    return (w, c)


def iter_edges(d: Sqmdd) -> Iterator[tuple[int, int, complex, int]]:
    """(parent id, side, weight, child id) for every edge in the table."""
    for i, n in d.nodes.items():
        yield (i, 0, n.w0, n.c0)
        yield (i, 1, n.w1, n.c1)
