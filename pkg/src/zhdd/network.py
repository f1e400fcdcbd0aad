"""From syntax trees to wiring networks.

A term is a composition tree; what the translation to decision diagrams
actually needs is the underlying undirected network: which spider/box legs
are soldered to which.  :func:`flatten_to_network` computes it by symbolic
evaluation — each wire position carries a token, generators union tokens
with their leg tokens, and the resulting token classes are exactly the
wires of the network.

Both Z-spiders and H-boxes are fully symmetric tensors, so a network
instance needs only a kind, a label, and an arity; leg order is
bookkeeping, not semantics.

:func:`net_interpret` contracts a network densely.  It shares no code with
either term-interpretation route in :mod:`zhdd.oracle`, which makes it a
useful third opinion in the tests.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT, Settings
from .duality import to_state_form
from .errors import ResourceLimitError, ShapeError
from .sugar import expand_sugar
from .terms import (
    Cap,
    Cup,
    Gen,
    HBox,
    Identity,
    ParNode,
    SeqNode,
    Swap,
    ZSpider,
    ZhTerm,
)

Port = tuple[int, int]  # (instance index, leg index)


@dataclass(frozen=True)
class NetInstance:
    kind: str  # "z" or "h"
    label: complex
    arity: int


@dataclass
class Network:
    scalar: complex
    instances: list[NetInstance]
    edges: list[tuple[Port, Port]]
    outputs: list[Port]
    n_out: int = field(init=False)

    def __post_init__(self) -> None:
        self.n_out = len(self.outputs)


class _Tokens:
    """Union-find over wire tokens, with per-token attachment lists."""

    def __init__(self) -> None:
        self.parent: list[int] = []
        self.attached: list[list[tuple]] = []

    def fresh(self, attachment: tuple | None = None) -> int:
        tok = len(self.parent)
        self.parent.append(tok)
        self.attached.append([attachment] if attachment else [])
        return tok

    def find(self, tok: int) -> int:
        while self.parent[tok] != tok:
            self.parent[tok] = self.parent[self.parent[tok]]
            tok = self.parent[tok]
        return tok

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def flatten_to_network(t: ZhTerm, settings: Settings = DEFAULT) -> Network:
    """The wiring network of a term.

    Derived generators are expanded first; maps are bent into state form,
    so the network's boundary lists the original outputs followed by one
    wire per original input.  Closed loops and nullary generators are
    absorbed: a loop contributes an explicit 2-leg spider wired to itself
    (which contracts to the scalar 2), a nullary Z or H contributes its
    scalar directly.
    """
    t = expand_sugar(t)
    t = to_state_form(t)
    toks = _Tokens()
    instances: list[NetInstance] = []
    scalar = 1.0 + 0j

    def ev(term: ZhTerm, ins: list[int]) -> list[int]:
        nonlocal scalar
        if isinstance(term, SeqNode):
            return ev(term.then, ev(term.first, ins))
        if isinstance(term, ParNode):
            left = ev(term.left, ins[: term.left.n_in])
            right = ev(term.right, ins[term.left.n_in :])
            return left + right
        kind = term.kind
        if isinstance(kind, Identity):
            return ins
        if isinstance(kind, Swap):
            return [ins[1], ins[0]]
        if isinstance(kind, Cap):
            a, b = toks.fresh(), toks.fresh()
            toks.union(a, b)
            return [a, b]
        if isinstance(kind, Cup):
            toks.union(ins[0], ins[1])
            return []
        if isinstance(kind, (ZSpider, HBox)):
            n = kind.inputs
            m = kind.outputs
            if n + m == 0:
                scalar *= 2.0 if isinstance(kind, ZSpider) else complex(kind.label)
                return []
            idx = len(instances)
            if isinstance(kind, ZSpider):
                instances.append(NetInstance("z", 0j, n + m))
            else:
                instances.append(NetInstance("h", complex(kind.label), n + m))
            legs = [toks.fresh(("port", idx, p)) for p in range(n + m)]
            for wire_tok, leg_tok in zip(ins, legs[:n]):
                toks.union(wire_tok, leg_tok)
            return legs[n:]
        raise ShapeError(f"cannot flatten non-core generator {kind!r}")

    boundary = ev(t, [])
    for k, tok in enumerate(boundary):
        toks.attached[tok].append(("out", k))

    # Group attachments by token class, in token-creation order.
    class_order: list[int] = []
    class_members: dict[int, list[tuple]] = {}
    for tok in range(len(toks.parent)):
        root = toks.find(tok)
        if root not in class_members:
            class_members[root] = []
            class_order.append(root)
        class_members[root].extend(toks.attached[tok])

    edges: list[tuple[Port, Port]] = []
    outputs: list[Port | None] = [None] * len(boundary)
    for root in class_order:
        atts = class_members[root]
        if len(atts) == 0:
            # a closed loop: an explicit wire with nothing on it
            idx = len(instances)
            instances.append(NetInstance("z", 0j, 2))
            edges.append(((idx, 0), (idx, 1)))
        elif len(atts) == 2:
            a, b = atts
            if a[0] == "port" and b[0] == "port":
                edges.append(((a[1], a[2]), (b[1], b[2])))
            elif a[0] == "port" and b[0] == "out":
                outputs[b[1]] = (a[1], a[2])
            elif a[0] == "out" and b[0] == "port":
                outputs[a[1]] = (b[1], b[2])
            else:
                # two boundary wires directly connected
                idx = len(instances)
                instances.append(NetInstance("z", 0j, 2))
                outputs[a[1]] = (idx, 0)
                outputs[b[1]] = (idx, 1)
        else:
            raise ShapeError(
                f"wire resolves to {len(atts)} endpoints (internal error)"
            )

    resolved: list[Port] = []
    for k, p in enumerate(outputs):
        if p is None:
            raise ShapeError(f"boundary wire {k} left unresolved (internal error)")
        resolved.append(p)

    # Sanity: every leg is used exactly once.
    used: set[Port] = set()
    for a, b in edges:
        for p in (a, b):
            if p in used:
                raise ShapeError(f"leg {p} wired twice (internal error)")
            used.add(p)
    for p in resolved:
        if p in used:
            raise ShapeError(f"leg {p} wired twice (internal error)")
        used.add(p)
    expected = {(i, p) for i, inst in enumerate(instances) for p in range(inst.arity)}
    if used != expected:
        raise ShapeError("dangling instance legs (internal error)")

    return Network(scalar, instances, edges, resolved)


def instance_state(inst: NetInstance) -> np.ndarray:
    """Dense leg tensor of one instance, flattened (first leg = MSB)."""
    size = 2**inst.arity
    if inst.kind == "z":
        v = np.zeros(size, dtype=complex)
        v[0] += 1.0
        v[-1] += 1.0
        return v
    if inst.kind == "h":
        v = np.ones(size, dtype=complex)
        v[-1] = inst.label
        return v
    raise ShapeError(f"unknown instance kind {inst.kind!r}")


def net_interpret(net: Network, settings: Settings = DEFAULT) -> np.ndarray:
    """Dense contraction of a network, shape ``(2**n_out,)``.

    Tensors all instance states, sums out each internal edge, then orders
    the surviving legs by the boundary list.
    """
    total = sum(inst.arity for inst in net.instances)
    if total > settings.max_qubits:
        raise ResourceLimitError(
            f"network has {total} legs (cap is {settings.max_qubits})"
        )
    state = np.array([net.scalar], dtype=complex)
    axes: list[Port] = []
    for i, inst in enumerate(net.instances):
        state = np.kron(state, instance_state(inst))
        axes.extend((i, p) for p in range(inst.arity))
    ten = state.reshape((2,) * len(axes))
    for a, b in net.edges:
        ia, ib = axes.index(a), axes.index(b)
        if ia > ib:
            ia, ib = ib, ia
        ten = np.diagonal(ten, axis1=ia, axis2=ib).sum(-1)
        del axes[ib]
        del axes[ia]
    if not net.outputs:
        return ten.reshape(-1)
    perm = [axes.index(p) for p in net.outputs]
    return np.transpose(ten, perm).reshape(-1)
