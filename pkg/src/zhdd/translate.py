"""Translation between terms and diagrams, in both directions.

Term -> diagram (:func:`zh_to_sqmdd`) never goes through a dense vector:
the term is flattened to its wiring network, every spider/box becomes a
small closed-form diagram, and the wires are contracted pairwise with the
diagram-level operations from :mod:`zhdd.algebra`.

Diagram -> term (:func:`sqmdd_to_zh`) emits one block of generators per
level: a fresh |+> wire per level feeds a copy spider whose legs control
one routing gadget per node; branch indicator wires pick up the edge
weights in weight boxes and are funnelled into the child's fan-in.  The
emitted shape is rigid enough that :func:`sqmdd_read_back` can parse it
back into the exact diagram it came from.
"""
from __future__ import annotations

from itertools import count
from typing import Optional

from .algebra import (
    permute_outputs,
    plug_bra_plus,
    scale,
    tensor,
    z_merge_outputs,
)
from .config import DEFAULT, Settings
from .errors import ResourceLimitError, ShapeError
from .network import Network, Port, flatten_to_network, instance_state
from .reduction import reduce_diagram
from .sqmdd import (
    TERMINAL,
    Builder,
    Node,
    Sqmdd,
    is_zero_weight,
    left_cofactor,
    right_cofactor,
    terminal_only,
    validate,
)
from .terms import (
    Gadget,
    Gen,
    HBox,
    Identity,
    KetOne,
    KetPlus,
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
    par,
    seq,
    wires,
)

# ---------------------------------------------------------------------------
# closed-form generator states


def generator_state_sqmdd(
    kind,
    legs: Optional[int] = None,
    label: Optional[complex] = None,
    settings: Settings = DEFAULT,
) -> Sqmdd:
    """The reduced diagram of a single spider/box, all legs as outputs.

    ``kind`` is either a :class:`ZSpider`/:class:`HBox` instance or one of
    the strings "z"/"h" with an explicit leg count (and label for "h").
    """
    if isinstance(kind, ZSpider):
        tag, legs = "z", kind.inputs + kind.outputs
    elif isinstance(kind, HBox):
        tag, legs, label = "h", kind.inputs + kind.outputs, kind.label
    elif kind in ("z", "h"):
        tag = kind
        if legs is None:
            raise ShapeError("string-kind generator state needs a leg count")
    else:
        raise ShapeError(f"no generator state for {kind!r}")
    if legs < 0:
        raise ShapeError(f"negative leg count {legs}")

    if tag == "z":
        if legs == 0:
            return terminal_only(2.0 + 0j, 0)
        bld = Builder(settings)

        def lo(h):  # the |0...0> corner
            return (1.0 + 0j, TERMINAL) if h == 0 else bld.edge(h, lo(h - 1), (0j, TERMINAL))

        def hi(h):  # the |1...1> corner
            return (1.0 + 0j, TERMINAL) if h == 0 else bld.edge(h, (0j, TERMINAL), hi(h - 1))

        return bld.finish(bld.edge(legs, lo(legs - 1), hi(legs - 1)), legs)

    r = complex(label) if label is not None else -1.0 + 0j
    if legs == 0:
        return terminal_only(r, 0)
    bld = Builder(settings)

    def ones_but_last(h):
        if h == 1:
            return bld.edge(1, (1.0 + 0j, TERMINAL), (r, TERMINAL))
        return bld.edge(h, (1.0 + 0j, TERMINAL), ones_but_last(h - 1))

    return bld.finish(ones_but_last(legs), legs)


# ---------------------------------------------------------------------------
# term -> diagram


def _stage_check(state: Sqmdd, mirror, what: str, settings: Settings) -> None:
    from .oracle import interpret_sqmdd, max_deviation

    dev = max_deviation(interpret_sqmdd(state, settings), mirror)
    if dev > settings.eps:
        raise AssertionError(f"contraction stage '{what}' drifted by {dev:.3e}")


def zh_to_sqmdd(
    t: ZhTerm, settings: Settings = DEFAULT, assert_stages: bool = False
) -> Sqmdd:
    """Reduced diagram of a term (of the term's state form, for maps).

    ``assert_stages`` re-checks every contraction step against a dense
    mirror vector; only feasible when the full network fits under the
    dense wire cap.
    """
    net = flatten_to_network(t, settings)
    if net.n_out > settings.max_qubits:
        raise ResourceLimitError(
            f"result would have {net.n_out} wires (cap is {settings.max_qubits})"
        )
    import numpy as np

    # The network prefactor is applied after contraction.  Desugaring piles
    # every 1/2 normalizer into it, with the matching 2s only showing up as
    # <+| plugs along the way; folding it in up front would leave the
    # intermediate states with an artificially minuscule scalar that the
    # weight grid would then round to an honest zero.
    state = terminal_only(1.0 + 0j, 0)
    live: list[Port] = []
    for idx, inst in enumerate(net.instances):
        g = generator_state_sqmdd(inst.kind, inst.arity, inst.label, settings)
        state = tensor(state, g, settings)
        live.extend((idx, p) for p in range(inst.arity))

    mirror = None
    if assert_stages:
        from .oracle import (
            dense_merge_outputs,
            dense_permute,
            dense_plug_plus,
            interpret_sqmdd,
        )

        if len(live) > settings.max_qubits:
            raise ResourceLimitError(
                f"stage assertions need {len(live)} dense wires "
                f"(cap is {settings.max_qubits})"
            )
        mirror = np.array([1.0 + 0j])
        for inst in net.instances:
            mirror = np.kron(mirror, instance_state(inst))
        _stage_check(state, mirror, "tensor fold", settings)

    init_pos = {port: k for k, port in enumerate(live)}
    ordered = sorted(
        net.edges, key=lambda e: tuple(sorted((init_pos[e[0]], init_pos[e[1]])))
    )
    for a, b in ordered:
        ia, ib = live.index(a), live.index(b)
        i, j = min(ia, ib), max(ia, ib)
        state = z_merge_outputs(state, i, j, settings)
        if assert_stages:
            mirror = dense_merge_outputs(mirror, len(live), i, j)
            _stage_check(state, mirror, f"merge {a}~{b}", settings)
        del live[j]
        state = plug_bra_plus(state, i, settings)
        if assert_stages:
            mirror = dense_plug_plus(mirror, len(live), i)
            _stage_check(state, mirror, f"plug {a}~{b}", settings)
        del live[i]

    perm = [live.index(p) for p in net.outputs]
    state = permute_outputs(state, perm, settings)
    state = scale(state, complex(net.scalar), settings)
    if assert_stages:
        mirror = net.scalar * dense_permute(mirror, len(live), perm)
        _stage_check(state, mirror, "output permutation", settings)

    state, steps = reduce_diagram(state, settings)
    if assert_stages and steps:
        raise AssertionError(
            f"contracted diagram was not already reduced ({len(steps)} residual steps)"
        )
    return state


# ---------------------------------------------------------------------------
# diagram -> term: the row assembler


class _Assembler:
    """Builds a term row by row over a list of tagged wire slots.

    Tags must be unique tuples; gathering non-adjacent wires inserts
    full-width single-swap rows, so the final term is a plain sequential
    composition of parallel rows.
    """

    def __init__(self) -> None:
        self.rows: list[ZhTerm] = []
        self.slots: list[tuple] = []

    def _swap_row(self, p: int) -> None:
        w = len(self.slots)
        parts: list[ZhTerm] = []
        if p:
            parts.append(wires(p))
        parts.append(Gen(Swap()))
        if w - p - 2:
            parts.append(wires(w - p - 2))
        self.rows.append(par(*parts))
        self.slots[p], self.slots[p + 1] = self.slots[p + 1], self.slots[p]

    def append_state(self, term: ZhTerm, out_tags: list[tuple]) -> None:
        w = len(self.slots)
        self.rows.append(par(wires(w), term) if w else term)
        self.slots.extend(out_tags)

    def apply(self, term: ZhTerm, in_tags: list[tuple], out_tags: list[tuple]) -> None:
        """Bubble the tagged wires together (in the given order), apply."""
        anchor = min(self.slots.index(tag) for tag in in_tags)
        for off, tag in enumerate(in_tags):
            cur = self.slots.index(tag)
            target = anchor + off
            assert cur >= target, "gather invariant broken"
            while cur > target:
                self._swap_row(cur - 1)
                cur -= 1
        n_in = len(in_tags)
        w = len(self.slots)
        parts = []
        if anchor:
            parts.append(wires(anchor))
        parts.append(term)
        if w - anchor - n_in:
            parts.append(wires(w - anchor - n_in))
        self.rows.append(par(*parts))
        self.slots[anchor : anchor + n_in] = list(out_tags)

    def term(self) -> ZhTerm:
        return seq(*self.rows)


def _fan_in(mode: str, k: int) -> ZhTerm:
    if mode == "monoid":
        return Gen(MonoidN(k))
    if mode == "x":
        return Gen(XSpider(k, 1))
    raise ShapeError(f"unknown fan_in mode {mode!r}")


def sqmdd_to_zh(d: Sqmdd, settings: Settings = DEFAULT, fan_in: str = "monoid") -> ZhTerm:
    """A term denoting exactly the diagram's vector (scalar included).

    One |+>-fed copy spider per level drives a routing gadget per node;
    branch wires pass through weight boxes into the child's fan-in; the
    terminal's fan-in is postselected on "path arrived".  ``fan_in``
    selects the gathering generator: "monoid" (partial xor, the default)
    or "x" (full xor) — on the one-hot branch indicators they agree.
    """
    problems = validate(d, settings)
    if problems:
        raise ShapeError("cannot translate invalid diagram: " + "; ".join(problems))
    asm = _Assembler()
    serial = count()

    def to_tag(c: int) -> tuple:
        return ("to", c, next(serial))

    asm.append_state(Gen(KetOne()), [to_tag(d.root)])
    by_level: dict[int, list[int]] = {}
    for i, n in d.nodes.items():
        by_level.setdefault(n.height, []).append(i)

    for h in range(d.height, 0, -1):
        level = sorted(by_level.get(h, []))
        if not level:
            asm.append_state(Gen(KetPlus()), [("q", h)])
            continue
        asm.append_state(
            Gen(ZSpider(0, 1 + len(level))),
            [("q", h)] + [("ctrl", u) for u in level],
        )
        for u in level:
            n = d.nodes[u]
            arrivals = [t for t in asm.slots if t[0] == "to" and t[1] == u]
            asm.apply(_fan_in(fan_in, len(arrivals)), arrivals, [("data", u)])
            asm.apply(
                Gen(Gadget()), [("ctrl", u), ("data", u)], [("g0", u), ("g1", u)]
            )
            asm.apply(Gen(WeightBox(n.w0)), [("g0", u)], [to_tag(n.c0)])
            asm.apply(Gen(WeightBox(n.w1)), [("g1", u)], [to_tag(n.c1)])

    at_terminal = [t for t in asm.slots if t[0] == "to" and t[1] == TERMINAL]
    asm.apply(_fan_in(fan_in, len(at_terminal)), at_terminal, [("arrived",)])
    asm.apply(Gen(NotXSpider(1, 0)), [("arrived",)], [])
    assert asm.slots == [("q", h) for h in range(d.height, 0, -1)]
    return par(Gen(HBox(0, 0, d.scalar)), asm.term())


# ---------------------------------------------------------------------------
# term -> diagram, syntactically: the read-back parser


def _flatten_seq(t: ZhTerm) -> list[ZhTerm]:
    if isinstance(t, SeqNode):
        return _flatten_seq(t.first) + _flatten_seq(t.then)
    return [t]


def _flatten_par(t: ZhTerm) -> list[Gen]:
    if isinstance(t, ParNode):
        return _flatten_par(t.left) + _flatten_par(t.right)
    if isinstance(t, Gen):
        return [t]
    raise ShapeError(f"malformed row: {describe(t)} is not a parallel block of generators")


def sqmdd_read_back(t: ZhTerm, settings: Settings = DEFAULT) -> Sqmdd:
    """Parse a term in the emitted layer format back into its diagram.

    Strict inverse of :func:`sqmdd_to_zh` on that function's image (both
    fan-in variants are accepted).  Anything else raises
    :class:`ShapeError` naming the offending sub-term.
    """
    if (
        not isinstance(t, ParNode)
        or not isinstance(t.left, Gen)
        or not isinstance(t.left.kind, HBox)
        or generator_arity(t.left.kind) != (0, 0)
    ):
        raise ShapeError(
            "expected a nullary H-box (the scalar) in parallel with the layer chain"
        )
    scalar = complex(t.left.kind.label)
    chain = t.right
    height = chain.n_out

    slots: list[tuple] = []
    node_height: dict[int, int] = {}
    ctrl_level: dict[int, int] = {}
    weights: dict[tuple[int, int], complex] = {}
    edges: dict[tuple[int, int], tuple[complex, int]] = {}
    root: Optional[int] = None
    boot_seen = False
    terminal_seen = False
    next_level = height
    fresh_node = count(1)
    fresh_ctrl = count()

    def resolve(sources: tuple, target: int) -> None:
        nonlocal root
        for src in sources:
            if src == ("boot",):
                if root is not None:
                    raise ShapeError("the bootstrap wire was consumed twice")
                root = target
            else:
                _, u, side = src
                edges[(u, side)] = (weights[(u, side)], target)

    for row in _flatten_seq(chain):
        leaves = _flatten_par(row)
        if row.n_in != len(slots):
            raise ShapeError(
                f"row {describe(row)} expects {row.n_in} wires, have {len(slots)}"
            )
        ops = [
            (k, leaf) for k, leaf in enumerate(leaves) if not isinstance(leaf.kind, Identity)
        ]
        if not ops:
            continue
        if len(ops) != 1:
            raise ShapeError(f"row {describe(row)} has more than one operation")
        pos, op = ops[0]
        at = pos  # identities are 1 -> 1, so leaf index = wire offset
        kind = op.kind
        n_in, n_out = generator_arity(kind)

        if isinstance(kind, Swap):
            slots[at], slots[at + 1] = slots[at + 1], slots[at]
        elif isinstance(kind, KetOne):
            if boot_seen:
                raise ShapeError("second bootstrap wire")
            boot_seen = True
            slots[at:at] = [("boot",)]
        elif isinstance(kind, KetPlus) or (
            isinstance(kind, ZSpider) and n_in == 0 and n_out >= 1
        ):
            if next_level < 1:
                raise ShapeError("more level wires than boundary outputs")
            new = [("q", next_level)]
            for _ in range(n_out - 1):
                tok = next(fresh_ctrl)
                ctrl_level[tok] = next_level
                new.append(("ctrl", tok))
            next_level -= 1
            slots[at:at] = new
        elif isinstance(kind, (MonoidN, XSpider)):
            if isinstance(kind, XSpider) and (n_out != 1 or n_in < 1):
                raise ShapeError(f"{describe(op)} is not a fan-in shape")
            got = slots[at : at + n_in]
            sources = []
            for tag in got:
                if tag == ("boot",) or tag[0] == "branch":
                    sources.append(tag)
                else:
                    raise ShapeError(
                        f"fan-in {describe(op)} applied to a non-branch wire {tag!r}"
                    )
            slots[at : at + n_in] = [("data", tuple(sources))]
        elif isinstance(kind, ZSpider):
            raise ShapeError(
                f"cannot read back {describe(op)}: a Z-spider would copy rather "
                "than gather the branch indicators; expected a partial-xor "
                "fan-in (MonoidN or XSpider)"
            )
        elif isinstance(kind, Gadget):
            ctag, dtag = slots[at], slots[at + 1]
            if ctag[0] != "ctrl" or dtag[0] != "data":
                raise ShapeError(
                    f"routing gadget applied to {ctag!r}, {dtag!r} "
                    "(expected a level wire and a fan-in output)"
                )
            u = next(fresh_node)
            node_height[u] = ctrl_level[ctag[1]]
            resolve(dtag[1], u)
            slots[at : at + 2] = [("gout", u, 0), ("gout", u, 1)]
        elif isinstance(kind, WeightBox):
            tag = slots[at]
            if tag[0] != "gout":
                raise ShapeError(f"weight box applied to a non-branch wire {tag!r}")
            _, u, side = tag
            weights[(u, side)] = complex(kind.weight)
            slots[at] = ("branch", u, side)
        elif isinstance(kind, NotXSpider):
            if (n_in, n_out) != (1, 0):
                raise ShapeError(f"unexpected generator {describe(op)} in layer chain")
            tag = slots[at]
            if tag[0] != "data":
                raise ShapeError("terminal postselection applied to a non-fan-in wire")
            if terminal_seen:
                raise ShapeError("second terminal postselection")
            terminal_seen = True
            resolve(tag[1], TERMINAL)
            del slots[at]
        else:
            raise ShapeError(f"unexpected generator {describe(op)} in layer chain")

    if not boot_seen:
        raise ShapeError("no bootstrap wire")
    if not terminal_seen:
        raise ShapeError("no terminal postselection")
    if root is None:
        raise ShapeError("the bootstrap wire was never consumed")
    if slots != [("q", h) for h in range(height, 0, -1)]:
        raise ShapeError(f"leftover wires after parsing: {slots!r}")

    nodes: dict[int, Node] = {}
    for u, h in node_height.items():
        for side in (0, 1):
            if (u, side) not in edges:
                raise ShapeError(f"branch {side} of parsed node {u} never resolved")
        (w0, c0), (w1, c1) = edges[(u, 0)], edges[(u, 1)]
        nodes[u] = Node(h, w0, c0, w1, c1)
    out = Sqmdd(scalar, height, root, nodes)
    problems = validate(out, settings)
    if problems:
        raise ShapeError("parsed diagram is invalid: " + "; ".join(problems))
    return out


# ---------------------------------------------------------------------------
# cofactor propagation on the term side


def ket0_propagate(t: ZhTerm, settings: Settings = DEFAULT) -> ZhTerm:
    """Push a basis effect on the top wire through an emitted layer term.

    ``t`` must be an emitted term with one extra row applying <0| (a
    zero-labelled H-box) or <1| (the 1 -> 0 pseudo X-spider) to its first
    wire; the result is the emitted term of the matching cofactor.
    """
    if not isinstance(t, SeqNode):
        raise ShapeError(f"expected term-with-effect, got {describe(t)}")
    inner, row = t.first, t.then
    leaves = _flatten_par(row)
    eff = leaves[0]
    for extra in leaves[1:]:
        if not isinstance(extra.kind, Identity):
            raise ShapeError(f"effect row touches more than the top wire: {describe(row)}")
    kind = eff.kind
    if isinstance(kind, HBox) and generator_arity(kind) == (1, 0) and is_zero_weight(
        complex(kind.label), settings
    ):
        side = 0
    elif isinstance(kind, NotXSpider) and generator_arity(kind) == (1, 0):
        side = 1
    else:
        raise ShapeError(f"unrecognized effect {describe(eff)} (expected <0| or <1|)")
    d = sqmdd_read_back(inner, settings)
    if d.height == 0:
        raise ShapeError("no wire left to project")
    cof = left_cofactor(d, settings) if side == 0 else right_cofactor(d, settings)
    cof, _ = reduce_diagram(cof, settings)
    return sqmdd_to_zh(cof, settings)
