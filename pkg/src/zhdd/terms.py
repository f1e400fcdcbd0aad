"""Term language for ZH diagrams.

A term is a binary composition tree over generators: ``Seq(a, b)`` wires
``a``'s outputs into ``b``'s inputs (diagram read top to bottom, so ``a``
acts first), ``Par(a, b)`` places ``a`` to the left of ``b``.  Arities are
checked at construction time so a :class:`ZhTerm` is well-formed by
construction; sequential mismatches raise :class:`~zhdd.errors.ShapeError`
immediately rather than at interpretation time.

Generators come in two layers.  The core layer (Z spiders, H boxes,
identity, swap, cap, cup) is what the dense interpreter and the network
flattener are defined on.  The sugar layer (X spiders, the exactly-one-hot
monoid, the two-bit routing gadget, weight boxes, basis kets, plus
bra/ket) expands into the core via :func:`zhdd.sugar.expand_sugar`; each
sugar generator also has a closed-form matrix so interpretation does not
depend on the expansion being right — that independence is what the
sugar-invariance tests lean on.

Wire-order conventions used throughout the package: matrix row index
enumerates outputs, column index inputs, and the *first* (leftmost) wire is
the most significant bit of the index.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterator, Union

from ._json import complex_from_json, complex_to_json
from .errors import ShapeError

# ---------------------------------------------------------------------------
# generator kinds


@dataclass(frozen=True)
class ZSpider:
    """Z spider with ``inputs`` input legs and ``outputs`` output legs.

    Matrix: all zeros except 1 at the all-zeros and all-ones positions.
    The 0→0 case is the scalar 2.
    """

    inputs: int
    outputs: int


@dataclass(frozen=True)
class HBox:
    """H box: all-ones matrix except ``label`` at the all-ones position.

    The default label is -1, which makes HBox(1, 1) the (unnormalized)
    Hadamard.  The 0→0 case is the scalar ``label``.
    """

    inputs: int
    outputs: int
    label: complex = -1


@dataclass(frozen=True)
class Identity:
    pass


@dataclass(frozen=True)
class Swap:
    pass


@dataclass(frozen=True)
class Cap:
    """0→2 bent wire: the state (1, 0, 0, 1)."""


@dataclass(frozen=True)
class Cup:
    """2→0 bent wire: the effect (1, 0, 0, 1)."""


@dataclass(frozen=True)
class XSpider:
    """X spider: ½(|+…⟩⟨+…| + |-…⟩⟨-…|) pattern, so XOR at 2→1, |0⟩ at 0→1."""

    inputs: int
    outputs: int


@dataclass(frozen=True)
class NotXSpider:
    """X spider with a NOT fused in: ½(|+…⟩⟨+…| − |-…⟩⟨-…|); |1⟩ at 0→1."""

    inputs: int
    outputs: int


@dataclass(frozen=True)
class MonoidN:
    """k→1 exactly-one-hot merge: |0…0⟩ ↦ |0⟩, one-hot inputs ↦ |1⟩, rest ↦ 0.

    MonoidN(1) is the identity wire; MonoidN(2) has matrix
    [[1,0,0,0],[0,1,1,0]].
    """

    inputs: int

    def __post_init__(self) -> None:
        if self.inputs < 1:
            raise ShapeError(f"MonoidN needs at least one input, got {self.inputs}")


@dataclass(frozen=True)
class Gadget:
    """2→2 router: |c, d⟩ ↦ |d∧¬c⟩ ⊗ |d∧c⟩ (control first, then data)."""


@dataclass(frozen=True)
class WeightBox:
    """1→1 diagonal diag(1, weight)."""

    weight: complex


@dataclass(frozen=True)
class KetZero:
    pass


@dataclass(frozen=True)
class KetOne:
    pass


@dataclass(frozen=True)
class KetPlus:
    """The unnormalized plus state (1, 1)."""


@dataclass(frozen=True)
class BraPlus:
    """The unnormalized plus effect (1, 1)."""


GeneratorKind = Union[
    ZSpider,
    HBox,
    Identity,
    Swap,
    Cap,
    Cup,
    XSpider,
    NotXSpider,
    MonoidN,
    Gadget,
    WeightBox,
    KetZero,
    KetOne,
    KetPlus,
    BraPlus,
]

_CORE_KINDS = (ZSpider, HBox, Identity, Swap, Cap, Cup)


def is_core(kind: GeneratorKind) -> bool:
    return isinstance(kind, _CORE_KINDS)


def generator_arity(kind: GeneratorKind) -> tuple[int, int]:
    """(input count, output count) of a generator."""
    match kind:
        case ZSpider(n, m) | HBox(n, m, _) | XSpider(n, m) | NotXSpider(n, m):
            if n < 0 or m < 0:
                raise ShapeError(f"negative arity on {kind!r}")
            return n, m
        case Identity() | WeightBox(_):
            return 1, 1
        case Swap():
            return 2, 2
        case Cap():
            return 0, 2
        case Cup():
            return 2, 0
        case MonoidN(k):
            return k, 1
        case Gadget():
            return 2, 2
        case KetZero() | KetOne() | KetPlus():
            return 0, 1
        case BraPlus():
            return 1, 0
    raise ShapeError(f"unknown generator {kind!r}")


# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class Gen:
    kind: GeneratorKind
    n_in: int = field(init=False, compare=False)
    n_out: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        n, m = generator_arity(self.kind)
        object.__setattr__(self, "n_in", n)
        object.__setattr__(self, "n_out", m)


@dataclass(frozen=True)
class SeqNode:
    first: "ZhTerm"
    then: "ZhTerm"
    n_in: int = field(init=False, compare=False)
    n_out: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        if self.first.n_out != self.then.n_in:
            raise ShapeError(
                f"sequential mismatch: {describe(self.first)} has "
                f"{self.first.n_out} outputs but {describe(self.then)} expects "
                f"{self.then.n_in} inputs"
            )
        object.__setattr__(self, "n_in", self.first.n_in)
        object.__setattr__(self, "n_out", self.then.n_out)


@dataclass(frozen=True)
class ParNode:
    left: "ZhTerm"
    right: "ZhTerm"
    n_in: int = field(init=False, compare=False)
    n_out: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "n_in", self.left.n_in + self.right.n_in)
        object.__setattr__(self, "n_out", self.left.n_out + self.right.n_out)


ZhTerm = Union[Gen, SeqNode, ParNode]


def make_term(kind: GeneratorKind) -> Gen:
    return Gen(kind)


def seq(*terms: ZhTerm) -> ZhTerm:
    """Left fold of sequential composition; at least one term required."""
    if not terms:
        raise ShapeError("seq() needs at least one term")
    out = terms[0]
    for t in terms[1:]:
        out = SeqNode(out, t)
    return out


def par(*terms: ZhTerm) -> ZhTerm:
    if not terms:
        raise ShapeError("par() needs at least one term")
    out = terms[0]
    for t in terms[1:]:
        out = ParNode(out, t)
    return out


def wires(n: int) -> ZhTerm:
    """Bundle of ``n`` parallel identity wires (n >= 1)."""
    if n < 1:
        raise ShapeError(f"wires() needs n >= 1, got {n}")
    return par(*(Gen(Identity()) for _ in range(n)))


def describe(t: ZhTerm) -> str:
    """Short one-line description of a term, for error messages."""
    match t:
        case Gen(kind):
            return type(kind).__name__ + _kind_params_str(kind)
        case SeqNode(a, b):
            return f"Seq({describe(a)}, {describe(b)})"
        case ParNode(a, b):
            return f"Par({describe(a)}, {describe(b)})"
    raise TypeError(f"not a term: {t!r}")


def _kind_params_str(kind: GeneratorKind) -> str:
    match kind:
        case ZSpider(n, m) | XSpider(n, m) | NotXSpider(n, m):
            return f"({n}->{m})"
        case HBox(n, m, r):
            return f"({n}->{m}, {r})"
        case MonoidN(k):
            return f"({k})"
        case WeightBox(w):
            return f"({w})"
    return ""


def iter_generators(t: ZhTerm) -> Iterator[GeneratorKind]:
    """All generator leaves of a term, left to right."""
    stack = [t]
    while stack:
        node = stack.pop()
        match node:
            case Gen(kind):
                yield kind
            case SeqNode(a, b) | ParNode(a, b):
                stack.append(b)
                stack.append(a)


def generator_count(t: ZhTerm) -> int:
    return sum(1 for _ in iter_generators(t))


def permutation_term(perm: list[int]) -> ZhTerm:
    """Wire permutation as a swap network on ``len(perm)`` wires.

    ``perm[i]`` is the *input* position that ends up at output position
    ``i`` (so the term's interpretation maps basis state ``x`` to the state
    whose i-th wire carries ``x[perm[i]]``).  Built from adjacent swaps;
    the identity permutation yields a plain wire bundle.
    """
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ShapeError(f"not a permutation of range({n}): {perm}")
    if n == 0:
        raise ShapeError("cannot build a permutation on zero wires")
    current = list(range(n))
    rows: list[ZhTerm] = []
    for i in range(n):
        j = current.index(perm[i])
        while j > i:
            row_parts: list[ZhTerm] = []
            if j - 1 > 0:
                row_parts.append(wires(j - 1))
            row_parts.append(Gen(Swap()))
            if n - j - 1 > 0:
                row_parts.append(wires(n - j - 1))
            rows.append(par(*row_parts))
            current[j - 1], current[j] = current[j], current[j - 1]
            j -= 1
    if not rows:
        return wires(n)
    return seq(*rows)


# ---------------------------------------------------------------------------
# JSON round trip

_KIND_NAMES: dict[type, str] = {
    ZSpider: "zspider",
    HBox: "hbox",
    Identity: "identity",
    Swap: "swap",
    Cap: "cap",
    Cup: "cup",
    XSpider: "xspider",
    NotXSpider: "notxspider",
    MonoidN: "monoid",
    Gadget: "gadget",
    WeightBox: "weight",
    KetZero: "ket0",
    KetOne: "ket1",
    KetPlus: "ketplus",
    BraPlus: "braplus",
}


def _kind_to_json(kind: GeneratorKind) -> tuple[str, dict[str, Any]]:
    name = _KIND_NAMES[type(kind)]
    params: dict[str, Any] = {}
    match kind:
        case ZSpider(n, m) | XSpider(n, m) | NotXSpider(n, m):
            params = {"inputs": n, "outputs": m}
        case HBox(n, m, r):
            params = {"inputs": n, "outputs": m, "label": complex_to_json(r)}
        case MonoidN(k):
            params = {"inputs": k}
        case WeightBox(w):
            params = {"weight": complex_to_json(w)}
    return name, params


def term_to_json(t: ZhTerm) -> dict[str, Any]:
    match t:
        case Gen(kind):
            name, params = _kind_to_json(kind)
            return {"kind": name, "params": params, "children": []}
        case SeqNode(a, b):
            return {"kind": "seq", "params": {}, "children": [term_to_json(a), term_to_json(b)]}
        case ParNode(a, b):
            return {"kind": "par", "params": {}, "children": [term_to_json(a), term_to_json(b)]}
    raise TypeError(f"not a term: {t!r}")


def _require_int(params: dict[str, Any], key: str, kind: str) -> int:
    v = params.get(key)
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise ValueError(f"generator {kind!r} needs a non-negative integer {key!r}, got {v!r}")
    return v


def term_from_json(obj: Any) -> ZhTerm:
    """Parse a term from its JSON form, validating structure as it goes.

    ``seq``/``par`` accept two or more children (folded left), which is
    friendlier for hand-written files than strict binary nesting.
    """
    if not isinstance(obj, dict):
        raise ValueError(f"term node must be a JSON object, got {type(obj).__name__}")
    kind = obj.get("kind")
    params = obj.get("params", {})
    children = obj.get("children", [])
    if not isinstance(kind, str):
        raise ValueError("term node is missing its 'kind' string")
    if not isinstance(params, dict) or not isinstance(children, list):
        raise ValueError(f"malformed term node for kind {kind!r}")

    if kind in ("seq", "par"):
        if len(children) < 2:
            raise ValueError(f"{kind!r} node needs at least two children")
        parsed = [term_from_json(c) for c in children]
        return seq(*parsed) if kind == "seq" else par(*parsed)

    if children:
        raise ValueError(f"generator {kind!r} cannot have children")

    match kind:
        case "zspider":
            return Gen(ZSpider(_require_int(params, "inputs", kind), _require_int(params, "outputs", kind)))
        case "hbox":
            label = complex_from_json(params.get("label", [-1.0, 0.0]), "hbox label")
            return Gen(HBox(_require_int(params, "inputs", kind), _require_int(params, "outputs", kind), label))
        case "xspider":
            return Gen(XSpider(_require_int(params, "inputs", kind), _require_int(params, "outputs", kind)))
        case "notxspider":
            return Gen(NotXSpider(_require_int(params, "inputs", kind), _require_int(params, "outputs", kind)))
        case "monoid":
            return Gen(MonoidN(_require_int(params, "inputs", kind)))
        case "weight":
            return Gen(WeightBox(complex_from_json(params.get("weight"), "weight")))
        case "identity":
            return Gen(Identity())
        case "swap":
            return Gen(Swap())
        case "cap":
            return Gen(Cap())
        case "cup":
            return Gen(Cup())
        case "gadget":
            return Gen(Gadget())
        case "ket0":
            return Gen(KetZero())
        case "ket1":
            return Gen(KetOne())
        case "ketplus":
            return Gen(KetPlus())
        case "braplus":
            return Gen(BraPlus())
    raise ValueError(f"unknown term kind {kind!r}")


# ---------------------------------------------------------------------------
# DOT export (composition tree view)


def term_to_dot(t: ZhTerm) -> str:
    """Graphviz DOT for the composition tree of a term.

    Generators are boxes labeled with their kind and parameters; seq/par
    nodes are small circles.  This is a view of the term's *structure*; for
    the wire-level picture flatten the term to a network first.
    """
    lines = ["digraph term {", "  node [fontname=\"sans-serif\"];"]
    counter = 0

    def walk(node: ZhTerm) -> str:
        nonlocal counter
        me = f"n{counter}"
        counter += 1
        match node:
            case Gen(kind):
                lines.append(f'  {me} [shape=box, label="{describe(node)}"];')
            case SeqNode(a, b):
                lines.append(f'  {me} [shape=circle, label="seq"];')
                lines.append(f"  {me} -> {walk(a)};")
                lines.append(f"  {me} -> {walk(b)};")
            case ParNode(a, b):
                lines.append(f'  {me} [shape=circle, label="par"];')
                lines.append(f"  {me} -> {walk(a)};")
                lines.append(f"  {me} -> {walk(b)};")
        return me

    walk(t)
    lines.append("}")
    return "\n".join(lines) + "\n"
