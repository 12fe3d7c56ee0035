"""Recursive descriptions of multiple-layer EII codes.

A spec is either a LeafSpec -- an [n, n-u, u+1] MDS row code -- or a
NodeSpec built from a strictly nested chain of child specs plus a
multiplicity vector s = (s_0, ..., s_t).  The implicit zero code always
sits at the end of the chain; s_t counts whole-parity blocks assigned to
it.  Derived quantities (length, dimension, minimum distance, the
erasure-correcting capability tree) are computed recursively.
"""

from __future__ import annotations

import ast
import json
from dataclasses import dataclass
from functools import lru_cache

from .gf import FieldContext, field


class ValidationError(ValueError):
    """A spec violates a structural invariant."""


class NotNestedError(ValidationError):
    pass


class FieldTooSmallError(ValidationError):
    """Block count m must stay below the field size q."""


class AlphaOrderError(ValidationError):
    """order(alpha) must be at least the block count m."""


class NegativeMultiplicityError(ValidationError):
    pass


class DifferentChildrenError(ValidationError):
    """Nesting comparison requires identical child chains."""


class NotTotallyOrderedError(ValidationError):
    """Sibling capabilities cannot be arranged into a nested chain."""


@dataclass(frozen=True)
class LeafSpec:
    """An [n, n-u, u+1] MDS row code; u parity symbols sit at the end."""

    ctx: FieldContext
    n: int
    u: int


@dataclass(frozen=True)
class NodeSpec:
    """An EII code over `children` (strongest-last) with multiplicities `s`.

    len(s) == len(children) + 1; the final entry counts blocks pinned to
    the implicit zero code.
    """

    ctx: FieldContext
    children: tuple
    s: tuple

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        object.__setattr__(self, "s", tuple(int(x) for x in self.s))


CodeSpec = LeafSpec | NodeSpec


def tail_counts(spec: NodeSpec) -> tuple:
    """Tail sums of the multiplicity vector: entry i is s_i + ... + s_t."""
    out = []
    acc = 0
    for x in reversed(spec.s):
        acc += x
        out.append(acc)
    return tuple(reversed(out))


def block_count(spec: NodeSpec) -> int:
    return sum(spec.s)


@lru_cache(maxsize=None)
def length(spec: CodeSpec) -> int:
    if isinstance(spec, LeafSpec):
        return spec.n
    return block_count(spec) * length(spec.children[0])


@lru_cache(maxsize=None)
def dimension(spec: CodeSpec) -> int:
    if isinstance(spec, LeafSpec):
        return spec.n - spec.u
    return sum(si * dimension(ch) for si, ch in zip(spec.s, spec.children))


@lru_cache(maxsize=None)
def min_distance(spec: CodeSpec) -> int:
    """Minimum Hamming distance.

    For a node this is the minimum of d_j * (tail_{j+1} + 1) over the
    children, skipping terms with tail_{j+1} == m: those arise only from a
    run of zero multiplicities in front of child j, the weighted-sum
    constraints then force every block into child j+1 or deeper, and no
    codeword realizes the skipped weight.
    """
    if isinstance(spec, LeafSpec):
        return spec.u + 1
    m = block_count(spec)
    tails = tail_counts(spec)
    terms = [
        min_distance(ch) * (tails[j + 1] + 1)
        for j, ch in enumerate(spec.children)
        if tails[j + 1] < m
    ]
    if not terms:
        raise ValidationError("zero-dimensional code has no minimum distance")
    return min(terms)


def layer_count(spec: CodeSpec) -> int:
    if isinstance(spec, LeafSpec):
        return 1
    return 1 + layer_count(spec.children[0])


def level_count(spec: CodeSpec) -> int:
    """Number of distinct child slots actually used (nonzero s_i, i < t)."""
    if isinstance(spec, LeafSpec):
        return 1
    return sum(1 for x in spec.s[:-1] if x != 0)


# -- nesting ----------------------------------------------------------------


def _profile(spec: NodeSpec) -> tuple:
    return tail_counts(spec)


def is_nested(a: CodeSpec, b: CodeSpec) -> bool:
    """True when b is a subcode of a (b subset-of a).

    Leaves compare by redundancy over the same length; nodes must share an
    identical child chain, and then containment holds exactly when every
    tail count of a is <= the matching tail count of b.
    """
    if isinstance(a, LeafSpec) and isinstance(b, LeafSpec):
        if a.n != b.n or a.ctx != b.ctx:
            raise DifferentChildrenError("leaf specs differ in length or field")
        return a.u <= b.u
    if isinstance(a, NodeSpec) and isinstance(b, NodeSpec):
        if a.children != b.children or a.ctx != b.ctx:
            raise DifferentChildrenError("nodes are not built over identical children")
        if block_count(a) != block_count(b):
            raise DifferentChildrenError("nodes have different block counts")
        return all(x <= y for x, y in zip(_profile(a), _profile(b)))
    raise DifferentChildrenError("cannot compare a leaf spec with a node spec")


def _strictly_nested(a: CodeSpec, b: CodeSpec) -> bool:
    return is_nested(a, b) and a != b


# -- validation ---------------------------------------------------------------


def validate(spec: CodeSpec) -> None:
    """Raise a ValidationError subclass when any structural invariant fails."""
    if isinstance(spec, LeafSpec):
        if spec.n < 1:
            raise ValidationError(f"leaf length {spec.n} < 1")
        if not 0 <= spec.u <= spec.n:
            raise ValidationError(f"leaf redundancy u={spec.u} outside 0..{spec.n}")
        if 0 < spec.u < spec.n and spec.n > spec.ctx.q - 1:
            # the Vandermonde parity check needs n distinct evaluation points
            raise FieldTooSmallError(
                f"row length {spec.n} exceeds order(alpha)={spec.ctx.q - 1} in GF({spec.ctx.q})"
            )
        return
    if len(spec.children) < 1:
        raise ValidationError("node needs at least one child")
    if len(spec.s) != len(spec.children) + 1:
        raise ValidationError(
            f"multiplicity vector has {len(spec.s)} entries for {len(spec.children)} children"
        )
    if any(x < 0 for x in spec.s):
        raise NegativeMultiplicityError(f"negative multiplicity in {spec.s}")
    m = block_count(spec)
    if m < 1:
        raise ValidationError("node has zero blocks")
    if m >= spec.ctx.q:
        raise FieldTooSmallError(f"m={m} blocks needs a field larger than GF({spec.ctx.q})")
    if spec.ctx.order(spec.ctx.alpha) < m:
        raise AlphaOrderError(f"order(alpha) < m={m}")
    sub_len = length(spec.children[0])
    for ch in spec.children:
        validate(ch)
        if ch.ctx != spec.ctx:
            raise ValidationError("child uses a different field context")
        if length(ch) != sub_len:
            raise ValidationError("children have different lengths")
        if dimension(ch) == 0:
            raise ValidationError("zero-dimensional child; use the final multiplicity instead")
    for a, b in zip(spec.children, spec.children[1:]):
        if not _strictly_nested(a, b):
            raise NotNestedError("children must form a strictly nested chain, strongest last")


# -- capability ----------------------------------------------------------------


def row_length(spec: CodeSpec) -> int:
    """Length of the innermost MDS rows."""
    while isinstance(spec, NodeSpec):
        spec = spec.children[0]
    return spec.n


def _saturate(entry, n):
    if isinstance(entry, int):
        return n
    return tuple(_saturate(e, n) for e in entry)


def _capability_entry(spec: CodeSpec):
    """Capability of `spec` viewed as one block of a parent code."""
    if isinstance(spec, LeafSpec):
        return spec.u
    out = []
    for si, ch in zip(spec.s, spec.children):
        out.extend([_capability_entry(ch)] * si)
    if spec.s[-1]:
        full = _saturate(_capability_entry(spec.children[0]), row_length(spec))
        out.extend([full] * spec.s[-1])
    return tuple(out)


@lru_cache(maxsize=None)
def capability(spec: CodeSpec) -> tuple:
    """Erasure-correcting capability tree.

    Leaves contribute their redundancy u; a node concatenates s_i copies of
    each child's capability, then s_t fully-saturated entries (every leaf
    value equal to the row length) for the zero-code blocks.
    """
    if isinstance(spec, LeafSpec):
        return (spec.u,)
    return _capability_entry(spec)


def capability_to_string(tree) -> str:
    if isinstance(tree, int):
        return str(tree)
    return "(" + ",".join(capability_to_string(e) for e in tree) + ")"


def parse_capability(text: str):
    """Parse a nested parenthesized capability list, e.g. ``((1,1,2),(1,2,3))``."""
    try:
        value = ast.literal_eval(text.strip())
    except (SyntaxError, ValueError) as exc:
        raise ValidationError(f"cannot parse capability string: {exc}") from None
    def norm(v):
        if isinstance(v, int):
            return v
        if isinstance(v, (tuple, list)):
            return tuple(norm(x) for x in v)
        raise ValidationError(f"unexpected token {v!r} in capability string")
    value = norm(value)
    if isinstance(value, int):
        value = (value,)
    return value


# -- capability -> spec ---------------------------------------------------------


def _flatten(entry):
    if isinstance(entry, int):
        return (entry,)
    out = []
    for e in entry:
        out.extend(_flatten(e))
    return tuple(out)


def _shape(entry):
    if isinstance(entry, int):
        return 0
    return tuple(_shape(e) for e in entry)


def _dominates(a, b) -> bool:
    return all(x <= y for x, y in zip(_flatten(a), _flatten(b)))


def _is_full(entry, n) -> bool:
    return all(v == n for v in _flatten(entry))


def _build_chain(ctx: FieldContext, entries: list, n: int) -> list:
    """Build nested specs for the given sorted, distinct capability entries.

    Node entries are built over the union of the children appearing in any
    of them, padding with zero multiplicities, so the resulting specs share
    an identical child chain as nesting requires.
    """
    if all(isinstance(e, int) for e in entries):
        return [LeafSpec(ctx, n, u) for u in entries]
    if any(isinstance(e, int) for e in entries):
        raise NotTotallyOrderedError("sibling capabilities mix rows with sub-arrays")
    widths = {len(e) for e in entries}
    if len(widths) != 1:
        raise NotTotallyOrderedError("sibling capabilities have different block counts")
    sub_entries = []
    sub_mult = []  # per entry: list of (index into sub_entries) or None for full
    for e in entries:
        idxs = []
        for sub in e:
            if _is_full(sub, n):
                idxs.append(None)
                continue
            for k, known in enumerate(sub_entries):
                if sub == known:
                    idxs.append(k)
                    break
            else:
                sub_entries.append(sub)
                idxs.append(len(sub_entries) - 1)
        sub_mult.append(idxs)
    order = sorted(range(len(sub_entries)), key=lambda k: _flatten(sub_entries[k]))
    sub_sorted = [sub_entries[k] for k in order]
    shapes = {_shape(e) for e in sub_sorted}
    if len(shapes) > 1:
        raise NotTotallyOrderedError("sibling capabilities have mixed shapes")
    for a, b in zip(sub_sorted, sub_sorted[1:]):
        if not _dominates(a, b):
            raise NotTotallyOrderedError(
                f"incomparable sibling capabilities {capability_to_string(a)} "
                f"and {capability_to_string(b)}"
            )
    remap = {old: new for new, old in enumerate(order)}
    children = _build_chain(ctx, sub_sorted, n)
    specs = []
    for idxs in sub_mult:
        s = [0] * (len(children) + 1)
        for k in idxs:
            s[remap[k] if k is not None else len(children)] += 1
        specs.append(NodeSpec(ctx, tuple(children), tuple(s)))
    return specs


def spec_from_capability(ctx: FieldContext, tree, n: int) -> CodeSpec:
    """Inverse of capability(): build a spec whose capability equals `tree`.

    `n` is the innermost row length; it cannot be recovered from the
    capability entries themselves.  A single-entry flat tree such as (22)
    denotes the plain MDS row code [n, n-22].
    """
    tree = parse_capability(tree) if isinstance(tree, str) else tree
    if isinstance(tree, int):
        tree = (tree,)
    if len(tree) == 1 and isinstance(tree[0], int):
        spec = LeafSpec(ctx, n, tree[0])
        validate(spec)
        return spec
    flat = sorted(tree, key=_flatten)
    for a, b in zip(flat, flat[1:]):
        if not _dominates(a, b):
            raise NotTotallyOrderedError(
                f"incomparable sibling capabilities {capability_to_string(a)} "
                f"and {capability_to_string(b)}"
            )
    spec = _build_chain(ctx, [tuple(flat)], n)[0]
    validate(spec)
    return spec


# -- JSON schema -----------------------------------------------------------------


def _code_to_dict(spec: CodeSpec) -> dict:
    if isinstance(spec, LeafSpec):
        return {"leaf": {"n": spec.n, "u": spec.u}}
    return {"node": {"s": list(spec.s), "children": [_code_to_dict(c) for c in spec.children]}}


def spec_to_json(spec: CodeSpec) -> str:
    return json.dumps({"field": {"w": spec.ctx.w}, "code": _code_to_dict(spec)}, indent=2)


def _code_from_dict(ctx: FieldContext, d: dict) -> CodeSpec:
    if "leaf" in d:
        return LeafSpec(ctx, int(d["leaf"]["n"]), int(d["leaf"]["u"]))
    if "node" in d:
        node = d["node"]
        children = tuple(_code_from_dict(ctx, c) for c in node["children"])
        return NodeSpec(ctx, children, tuple(int(x) for x in node["s"]))
    raise ValidationError("code object needs a 'leaf' or 'node' key")


def spec_from_json(text: str) -> CodeSpec:
    doc = json.loads(text)
    try:
        ctx = field(int(doc["field"]["w"]))
    except KeyError:
        raise ValidationError("spec JSON needs a field.w entry") from None
    spec = _code_from_dict(ctx, doc["code"])
    validate(spec)
    return spec
