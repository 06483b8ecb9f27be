"""Sort inference and fragment gating."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from ..errors import FragmentViolation, SortError, UnknownFunction
from . import ast
from .functions import lookup


class Sort(enum.Enum):
    MAT = "Mat"
    COL = "Col"
    ROW = "Row"
    SCAL = "Scal"

    def __str__(self):
        return self.value


M, C, R, S = Sort.MAT, Sort.COL, Sort.ROW, Sort.SCAL

_MUL = {
    (M, M): M, (M, C): C, (R, M): R, (R, C): S,
    (C, R): M, (C, S): C, (S, R): R, (S, S): S,
}
_ONES = {M: C, C: C, R: S, S: S}
_DIAG = {C: M, S: S}
_TRACE = {M: S, S: S}
_CONJ = {M: M, C: R, R: C, S: S}


def _node_sort(node, kids):
    k = node.kind
    if k == "Var":
        return M
    if k == "ScalarMul":
        return kids[0]
    if k == "ConjTranspose":
        return _CONJ[kids[0]]
    if k in ("Ones", "Diag", "Trace"):
        table = {"Ones": _ONES, "Diag": _DIAG, "Trace": _TRACE}[k]
        got = table.get(kids[0])
        if got is None:
            raise SortError(node, " or ".join(str(s) for s in table), kids[0])
        return got
    if k == "Mul":
        got = _MUL.get((kids[0], kids[1]))
        if got is None:
            raise SortError(node, "compatible factor sorts", f"{kids[0]} * {kids[1]}")
        return got
    if k == "Add":
        if kids[0] != kids[1]:
            raise SortError(node, kids[0], kids[1])
        return kids[0]
    if k == "VProd":
        if kids[0] != kids[1] or kids[0] not in (C, S):
            raise SortError(node, "Col .* Col", f"{kids[0]} .* {kids[1]}")
        return kids[0]
    if k == "Schur":
        if kids[0] != kids[1] or kids[0] not in (M, S):
            raise SortError(node, "Mat .* Mat", f"{kids[0]} .* {kids[1]}")
        return kids[0]
    if k == "Apply":
        try:
            fn = lookup(node.fn)
        except UnknownFunction as exc:
            raise SortError(node, "a catalog function", str(exc)) from None
        if fn.arity != len(kids):
            raise SortError(node, f"{fn.arity} arguments", f"{len(kids)} arguments")
        if any(s != kids[0] for s in kids):
            raise SortError(node, "arguments of equal sort", ", ".join(str(s) for s in kids))
        return kids[0]
    raise SortError(node, "a known node kind", k)


def sort_map(e: ast.Expr) -> dict:
    """Sort of every node of e, keyed by node id."""
    out = {}
    for node in ast.iter_nodes(e):
        out[node._id] = _node_sort(node, [out[c._id] for c in node.children])
    return out


def sort_check(e: ast.Expr) -> Sort:
    return sort_map(e)[e._id]


def is_sentence(e: ast.Expr) -> bool:
    try:
        return sort_check(e) is S
    except SortError:
        return False


# fragments

OP_TAGS = ("mul", "tr", "conj", "ones", "diag", "add", "smul", "vprod", "schur", "apply_s", "apply_v", "apply_m")

_KIND_TAG = {
    "Mul": "mul", "Trace": "tr", "ConjTranspose": "conj", "Ones": "ones", "Diag": "diag",
    "Add": "add", "ScalarMul": "smul", "VProd": "vprod", "Schur": "schur",
}


@dataclass(frozen=True)
class Fragment:
    allowed: frozenset = field(default_factory=frozenset)
    name: str = ""

    def __post_init__(self):
        allowed = frozenset(self.allowed) | {"mul"}
        bad = allowed - set(OP_TAGS)
        if bad:
            raise ValueError(f"unknown op tags {sorted(bad)}")
        object.__setattr__(self, "allowed", allowed)

    @classmethod
    def of(cls, *tags, name="", linear=True):
        """Fragment over ``tags``; ``linear`` also admits + and scalar multiplication."""
        tags = set(tags)
        if linear:
            tags |= {"add", "smul"}
        return cls(frozenset(tags), name)

    def __contains__(self, tag):
        return tag in self.allowed

    def __le__(self, other):
        return self.allowed <= other.allowed

    def __str__(self):
        return self.name or "ML(" + ",".join(t for t in OP_TAGS if t in self.allowed) + ")"


FULL = Fragment(frozenset(OP_TAGS), "full")


def node_tag(node, sort) -> str | None:
    if node.kind == "Var":
        return None
    if node.kind == "Apply":
        return {S: "apply_s", C: "apply_v", R: "apply_v", M: "apply_m"}[sort]
    return _KIND_TAG[node.kind]


@dataclass
class FragmentReport:
    accepted: bool
    tags: frozenset
    forbidden: list  # of (tag, pretty-printed node)


def used_tags(e: ast.Expr) -> frozenset:
    sorts = sort_map(e)
    return frozenset(t for node in ast.iter_nodes(e) if (t := node_tag(node, sorts[node._id])))


def fragment_report(e: ast.Expr, f: Fragment) -> FragmentReport:
    sorts = sort_map(e)
    tags, bad = set(), []
    for node in ast.iter_nodes(e):
        t = node_tag(node, sorts[node._id])
        if t is None:
            continue
        tags.add(t)
        if t not in f.allowed:
            bad.append((t, node))
    return FragmentReport(not bad, frozenset(tags), bad)


def fragment_check(e: ast.Expr, f: Fragment) -> FragmentReport:
    """Accept e when every operation it uses is in f; raise FragmentViolation otherwise."""
    rep = fragment_report(e, f)
    if not rep.accepted:
        raise FragmentViolation(sorted({t for t, _ in rep.forbidden}))
    return rep
