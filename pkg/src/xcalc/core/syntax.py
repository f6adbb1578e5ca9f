"""Abstract syntax of XC expressions."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Union

from .values import NValue


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Fun:
    """``fun name(params) { body }``; ``tau`` is the alignment annotation."""

    tau: str | None
    name: str
    params: tuple[str, ...]
    body: "Expr"


@dataclass(frozen=True)
class App:
    fn: "Expr"
    args: tuple["Expr", ...]


@dataclass(frozen=True)
class Val:
    name: str
    bound: "Expr"
    body: "Expr"


@dataclass(frozen=True)
class Lit:
    value: Any


@dataclass(frozen=True)
class NLit:
    value: NValue


Expr = Union[Var, Fun, App, Val, Lit, NLit]


def children(e: Expr) -> tuple:
    if isinstance(e, Fun):
        return (e.body,)
    if isinstance(e, App):
        return (e.fn, *e.args)
    if isinstance(e, Val):
        return (e.bound, e.body)
    return ()


def annotate(e: Expr) -> Expr:
    """Give every function expression a unique name, numbered in pre-order.

    The numbering depends only on the tree shape, so the same program text
    parsed on different devices receives the same annotations.  Re-annotating
    an annotated expression reproduces it.
    """
    counter = 0

    def walk(node: Expr) -> Expr:
        nonlocal counter
        if isinstance(node, Fun):
            tau = f"t{counter}"
            counter += 1
            return Fun(tau, node.name, node.params, walk(node.body))
        if isinstance(node, App):
            fn = walk(node.fn)
            return App(fn, tuple(walk(a) for a in node.args))
        if isinstance(node, Val):
            bound = walk(node.bound)
            return Val(node.name, bound, walk(node.body))
        return node

    return walk(e)


def strip_annotations(e: Expr) -> Expr:
    if isinstance(e, Fun):
        return Fun(None, e.name, e.params, strip_annotations(e.body))
    if isinstance(e, App):
        return App(strip_annotations(e.fn), tuple(strip_annotations(a) for a in e.args))
    if isinstance(e, Val):
        return Val(e.name, strip_annotations(e.bound), strip_annotations(e.body))
    return e


def contains_nlit(e: Expr) -> bool:
    if isinstance(e, NLit):
        return True
    return any(contains_nlit(c) for c in children(e))


__all__ = [
    "Var", "Fun", "App", "Val", "Lit", "NLit", "Expr",
    "annotate", "strip_annotations", "children", "contains_nlit",
]
