"""Value trees exported by a round, and the alignment projections over them."""
from __future__ import annotations

from typing import Any, Mapping

from .values import NValue, format_nvalue, format_local


class Plain:
    __slots__ = ("children",)

    def __init__(self, children: tuple = ()):
        self.children = children

    def __eq__(self, other):
        return type(other) is Plain and self.children == other.children

    def __hash__(self):
        return hash(("P", self.children))

    def __repr__(self):
        return "Plain[" + ", ".join(map(repr, self.children)) + "]"


class Tagged:
    """A node carrying an exported nvalue.

    ``fname`` caches the function name when the export is a lifted function
    (the stack-frame tags of applications); ``pos`` is a debug fingerprint of
    the program position that produced an exchange export.
    """

    __slots__ = ("export", "children", "fname", "pos")

    def __init__(self, export: NValue, children: tuple = (), fname=None, pos=None):
        self.export = export
        self.children = children
        self.fname = fname
        self.pos = pos

    def __eq__(self, other):
        return (
            type(other) is Tagged
            and self.export == other.export
            and self.children == other.children
        )

    def __hash__(self):
        return hash(("T", self.children))

    def __repr__(self):
        inner = ", ".join(map(repr, self.children))
        return f"Tagged({format_nvalue(self.export)})[{inner}]"


class KeyMap:
    """Per-key subtrees produced by a spawn call."""

    __slots__ = ("entries",)
    children = ()

    def __init__(self, entries: Mapping[Any, Any]):
        self.entries = entries

    def __eq__(self, other):
        return type(other) is KeyMap and dict(self.entries) == dict(other.entries)

    def __hash__(self):
        return hash(("K", tuple(self.entries)))

    def __repr__(self):
        inner = ", ".join(f"{format_local(k)}: {v!r}" for k, v in self.entries.items())
        return "KeyMap{" + inner + "}"


EMPTY = Plain(())

TreeEnv = dict  # device id -> value tree


def project_child(env: Mapping[int, Any], i: int) -> dict:
    """The i-th subtree (1-based) of every tree; short trees are dropped."""
    k = i - 1
    out = {}
    for d, t in env.items():
        ch = t.children
        if len(ch) > k:
            out[d] = ch[k]
    return out


def function_name(value) -> Any:
    return getattr(value, "name", None)


def project_fun(env: Mapping[int, Any], f) -> dict:
    """Keep trees whose root tag is a function with the same name as ``f``."""
    name = function_name(f)
    out = {}
    for d, t in env.items():
        if type(t) is Tagged:
            fname = t.fname
            if fname is None:
                fname = function_name(t.export.get(d))
            if fname is not None and fname == name:
                out[d] = t
    return out


def project_key(env: Mapping[int, Any], key) -> dict:
    """The subtree for ``key`` in each KeyMap tree; other trees are dropped."""
    out = {}
    for d, t in env.items():
        if type(t) is KeyMap:
            sub = t.entries.get(key)
            if sub is not None:
                out[d] = sub
    return out
