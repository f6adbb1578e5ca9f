"""Canonical core-form printer.  Sugar is never re-introduced."""
from __future__ import annotations

import math

from ..core.syntax import App, Expr, Fun, Lit, NLit, Val, Var
from ..core.values import FrozenMap, NValue


def _literal(v) -> str:
    if v is None:
        return "unit"
    if v is True:
        return "true"
    if v is False:
        return "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return repr(v)
    if isinstance(v, str):
        return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(v, tuple):
        return f"pair({_literal(v[0])}, {_literal(v[1])})"
    if isinstance(v, frozenset):
        out = "set()"
        for x in sorted(v, key=repr):
            out = f"insert({out}, {_literal(x)})"
        return out
    if isinstance(v, FrozenMap):
        out = "map()"
        for k, x in v.items():
            out = f"map_put({out}, {_literal(k)}, {_literal(x)})"
        return out
    raise ValueError(f"cannot print literal {v!r}")


def _nvalue(w: NValue) -> str:
    entries = ", ".join(f"{d} -> {_literal(w.overrides[d])}" for d in sorted(w.overrides))
    return f"{_literal(w.default)}[{entries}]"


def print_expr(e: Expr, indent: int = 0) -> str:
    pad = " " * indent
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Lit):
        return _literal(e.value)
    if isinstance(e, NLit):
        return _nvalue(e.value)
    if isinstance(e, Fun):
        body = print_expr(e.body, indent + 2)
        return f"fun {e.name}({', '.join(e.params)}) {{\n{pad}  {body}\n{pad}}}"
    if isinstance(e, App):
        fn = print_expr(e.fn, indent)
        if not isinstance(e.fn, (Var, App, Fun)):
            fn = f"({fn})"
        args = ", ".join(print_expr(a, indent) for a in e.args)
        return f"{fn}({args})"
    if isinstance(e, Val):
        bound = print_expr(e.bound, indent)
        if isinstance(e.bound, Val):
            bound = f"({bound})"
        return f"val {e.name} = {bound};\n{pad}{print_expr(e.body, indent)}"
    raise ValueError(f"cannot print {e!r}")
